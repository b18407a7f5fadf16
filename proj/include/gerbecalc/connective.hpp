#ifndef GERBECALC_CONNECTIVE_HPP
#define GERBECALC_CONNECTIVE_HPP

/* Connective structures and curvings on a gerbe over the star cover.
 *
 * One connection alpha_i is fixed per patch. The morphism u_ab moves a
 * connection on U_b into the U_a frame by
 *     u_ab^* nabla = Ad(T_ab^{-1}) nabla + MC(T_ab) + A_ab,   T_ab = h_ba,
 * where A_ab (A_ba = -A_ab) is an optional central 1-cochain completing the
 * torsor isomorphism; a difference of connections is moved by Ad(T_ab^{-1})
 * alone. In center-valued mode every value lives in the center of the band's
 * algebra and the Maurer-Cartan term is replaced by its center part.
 */

#include <map>
#include <string>

#include "gerbecalc/gerbedata.hpp"

namespace gerbecalc {

enum class ConnectiveMode { Full, Center };

std::string mode_label(ConnectiveMode m);
ConnectiveMode parse_mode(const std::string& s);  // throws ParseError

/// g^* nabla = Ad(g^{-1}) nabla + MC(g). nabla is restricted to g's support.
Cochain gauge_transform(const GroupFunction& g, const Cochain& nabla);

class ConnectiveBundle {
 public:
  /// Missing alpha / shift entries are zero. Throws SupportMismatch,
  /// DegreeMismatch, MembershipError (non-algebra values, non-central shift, or
  /// non-central alpha in center-valued mode).
  ConnectiveBundle(GerbeCocycle gc, std::map<int, Cochain> alpha, std::map<Simplex, Cochain> shift,
                   ConnectiveMode mode);

  /// Center-valued bundle whose alpha and shift are the center projections of
  /// the given cochains (zero for bands with trivial center).
  static ConnectiveBundle center_valued(GerbeCocycle gc, std::map<int, Cochain> alpha,
                                        std::map<Simplex, Cochain> shift = {});

  const GerbeCocycle& gerbe() const { return gc_; }
  const CoverPtr& cover() const { return gc_.cover(); }
  ConnectiveMode mode() const { return mode_; }
  const GroupSpec& group() const { return gc_.group(); }

  const Cochain& alpha(int i) const { return alpha_.at(i); }
  const std::map<int, Cochain>& alphas() const { return alpha_; }
  const std::map<Simplex, Cochain>& shifts() const { return shift_; }
  /// A_ab on U_ab for either order.
  Cochain shift(int a, int b) const;

  /// u_ab^* of a connection given on U_b or U_ab; result on U_ab.
  Cochain pull_connection(int a, int b, const Cochain& nabla) const;
  /// u_ab^* of a difference of connections; result on U_ab.
  Cochain pull_difference(int a, int b, const Cochain& diff) const;
  /// alpha_ab = alpha_a - u_ab^* alpha_b on U_ab.
  Cochain alpha_between(int a, int b) const;

  /// Center projection used by this bundle (identity in full mode).
  Cochain project(const Cochain& c) const;

 private:
  GerbeCocycle gc_;
  std::map<int, Cochain> alpha_;
  std::map<Simplex, Cochain> shift_;
  ConnectiveMode mode_;
};

/// alpha_ij for every sorted base edge.
std::map<Simplex, Cochain> connective_cocycle(const ConnectiveBundle& cb);

struct BoundaryReport {
  std::map<Simplex, double> deviation;  // per sorted base triangle
  double max_deviation = 0.0;
  Simplex worst;
};

/// On each triangle (i1<i2<i3):
///   LHS = u_{i1i2}^*(alpha_{i2i3}) - alpha_{i1i3} + alpha_{i1i2}
///   RHS = u_{i1i3}^*(alpha_{i3} - c^* alpha_{i3}),
/// where c^* is the gauge action of c_{i1i2i3}^{-1} (the automorphism of the
/// U_{i3} object determined by the transitions).
BoundaryReport boundary_identity_check(const ConnectiveBundle& cb);

/// L + d(alpha) + alpha u alpha; alpha is restricted to L's support.
Cochain curving_shift(const Cochain& L, const Cochain& alpha);

class CurvingData {
 public:
  /// Validates L_j - L_i = d(alpha_ij) + alpha_ij u alpha_ij on every overlap.
  /// Missing patches default to zero. Throws InvalidCurving, SupportMismatch,
  /// DegreeMismatch, MembershipError (non-central L in center-valued mode).
  CurvingData(const ConnectiveBundle& cb, std::map<int, Cochain> L, double tol = kTolAlg);

  /// Projects every L_i to the center first.
  static CurvingData center_valued(const ConnectiveBundle& cb, std::map<int, Cochain> L, double tol = kTolAlg);

  const Cochain& L(int i) const { return L_.at(i); }
  const std::map<int, Cochain>& all() const { return L_; }
  double max_deviation() const { return max_deviation_; }

 private:
  std::map<int, Cochain> L_;
  double max_deviation_ = 0.0;
};

struct Curvature3Report {
  std::map<int, Cochain> local;  // Omega_i = d(L_i)
  double overlap_deviation = 0.0;
  Simplex worst;
};

/// Per-patch curvature 3-cochains and their disagreement on overlaps.
Curvature3Report curvature3_local(const ConnectiveBundle& cb, const CurvingData& cur);

/// Global Omega = sum_i phi_i u Omega_i on a 3-complex. Throws NotGluable when
/// the overlap deviation reaches `tol` or when the data are non-abelian and not
/// center-valued; DegreeMismatch on complexes that are not 3-dimensional.
Cochain curvature3(const ConnectiveBundle& cb, const CurvingData& cur, double tol = kTolAlg);

/// P(Omega) for a degree-l invariant polynomial: a scalar 3l-cochain. For
/// l = 1, per top simplex P applied to the value; for 3l above the dimension,
/// the zero cochain (no values).
ScalarCochain characteristic_form(const InvariantPolynomial& P, const Cochain& omega);

}  // namespace gerbecalc

#endif
