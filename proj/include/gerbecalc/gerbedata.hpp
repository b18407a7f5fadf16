#ifndef GERBECALC_GERBEDATA_HPP
#define GERBECALC_GERBEDATA_HPP

/* Classifying data of a principal gerbe relative to the star cover.
 *
 * Transitions h_ij live on U_ij (stored for i < j, h_ji = h_ij^{-1}); the
 * classifying cocycle c_ijk lives on U_ijk (stored for i < j < k) and, for
 * data built from transitions, equals h_ki h_ij h_jk. The morphism u_ij acts
 * on frames through the conjugation T_ij = h_ji: connections on U_j are moved
 * to U_i by Ad(T_ij^{-1}) plus the Maurer-Cartan term of T_ij.
 */

#include <functional>
#include <map>
#include <string>

#include "gerbecalc/dcalc.hpp"

namespace gerbecalc {

/// How the band H sits inside the coefficient group G.
enum class BandKind {
  Whole,    // H = G
  Special,  // H = SU(2) inside U(2)
  Scalar,   // H = U(1) scalars inside U(2)
};

struct Band {
  GroupSpec group;  // G; every matrix value lives here
  BandKind kind = BandKind::Whole;

  static Band whole(GroupSpec g) { return {g, BandKind::Whole}; }
  std::string label() const;
  static Band parse(GroupSpec g, const std::string& label);  // throws ParseError

  bool contains(const Mat& m, double tol = kTolGroup) const;
  /// Projection of a g-valued matrix onto the center of the band's algebra.
  Mat center(const Mat& x) const;
  bool central_in_band(const Mat& m, double tol = kTolGroup) const;
};

/// Extension H -> G -> G/H with a set-theoretic section of the quotient map.
struct ExtensionSpec {
  std::string name;
  Band band;         // H inside G
  GroupSpec quotient_group;
  std::function<Mat(const Mat&)> quotient;  // G -> G/H
  std::function<Mat(const Mat&)> lift;      // G/H -> G, quotient(lift(x)) = x

  /// U(2) over SU(2); quotient det, lift u -> diag(u, 1). With `twisted` the
  /// lift is multiplied by a u-dependent SU(2) factor, so it is no longer a
  /// homomorphism.
  static ExtensionSpec u2_over_su2(bool twisted = false);
  /// U(2) over its U(1) center; quotient is the adjoint action on su(2), lift
  /// is the principal SU(2) lift of a rotation.
  static ExtensionSpec u2_over_center();
  static ExtensionSpec by_name(const std::string& name);  // throws ParseError
};

class GerbeCocycle {
 public:
  /// Missing transitions/cocycle entries default to the identity. Throws
  /// MembershipError when values leave G or c leaves H, SupportMismatch when
  /// a function does not live on its overlap.
  GerbeCocycle(CoverPtr cover, Band band, std::map<Simplex, GroupFunction> transitions,
               std::map<Simplex, GroupFunction> cocycle, double tol = kTolGroup);

  /// Identity data.
  static GerbeCocycle trivial(CoverPtr cover, Band band);

  const CoverPtr& cover() const { return cover_; }
  const Band& band() const { return band_; }
  const GroupSpec& group() const { return band_.group; }

  /// h_ab on U_ab for a != b in either order.
  const GroupFunction& h(int a, int b) const;
  /// T_ab = h_ba: the conjugation carrying U_b-frames to U_a-frames.
  const GroupFunction& transport(int a, int b) const { return h(b, a); }
  Mat h_at(int a, int b, int sd_vertex) const;
  /// c_abc at a subdivision vertex for any vertex order; identity when degenerate.
  Mat c_at(int a, int b, int c, int sd_vertex) const;
  /// Stored c for a sorted triangle.
  const GroupFunction& c(const Simplex& sorted_triangle) const { return cocycle_.at(sorted_triangle); }

  const std::map<Simplex, GroupFunction>& transitions() const { return transitions_; }
  const std::map<Simplex, GroupFunction>& cocycle() const { return cocycle_; }

  /// Copy with one cocycle value replaced (used for perturbation studies).
  GerbeCocycle with_cocycle(const Simplex& triangle, GroupFunction value) const;

 private:
  CoverPtr cover_;
  Band band_;
  std::map<Simplex, GroupFunction> transitions_;
  std::map<Simplex, GroupFunction> inverse_transitions_;
  std::map<Simplex, GroupFunction> cocycle_;
};

struct CocycleReport {
  double max_deviation = 0.0;
  Simplex worst;  // empty when no tetrahedron exists
  int tetrahedra = 0;
  double tolerance = kTolAlg;
  bool pass() const { return max_deviation < tolerance; }
};

/// Twisted 2-cocycle identity on every base tetrahedron (i1<i2<i3<i4) and
/// every subdivision vertex of its overlap:
///   c_{i1i3i4} c'_{i1i2i3} = c_{i1i2i4} c_{i2i3i4},  c' = h_{i4i3} c_{i1i2i3} h_{i3i4}.
/// Vacuous on surfaces.
CocycleReport check_cocycle(const GerbeCocycle& gc, double tol = kTolAlg);

struct LiftResult {
  GerbeCocycle gerbe;
  bool central = false;           // every c value central in H
  double quotient_deviation = 0;  // max |u_ik - u_ij u_jk|
  double lift_deviation = 0;      // max |q(c) - 1|
};

/// Lifting gerbe of a G/H-bundle given by transitions u_ij (sorted edges, on
/// U_ij). h_ij = lift(u_ij); c_ijk = h_ki h_ij h_jk.
/// Throws QuotientNotCocycle, LiftNotInH.
LiftResult build_lifting_gerbe(const ExtensionSpec& ext, CoverPtr cover,
                               const std::map<Simplex, GroupFunction>& quotient_transitions,
                               double tol = kTolAlg);

/// The discrete transition of the adjoint bundle: moves a g-valued cochain on
/// U_b (or U_ab) into the U_a frame on U_ab.
Cochain adjoint_bundle_action(const GerbeCocycle& gc, int a, int b, const Cochain& c);

/// Pullback along a simplicial map; degenerate images give identity data.
GerbeCocycle pullback(const GerbeCocycle& gc, const SimplicialMap& f);

}  // namespace gerbecalc

#endif
