#ifndef GERBECALC_DCALC_HPP
#define GERBECALC_DCALC_HPP

/* Simplicial cochain calculus on the barycentric subdivision.
 *
 * A cochain stores one value per sorted subdivision simplex of its support;
 * reversing the orientation of a simplex negates its value. Matrix-valued
 * cochains multiply their values in cup products; scalar cochains carry
 * partitions of unity and characteristic densities.
 */

#include <memory>
#include <vector>

#include "gerbecalc/complex.hpp"
#include "gerbecalc/liecore.hpp"

namespace gerbecalc {

using CoverPtr = std::shared_ptr<const StarCover>;

template <class V>
struct BasicCochain {
  CoverPtr cover;
  SupportPtr support;
  int degree = 0;
  GroupSpec spec{};        // meaningful for matrix values only
  std::vector<V> values;   // aligned with support->simplices[degree]

  int size() const { return static_cast<int>(values.size()); }
  /// Global subdivision index of local entry i.
  int simplex(int i) const { return support->simplices[degree][i]; }
  /// Value at a global subdivision simplex; throws SupportMismatch if absent.
  const V& at(int global_idx) const;
  V zero_value() const;
};

using Cochain = BasicCochain<Mat>;
using ScalarCochain = BasicCochain<double>;

/// Group-valued function on the subdivision vertices of a support.
struct GroupFunction {
  CoverPtr cover;
  SupportPtr support;
  GroupSpec spec{};
  std::vector<Mat> values;  // aligned with support->simplices[0]

  const Mat& at(int sd_vertex) const;
  GroupFunction inverse() const;
};

// Construction -------------------------------------------------------------

Cochain zero_cochain(CoverPtr cover, SupportPtr support, int degree, GroupSpec spec);
ScalarCochain zero_scalar(CoverPtr cover, SupportPtr support, int degree);
GroupFunction constant_function(CoverPtr cover, SupportPtr support, GroupSpec spec, const Mat& value);

/// phi_i as a global scalar 0-cochain.
ScalarCochain partition_of_unity(CoverPtr cover, int vertex);

/// s * X for a scalar cochain s and constant matrix X.
Cochain scalar_times(const ScalarCochain& s, const Mat& x, GroupSpec spec);

// Linear structure -------------------------------------------------------------

template <class V>
BasicCochain<V> operator+(const BasicCochain<V>& a, const BasicCochain<V>& b);
template <class V>
BasicCochain<V> operator-(const BasicCochain<V>& a, const BasicCochain<V>& b);
template <class V>
BasicCochain<V> operator-(const BasicCochain<V>& a);
template <class V>
BasicCochain<V> operator*(double s, const BasicCochain<V>& a);

/// Largest entry modulus over all values.
double max_abs(const Cochain& c);
double max_abs(const ScalarCochain& c);

/// Values on a smaller support; throws SupportMismatch when a simplex is absent.
template <class V>
BasicCochain<V> restrict_to(const BasicCochain<V>& c, SupportPtr smaller);
GroupFunction restrict_to(const GroupFunction& g, SupportPtr smaller);

/// Per-value map, e.g. the center projection.
Cochain center_project(const Cochain& c);

// Calculus -----------------------------------------------------------------

/// Alternating face sum; degree + 1.
template <class V>
BasicCochain<V> coboundary(const BasicCochain<V>& c);

/// (a u b)(v0..v_{p+q}) = a(v0..vp) * b(vp..v_{p+q}). Throws SupportMismatch.
ScalarCochain cup(const ScalarCochain& a, const ScalarCochain& b);
Cochain cup(const ScalarCochain& a, const Cochain& b);
Cochain cup(const Cochain& a, const ScalarCochain& b);
Cochain cup(const Cochain& a, const Cochain& b);

/// Edge (x -> y) maps to log(g(x)^{-1} g(y)). Throws BranchCutError naming the edge.
Cochain maurer_cartan(const GroupFunction& g);

/// Value on a simplex with first vertex v0 becomes Ad(h(v0)^{-1}) of it.
Cochain ad_transport(const GroupFunction& h, const Cochain& c);

/// Orientation-signed sum over the top simplices; requires global support.
/// Throws DegreeMismatch / SupportMismatch.
Mat integrate_raw(const Cochain& c);
AlgebraElement integrate(const Cochain& c);
double integrate(const ScalarCochain& c);

/// Discrete Poincare lemma on a cone: for a closed k-cochain c (k >= 1) on an
/// overlap U_sigma, returns p with dp = c, p(v0..v_{k-1}) = c(b_sigma, v0..v_{k-1})
/// and p = 0 on simplices through the apex. Throws NotClosed when
/// max|dc| > tol, NotCone when the support has no apex.
template <class V>
BasicCochain<V> cone_contract(const BasicCochain<V>& c, double tol = 1e-10);

// Pullback along simplicial maps ----------------------------------------------

/// Pulls a cochain on a target support back to `source_support`; degenerate
/// images carry zero. Throws SupportMismatch when an image leaves the support.
Cochain pullback(const SimplicialMap& f, const Cochain& c, SupportPtr source_support);
GroupFunction pullback(const SimplicialMap& f, const GroupFunction& g, SupportPtr source_support);

}  // namespace gerbecalc

#endif
