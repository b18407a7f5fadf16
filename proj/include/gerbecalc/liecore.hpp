#ifndef GERBECALC_LIECORE_HPP
#define GERBECALC_LIECORE_HPP

/* Matrix Lie groups U(1), SU(2), U(2), SO(3) and their Lie algebras.
 *
 * Every value is a small square complex matrix. Group elements and algebra
 * elements are thin validated wrappers; the raw-matrix helpers in this header
 * are what the cochain code uses in its inner loops.
 */

#include <complex>
#include <span>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "gerbecalc/errors.hpp"

namespace gerbecalc {

using cplx = std::complex<double>;

/// Square complex matrix of size at most 3x3, stored inline.
using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 3, 3>;

/// Group membership tolerance.
inline constexpr double kTolGroup = 1e-10;
/// Minimum distance of an eigenvalue from -1 for the principal logarithm.
inline constexpr double kTolLog = 1e-6;
/// Identities involving exp/log.
inline constexpr double kTolAlg = 1e-9;
/// Purely linear identities.
inline constexpr double kTolLinear = 1e-12;

enum class GroupName { U1, SU2, U2, SO3 };

struct GroupSpec {
  GroupName name = GroupName::U1;
  int dim = 1;
  bool complex_field = true;

  static GroupSpec of(GroupName name);
  static GroupSpec parse(std::string_view label);  // throws ParseError

  std::string_view label() const;
  /// True for the unitary groups, whose algebras are anti-hermitian.
  bool anti_hermitian() const { return name != GroupName::SO3; }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.name == b.name; }
};

// ---------------------------------------------------------------------------
// Raw matrix helpers
// ---------------------------------------------------------------------------

/// Largest entry modulus; the norm used by every deviation report.
double max_abs(const Mat& m);

Mat identity(int dim);
Mat zero(int dim);

/// Inverse of a unitary (or real orthogonal) matrix.
inline Mat unitary_inverse(const Mat& g) { return g.adjoint(); }

/// g X g^{-1} for unitary g.
inline Mat conjugate(const Mat& g, const Mat& x) { return g * x * g.adjoint(); }

inline Mat bracket(const Mat& x, const Mat& y) { return x * y - y * x; }

Mat mat_exp(const Mat& x);

/// Principal logarithm of a unitary matrix.
/// Throws BranchCutError when an eigenvalue lies within kTolLog of -1.
Mat mat_log(const Mat& g);

bool in_group(const GroupSpec& spec, const Mat& m, double tol = kTolGroup);
bool in_algebra(const GroupSpec& spec, const Mat& m, double tol = kTolGroup);

/// Frobenius-orthogonal projection onto the center of the Lie algebra.
Mat center_part(const GroupSpec& spec, const Mat& x);

/// Nearest group element by polar decomposition (SU2/SO3 also fix the
/// determinant). Never applied implicitly.
Mat reproject(const GroupSpec& spec, const Mat& m);

// ---------------------------------------------------------------------------
// Validated values
// ---------------------------------------------------------------------------

class GroupElement {
 public:
  /// Throws MembershipError if `mat` fails the membership test.
  GroupElement(GroupSpec spec, Mat mat, double tol = kTolGroup);

  static GroupElement identity(GroupSpec spec);

  const GroupSpec& spec() const { return spec_; }
  const Mat& mat() const { return mat_; }
  GroupElement inverse() const;

 private:
  struct Unchecked {};
  GroupElement(GroupSpec spec, Mat mat, Unchecked) : spec_(spec), mat_(std::move(mat)) {}
  friend GroupElement mul(const GroupElement&, const GroupElement&);
  friend GroupElement exp_alg(const class AlgebraElement&);

  GroupSpec spec_;
  Mat mat_;
};

class AlgebraElement {
 public:
  /// Throws MembershipError if `mat` is not in the Lie algebra of `spec`.
  AlgebraElement(GroupSpec spec, Mat mat, double tol = kTolGroup);

  static AlgebraElement zero(GroupSpec spec);

  const GroupSpec& spec() const { return spec_; }
  const Mat& mat() const { return mat_; }

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(double s) const;

 private:
  struct Unchecked {};
  AlgebraElement(GroupSpec spec, Mat mat, Unchecked) : spec_(spec), mat_(std::move(mat)) {}
  friend AlgebraElement log_grp(const GroupElement&);
  friend AlgebraElement adjoint(const GroupElement&, const AlgebraElement&);
  friend AlgebraElement center_project(const AlgebraElement&);
  friend AlgebraElement lie_bracket(const AlgebraElement&, const AlgebraElement&);

  GroupSpec spec_;
  Mat mat_;
};

/// Throws SpecMismatch when the specs differ.
GroupElement mul(const GroupElement& a, const GroupElement& b);
inline GroupElement operator*(const GroupElement& a, const GroupElement& b) { return mul(a, b); }

GroupElement exp_alg(const AlgebraElement& x);

/// Principal logarithm; exp_alg(log_grp(g)) == g. Throws BranchCutError.
AlgebraElement log_grp(const GroupElement& g);

/// g X g^{-1}. Throws SpecMismatch.
AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& x);

AlgebraElement center_project(const AlgebraElement& x);

AlgebraElement lie_bracket(const AlgebraElement& x, const AlgebraElement& y);

/// Symmetrized trace polynomial of degree l.
///
/// F(X_1..X_l) = (1/l!) sum_perm tr(X_p(1) ... X_p(l)), reported as its real
/// part. On anti-hermitian algebras the symmetrized trace of an odd number of
/// factors is purely imaginary, so odd degrees report the imaginary part
/// there (degree 1 on u(1)/u(2) is X -> Im tr X).
struct InvariantPolynomial {
  int degree = 1;

  /// Throws ArityMismatch / SpecMismatch.
  double operator()(std::span<const AlgebraElement> xs) const;
  /// Raw form used by characteristic forms.
  double evaluate(const GroupSpec& spec, std::span<const Mat> xs) const;
};

double eval_invariant(const InvariantPolynomial& p, std::span<const AlgebraElement> xs);

}  // namespace gerbecalc

#endif
