#include "gerbecalc/liecore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace gerbecalc {

GroupSpec GroupSpec::of(GroupName name) {
  switch (name) {
    case GroupName::U1: return {GroupName::U1, 1, true};
    case GroupName::SU2: return {GroupName::SU2, 2, true};
    case GroupName::U2: return {GroupName::U2, 2, true};
    case GroupName::SO3: return {GroupName::SO3, 3, false};
  }
  return {};
}

GroupSpec GroupSpec::parse(std::string_view label) {
  if (label == "U1") return of(GroupName::U1);
  if (label == "SU2") return of(GroupName::SU2);
  if (label == "U2") return of(GroupName::U2);
  if (label == "SO3") return of(GroupName::SO3);
  throw ParseError("unknown group '" + std::string(label) + "'");
}

std::string_view GroupSpec::label() const {
  switch (name) {
    case GroupName::U1: return "U1";
    case GroupName::SU2: return "SU2";
    case GroupName::U2: return "U2";
    case GroupName::SO3: return "SO3";
  }
  return "?";
}

double max_abs(const Mat& m) {
  double r = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r = std::max(r, std::abs(m(i, j)));
  return r;
}

Mat identity(int dim) { return Mat::Identity(dim, dim); }
Mat zero(int dim) { return Mat::Zero(dim, dim); }

Mat mat_exp(const Mat& x) {
  if (x.isZero(0.0)) return identity(static_cast<int>(x.rows()));
  Eigen::MatrixXcd dyn = x;
  Eigen::MatrixXcd e = dyn.exp();
  return e;
}

Mat mat_log(const Mat& g) {
  const auto n = g.rows();
  if (g.isIdentity(0.0)) return zero(static_cast<int>(n));
  Eigen::MatrixXcd dyn = g;
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(dyn);
  const Eigen::MatrixXcd& t = schur.matrixT();
  const Eigen::MatrixXcd& u = schur.matrixU();
  Eigen::VectorXcd logs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx lambda = t(i, i);
    const double modulus = std::abs(lambda);
    if (modulus == 0.0 || std::abs(lambda / modulus + 1.0) <= kTolLog)
      throw BranchCutError("eigenvalue on the principal branch cut of log");
    logs(i) = std::log(lambda);
  }
  Eigen::MatrixXcd out = u * logs.asDiagonal() * u.adjoint();
  return out;
}

namespace {

bool unitary(const Mat& m, double tol) {
  return max_abs(m.adjoint() * m - identity(static_cast<int>(m.rows()))) <= tol;
}

bool real(const Mat& m, double tol) { return m.imag().cwiseAbs().maxCoeff() <= tol; }

}  // namespace

bool in_group(const GroupSpec& spec, const Mat& m, double tol) {
  if (m.rows() != spec.dim || m.cols() != spec.dim) return false;
  if (!unitary(m, tol)) return false;
  switch (spec.name) {
    case GroupName::U1:
    case GroupName::U2: return true;
    case GroupName::SU2: return std::abs(m.determinant() - 1.0) <= tol;
    case GroupName::SO3: return real(m, tol) && std::abs(m.determinant() - 1.0) <= tol;
  }
  return false;
}

bool in_algebra(const GroupSpec& spec, const Mat& m, double tol) {
  if (m.rows() != spec.dim || m.cols() != spec.dim) return false;
  if (max_abs(m + m.adjoint()) > tol) return false;
  switch (spec.name) {
    case GroupName::U1:
    case GroupName::U2: return true;
    case GroupName::SU2: return std::abs(m.trace()) <= tol;
    case GroupName::SO3: return real(m, tol);
  }
  return false;
}

Mat center_part(const GroupSpec& spec, const Mat& x) {
  switch (spec.name) {
    case GroupName::U1: return x;
    case GroupName::U2: return (x.trace() / static_cast<double>(x.rows())) * identity(static_cast<int>(x.rows()));
    case GroupName::SU2:
    case GroupName::SO3: return zero(static_cast<int>(x.rows()));
  }
  return x;
}

Mat reproject(const GroupSpec& spec, const Mat& m) {
  Eigen::MatrixXcd dyn = m;
  if (!spec.complex_field) dyn = dyn.real().cast<cplx>();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dyn, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXcd q = svd.matrixU() * svd.matrixV().adjoint();
  if (spec.name == GroupName::SU2) {
    q /= std::sqrt(q.determinant());
  } else if (spec.name == GroupName::SO3) {
    Eigen::MatrixXcd u = svd.matrixU();
    if (std::real(q.determinant()) < 0.0) u.col(u.cols() - 1) *= -1.0;
    q = (u * svd.matrixV().adjoint()).real().cast<cplx>();
  }
  return q;
}

GroupElement::GroupElement(GroupSpec spec, Mat mat, double tol) : spec_(spec), mat_(std::move(mat)) {
  if (!in_group(spec_, mat_, tol))
    throw MembershipError("matrix is not an element of " + std::string(spec_.label()));
}

GroupElement GroupElement::identity(GroupSpec spec) {
  return GroupElement(spec, gerbecalc::identity(spec.dim), Unchecked{});
}

GroupElement GroupElement::inverse() const { return GroupElement(spec_, unitary_inverse(mat_), Unchecked{}); }

AlgebraElement::AlgebraElement(GroupSpec spec, Mat mat, double tol) : spec_(spec), mat_(std::move(mat)) {
  if (!in_algebra(spec_, mat_, tol))
    throw MembershipError("matrix is not in the Lie algebra of " + std::string(spec_.label()));
}

AlgebraElement AlgebraElement::zero(GroupSpec spec) {
  return AlgebraElement(spec, gerbecalc::zero(spec.dim), Unchecked{});
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  if (!(spec_ == o.spec_)) throw SpecMismatch("algebra sum across groups");
  return AlgebraElement(spec_, mat_ + o.mat_, Unchecked{});
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  if (!(spec_ == o.spec_)) throw SpecMismatch("algebra difference across groups");
  return AlgebraElement(spec_, mat_ - o.mat_, Unchecked{});
}

AlgebraElement AlgebraElement::operator*(double s) const { return AlgebraElement(spec_, mat_ * s, Unchecked{}); }

GroupElement mul(const GroupElement& a, const GroupElement& b) {
  if (!(a.spec() == b.spec())) throw SpecMismatch("group product across groups");
  return GroupElement(a.spec(), a.mat() * b.mat(), GroupElement::Unchecked{});
}

GroupElement exp_alg(const AlgebraElement& x) {
  Mat e = mat_exp(x.mat());
  if (!x.spec().complex_field) e = e.real().cast<cplx>();
  return GroupElement(x.spec(), std::move(e), GroupElement::Unchecked{});
}

AlgebraElement log_grp(const GroupElement& g) {
  Mat l = mat_log(g.mat());
  if (!g.spec().complex_field) l = l.real().cast<cplx>();
  return AlgebraElement(g.spec(), std::move(l), AlgebraElement::Unchecked{});
}

AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& x) {
  if (!(g.spec() == x.spec())) throw SpecMismatch("adjoint action across groups");
  return AlgebraElement(x.spec(), conjugate(g.mat(), x.mat()), AlgebraElement::Unchecked{});
}

AlgebraElement center_project(const AlgebraElement& x) {
  return AlgebraElement(x.spec(), center_part(x.spec(), x.mat()), AlgebraElement::Unchecked{});
}

AlgebraElement lie_bracket(const AlgebraElement& x, const AlgebraElement& y) {
  if (!(x.spec() == y.spec())) throw SpecMismatch("bracket across groups");
  return AlgebraElement(x.spec(), bracket(x.mat(), y.mat()), AlgebraElement::Unchecked{});
}

double InvariantPolynomial::evaluate(const GroupSpec& spec, std::span<const Mat> xs) const {
  if (degree < 1 || static_cast<int>(xs.size()) != degree)
    throw ArityMismatch("invariant polynomial of degree " + std::to_string(degree) + " given " +
                        std::to_string(xs.size()) + " arguments");
  std::vector<int> perm(xs.size());
  std::iota(perm.begin(), perm.end(), 0);
  cplx sum = 0.0;
  double count = 0.0;
  do {
    Mat prod = xs[perm[0]];
    for (std::size_t k = 1; k < perm.size(); ++k) prod = prod * xs[perm[k]];
    sum += prod.trace();
    count += 1.0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  sum /= count;
  const bool odd = degree % 2 == 1;
  return (spec.anti_hermitian() && odd) ? sum.imag() : sum.real();
}

double InvariantPolynomial::operator()(std::span<const AlgebraElement> xs) const {
  std::vector<Mat> mats;
  mats.reserve(xs.size());
  for (const auto& x : xs) {
    if (!(x.spec() == xs.front().spec())) throw SpecMismatch("invariant polynomial across groups");
    mats.push_back(x.mat());
  }
  if (mats.empty()) throw ArityMismatch("invariant polynomial given no arguments");
  return evaluate(xs.front().spec(), mats);
}

double eval_invariant(const InvariantPolynomial& p, std::span<const AlgebraElement> xs) { return p(xs); }

}  // namespace gerbecalc
