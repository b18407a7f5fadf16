#ifndef GERBECALC_TESTS_SUPPORT_HPP
#define GERBECALC_TESTS_SUPPORT_HPP

#include <cmath>
#include <map>
#include <memory>
#include <random>

#include "gerbecalc/connective.hpp"
#include "gerbecalc/generators.hpp"

namespace gctest {

using namespace gerbecalc;

inline CoverPtr make_cover(const MeshDescription& mesh) {
  return std::make_shared<const StarCover>(TriangulatedComplex::build(mesh));
}

inline CoverPtr sphere(int level = 1) {
  static std::map<int, CoverPtr> cache;
  auto& c = cache[level];
  if (!c) c = make_cover(icosphere_mesh(level));
  return c;
}

inline CoverPtr torus(int n, int m) {
  static std::map<std::pair<int, int>, CoverPtr> cache;
  auto& c = cache[{n, m}];
  if (!c) c = make_cover(torus_mesh(n, m));
  return c;
}

inline CoverPtr torus3(int n) {
  static std::map<int, CoverPtr> cache;
  auto& c = cache[n];
  if (!c) c = make_cover(torus3_mesh(n));
  return c;
}

inline const GroupSpec kU1 = GroupSpec::of(GroupName::U1);
inline const GroupSpec kSU2 = GroupSpec::of(GroupName::SU2);
inline const GroupSpec kU2 = GroupSpec::of(GroupName::U2);
inline const GroupSpec kSO3 = GroupSpec::of(GroupName::SO3);

/// i sigma_a, a = 1..3.
inline Mat isigma(int a) {
  Mat m = Mat::Zero(2, 2);
  const cplx i(0, 1);
  if (a == 1) m << 0, i, i, 0;
  if (a == 2) m << 0, 1, -1, 0;
  if (a == 3) m << i, 0, 0, -i;
  return m;
}

/// Infinitesimal rotation about axis a (a = 0..2).
inline Mat so3_generator(int a) {
  Mat m = Mat::Zero(3, 3);
  const int b = (a + 1) % 3, c = (a + 2) % 3;
  m(c, b) = 1;
  m(b, c) = -1;
  return m;
}

struct Rng {
  explicit Rng(unsigned seed) : gen(seed) {}
  std::mt19937_64 gen;
  double uniform(double a = -1, double b = 1) { return std::uniform_real_distribution<double>(a, b)(gen); }
};

inline Mat random_algebra(const GroupSpec& spec, Rng& rng, double scale = 1.0) {
  switch (spec.name) {
    case GroupName::U1: {
      Mat m(1, 1);
      m(0, 0) = cplx(0, scale * rng.uniform());
      return m;
    }
    case GroupName::SU2:
    case GroupName::U2: {
      Mat m = Mat::Zero(2, 2);
      for (int a = 1; a <= 3; ++a) m += scale * rng.uniform() * isigma(a);
      if (spec.name == GroupName::U2) m += cplx(0, scale * rng.uniform()) * Mat::Identity(2, 2);
      return m;
    }
    case GroupName::SO3: {
      Mat m = Mat::Zero(3, 3);
      for (int a = 0; a < 3; ++a) m += scale * rng.uniform() * so3_generator(a);
      return m;
    }
  }
  return {};
}

inline Mat random_group(const GroupSpec& spec, Rng& rng, double scale = 1.0) {
  return mat_exp(random_algebra(spec, rng, scale));
}

/// Central element of the algebra (multiple of i I; zero for SU2/SO3).
inline Mat random_central(const GroupSpec& spec, Rng& rng, double scale = 1.0) {
  if (spec.name == GroupName::SU2 || spec.name == GroupName::SO3) return Mat::Zero(spec.dim, spec.dim);
  return cplx(0, scale * rng.uniform()) * Mat::Identity(spec.dim, spec.dim);
}

inline Cochain random_cochain(const CoverPtr& cover, SupportPtr sup, int degree, const GroupSpec& spec, Rng& rng,
                              double scale = 1.0, bool central = false) {
  Cochain c = zero_cochain(cover, sup, degree, spec);
  for (auto& v : c.values) v = central ? random_central(spec, rng, scale) : random_algebra(spec, rng, scale);
  return c;
}

inline ScalarCochain random_scalar(const CoverPtr& cover, SupportPtr sup, int degree, Rng& rng, double scale = 1.0) {
  ScalarCochain c = zero_scalar(cover, sup, degree);
  for (auto& v : c.values) v = scale * rng.uniform();
  return c;
}

inline GroupFunction random_function(const CoverPtr& cover, SupportPtr sup, const GroupSpec& spec, Rng& rng,
                                     double scale = 1.0) {
  GroupFunction g = constant_function(cover, sup, spec, identity(spec.dim));
  for (auto& v : g.values) v = random_group(spec, rng, scale);
  return g;
}

/// u_ij = S_i S_j^{-1} for random patch functions S_i: always a cocycle.
inline std::map<Simplex, GroupFunction> coboundary_transitions(const CoverPtr& cover, const GroupSpec& spec, Rng& rng,
                                                               double scale) {
  std::map<int, GroupFunction> S;
  for (int v : cover->base().vertices()) S.emplace(v, random_function(cover, cover->overlap({v}), spec, rng, scale));
  std::map<Simplex, GroupFunction> u;
  for (const auto& e : cover->base().simplices(1)) {
    GroupFunction g = restrict_to(S.at(e[0]), cover->overlap(e));
    const GroupFunction sj = restrict_to(S.at(e[1]), cover->overlap(e));
    for (std::size_t n = 0; n < g.values.size(); ++n) g.values[n] = g.values[n] * sj.values[n].adjoint();
    u.emplace(e, std::move(g));
  }
  return u;
}

/// Vertex map of the n^3 grid onto the n x n grid forgetting the last axis.
inline std::map<int, int> projection_t3_t2(int n) {
  std::map<int, int> proj;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) proj[(x * n + y) * n + z] = x * n + y;
  return proj;
}

/// Center-banded U(2) gerbe: h_ij = exp(i theta_ij) lift(S_i S_j^{-1}) with
/// random phases |theta| < phase and small random rotations S_i, c the
/// transition product.
inline GerbeCocycle random_center_gerbe(const CoverPtr& cover, Rng& rng, double phase = 1.0) {
  const auto ext = ExtensionSpec::u2_over_center();
  const auto R = coboundary_transitions(cover, kSO3, rng, 0.4);
  std::map<Simplex, GroupFunction> h;
  for (const auto& [e, r] : R) {
    GroupFunction g = constant_function(cover, r.support, kU2, identity(2));
    for (std::size_t n = 0; n < g.values.size(); ++n)
      g.values[n] = std::polar(1.0, phase * rng.uniform()) * ext.lift(r.values[n]);
    h.emplace(e, std::move(g));
  }
  const Band band = Band::parse(kU2, "center");
  GerbeCocycle bare(cover, Band::whole(kU2), h, {});
  std::map<Simplex, GroupFunction> c;
  for (const auto& t : cover->base().simplices(2)) {
    GroupFunction g = constant_function(cover, cover->overlap(t), kU2, identity(2));
    for (std::size_t n = 0; n < g.values.size(); ++n) {
      const int v = g.support->simplices[0][n];
      g.values[n] = bare.h_at(t[2], t[0], v) * bare.h_at(t[0], t[1], v) * bare.h_at(t[1], t[2], v);
    }
    c.emplace(t, std::move(g));
  }
  return GerbeCocycle(cover, band, std::move(h), std::move(c));
}

/// Random central alpha_i on every patch.
inline std::map<int, Cochain> random_central_alpha(const CoverPtr& cover, const GroupSpec& spec, Rng& rng,
                                                   double scale = 1.0) {
  std::map<int, Cochain> alpha;
  for (int v : cover->base().vertices())
    alpha.emplace(v, random_cochain(cover, cover->overlap({v}), 1, spec, rng, scale, true));
  return alpha;
}

/// Wrapped increment of the first grid coordinate on an n x m torus, a closed
/// 1-cochain that is not exact.
inline ScalarCochain winding_cochain(const CoverPtr& cover, int n, int m) {
  const auto& sd = cover->sd();
  auto coord = [&](int v) {
    const Simplex& car = sd.carrier(v);
    const double x0 = car.front() / m;
    double acc = 0;
    for (int w : car) {
      double x = w / m;
      if (x - x0 > n / 2.0) x -= n;
      if (x0 - x > n / 2.0) x += n;
      acc += x;
    }
    return acc / static_cast<double>(car.size());
  };
  ScalarCochain eta = zero_scalar(cover, cover->global(), 1);
  for (int e = 0; e < eta.size(); ++e) {
    const auto vs = sd.simplex(1, eta.simplex(e));
    double d = coord(vs[1]) - coord(vs[0]);
    d -= n * std::round(d / n);
    eta.values[e] = d / n;
  }
  return eta;
}

inline Cochain times_i(const ScalarCochain& s) {
  Mat x(1, 1);
  x(0, 0) = cplx(0, 1);
  return scalar_times(s, x, kU1);
}

}  // namespace gctest

#endif
