#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gerbecalc/examples.hpp"
#include "gerbecalc/holonomy.hpp"
#include "support.hpp"

using namespace gctest;

namespace {

/// Orientation-signed sum of the curving over the subdivision, reading each
/// triangle from the patch of the lowest vertex in its first carrier.
cplx direct_sum(const CurvingData& cur, const CoverPtr& cover) {
  const auto& sd = cover->sd();
  cplx total = 0;
  for (int s = 0; s < sd.count(2); ++s) {
    const int i = sd.carrier(sd.simplex(2, s)[0]).front();
    total += static_cast<double>(sd.orientation(s)) * cur.L(i).at(s)(0, 0);
  }
  return total;
}

}  // namespace

TEST_CASE("trivial problem has identity holonomy") {
  const auto cover = sphere(1);
  const ConnectiveBundle cb(GerbeCocycle::trivial(cover, Band::whole(kU2)), {}, {}, ConnectiveMode::Full);
  const auto r = holonomy(HolonomyProblem(cb, CurvingData(cb, {})));
  CHECK(max_abs(r.value - identity(2)) == 0.0);
  for (const auto& [t, k] : r.kappa) CHECK(max_abs(k) == 0.0);
}

TEST_CASE("Whitney image of a single triangle") {
  const auto cover = sphere(1);
  const Simplex t = cover->base().simplices(2)[7];
  const int eps = cover->base().orientation(7);
  // Brute-force oracle from cup products of the partition of unity.
  const auto phi = [&](int v) { return partition_of_unity(cover, v); };
  const auto w = cup(cup(phi(t[0]), coboundary(phi(t[1]))), coboundary(phi(t[2]))) -
                 cup(cup(phi(t[1]), coboundary(phi(t[0]))), coboundary(phi(t[2]))) +
                 cup(cup(phi(t[2]), coboundary(phi(t[0]))), coboundary(phi(t[1])));
  CHECK(integrate(w) == doctest::Approx(eps * kWhitneyWeight).epsilon(1e-13));

  Mat X(1, 1);
  X(0, 0) = cplx(0, 0.7);
  const auto density = whitney_assemble({{t, X}}, cover, kU1);
  CHECK(max_abs(integrate_raw(density) - eps * X) < 1e-14);
  // The assembled density is the oracle divided by the weight, simplex by simplex.
  CHECK(max_abs(density - (1.0 / kWhitneyWeight) * times_i(0.7 * w)) < 1e-14);
}

TEST_CASE("global curving reproduces the direct sum") {
  const auto cover = torus(8, 8);
  for (double q : {0.0, 0.25, 1.0, 3.7}) {
    const auto ex = trivial_curving(cover, q);
    const cplx oracle = direct_sum(ex.cur, cover);
    CHECK(std::abs(oracle - cplx(0, 2 * std::numbers::pi * q)) < 1e-12);
    const auto r = holonomy(HolonomyProblem(ex.cb, ex.cur));
    CHECK(std::abs(r.value(0, 0) - std::exp(oracle)) < 1e-9);
    CHECK(max_abs(r.value - mat_exp(r.integral)) == 0.0);
  }
}

TEST_CASE("monopole curving integrates to 2 pi i times the charge") {
  for (const auto& cover : {sphere(1), torus(4, 4)}) {
    for (int charge : {-2, 1, 3}) {
      const auto ex = monopole_curving(cover, charge);
      const auto r = holonomy(HolonomyProblem(ex.cb, ex.cur));
      CHECK(std::abs(r.integral(0, 0) - cplx(0, 2 * std::numbers::pi * charge)) < 1e-9);
      CHECK(std::abs(r.value(0, 0) - 1.0) < 1e-9);
      CHECK(std::abs(direct_sum(ex.cur, cover) - r.integral(0, 0)) < 1e-9);
    }
  }
}

TEST_CASE("potential re-choices leave the integral unchanged") {
  Rng rng(41);
  const auto cover = torus(4, 4);
  const auto ex = monopole_curving(cover, 1);
  const HolonomyProblem p(ex.cb, ex.cur);
  const auto base = solve_potentials(p);
  const auto ref = holonomy_from_potentials(p, base);
  double worst = 0;
  for (int n = 0; n < 10; ++n) {
    auto moved = base;
    for (auto& [v, lp] : moved) lp = lp + coboundary(random_cochain(cover, lp.support, 0, kU1, rng));
    const auto r = holonomy_from_potentials(p, moved);
    worst = std::max(worst, max_abs(r.integral - ref.integral));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("closed global shifts of the connective data leave the holonomy unchanged") {
  Rng rng(42);
  const int n = 4;
  const auto cover = torus(n, n);
  const auto ex = trivial_curving(cover, 0.3);
  const auto ref = holonomy(HolonomyProblem(ex.cb, ex.cur));
  const auto eta = winding_cochain(cover, n, n);
  CHECK(max_abs(coboundary(eta)) < 1e-14);
  for (int k = 0; k < 5; ++k) {
    const auto beta = times_i(rng.uniform() * eta) + coboundary(random_cochain(cover, cover->global(), 0, kU1, rng));
    std::map<int, Cochain> alpha, L;
    for (int v : cover->base().vertices()) {
      const auto sup = cover->overlap({v});
      alpha.emplace(v, ex.cb.alpha(v) + restrict_to(beta, sup));
      // For abelian data the shift is L + d(beta); the discrete beta u beta is real.
      L.emplace(v, ex.cur.L(v) + coboundary(restrict_to(beta, sup)));
    }
    const ConnectiveBundle cb(ex.cb.gerbe(), alpha, ex.cb.shifts(), ConnectiveMode::Center);
    const auto r = holonomy(HolonomyProblem(cb, CurvingData(cb, L)));
    CHECK(std::abs(r.value(0, 0) - ref.value(0, 0)) < 1e-9);
  }
}

TEST_CASE("non-abelian data runs through the pipeline") {
  Rng rng(43);
  const auto cover = sphere(1);
  const auto gc = build_lifting_gerbe(ExtensionSpec::u2_over_su2(true), cover, coboundary_transitions(cover, kU1, rng, 0.5)).gerbe;
  std::map<int, Cochain> L;
  for (int v : cover->base().vertices()) L.emplace(v, random_cochain(cover, cover->overlap({v}), 2, kU2, rng, 0.1));
  const ConnectiveBundle cb(gc, {}, {}, ConnectiveMode::Full);
  const HolonomyProblem p(cb, CurvingData(cb, L));
  const auto r = holonomy(p);
  CHECK(in_group(kU2, r.value));
  CHECK(max_abs(r.value - mat_exp(r.integral)) == 0.0);
  CHECK(r.max_kappa_spread < 1e-9);
  CHECK(r.frame_convention.find("least-index") != std::string::npos);

  const auto again = holonomy(p);
  CHECK(again.integral == r.integral);
  for (const auto& [t, k] : r.kappa) CHECK(again.kappa.at(t) == k);
}

TEST_CASE("trivial center gives exactly the identity") {
  Rng rng(44);
  const auto cover = sphere(1);
  const auto gc = GerbeCocycle::trivial(cover, Band::whole(kSO3));
  std::map<int, Cochain> alpha, L;
  for (int v : cover->base().vertices()) {
    alpha.emplace(v, random_cochain(cover, cover->overlap({v}), 1, kSO3, rng));
    L.emplace(v, random_cochain(cover, cover->overlap({v}), 2, kSO3, rng));
  }
  const auto cb = ConnectiveBundle::center_valued(gc, alpha);
  const auto r = holonomy(HolonomyProblem(cb, CurvingData::center_valued(cb, L)));
  CHECK(r.value == identity(3));
}

TEST_CASE("holonomy needs a surface") {
  const auto ex = abelian_class3(torus3(3), 1);
  CHECK_THROWS_AS(HolonomyProblem(ex.cb, ex.cur), DegreeMismatch);
}
