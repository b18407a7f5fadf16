#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace gctest;

namespace {

std::vector<CoverPtr> surfaces() { return {sphere(1), torus(4, 4)}; }

}  // namespace

TEST_CASE("d of d vanishes") {
  Rng rng(1);
  for (const auto& c : surfaces()) {
    const auto a = random_cochain(c, c->global(), 0, kU2, rng);
    CHECK(max_abs(coboundary(coboundary(a))) < 1e-13);
    const auto v = c->overlap({c->base().vertices().front()});
    CHECK(max_abs(coboundary(coboundary(random_scalar(c, v, 0, rng)))) < 1e-13);
  }
  const auto t3 = torus3(3);
  CHECK(max_abs(coboundary(coboundary(random_cochain(t3, t3->global(), 1, kSU2, rng)))) < 1e-13);
}

TEST_CASE("coboundary is the alternating face sum") {
  Rng rng(2);
  const auto c = torus(3, 3);
  const auto a = random_scalar(c, c->global(), 1, rng);
  const auto da = coboundary(a);
  const auto& sd = c->sd();
  for (int n = 0; n < da.size(); ++n) {
    const auto f = sd.faces(2, da.simplex(n));
    const double expect = a.at(f[0]) - a.at(f[1]) + a.at(f[2]);
    CHECK(da.values[n] == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("cup product Leibniz rule") {
  Rng rng(3);
  for (const auto& c : surfaces()) {
    const auto a = random_cochain(c, c->global(), 0, kU2, rng);
    const auto b = random_cochain(c, c->global(), 1, kU2, rng);
    const auto lhs = coboundary(cup(a, b));
    const auto rhs = cup(coboundary(a), b) + cup(a, coboundary(b));
    CHECK(max_abs(lhs - rhs) < 1e-12);

    const auto p = random_cochain(c, c->global(), 1, kSU2, rng);
    const auto q = random_cochain(c, c->global(), 0, kSU2, rng);
    CHECK(max_abs(coboundary(cup(p, q)) - (cup(coboundary(p), q) - cup(p, coboundary(q)))) < 1e-12);
  }
}

TEST_CASE("Stokes: exact top cochains integrate to zero") {
  Rng rng(4);
  for (const auto& c : surfaces()) {
    const auto b = random_cochain(c, c->global(), 1, kU1, rng);
    CHECK(max_abs(integrate_raw(coboundary(b))) < 1e-12);
  }
  const auto t3 = torus3(3);
  CHECK(max_abs(integrate_raw(coboundary(random_cochain(t3, t3->global(), 2, kU1, rng)))) < 1e-12);
}

TEST_CASE("integration is the orientation-signed sum") {
  Rng rng(5);
  const auto c = sphere(0);
  const auto a = random_scalar(c, c->global(), 2, rng);
  double expect = 0;
  for (int n = 0; n < a.size(); ++n) expect += c->sd().orientation(a.simplex(n)) * a.values[n];
  CHECK(integrate(a) == doctest::Approx(expect).epsilon(1e-14));
  CHECK_THROWS_AS(integrate(random_scalar(c, c->global(), 1, rng)), DegreeMismatch);
}

TEST_CASE("cone contraction inverts d on overlaps") {
  Rng rng(6);
  const auto c = torus(4, 4);
  for (const Simplex& s : {Simplex{0}, Simplex{0, 1}, Simplex{0, 1, 5}}) {
    const auto sup = c->overlap(s);
    const auto beta = random_cochain(c, sup, 0, kU2, rng);
    const auto closed1 = coboundary(beta);
    CHECK(max_abs(coboundary(cone_contract(closed1)) - closed1) < 1e-13);
    if (sup->size(2) > 0) {
      const auto closed2 = coboundary(random_cochain(c, sup, 1, kU2, rng));
      CHECK(max_abs(coboundary(cone_contract(closed2)) - closed2) < 1e-13);
    }
  }
  const auto sup = c->overlap({0});
  CHECK_THROWS_AS(cone_contract(random_cochain(c, sup, 1, kU1, rng)), NotClosed);
  CHECK_THROWS_AS(cone_contract(coboundary(random_cochain(c, c->global(), 0, kU1, rng))), NotCone);
}

TEST_CASE("Maurer-Cartan forms") {
  Rng rng(7);
  const auto c = sphere(1);
  const auto sup = c->overlap({0, 1});
  const Mat g0 = random_group(kSU2, rng);
  CHECK(max_abs(maurer_cartan(constant_function(c, sup, kSU2, g0))) < 1e-14);

  // U(1): MC is the difference of phases.
  const auto g = random_function(c, sup, kU1, rng, 0.5);
  const auto mc = maurer_cartan(g);
  for (int n = 0; n < mc.size(); ++n) {
    const auto e = c->sd().simplex(1, mc.simplex(n));
    const double expect = std::arg(g.at(e[1])(0, 0)) - std::arg(g.at(e[0])(0, 0));
    CHECK(mc.values[n](0, 0).imag() == doctest::Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("adjoint transport by the identity is trivial") {
  Rng rng(8);
  const auto c = torus(3, 3);
  const auto sup = c->overlap({0, 1});
  const auto a = random_cochain(c, sup, 1, kU2, rng);
  CHECK(max_abs(ad_transport(constant_function(c, sup, kU2, identity(2)), a) - a) == 0.0);
  const Mat g = random_group(kU2, rng);
  const auto moved = ad_transport(constant_function(c, sup, kU2, g), a);
  for (int n = 0; n < a.size(); ++n) CHECK(max_abs(moved.values[n] - g.adjoint() * a.values[n] * g) < 1e-14);
}

TEST_CASE("pullback commutes with d and cup") {
  Rng rng(9);
  const auto src = torus3(4), dst = torus(4, 4);
  std::map<int, int> proj;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (int z = 0; z < 4; ++z) proj[(x * 4 + y) * 4 + z] = x * 4 + y;
  const SimplicialMap f(src, dst, proj);
  const auto a = random_cochain(dst, dst->global(), 0, kU2, rng);
  const auto b = random_cochain(dst, dst->global(), 1, kU2, rng);
  const auto pa = pullback(f, a, src->global());
  const auto pb = pullback(f, b, src->global());
  CHECK(max_abs(pullback(f, coboundary(b), src->global()) - coboundary(pb)) < 1e-13);
  CHECK(max_abs(pullback(f, cup(a, b), src->global()) - cup(pa, pb)) < 1e-13);
}

TEST_CASE("support mismatches are reported") {
  Rng rng(10);
  const auto c = torus(3, 3);
  const auto a = random_cochain(c, c->overlap({0}), 1, kU1, rng);
  const auto b = random_cochain(c, c->overlap({1}), 1, kU1, rng);
  CHECK_THROWS_AS(a + b, SupportMismatch);
  CHECK_THROWS_AS(restrict_to(a, c->global()), SupportMismatch);
}
