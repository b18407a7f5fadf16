/// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "gerbecalc/examples.hpp"
#include "gerbecalc/holonomy.hpp"
#include "support.hpp"

using namespace gctest;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

/// Runs one criterion, turning an escaped exception into a FAIL line.
void criterion(int n, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(n, false, std::string("exception: ") + e.what());
  }
}

void calculus() {
  Rng rng(101);
  const auto t0 = Clock::now();
  double dd = 0, leibniz = 0, stokes = 0;
  int count = 0;
  for (const auto& cover : {sphere(0), torus(4, 4)}) {
    for (int n = 0; n < 250; ++n, ++count) {
      const int p = n % 2;
      const auto a = random_cochain(cover, cover->global(), p, kU2, rng);
      const auto b = random_cochain(cover, cover->global(), 1 - p, kU2, rng);
      dd = std::max(dd, max_abs(coboundary(coboundary(a))));
      const double sign = p == 0 ? 1.0 : -1.0;
      leibniz = std::max(leibniz, max_abs(coboundary(cup(a, b)) - (cup(coboundary(a), b) + sign * cup(a, coboundary(b)))));
      const auto one = p == 1 ? a : b;
      stokes = std::max(stokes, max_abs(integrate_raw(coboundary(one))));
    }
  }
  const double t = seconds_since(t0);
  report(1, dd < 1e-12 && leibniz < 1e-12 && stokes < 1e-12 && t < 5.0,
         fmt("%d cochains, max |dd| %.2e, Leibniz %.2e, Stokes %.2e, %.2f s", count, dd, leibniz, stokes, t));
}

void twisted_cocycle() {
  const auto t0 = Clock::now();
  const auto src = torus3(4), dst = torus(4, 4);
  const auto gc = pullback(monopole_gerbe(dst, 1, true), SimplicialMap(src, dst, projection_t3_t2(4)));
  const auto rep = check_cocycle(gc);
  const Simplex t = src->base().simplices(2)[5];
  GroupFunction c = gc.c(t);
  for (auto& v : c.values) v = v * mat_exp(0.01 * isigma(3));
  const auto bad = check_cocycle(gc.with_cocycle(t, c));
  const double time = seconds_since(t0);
  report(2, rep.max_deviation < 1e-9 && bad.max_deviation >= 5e-3 && bad.max_deviation <= 5e-2 && time < 30.0,
         fmt("%d tetrahedra, deviation %.2e, perturbed %.2e, %.2f s", rep.tetrahedra, rep.max_deviation,
             bad.max_deviation, time));
}

void boundary_identity() {
  Rng rng(103);
  const auto cover = sphere(0);
  int edges = 0;
  for (const auto& t : cover->base().simplices(2)) edges += cover->overlap(t)->size(1);
  double center = 0, lifting = 0;
  for (int n = 0; n < 200; ++n) {
    const ConnectiveBundle a(random_center_gerbe(cover, rng), random_central_alpha(cover, kU2, rng), {},
                             ConnectiveMode::Center);
    center = std::max(center, boundary_identity_check(a).max_deviation);
    const auto lift = build_lifting_gerbe(ExtensionSpec::u2_over_su2(true), cover, coboundary_transitions(cover, kU1, rng, 1.0));
    lifting = std::max(lifting, boundary_identity_check(ConnectiveBundle(lift.gerbe, {}, {}, ConnectiveMode::Full)).max_deviation);
  }
  // Triple overlaps of a surface hold no edges, so the same data are also
  // checked on the 3-torus, where the comparison is not empty.
  const auto t3 = torus3(3);
  double center3 = 0;
  for (int n = 0; n < 20; ++n) {
    const ConnectiveBundle a(random_center_gerbe(t3, rng, 0.3), random_central_alpha(t3, kU2, rng), {},
                             ConnectiveMode::Center);
    center3 = std::max(center3, boundary_identity_check(a).max_deviation);
  }
  const auto lift3 = build_lifting_gerbe(ExtensionSpec::u2_over_su2(true), t3, coboundary_transitions(t3, kU1, rng, 0.01));
  const double lifting3 = boundary_identity_check(ConnectiveBundle(lift3.gerbe, {}, {}, ConnectiveMode::Full)).max_deviation;
  report(3, center < 1e-9 && lifting < 1e-9 && center3 < 1e-9,
         fmt("sphere, 200 instances each: center-valued %.2e, lifting %.2e (%d triple-overlap edges, comparison "
             "empty); 3-torus: center-valued %.2e, lifting at increment 0.01 %.2e (second-order defect, not gated)",
             center, lifting, edges, center3, lifting3));
}

void abelian_oracle() {
  const auto cover = torus(8, 8);
  bool ok = true;
  std::string detail;
  for (double q : {0.0, 0.25, 1.0, 3.7}) {
    const auto t0 = Clock::now();
    const auto ex = trivial_curving(cover, q);
    // Direct summation of the glued curving.
    const auto& sd = cover->sd();
    cplx sum = 0;
    for (int s = 0; s < sd.count(2); ++s)
      sum += static_cast<double>(sd.orientation(s)) * ex.cur.L(sd.carrier(sd.simplex(2, s)[0]).front()).at(s)(0, 0);
    const auto r = holonomy(HolonomyProblem(ex.cb, ex.cur));
    const double err = std::abs(r.value(0, 0) - std::exp(sum));
    const double target = std::abs(r.value(0, 0) - std::exp(cplx(0, 2 * std::numbers::pi * q)));
    const double t = seconds_since(t0);
    ok = ok && err < 1e-9 && target < 1e-9 && t < 10.0;
    detail += fmt("%sq=%g: err %.1e (%.2f s)", detail.empty() ? "" : ", ", q, std::max(err, target), t);
  }
  report(4, ok, detail);
}

void choice_invariance() {
  Rng rng(105);
  const int n = 8;
  const auto cover = torus(n, n);
  const auto ex = trivial_curving(cover, 0.3);
  const HolonomyProblem p(ex.cb, ex.cur);
  const auto base = solve_potentials(p);
  const auto ref = holonomy_from_potentials(p, base);
  double potentials = 0;
  for (int k = 0; k < 50; ++k) {
    auto moved = base;
    for (auto& [v, lp] : moved) lp = lp + coboundary(random_cochain(cover, lp.support, 0, kU1, rng));
    potentials = std::max(potentials, max_abs(holonomy_from_potentials(p, moved).integral - ref.integral));
  }
  const auto eta = winding_cochain(cover, n, n);
  double shifts = 0;
  for (int k = 0; k < 50; ++k) {
    const auto beta = times_i(rng.uniform(-3, 3) * eta) + coboundary(random_cochain(cover, cover->global(), 0, kU1, rng));
    std::map<int, Cochain> alpha, L;
    for (int v : cover->base().vertices()) {
      const auto sup = cover->overlap({v});
      alpha.emplace(v, ex.cb.alpha(v) + restrict_to(beta, sup));
      L.emplace(v, ex.cur.L(v) + coboundary(restrict_to(beta, sup)));
    }
    const ConnectiveBundle cb(ex.cb.gerbe(), alpha, ex.cb.shifts(), ConnectiveMode::Center);
    shifts = std::max(shifts, max_abs(holonomy(HolonomyProblem(cb, CurvingData(cb, L))).integral - ref.integral));
  }
  report(5, potentials < 1e-9 && shifts < 1e-9,
         fmt("50 potential re-choices %.2e, 50 closed shifts %.2e", potentials, shifts));
}

/// Cech pairing of the class of c with the fundamental class: principal logs
/// of c at each tetrahedron barycenter, alternating sum over its faces.
double cech_pairing(const GerbeCocycle& gc) {
  const auto& cover = gc.cover();
  const auto& tets = cover->base().simplices(3);
  double total = 0;
  for (std::size_t n = 0; n < tets.size(); ++n) {
    const auto& T = tets[n];
    const int b = cover->overlap(T)->apex;
    double d = 0;
    for (int f = 0; f < 4; ++f) {
      Simplex face;
      for (int m = 0; m < 4; ++m)
        if (m != f) face.push_back(T[m]);
      d += (f % 2 == 0 ? 1.0 : -1.0) * std::arg(gc.c(face).at(b)(0, 0));
    }
    total += cover->base().orientation(static_cast<int>(n)) * d / (2 * std::numbers::pi);
  }
  return total;
}

void integrality() {
  const auto cover = torus3(3);
  double worst = 0, oracle_gap = 0;
  std::string values;
  for (int n = -2; n <= 2; ++n) {
    const auto ex = abelian_class3(cover, n);
    const double oracle = cech_pairing(ex.cb.gerbe());
    oracle_gap = std::max(oracle_gap, std::abs(oracle - n));
    const double integral = integrate(characteristic_form(InvariantPolynomial{1}, curvature3(ex.cb, ex.cur)));
    worst = std::max(worst, std::abs(integral - 2 * std::numbers::pi * oracle));
    values += fmt("%s%.6f", values.empty() ? "" : ", ", integral / (2 * std::numbers::pi));
  }
  report(6, worst < 1e-6 && oracle_gap < 1e-9,
         fmt("integral/2pi = [%s], max |integral - 2pi oracle| %.2e, oracle off integer by %.1e", values.c_str(),
             worst, oracle_gap));
}

void trivial_center() {
  Rng rng(107);
  const auto cover = sphere(1);
  const auto gc = GerbeCocycle::trivial(cover, Band::whole(kSO3));
  std::map<int, Cochain> alpha, L;
  for (int v : cover->base().vertices()) {
    alpha.emplace(v, random_cochain(cover, cover->overlap({v}), 1, kSO3, rng));
    L.emplace(v, random_cochain(cover, cover->overlap({v}), 2, kSO3, rng));
  }
  const auto cb = ConnectiveBundle::center_valued(gc, alpha);
  double data = 0;
  for (const auto& [v, a] : cb.alphas()) data = std::max(data, max_abs(a));
  for (const auto& [e, a] : connective_cocycle(cb)) data = std::max(data, max_abs(a));
  const auto r = holonomy(HolonomyProblem(cb, CurvingData::center_valued(cb, L)));
  const bool exact = r.value == identity(3);
  report(7, data == 0.0 && exact,
         fmt("max |center-valued data| %.1e, holonomy %s identity", data, exact ? "is exactly the" : "differs from the"));
}

}  // namespace

int main() {
  criterion(1, calculus);
  criterion(2, twisted_cocycle);
  criterion(3, boundary_identity);
  criterion(4, abelian_oracle);
  criterion(5, choice_invariance);
  criterion(6, integrality);
  criterion(7, trivial_center);
  return failures == 0 ? 0 : 1;
}
