#include "gerbecalc/connective.hpp"

#include <algorithm>

namespace gerbecalc {

std::string mode_label(ConnectiveMode m) { return m == ConnectiveMode::Center ? "center" : "full"; }

ConnectiveMode parse_mode(const std::string& s) {
  if (s == "full") return ConnectiveMode::Full;
  if (s == "center") return ConnectiveMode::Center;
  throw ParseError("unknown connective mode '" + s + "'");
}

Cochain gauge_transform(const GroupFunction& g, const Cochain& nabla) {
  if (nabla.degree != 1) throw DegreeMismatch("gauge_transform acts on 1-cochains");
  const Cochain n = restrict_to(nabla, g.support);
  return ad_transport(g, n) + maurer_cartan(g);
}

namespace {

Cochain band_project(const Band& band, const Cochain& c) {
  Cochain out = c;
  for (auto& v : out.values) v = band.center(v);
  return out;
}

void check_cochain(const Cochain& c, const SupportPtr& sup, int degree, const GroupSpec& g, const std::string& what) {
  if (c.degree != degree) throw DegreeMismatch(what + " must have degree " + std::to_string(degree));
  if (!(c.spec == g)) throw SpecMismatch(what + " is not valued in the algebra of " + std::string(g.label()));
  if (c.support != sup) throw SupportMismatch(what + " does not live on " + sup->key());
  for (const auto& v : c.values)
    if (v.rows() != g.dim || !in_algebra(g, v, kTolAlg))
      throw MembershipError(what + " has a value outside the Lie algebra");
}

Cochain adopt_support(Cochain c, const CoverPtr& cover, const SupportPtr& sup) {
  if (c.support && c.support != sup && c.support->base == sup->base && c.values.size() == sup->simplices[c.degree].size())
    c.support = sup;
  c.cover = cover;
  return c;
}

}  // namespace

ConnectiveBundle::ConnectiveBundle(GerbeCocycle gc, std::map<int, Cochain> alpha, std::map<Simplex, Cochain> shift,
                                   ConnectiveMode mode)
    : gc_(std::move(gc)), mode_(mode) {
  const auto& cover = gc_.cover();
  const auto& base = cover->base();
  const GroupSpec g = gc_.group();
  for (int v : base.vertices()) {
    SupportPtr sup = cover->overlap({v});
    auto it = alpha.find(v);
    Cochain a = it == alpha.end() ? zero_cochain(cover, sup, 1, g) : adopt_support(std::move(it->second), cover, sup);
    check_cochain(a, sup, 1, g, "alpha_" + std::to_string(v));
    if (mode_ == ConnectiveMode::Center && max_abs(band_project(gc_.band(), a) - a) != 0.0)
      throw MembershipError("alpha_" + std::to_string(v) + " is not center-valued");
    alpha_.emplace(v, std::move(a));
    if (it != alpha.end()) alpha.erase(it);
  }
  if (!alpha.empty()) throw SupportMismatch("alpha given for unknown vertex " + std::to_string(alpha.begin()->first));
  for (const auto& e : base.simplices(1)) {
    auto it = shift.find(e);
    if (it == shift.end()) continue;
    SupportPtr sup = cover->overlap(e);
    Cochain a = adopt_support(std::move(it->second), cover, sup);
    check_cochain(a, sup, 1, g, "shift " + simplex_key(e));
    if (max_abs(band_project(gc_.band(), a) - a) > kTolLinear)
      throw MembershipError("shift " + simplex_key(e) + " is not central");
    shift_.emplace(e, std::move(a));
    shift.erase(it);
  }
  if (!shift.empty()) throw SupportMismatch("shift given for non-edge " + simplex_key(shift.begin()->first));
}

ConnectiveBundle ConnectiveBundle::center_valued(GerbeCocycle gc, std::map<int, Cochain> alpha,
                                                 std::map<Simplex, Cochain> shift) {
  for (auto& [v, a] : alpha) a = band_project(gc.band(), a);
  for (auto& [e, a] : shift) a = band_project(gc.band(), a);
  return ConnectiveBundle(std::move(gc), std::move(alpha), std::move(shift), ConnectiveMode::Center);
}

Cochain ConnectiveBundle::shift(int a, int b) const {
  SupportPtr sup = cover()->overlap({a, b});
  auto it = shift_.find(a < b ? Simplex{a, b} : Simplex{b, a});
  if (it == shift_.end()) return zero_cochain(cover(), sup, 1, group());
  return a < b ? it->second : -it->second;
}

Cochain ConnectiveBundle::project(const Cochain& c) const {
  return mode_ == ConnectiveMode::Center ? band_project(gc_.band(), c) : c;
}

Cochain ConnectiveBundle::pull_connection(int a, int b, const Cochain& nabla) const {
  SupportPtr sup = cover()->overlap({a, b});
  const Cochain n = restrict_to(nabla, sup);
  const GroupFunction& t = gc_.transport(a, b);
  if (mode_ == ConnectiveMode::Center) return n + band_project(gc_.band(), maurer_cartan(t)) + shift(a, b);
  return gauge_transform(t, n) + shift(a, b);
}

Cochain ConnectiveBundle::pull_difference(int a, int b, const Cochain& diff) const {
  SupportPtr sup = cover()->overlap({a, b});
  const Cochain d = restrict_to(diff, sup);
  if (mode_ == ConnectiveMode::Center) return d;
  return ad_transport(gc_.transport(a, b), d);
}

Cochain ConnectiveBundle::alpha_between(int a, int b) const {
  SupportPtr sup = cover()->overlap({a, b});
  return restrict_to(alpha_.at(a), sup) - pull_connection(a, b, alpha_.at(b));
}

std::map<Simplex, Cochain> connective_cocycle(const ConnectiveBundle& cb) {
  std::map<Simplex, Cochain> out;
  for (const auto& e : cb.cover()->base().simplices(1)) out.emplace(e, cb.alpha_between(e[0], e[1]));
  return out;
}

BoundaryReport boundary_identity_check(const ConnectiveBundle& cb) {
  BoundaryReport report;
  const auto& base = cb.cover()->base();
  if (base.dim() < 2) return report;
  const auto& gc = cb.gerbe();
  for (const auto& t : base.simplices(2)) {
    const int i1 = t[0], i2 = t[1], i3 = t[2];
    SupportPtr sup = cb.cover()->overlap(t);
    auto on = [&](const Cochain& c) { return restrict_to(c, sup); };
    auto transport = [&](int a, int b, const Cochain& c) {
      if (cb.mode() == ConnectiveMode::Center) return c;
      return ad_transport(restrict_to(gc.transport(a, b), sup), c);
    };
    const Cochain lhs = transport(i1, i2, on(cb.alpha_between(i2, i3))) - on(cb.alpha_between(i1, i3)) +
                        on(cb.alpha_between(i1, i2));

    const GroupFunction c_inv = gc.c(t).inverse();
    const Cochain a3 = on(cb.alpha(i3));
    Cochain c_star;
    if (cb.mode() == ConnectiveMode::Center)
      c_star = a3 + cb.project(maurer_cartan(c_inv));
    else
      c_star = gauge_transform(c_inv, a3);
    const Cochain rhs = transport(i1, i3, a3 - c_star);

    const double dev = max_abs(lhs - rhs);
    report.deviation[t] = dev;
    if (dev > report.max_deviation || report.worst.empty()) {
      report.max_deviation = std::max(report.max_deviation, dev);
      report.worst = t;
    }
  }
  return report;
}

Cochain curving_shift(const Cochain& L, const Cochain& alpha) {
  if (L.degree != 2 || alpha.degree != 1) throw DegreeMismatch("curving_shift needs a 2-cochain and a 1-cochain");
  const Cochain a = restrict_to(alpha, L.support);
  return L + coboundary(a) + cup(a, a);
}

CurvingData::CurvingData(const ConnectiveBundle& cb, std::map<int, Cochain> L, double tol) {
  const auto& cover = cb.cover();
  const auto& base = cover->base();
  const GroupSpec g = cb.group();
  for (int v : base.vertices()) {
    SupportPtr sup = cover->overlap({v});
    auto it = L.find(v);
    Cochain l = it == L.end() ? zero_cochain(cover, sup, 2, g) : adopt_support(std::move(it->second), cover, sup);
    check_cochain(l, sup, 2, g, "L_" + std::to_string(v));
    if (cb.mode() == ConnectiveMode::Center && max_abs(cb.project(l) - l) != 0.0)
      throw MembershipError("L_" + std::to_string(v) + " is not center-valued");
    L_.emplace(v, std::move(l));
    if (it != L.end()) L.erase(it);
  }
  if (!L.empty()) throw SupportMismatch("curving given for unknown vertex " + std::to_string(L.begin()->first));

  for (const auto& e : base.simplices(1)) {
    SupportPtr sup = cover->overlap(e);
    const Cochain a = cb.alpha_between(e[0], e[1]);
    const Cochain expected = coboundary(a) + cup(a, a);
    const Cochain diff = restrict_to(L_.at(e[1]), sup) - restrict_to(L_.at(e[0]), sup);
    const double dev = max_abs(diff - expected);
    max_deviation_ = std::max(max_deviation_, dev);
    if (dev > tol)
      throw InvalidCurving("curving incompatible on overlap " + simplex_key(e) + ": deviation " + std::to_string(dev));
  }
}

CurvingData CurvingData::center_valued(const ConnectiveBundle& cb, std::map<int, Cochain> L, double tol) {
  for (auto& [v, l] : L) l = band_project(cb.gerbe().band(), l);
  return CurvingData(cb, std::move(L), tol);
}

Curvature3Report curvature3_local(const ConnectiveBundle& cb, const CurvingData& cur) {
  Curvature3Report r;
  const auto& base = cb.cover()->base();
  if (base.dim() != 3) throw DegreeMismatch("curvature3 needs a 3-dimensional complex");
  for (const auto& [v, l] : cur.all()) r.local.emplace(v, coboundary(l));
  for (const auto& e : base.simplices(1)) {
    SupportPtr sup = cb.cover()->overlap(e);
    const double dev = max_abs(restrict_to(r.local.at(e[1]), sup) - restrict_to(r.local.at(e[0]), sup));
    if (dev > r.overlap_deviation || r.worst.empty()) {
      r.overlap_deviation = std::max(r.overlap_deviation, dev);
      r.worst = e;
    }
  }
  return r;
}

Cochain curvature3(const ConnectiveBundle& cb, const CurvingData& cur, double tol) {
  const Curvature3Report r = curvature3_local(cb, cur);
  const bool abelian = cb.group().name == GroupName::U1 || cb.mode() == ConnectiveMode::Center;
  if (!abelian) throw NotGluable("global curvature assembly requires center-valued or abelian data");
  if (r.overlap_deviation >= tol)
    throw NotGluable("local curvatures disagree on overlap " + simplex_key(r.worst) + " by " +
                     std::to_string(r.overlap_deviation));
  const CoverPtr& cover = cb.cover();
  Cochain omega = zero_cochain(cover, cover->global(), 3, cb.group());
  const auto& sd = cover->sd();
  for (int idx = 0; idx < omega.size(); ++idx) {
    const int s = omega.simplex(idx);
    const int v0 = sd.simplex(3, s)[0];
    Mat acc = zero(cb.group().dim);
    for (int i : sd.carrier(v0)) acc += cover->phi(i, v0) * r.local.at(i).at(s);
    omega.values[idx] = acc;
  }
  return omega;
}

ScalarCochain characteristic_form(const InvariantPolynomial& P, const Cochain& omega) {
  const int degree = 3 * P.degree;
  const int dim = omega.cover->dim();
  if (degree > dim) {
    ScalarCochain z;
    z.cover = omega.cover;
    z.support = omega.cover->global();
    z.degree = degree;
    return z;
  }
  if (P.degree != 1) throw ArityMismatch("characteristic forms of degree above one are not representable here");
  ScalarCochain out = zero_scalar(omega.cover, omega.support, omega.degree);
  for (int i = 0; i < omega.size(); ++i) {
    const Mat v = omega.values[i];
    out.values[i] = P.evaluate(omega.spec, std::span<const Mat>(&v, 1));
  }
  return out;
}

}  // namespace gerbecalc
