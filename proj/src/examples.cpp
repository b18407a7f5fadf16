#include "gerbecalc/examples.hpp"

#include <cmath>
#include <numbers>

namespace gerbecalc {

namespace {

const GroupSpec kU1 = GroupSpec::of(GroupName::U1);

Mat scalar(cplx z) {
  Mat m(1, 1);
  m(0, 0) = z;
  return m;
}

/// Value of an alternating cochain given on sorted simplices.
template <class T>
T alternating(const std::map<Simplex, T>& m, const Simplex& tuple, T zero_value) {
  Simplex s = tuple;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) return zero_value;
  auto it = m.find(s);
  if (it == m.end()) return zero_value;
  return permutation_sign(tuple) > 0 ? it->second : -it->second;
}

/// Alternating potential mu_sigma at a subdivision vertex for unsorted sigma.
double potential_at(const std::map<Simplex, ScalarCochain>& mu, const Simplex& tuple, int sd_vertex) {
  Simplex s = tuple;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) return 0.0;
  const double v = mu.at(s).at(sd_vertex);
  return permutation_sign(tuple) > 0 ? v : -v;
}

Simplex with_front(int k, const Simplex& rest) {
  Simplex t{k};
  t.insert(t.end(), rest.begin(), rest.end());
  return t;
}

}  // namespace

std::map<Simplex, int> concentrated_charge(const TriangulatedComplex& base, int charge) {
  const int d = base.dim();
  const auto& tops = base.simplices(d);
  const int count = std::abs(charge);
  if (count > static_cast<int>(tops.size())) throw SpecMismatch("charge exceeds the number of top simplices");
  std::map<Simplex, int> n;
  const int sign = charge < 0 ? -1 : 1;
  for (int idx = 0; idx < count; ++idx) n[tops[idx]] = sign * base.orientation(idx);
  return n;
}

std::map<Simplex, ScalarCochain> charge_potentials(const CoverPtr& cover, const std::map<Simplex, int>& n) {
  const auto& base = cover->base();
  const auto& sd = cover->sd();
  std::map<Simplex, ScalarCochain> out;
  for (const auto& sigma : base.simplices(base.dim() - 1)) {
    ScalarCochain mu = zero_scalar(cover, cover->overlap(sigma), 0);
    for (int i = 0; i < mu.size(); ++i) {
      const int x = mu.simplex(i);
      double acc = 0.0;
      for (int l : sd.carrier(x)) acc += cover->phi(l, x) * alternating(n, with_front(l, sigma), 0);
      mu.values[i] = acc;
    }
    out.emplace(sigma, std::move(mu));
  }
  return out;
}

std::map<Simplex, GroupFunction> monopole_transitions(const CoverPtr& cover, int charge) {
  if (cover->dim() != 2) throw DegreeMismatch("monopole transitions live on surfaces");
  const auto mu = charge_potentials(cover, concentrated_charge(cover->base(), charge));
  std::map<Simplex, GroupFunction> out;
  for (const auto& [e, m] : mu) {
    GroupFunction g;
    g.cover = cover;
    g.support = m.support;
    g.spec = kU1;
    for (double v : m.values) g.values.push_back(scalar(std::polar(1.0, 2 * std::numbers::pi * v)));
    out.emplace(e, std::move(g));
  }
  return out;
}

GerbeCocycle monopole_gerbe(const CoverPtr& cover, int charge, bool twisted) {
  return build_lifting_gerbe(ExtensionSpec::u2_over_su2(twisted), cover, monopole_transitions(cover, charge)).gerbe;
}

GerbeExample trivial_curving(const CoverPtr& cover, double total) {
  if (cover->dim() != 2) throw DegreeMismatch("trivial_curving lives on surfaces");
  const auto& sd = cover->sd();
  Cochain B = zero_cochain(cover, cover->global(), 2, kU1);
  double weight_sum = 0.0;
  std::vector<double> w(B.size());
  for (int i = 0; i < B.size(); ++i) {
    w[i] = 1.0 + 0.5 * std::sin(0.37 * i);
    weight_sum += w[i];
  }
  const double scale = 2 * std::numbers::pi * total / weight_sum;
  for (int i = 0; i < B.size(); ++i)
    B.values[i] = scalar(cplx(0, sd.orientation(B.simplex(i)) * w[i] * scale));

  ConnectiveBundle cb(GerbeCocycle::trivial(cover, Band::whole(kU1)), {}, {}, ConnectiveMode::Center);
  std::map<int, Cochain> L;
  for (int v : cover->base().vertices()) L.emplace(v, restrict_to(B, cover->overlap({v})));
  CurvingData cur(cb, std::move(L));
  return {std::move(cb), std::move(cur)};
}

GerbeExample monopole_curving(const CoverPtr& cover, int charge) {
  if (cover->dim() != 2) throw DegreeMismatch("monopole_curving lives on surfaces");
  const auto& base = cover->base();
  const auto& sd = cover->sd();
  const auto mu = charge_potentials(cover, concentrated_charge(base, charge));
  const double two_pi = 2 * std::numbers::pi;

  // a_i = 2 pi i sum_k phi_k u d(mu_ik) on U_i.
  std::map<int, Cochain> a;
  for (int i : base.vertices()) {
    Cochain ai = zero_cochain(cover, cover->overlap({i}), 1, kU1);
    for (int n = 0; n < ai.size(); ++n) {
      const auto e = sd.simplex(1, ai.simplex(n));
      double acc = 0.0;
      for (int k : sd.carrier(e[0])) {
        if (k == i) continue;
        acc += cover->phi(k, e[0]) * (potential_at(mu, {i, k}, e[1]) - potential_at(mu, {i, k}, e[0]));
      }
      ai.values[n] = scalar(cplx(0, two_pi * acc));
    }
    a.emplace(i, std::move(ai));
  }
  std::map<Simplex, Cochain> shift;
  for (const auto& e : base.simplices(1)) {
    SupportPtr sup = cover->overlap(e);
    shift.emplace(e, restrict_to(a.at(e[0]), sup) - restrict_to(a.at(e[1]), sup));
  }
  std::map<int, Cochain> L;
  for (const auto& [i, ai] : a) L.emplace(i, coboundary(ai));
  ConnectiveBundle cb(GerbeCocycle::trivial(cover, Band::whole(kU1)), std::move(a), std::move(shift),
                      ConnectiveMode::Center);
  CurvingData cur(cb, std::move(L));
  return {std::move(cb), std::move(cur)};
}

GerbeExample abelian_class3(const CoverPtr& cover, int n) {
  if (cover->dim() != 3) throw DegreeMismatch("abelian_class3 lives on 3-manifolds");
  const auto& base = cover->base();
  const auto& sd = cover->sd();
  const auto lambda = charge_potentials(cover, concentrated_charge(base, n));
  const double two_pi = 2 * std::numbers::pi;

  std::map<Simplex, GroupFunction> c;
  for (const auto& [t, l] : lambda) {
    GroupFunction g;
    g.cover = cover;
    g.support = l.support;
    g.spec = kU1;
    for (double v : l.values) g.values.push_back(scalar(std::polar(1.0, two_pi * v)));
    c.emplace(t, std::move(g));
  }
  GerbeCocycle gc(cover, Band::whole(kU1), {}, std::move(c));

  std::map<Simplex, Cochain> shift;
  for (const auto& e : base.simplices(1)) {
    Cochain A = zero_cochain(cover, cover->overlap(e), 1, kU1);
    for (int m = 0; m < A.size(); ++m) {
      const auto s = sd.simplex(1, A.simplex(m));
      double acc = 0.0;
      for (int k : sd.carrier(s[0])) {
        if (k == e[0] || k == e[1]) continue;
        const Simplex t{k, e[0], e[1]};
        acc += cover->phi(k, s[0]) * (potential_at(lambda, t, s[1]) - potential_at(lambda, t, s[0]));
      }
      A.values[m] = scalar(cplx(0, -two_pi * acc));
    }
    shift.emplace(e, std::move(A));
  }
  ConnectiveBundle cb(std::move(gc), {}, std::move(shift), ConnectiveMode::Center);

  // L_i = sum_k phi_k u d(alpha_ki).
  std::map<Simplex, Cochain> d_alpha;
  for (const auto& e : base.simplices(1)) d_alpha.emplace(e, coboundary(cb.alpha_between(e[0], e[1])));
  std::map<int, Cochain> L;
  for (int i : base.vertices()) {
    Cochain Li = zero_cochain(cover, cover->overlap({i}), 2, kU1);
    for (int m = 0; m < Li.size(); ++m) {
      const int s = Li.simplex(m);
      const int v0 = sd.simplex(2, s)[0];
      cplx acc = 0.0;
      for (int k : sd.carrier(v0)) {
        if (k == i) continue;
        // alpha_ki = -Ad(.)alpha_ik on abelian data, so d(alpha_ki) = -d(alpha_ik).
        const Cochain& da = d_alpha.at(k < i ? Simplex{k, i} : Simplex{i, k});
        const cplx v = da.at(s)(0, 0);
        acc += cover->phi(k, v0) * (k < i ? v : -v);
      }
      Li.values[m] = scalar(acc);
    }
    L.emplace(i, std::move(Li));
  }
  CurvingData cur(cb, std::move(L));
  return {std::move(cb), std::move(cur)};
}

}  // namespace gerbecalc
