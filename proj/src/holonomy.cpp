#include "gerbecalc/holonomy.hpp"

#include <algorithm>
#include <vector>

#include "gerbecalc/parallel.hpp"

namespace gerbecalc {

HolonomyProblem::HolonomyProblem(ConnectiveBundle cb_, CurvingData cur_) : cb(std::move(cb_)), cur(std::move(cur_)) {
  if (cb.cover()->dim() != 2) throw DegreeMismatch("holonomy needs a closed oriented surface");
}

namespace {

template <class Key, class F>
std::map<Key, Cochain> map_parallel(const std::vector<Key>& keys, F f) {
  std::vector<Cochain> out(keys.size());
  parallel_for(static_cast<int>(keys.size()), [&](int i) { out[i] = f(keys[i]); });
  std::map<Key, Cochain> m;
  for (std::size_t i = 0; i < keys.size(); ++i) m.emplace(keys[i], std::move(out[i]));
  return m;
}

/// Moves a cochain living on U_ijk from the U_b frame into the U_a frame.
Cochain to_frame(const ConnectiveBundle& cb, int a, int b, const Cochain& c) {
  if (cb.mode() == ConnectiveMode::Center) return c;
  return ad_transport(restrict_to(cb.gerbe().transport(a, b), c.support), c);
}

template <class F>
auto stage(const char* name, F f) -> decltype(f()) {
  const std::string prefix = std::string(name) + ": ";
  try {
    return f();
  } catch (const NotClosed& e) {
    throw NotClosed(prefix + e.what());
  } catch (const NotConstant& e) {
    throw NotConstant(prefix + e.what());
  } catch (const BranchCutError& e) {
    throw BranchCutError(prefix + e.what());
  } catch (const NotCone& e) {
    throw NotCone(prefix + e.what());
  }
}

}  // namespace

std::map<int, Cochain> solve_potentials(const HolonomyProblem& p) {
  const auto& verts = p.cover()->base().vertices();
  return map_parallel(verts, [&](int v) { return cone_contract(p.cur.L(v)); });
}

std::map<Simplex, Cochain> solve_wedge_potentials(const HolonomyProblem& p) {
  return map_parallel(p.cover()->base().simplices(1), [&](const Simplex& e) {
    const Cochain a = p.cb.alpha_between(e[0], e[1]);
    return cone_contract(cup(a, a));
  });
}

HChain build_h_chain(const HolonomyProblem& p, const std::map<int, Cochain>& potentials,
                     const std::map<Simplex, Cochain>& wedge_potentials, double tol) {
  const auto& edges = p.cover()->base().simplices(1);
  std::vector<Cochain> h(edges.size()), second(edges.size());
  std::vector<double> closed(edges.size(), 0.0);
  parallel_for(static_cast<int>(edges.size()), [&](int n) {
    const Simplex& e = edges[n];
    SupportPtr sup = p.cover()->overlap(e);
    h[n] = p.cb.alpha_between(e[0], e[1]) + wedge_potentials.at(e);
    const Cochain rho = restrict_to(potentials.at(e[1]), sup) - restrict_to(potentials.at(e[0]), sup) - h[n];
    closed[n] = max_abs(coboundary(rho));
    second[n] = cone_contract(rho, tol);
  });
  HChain out;
  for (std::size_t n = 0; n < edges.size(); ++n) {
    out.h.emplace(edges[n], std::move(h[n]));
    out.second.emplace(edges[n], std::move(second[n]));
    out.rho_closedness = std::max(out.rho_closedness, closed[n]);
  }
  return out;
}

Constants extract_constants(const HolonomyProblem& p, const HChain& chain, double tol) {
  const auto& tris = p.cover()->base().simplices(2);
  std::vector<Mat> kappa(tris.size());
  std::vector<double> spread(tris.size(), 0.0), closed(tris.size(), 0.0);
  parallel_for(static_cast<int>(tris.size()), [&](int n) {
    const Simplex& t = tris[n];
    const int i = t[0], j = t[1], k = t[2];
    SupportPtr sup = p.cover()->overlap(t);
    auto on = [&](const Cochain& c) { return restrict_to(c, sup); };
    const Cochain dh = to_frame(p.cb, i, j, on(chain.h.at({j, k}))) - on(chain.h.at({i, k})) + on(chain.h.at({i, j}));
    closed[n] = max_abs(coboundary(dh));
    const Cochain C = cone_contract(dh, tol);
    const Cochain dL = to_frame(p.cb, i, j, on(chain.second.at({j, k}))) - on(chain.second.at({i, k})) +
                       on(chain.second.at({i, j}));
    const Cochain total = C + dL;
    const Mat& at_apex = total.at(sup->apex);
    double s = 0.0;
    for (const auto& v : total.values) s = std::max(s, max_abs(v - at_apex));
    if (s > tol)
      throw NotConstant("constant chain on " + simplex_key(t) + " varies by " + std::to_string(s));
    kappa[n] = -at_apex;
    spread[n] = s;
  });
  Constants out;
  for (std::size_t n = 0; n < tris.size(); ++n) {
    out.kappa.emplace(tris[n], kappa[n]);
    out.spread.emplace(tris[n], spread[n]);
    out.max_spread = std::max(out.max_spread, spread[n]);
    out.closedness = std::max(out.closedness, closed[n]);
  }
  return out;
}

Cochain whitney_assemble(const std::map<Simplex, Mat>& kappa, const CoverPtr& cover, GroupSpec spec) {
  Cochain out = zero_cochain(cover, cover->global(), 2, spec);
  const auto& sd = cover->sd();
  for (int n = 0; n < out.size(); ++n) {
    const auto s = sd.simplex(2, out.simplex(n));
    const int v0 = s[0], v1 = s[1], v2 = s[2];
    const Simplex& top = sd.carrier(v2);
    if (top.size() != 3) continue;
    auto it = kappa.find(top);
    if (it == kappa.end()) continue;
    auto f = [&](int a) { return cover->phi(a, v0); };
    auto g = [&](int a) { return cover->phi(a, v1) - cover->phi(a, v0); };
    auto e = [&](int a) { return cover->phi(a, v2) - cover->phi(a, v1); };
    const int i = top[0], j = top[1], k = top[2];
    const double w = f(i) * g(j) * e(k) - f(j) * g(i) * e(k) + f(k) * g(i) * e(j);
    out.values[n] = (w / kWhitneyWeight) * it->second;
  }
  return out;
}

HolonomyReport holonomy_from_potentials(const HolonomyProblem& p, const std::map<int, Cochain>& potentials,
                                        double tol) {
  HolonomyReport r;
  r.frame_convention = p.cb.mode() == ConnectiveMode::Center
                           ? "center-valued: frame transport trivial"
                           : "Cech differentials transported to the least-index patch frame by Ad(T_ij^-1)";
  for (const auto& [v, lp] : potentials)
    r.potential_residual = std::max(r.potential_residual, max_abs(coboundary(lp) - p.cur.L(v)));

  const auto wedge = stage("wedge potentials", [&] { return solve_wedge_potentials(p); });
  for (const auto& [e, w] : wedge) {
    const Cochain a = p.cb.alpha_between(e[0], e[1]);
    r.wedge_residual = std::max(r.wedge_residual, max_abs(coboundary(w) - cup(a, a)));
  }
  const HChain chain = stage("h chain", [&] { return build_h_chain(p, potentials, wedge, tol); });
  r.rho_closedness = chain.rho_closedness;
  const Constants k = stage("constants", [&] { return extract_constants(p, chain, tol); });
  r.kappa = k.kappa;
  r.kappa_spread = k.spread;
  r.max_kappa_spread = k.max_spread;
  r.delta_h_closedness = k.closedness;

  r.density = whitney_assemble(r.kappa, p.cover(), p.cb.group());
  const AlgebraElement integral = integrate(r.density);
  r.integral = integral.mat();
  r.value = exp_alg(integral).mat();
  return r;
}

HolonomyReport holonomy(const HolonomyProblem& p, double tol) {
  const auto potentials = stage("potentials", [&] { return solve_potentials(p); });
  return holonomy_from_potentials(p, potentials, tol);
}

}  // namespace gerbecalc
