#include "gerbecalc/dcalc.hpp"

#include <algorithm>
#include <cmath>

namespace gerbecalc {

namespace {

template <class V>
void require_same(const BasicCochain<V>& a, const BasicCochain<V>& b, const char* what) {
  if (a.support != b.support) throw SupportMismatch(std::string(what) + ": cochains live on different supports");
  if (a.degree != b.degree) throw DegreeMismatch(std::string(what) + ": degrees differ");
}

template <class A, class B>
void require_support(const A& a, const B& b, const char* what) {
  if (a.support != b.support)
    throw SupportMismatch(std::string(what) + ": supports " + a.support->key() + " and " + b.support->key() +
                          " differ");
}

inline double zero_of(const ScalarCochain&) { return 0.0; }
inline Mat zero_of(const Cochain& c) { return zero(c.spec.dim); }

}  // namespace

template <class V>
const V& BasicCochain<V>::at(int global_idx) const {
  const int i = support->local_index(degree, global_idx);
  if (i < 0) throw SupportMismatch("simplex outside the support " + support->key());
  return values[i];
}

template <class V>
V BasicCochain<V>::zero_value() const {
  return zero_of(*this);
}

template struct BasicCochain<Mat>;
template struct BasicCochain<double>;

const Mat& GroupFunction::at(int sd_vertex) const {
  const int i = support->local_index(0, sd_vertex);
  if (i < 0) throw SupportMismatch("vertex outside the support " + support->key());
  return values[i];
}

GroupFunction GroupFunction::inverse() const {
  GroupFunction out = *this;
  for (auto& v : out.values) v = unitary_inverse(v);
  return out;
}

Cochain zero_cochain(CoverPtr cover, SupportPtr support, int degree, GroupSpec spec) {
  Cochain c;
  c.values.assign(support->simplices[degree].size(), zero(spec.dim));
  c.cover = std::move(cover);
  c.support = std::move(support);
  c.degree = degree;
  c.spec = spec;
  return c;
}

ScalarCochain zero_scalar(CoverPtr cover, SupportPtr support, int degree) {
  ScalarCochain c;
  c.values.assign(support->simplices[degree].size(), 0.0);
  c.cover = std::move(cover);
  c.support = std::move(support);
  c.degree = degree;
  return c;
}

GroupFunction constant_function(CoverPtr cover, SupportPtr support, GroupSpec spec, const Mat& value) {
  GroupFunction g;
  g.values.assign(support->simplices[0].size(), value);
  g.cover = std::move(cover);
  g.support = std::move(support);
  g.spec = spec;
  return g;
}

ScalarCochain partition_of_unity(CoverPtr cover, int vertex) {
  ScalarCochain phi = zero_scalar(cover, cover->global(), 0);
  for (int v = 0; v < phi.size(); ++v) phi.values[v] = cover->phi(vertex, v);
  return phi;
}

Cochain scalar_times(const ScalarCochain& s, const Mat& x, GroupSpec spec) {
  Cochain c = zero_cochain(s.cover, s.support, s.degree, spec);
  for (int i = 0; i < s.size(); ++i) c.values[i] = s.values[i] * x;
  return c;
}

template <class V>
BasicCochain<V> operator+(const BasicCochain<V>& a, const BasicCochain<V>& b) {
  require_same(a, b, "sum");
  BasicCochain<V> out = a;
  for (int i = 0; i < out.size(); ++i) out.values[i] = out.values[i] + b.values[i];
  return out;
}

template <class V>
BasicCochain<V> operator-(const BasicCochain<V>& a, const BasicCochain<V>& b) {
  require_same(a, b, "difference");
  BasicCochain<V> out = a;
  for (int i = 0; i < out.size(); ++i) out.values[i] = out.values[i] - b.values[i];
  return out;
}

template <class V>
BasicCochain<V> operator-(const BasicCochain<V>& a) {
  BasicCochain<V> out = a;
  for (auto& v : out.values) v = -v;
  return out;
}

template <class V>
BasicCochain<V> operator*(double s, const BasicCochain<V>& a) {
  BasicCochain<V> out = a;
  for (auto& v : out.values) v = s * v;
  return out;
}

template Cochain operator+(const Cochain&, const Cochain&);
template Cochain operator-(const Cochain&, const Cochain&);
template Cochain operator-(const Cochain&);
template Cochain operator*(double, const Cochain&);
template ScalarCochain operator+(const ScalarCochain&, const ScalarCochain&);
template ScalarCochain operator-(const ScalarCochain&, const ScalarCochain&);
template ScalarCochain operator-(const ScalarCochain&);
template ScalarCochain operator*(double, const ScalarCochain&);

double max_abs(const Cochain& c) {
  double r = 0.0;
  for (const auto& v : c.values) r = std::max(r, max_abs(v));
  return r;
}

double max_abs(const ScalarCochain& c) {
  double r = 0.0;
  for (double v : c.values) r = std::max(r, std::abs(v));
  return r;
}

template <class V>
BasicCochain<V> restrict_to(const BasicCochain<V>& c, SupportPtr smaller) {
  if (smaller == c.support) return c;
  BasicCochain<V> out;
  out.cover = c.cover;
  out.degree = c.degree;
  out.spec = c.spec;
  out.values.reserve(smaller->simplices[c.degree].size());
  for (int s : smaller->simplices[c.degree]) {
    const int i = c.support->local_index(c.degree, s);
    if (i < 0)
      throw SupportMismatch("cannot restrict from " + c.support->key() + " to " + smaller->key());
    out.values.push_back(c.values[i]);
  }
  out.support = std::move(smaller);
  return out;
}

template Cochain restrict_to(const Cochain&, SupportPtr);
template ScalarCochain restrict_to(const ScalarCochain&, SupportPtr);

GroupFunction restrict_to(const GroupFunction& g, SupportPtr smaller) {
  if (smaller == g.support) return g;
  GroupFunction out;
  out.cover = g.cover;
  out.spec = g.spec;
  for (int v : smaller->simplices[0]) {
    const int i = g.support->local_index(0, v);
    if (i < 0) throw SupportMismatch("cannot restrict from " + g.support->key() + " to " + smaller->key());
    out.values.push_back(g.values[i]);
  }
  out.support = std::move(smaller);
  return out;
}

Cochain center_project(const Cochain& c) {
  Cochain out = c;
  for (auto& v : out.values) v = center_part(c.spec, v);
  return out;
}

template <class V>
BasicCochain<V> coboundary(const BasicCochain<V>& c) {
  const auto& sd = c.cover->sd();
  const int k = c.degree + 1;
  BasicCochain<V> out;
  out.cover = c.cover;
  out.support = c.support;
  out.degree = k;
  out.spec = c.spec;
  if (k > sd.dim()) return out;
  const auto& simplices = c.support->simplices[k];
  out.values.reserve(simplices.size());
  for (int s : simplices) {
    auto faces = sd.faces(k, s);
    V acc = c.zero_value();
    for (int i = 0; i <= k; ++i) {
      const V& f = c.values[c.support->local_index(c.degree, faces[i])];
      if (i % 2 == 0)
        acc = acc + f;
      else
        acc = acc - f;
    }
    out.values.push_back(acc);
  }
  return out;
}

template Cochain coboundary(const Cochain&);
template ScalarCochain coboundary(const ScalarCochain&);

namespace {

template <class R, class A, class B, class Mul>
BasicCochain<R> cup_impl(const A& a, const B& b, GroupSpec spec, R zero_value, Mul mul) {
  require_support(a, b, "cup");
  const auto& sd = a.cover->sd();
  const int p = a.degree, q = b.degree, k = p + q;
  BasicCochain<R> out;
  out.cover = a.cover;
  out.support = a.support;
  out.degree = k;
  out.spec = spec;
  if (k > sd.dim()) return out;
  const auto& simplices = a.support->simplices[k];
  out.values.reserve(simplices.size());
  for (int s : simplices) {
    auto vs = sd.simplex(k, s);
    const int front = sd.find(vs.subspan(0, p + 1));
    const int back = sd.find(vs.subspan(p, q + 1));
    const int fi = a.support->local_index(p, front);
    const int bi = b.support->local_index(q, back);
    if (fi < 0 || bi < 0) {
      out.values.push_back(zero_value);
      continue;
    }
    out.values.push_back(mul(a.values[fi], b.values[bi]));
  }
  return out;
}

}  // namespace

ScalarCochain cup(const ScalarCochain& a, const ScalarCochain& b) {
  return cup_impl<double>(a, b, GroupSpec{}, 0.0, [](double x, double y) { return x * y; });
}

Cochain cup(const ScalarCochain& a, const Cochain& b) {
  return cup_impl<Mat>(a, b, b.spec, zero(b.spec.dim), [](double x, const Mat& y) -> Mat { return x * y; });
}

Cochain cup(const Cochain& a, const ScalarCochain& b) {
  return cup_impl<Mat>(a, b, a.spec, zero(a.spec.dim), [](const Mat& x, double y) -> Mat { return x * y; });
}

Cochain cup(const Cochain& a, const Cochain& b) {
  if (!(a.spec == b.spec)) throw SpecMismatch("cup of cochains with different groups");
  return cup_impl<Mat>(a, b, a.spec, zero(a.spec.dim), [](const Mat& x, const Mat& y) -> Mat { return x * y; });
}

Cochain maurer_cartan(const GroupFunction& g) {
  const auto& sd = g.cover->sd();
  Cochain out = zero_cochain(g.cover, g.support, 1, g.spec);
  for (int i = 0; i < out.size(); ++i) {
    auto vs = sd.simplex(1, out.simplex(i));
    const Mat& gx = g.at(vs[0]);
    const Mat& gy = g.at(vs[1]);
    try {
      out.values[i] = mat_log(unitary_inverse(gx) * gy);
    } catch (const BranchCutError&) {
      throw BranchCutError("Maurer-Cartan log on edge " + std::to_string(vs[0]) + "-" + std::to_string(vs[1]) +
                           " of " + g.support->key() + " hits the branch cut");
    }
    if (!g.spec.complex_field) out.values[i] = out.values[i].real().cast<cplx>();
  }
  return out;
}

Cochain ad_transport(const GroupFunction& h, const Cochain& c) {
  require_support(h, c, "ad_transport");
  const auto& sd = c.cover->sd();
  Cochain out = c;
  for (int i = 0; i < out.size(); ++i) {
    const int v0 = sd.simplex(c.degree, out.simplex(i))[0];
    const Mat& hv = h.at(v0);
    out.values[i] = unitary_inverse(hv) * c.values[i] * hv;
  }
  return out;
}

Mat integrate_raw(const Cochain& c) {
  const auto& sd = c.cover->sd();
  if (c.degree != sd.dim()) throw DegreeMismatch("integration needs a top-degree cochain");
  if (!c.support->global()) throw SupportMismatch("integration needs a global cochain");
  Mat acc = zero(c.spec.dim);
  for (int i = 0; i < c.size(); ++i) acc += static_cast<double>(sd.orientation(c.simplex(i))) * c.values[i];
  return acc;
}

AlgebraElement integrate(const Cochain& c) {
  Mat m = integrate_raw(c);
  return AlgebraElement(c.spec, m, kTolAlg * std::max(1.0, max_abs(m)));
}

double integrate(const ScalarCochain& c) {
  const auto& sd = c.cover->sd();
  if (c.degree != sd.dim()) throw DegreeMismatch("integration needs a top-degree cochain");
  if (!c.support->global()) throw SupportMismatch("integration needs a global cochain");
  double acc = 0.0;
  for (int i = 0; i < c.size(); ++i) acc += sd.orientation(c.simplex(i)) * c.values[i];
  return acc;
}

template <class V>
BasicCochain<V> cone_contract(const BasicCochain<V>& c, double tol) {
  if (c.degree < 1) throw DegreeMismatch("cone contraction needs degree >= 1");
  const int apex = c.support->apex;
  if (apex < 0) throw NotCone("support " + c.support->key() + " has no cone point");
  if (c.degree < c.cover->sd().dim()) {
    double dev = 0.0;
    for (const auto& v : coboundary(c).values) {
      if constexpr (std::is_same_v<V, double>)
        dev = std::max(dev, std::abs(v));
      else
        dev = std::max(dev, max_abs(v));
    }
    if (dev > tol)
      throw NotClosed("cochain on " + c.support->key() + " is not closed (max |dc| = " + std::to_string(dev) + ")");
  }
  const auto& sd = c.cover->sd();
  const int k = c.degree - 1;
  BasicCochain<V> p;
  p.cover = c.cover;
  p.support = c.support;
  p.degree = k;
  p.spec = c.spec;
  const auto& simplices = c.support->simplices[k];
  p.values.reserve(simplices.size());
  std::vector<int> joined(k + 2);
  for (int s : simplices) {
    auto vs = sd.simplex(k, s);
    if (vs[0] == apex) {
      p.values.push_back(c.zero_value());
      continue;
    }
    if (vs[0] < apex) throw NotCone("apex of " + c.support->key() + " is not the least vertex");
    joined[0] = apex;
    std::copy(vs.begin(), vs.end(), joined.begin() + 1);
    const int j = sd.find(joined);
    const int li = j < 0 ? -1 : c.support->local_index(c.degree, j);
    if (li < 0) throw NotCone("apex join missing in " + c.support->key());
    p.values.push_back(c.values[li]);
  }
  return p;
}

template Cochain cone_contract(const Cochain&, double);
template ScalarCochain cone_contract(const ScalarCochain&, double);

Cochain pullback(const SimplicialMap& f, const Cochain& c, SupportPtr source_support) {
  const auto& src = f.source().sd();
  const auto& dst = f.target().sd();
  Cochain out = zero_cochain(f.source_ptr(), source_support, c.degree, c.spec);
  std::vector<int> image(c.degree + 1);
  for (int i = 0; i < out.size(); ++i) {
    auto vs = src.simplex(c.degree, out.simplex(i));
    for (int j = 0; j <= c.degree; ++j) image[j] = f.sd_vertex(vs[j]);
    if (std::adjacent_find(image.begin(), image.end()) != image.end()) continue;
    const int t = dst.find(image);
    const int li = t < 0 ? -1 : c.support->local_index(c.degree, t);
    if (li < 0) throw SupportMismatch("pullback image leaves the support " + c.support->key());
    out.values[i] = c.values[li];
  }
  return out;
}

GroupFunction pullback(const SimplicialMap& f, const GroupFunction& g, SupportPtr source_support) {
  GroupFunction out;
  out.cover = f.source_ptr();
  out.spec = g.spec;
  for (int v : source_support->simplices[0]) out.values.push_back(g.at(f.sd_vertex(v)));
  out.support = std::move(source_support);
  return out;
}

}  // namespace gerbecalc
