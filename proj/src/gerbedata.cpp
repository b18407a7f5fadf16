#include "gerbecalc/gerbedata.hpp"

#include <algorithm>
#include <cmath>

namespace gerbecalc {

std::string Band::label() const {
  switch (kind) {
    case BandKind::Whole: return "whole";
    case BandKind::Special: return "SU2";
    case BandKind::Scalar: return "center";
  }
  return "?";
}

Band Band::parse(GroupSpec g, const std::string& label) {
  if (label == "whole") return {g, BandKind::Whole};
  if (label == "SU2" && g.name == GroupName::U2) return {g, BandKind::Special};
  if (label == "center" && g.name == GroupName::U2) return {g, BandKind::Scalar};
  throw ParseError("band '" + label + "' is not available for group " + std::string(g.label()));
}

bool Band::contains(const Mat& m, double tol) const {
  if (!in_group(group, m, tol)) return false;
  switch (kind) {
    case BandKind::Whole: return true;
    case BandKind::Special: return std::abs(m.determinant() - 1.0) <= tol;
    case BandKind::Scalar: return max_abs(m - m(0, 0) * identity(group.dim)) <= tol;
  }
  return false;
}

Mat Band::center(const Mat& x) const {
  switch (kind) {
    case BandKind::Whole: return center_part(group, x);
    case BandKind::Special: return zero(group.dim);
    case BandKind::Scalar: return center_part(GroupSpec::of(GroupName::U2), x);
  }
  return x;
}

bool Band::central_in_band(const Mat& m, double tol) const {
  switch (kind) {
    case BandKind::Scalar: return true;
    case BandKind::Special:
    case BandKind::Whole:
      if (group.name == GroupName::U1) return true;
      return max_abs(m - m(0, 0) * identity(group.dim)) <= tol;
  }
  return false;
}

namespace {

Mat so3_from_su2_action(const Mat& g) {
  static const Mat sigma[3] = {
      (Mat(2, 2) << 0, 1, 1, 0).finished(),
      (Mat(2, 2) << 0, cplx(0, -1), cplx(0, 1), 0).finished(),
      (Mat(2, 2) << 1, 0, 0, -1).finished(),
  };
  Mat r = zero(3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) r(a, b) = 0.5 * (sigma[a] * g * sigma[b] * g.adjoint()).trace().real();
  return r;
}

Mat su2_lift_of_rotation(const Mat& r) {
  // t_a = i sigma_a / 2 satisfies [t_a, t_b] = -eps_abc t_c, so Ad(exp(w.t))
  // is exp(A) with A(c, b) = -sum_a w_a eps_abc.
  const Mat a = mat_log(r).real().cast<cplx>();
  const double w[3] = {-a(2, 1).real(), -a(0, 2).real(), -a(1, 0).real()};
  const Mat x = (Mat(2, 2) << cplx(0, w[2]), cplx(w[1], w[0]), cplx(-w[1], w[0]), cplx(0, -w[2])).finished() * 0.5;
  return mat_exp(x);
}

}  // namespace

ExtensionSpec ExtensionSpec::u2_over_su2(bool twisted) {
  ExtensionSpec e;
  e.name = twisted ? "u2-su2-twisted" : "u2-su2";
  e.band = {GroupSpec::of(GroupName::U2), BandKind::Special};
  e.quotient_group = GroupSpec::of(GroupName::U1);
  e.quotient = [](const Mat& g) {
    Mat d(1, 1);
    d(0, 0) = g.determinant();
    return d;
  };
  if (twisted) {
    e.lift = [](const Mat& u) {
      Mat d = identity(2);
      d(0, 0) = u(0, 0);
      const Mat x = (Mat(2, 2) << 0, cplx(0, 0.7), cplx(0, 0.7), 0).finished() * u(0, 0).real();
      return Mat(mat_exp(x) * d);
    };
  } else {
    e.lift = [](const Mat& u) {
      Mat d = identity(2);
      d(0, 0) = u(0, 0);
      return d;
    };
  }
  return e;
}

ExtensionSpec ExtensionSpec::u2_over_center() {
  ExtensionSpec e;
  e.name = "u2-center";
  e.band = {GroupSpec::of(GroupName::U2), BandKind::Scalar};
  e.quotient_group = GroupSpec::of(GroupName::SO3);
  e.quotient = so3_from_su2_action;
  e.lift = su2_lift_of_rotation;
  return e;
}

ExtensionSpec ExtensionSpec::by_name(const std::string& name) {
  if (name == "u2-su2") return u2_over_su2(false);
  if (name == "u2-su2-twisted") return u2_over_su2(true);
  if (name == "u2-center") return u2_over_center();
  throw ParseError("unknown extension '" + name + "'");
}

GerbeCocycle::GerbeCocycle(CoverPtr cover, Band band, std::map<Simplex, GroupFunction> transitions,
                           std::map<Simplex, GroupFunction> cocycle, double tol)
    : cover_(std::move(cover)), band_(band) {
  const auto& base = cover_->base();
  const Mat one = identity(band_.group.dim);
  auto adopt = [&](std::map<Simplex, GroupFunction>& from, std::map<Simplex, GroupFunction>& into,
                   const Simplex& s, bool in_band) {
    SupportPtr sup = cover_->overlap(s);
    auto it = from.find(s);
    if (it == from.end()) {
      into.emplace(s, constant_function(cover_, sup, band_.group, one));
      return;
    }
    GroupFunction g = std::move(it->second);
    if (g.support != sup) {
      if (g.support->base != sup->base || g.values.size() != sup->simplices[0].size())
        throw SupportMismatch("data for " + simplex_key(s) + " does not live on its overlap");
      g.support = sup;
    }
    g.cover = cover_;
    g.spec = band_.group;
    for (const auto& v : g.values) {
      if (v.rows() != band_.group.dim || !in_group(band_.group, v, tol))
        throw MembershipError("value on " + simplex_key(s) + " is not in " + std::string(band_.group.label()));
      if (in_band && !band_.contains(v, tol))
        throw MembershipError("cocycle value on " + simplex_key(s) + " is not in the band");
    }
    into.emplace(s, std::move(g));
    from.erase(it);
  };
  for (const auto& e : base.simplices(1)) adopt(transitions, transitions_, e, false);
  if (base.dim() >= 2)
    for (const auto& t : base.simplices(2)) adopt(cocycle, cocycle_, t, true);
  if (!transitions.empty()) throw SupportMismatch("transition given for a non-edge " + simplex_key(transitions.begin()->first));
  if (!cocycle.empty()) throw SupportMismatch("cocycle given for a non-triangle " + simplex_key(cocycle.begin()->first));
  for (const auto& [e, g] : transitions_) inverse_transitions_.emplace(e, g.inverse());
}

GerbeCocycle GerbeCocycle::trivial(CoverPtr cover, Band band) { return GerbeCocycle(std::move(cover), band, {}, {}); }

const GroupFunction& GerbeCocycle::h(int a, int b) const {
  if (a < b) return transitions_.at({a, b});
  return inverse_transitions_.at({b, a});
}

Mat GerbeCocycle::h_at(int a, int b, int sd_vertex) const {
  if (a == b) return identity(band_.group.dim);
  return h(a, b).at(sd_vertex);
}

Mat GerbeCocycle::c_at(int a, int b, int c, int v) const {
  if (a == b || b == c || a == c) return identity(band_.group.dim);
  int s[3] = {a, b, c};
  std::sort(s, s + 3);
  const int i = s[0], j = s[1], k = s[2];
  const Mat& val = cocycle_.at({i, j, k}).at(v);
  auto conj = [&](int p, int q, const Mat& m) {
    const Mat t = h_at(p, q, v);
    return Mat(t * m * t.adjoint());
  };
  if (a == i && b == j) return val;                  // ijk
  if (a == j && b == k) return conj(i, k, val);      // jki
  if (a == k && b == i) return conj(j, k, val);      // kij
  const Mat inv = val.adjoint();
  if (a == i && b == k) return conj(j, k, inv);      // ikj
  if (a == j && b == i) return inv;                  // jik
  return conj(i, k, inv);                            // kji
}

GerbeCocycle GerbeCocycle::with_cocycle(const Simplex& triangle, GroupFunction value) const {
  GerbeCocycle out = *this;
  out.cocycle_.at(triangle) = std::move(value);
  return out;
}

CocycleReport check_cocycle(const GerbeCocycle& gc, double tol) {
  CocycleReport report;
  report.tolerance = tol;
  const auto& base = gc.cover()->base();
  if (base.dim() < 3) return report;
  for (const auto& tet : base.simplices(3)) {
    ++report.tetrahedra;
    const int i1 = tet[0], i2 = tet[1], i3 = tet[2], i4 = tet[3];
    SupportPtr sup = gc.cover()->overlap(tet);
    for (int v : sup->simplices[0]) {
      const Mat h43 = gc.h_at(i4, i3, v);
      const Mat conjugated = h43 * gc.c_at(i1, i2, i3, v) * h43.adjoint();
      const Mat lhs = gc.c_at(i1, i3, i4, v) * conjugated;
      const Mat rhs = gc.c_at(i1, i2, i4, v) * gc.c_at(i2, i3, i4, v);
      const double dev = max_abs(lhs - rhs);
      if (dev > report.max_deviation || report.worst.empty()) {
        report.max_deviation = std::max(report.max_deviation, dev);
        report.worst = tet;
      }
    }
  }
  return report;
}

LiftResult build_lifting_gerbe(const ExtensionSpec& ext, CoverPtr cover,
                               const std::map<Simplex, GroupFunction>& u, double tol) {
  const auto& base = cover->base();
  const GroupSpec q = ext.quotient_group;
  auto u_at = [&](int a, int b, int v) -> Mat {
    if (a < b) return u.at({a, b}).at(v);
    return u.at({b, a}).at(v).adjoint();
  };
  for (const auto& e : base.simplices(1))
    if (!u.count(e)) throw QuotientNotCocycle("missing quotient transition on " + simplex_key(e));

  double qdev = 0.0;
  if (base.dim() >= 2)
    for (const auto& t : base.simplices(2)) {
      SupportPtr sup = cover->overlap(t);
      for (int v : sup->simplices[0])
        qdev = std::max(qdev, max_abs(u_at(t[0], t[2], v) - u_at(t[0], t[1], v) * u_at(t[1], t[2], v)));
    }
  if (qdev > tol)
    throw QuotientNotCocycle("quotient transitions violate u_ik = u_ij u_jk by " + std::to_string(qdev));

  const GroupSpec g = ext.band.group;
  std::map<Simplex, GroupFunction> h;
  for (const auto& e : base.simplices(1)) {
    const GroupFunction& ue = u.at(e);
    if (!(ue.spec == q)) throw SpecMismatch("quotient transitions must take values in " + std::string(q.label()));
    GroupFunction he;
    he.cover = cover;
    he.support = cover->overlap(e);
    he.spec = g;
    for (int v : he.support->simplices[0]) he.values.push_back(ext.lift(ue.at(v)));
    h.emplace(e, std::move(he));
  }
  auto h_at = [&](int a, int b, int v) -> Mat {
    if (a < b) return h.at({a, b}).at(v);
    return h.at({b, a}).at(v).adjoint();
  };

  std::map<Simplex, GroupFunction> c;
  double ldev = 0.0;
  bool central = true;
  if (base.dim() >= 2)
    for (const auto& t : base.simplices(2)) {
      const int i = t[0], j = t[1], k = t[2];
      GroupFunction ct;
      ct.cover = cover;
      ct.support = cover->overlap(t);
      ct.spec = g;
      for (int v : ct.support->simplices[0]) {
        Mat val = h_at(k, i, v) * h_at(i, j, v) * h_at(j, k, v);
        ldev = std::max(ldev, max_abs(ext.quotient(val) - identity(q.dim)));
        central = central && ext.band.central_in_band(val, 1e-10);
        ct.values.push_back(std::move(val));
      }
      c.emplace(t, std::move(ct));
    }
  if (ldev > 1e-10) throw LiftNotInH("classifying cocycle leaves H: |q(c) - 1| = " + std::to_string(ldev));

  return LiftResult{GerbeCocycle(cover, ext.band, std::move(h), std::move(c)), central, qdev, ldev};
}

Cochain adjoint_bundle_action(const GerbeCocycle& gc, int a, int b, const Cochain& c) {
  SupportPtr sup = gc.cover()->overlap({a, b});
  return ad_transport(gc.transport(a, b), restrict_to(c, sup));
}

GerbeCocycle pullback(const GerbeCocycle& gc, const SimplicialMap& f) {
  if (&f.target() != gc.cover().get()) throw NotSimplicial("map target is not the cover of the gerbe");
  const auto& src = f.source();
  const Mat one = identity(gc.group().dim);
  std::map<Simplex, GroupFunction> h, c;
  for (const auto& e : src.base().simplices(1)) {
    GroupFunction g;
    g.cover = f.source_ptr();
    g.support = src.overlap(e);
    g.spec = gc.group();
    const int a = f(e[0]), b = f(e[1]);
    for (int v : g.support->simplices[0]) g.values.push_back(a == b ? one : gc.h_at(a, b, f.sd_vertex(v)));
    h.emplace(e, std::move(g));
  }
  if (src.dim() >= 2)
    for (const auto& t : src.base().simplices(2)) {
      GroupFunction g;
      g.cover = f.source_ptr();
      g.support = src.overlap(t);
      g.spec = gc.group();
      const int a = f(t[0]), b = f(t[1]), cc = f(t[2]);
      for (int v : g.support->simplices[0]) g.values.push_back(gc.c_at(a, b, cc, f.sd_vertex(v)));
      c.emplace(t, std::move(g));
    }
  return GerbeCocycle(f.source_ptr(), gc.band(), std::move(h), std::move(c));
}

}  // namespace gerbecalc
