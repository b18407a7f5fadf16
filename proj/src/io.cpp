#include "gerbecalc/io.hpp"

#include <fstream>
#include <sstream>

namespace gerbecalc {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

const json& field(const json& j, const char* name, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) fail(where, std::string("missing \"") + name + "\"");
  return *it;
}

std::string get_string(const json& j, const char* name, const std::string& where, const std::string& dflt) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) return dflt;
  if (!it->is_string()) fail(where + "/" + name, "expected a string");
  return it->get<std::string>();
}

int parse_int(const std::string& s, const std::string& where) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    fail(where, "bad integer key \"" + s + "\"");
  }
  if (used != s.size()) fail(where, "bad integer key \"" + s + "\"");
  return v;
}

Simplex parse_base_key(const CoverPtr& cover, int degree, const std::string& key, const std::string& where) {
  Simplex s;
  try {
    s = parse_simplex_key(key);
  } catch (const ParseError& e) {
    fail(where, e.what());
  }
  Simplex sorted = s;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != s) fail(where, "key \"" + key + "\" is not sorted");
  if (static_cast<int>(s.size()) != degree + 1 || !cover->base().contains(s))
    fail(where, "\"" + key + "\" is not a base simplex of dimension " + std::to_string(degree));
  return s;
}

json function_to_json(const GroupFunction& g) {
  json out = json::object();
  const auto& sd = g.cover->sd();
  for (std::size_t i = 0; i < g.values.size(); ++i)
    out[sd_vertex_key(sd, g.support->simplices[0][i])] = matrix_to_json(g.values[i]);
  return out;
}

GroupFunction function_from_json(const json& j, const CoverPtr& cover, SupportPtr sup, GroupSpec spec,
                                 const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object keyed by subdivision vertices");
  GroupFunction g;
  g.cover = cover;
  g.support = sup;
  g.spec = spec;
  g.values.assign(sup->simplices[0].size(), Mat());
  std::vector<bool> seen(g.values.size(), false);
  for (const auto& [key, value] : j.items()) {
    const std::string loc = where + "/" + key;
    const int v = parse_sd_simplex(cover->sd(), 0, key, loc);
    const int local = sup->local_index(0, v);
    if (local < 0) fail(loc, "vertex outside the overlap " + sup->key());
    g.values[local] = matrix_from_json(value, loc);
    seen[local] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) fail(where, "missing value at " + sd_vertex_key(cover->sd(), sup->simplices[0][i]));
  return g;
}

json cochain_to_json(const Cochain& c) {
  json out = json::object();
  const auto& sd = c.cover->sd();
  for (int i = 0; i < c.size(); ++i) out[sd_simplex_key(sd, c.degree, c.simplex(i))] = matrix_to_json(c.values[i]);
  return out;
}

Cochain cochain_from_json(const json& j, const CoverPtr& cover, SupportPtr sup, int degree, GroupSpec spec,
                          const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object keyed by subdivision simplices");
  Cochain c = zero_cochain(cover, sup, degree, spec);
  std::vector<bool> seen(c.values.size(), false);
  for (const auto& [key, value] : j.items()) {
    const std::string loc = where + "/" + key;
    const int s = parse_sd_simplex(cover->sd(), degree, key, loc);
    const int local = sup->local_index(degree, s);
    if (local < 0) fail(loc, "simplex outside the overlap " + sup->key());
    c.values[local] = matrix_from_json(value, loc);
    seen[local] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) fail(where, "missing value at " + sd_simplex_key(cover->sd(), degree, sup->simplices[degree][i]));
  return c;
}

bool is_identity(const GroupFunction& g) {
  for (const auto& v : g.values)
    if (v != Mat::Identity(v.rows(), v.cols())) return false;
  return true;
}

bool is_zero(const Cochain& c) {
  for (const auto& v : c.values)
    if (!v.isZero(0.0)) return false;
  return true;
}

template <class Key, class V, class F>
json keyed(const std::map<Key, V>& m, F to_json) {
  json out = json::object();
  for (const auto& [k, v] : m) {
    if constexpr (std::is_same_v<Key, int>)
      out[std::to_string(k)] = to_json(v);
    else
      out[simplex_key(k)] = to_json(v);
  }
  return out;
}

std::map<Simplex, GroupFunction> functions_from_json(const json& j, const CoverPtr& cover, int degree, GroupSpec spec,
                                                     const std::string& where) {
  std::map<Simplex, GroupFunction> out;
  if (!j.is_object()) fail(where, "expected an object keyed by base simplices");
  for (const auto& [key, value] : j.items()) {
    const std::string loc = where + "/" + key;
    const Simplex s = parse_base_key(cover, degree, key, loc);
    out.emplace(s, function_from_json(value, cover, cover->overlap(s), spec, loc));
  }
  return out;
}

json report_mat(const Mat& m) { return matrix_to_json(m); }

}  // namespace

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty() || j.size() > 3) fail(where, "expected 1 to 3 rows");
  const auto n = static_cast<int>(j.size());
  Mat m(n, n);
  for (int r = 0; r < n; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != n) fail(where, "matrix must be square");
    for (int c = 0; c < n; ++c) {
      const json& z = row[c];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
        fail(where, "entry (" + std::to_string(r) + "," + std::to_string(c) + ") must be [re, im]");
      m(r, c) = cplx(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

json mesh_to_json(const MeshDescription& mesh) {
  json j;
  j["vertices"] = mesh.vertices;
  const bool tets = !mesh.top.empty() && mesh.top.front().size() == 4;
  j[tets ? "tets" : "triangles"] = mesh.top;
  if (!mesh.orientation.empty()) j["orientation"] = mesh.orientation;
  return j;
}

MeshDescription mesh_from_json(const json& j) {
  const std::string where = "mesh";
  if (!j.is_object()) fail(where, "expected an object");
  MeshDescription mesh;
  try {
    mesh.vertices = field(j, "vertices", where).get<std::vector<int>>();
    const bool tri = j.contains("triangles"), tet = j.contains("tets");
    if (tri == tet) fail(where, "exactly one of \"triangles\" and \"tets\" is required");
    const std::size_t arity = tri ? 3 : 4;
    mesh.top = j.at(tri ? "triangles" : "tets").get<std::vector<Simplex>>();
    for (std::size_t i = 0; i < mesh.top.size(); ++i)
      if (mesh.top[i].size() != arity)
        fail(where + "/" + (tri ? "triangles/" : "tets/") + std::to_string(i), "wrong number of vertices");
    if (j.contains("orientation")) {
      mesh.orientation = j.at("orientation").get<std::vector<int>>();
      if (mesh.orientation.size() != mesh.top.size()) fail(where + "/orientation", "one sign per top simplex required");
      for (int s : mesh.orientation)
        if (s != 1 && s != -1) fail(where + "/orientation", "signs must be +1 or -1");
    }
  } catch (const json::exception& e) {
    fail(where, e.what());
  }
  return mesh;
}

std::string sd_vertex_key(const Subdivision& sd, int sd_vertex) { return simplex_key(sd.carrier(sd_vertex)); }

std::string sd_simplex_key(const Subdivision& sd, int degree, int idx) {
  std::string out;
  for (int v : sd.simplex(degree, idx)) {
    if (!out.empty()) out += '|';
    out += sd_vertex_key(sd, v);
  }
  return out;
}

int parse_sd_simplex(const Subdivision& sd, int degree, const std::string& key, const std::string& where) {
  std::vector<int> verts;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, '|')) {
    Simplex carrier;
    try {
      carrier = parse_simplex_key(part);
    } catch (const ParseError& e) {
      fail(where, e.what());
    }
    const int v = sd.vertex_of(carrier);
    if (v < 0) fail(where, "\"" + part + "\" is not a base simplex");
    verts.push_back(v);
  }
  if (static_cast<int>(verts.size()) != degree + 1)
    fail(where, "expected " + std::to_string(degree + 1) + " subdivision vertices");
  std::sort(verts.begin(), verts.end());
  const int idx = sd.find(verts);
  if (idx < 0) fail(where, "\"" + key + "\" is not a subdivision simplex");
  if (sd_simplex_key(sd, degree, idx) != key) fail(where, "key \"" + key + "\" is not in canonical order");
  return idx;
}

GerbeCocycle DataFile::gerbe(const CoverPtr& cover, double tol_grp) const {
  return GerbeCocycle(cover, band, edges, triangles, tol_grp);
}

ConnectiveBundle DataFile::bundle(const CoverPtr& cover, double tol_grp) const {
  return ConnectiveBundle(gerbe(cover, tol_grp), alpha, shift, mode);
}

DataFile data_of(const GerbeCocycle& gc) {
  DataFile d;
  d.band = gc.band();
  for (const auto& [e, g] : gc.transitions())
    if (!is_identity(g)) d.edges.emplace(e, g);
  for (const auto& [t, g] : gc.cocycle())
    if (!is_identity(g)) d.triangles.emplace(t, g);
  return d;
}

DataFile data_of(const ConnectiveBundle& cb, const CurvingData* cur) {
  DataFile d = data_of(cb.gerbe());
  d.mode = cb.mode();
  for (const auto& [i, a] : cb.alphas())
    if (!is_zero(a)) d.alpha.emplace(i, a);
  for (const auto& [e, a] : cb.shifts())
    if (!is_zero(a)) d.shift.emplace(e, a);
  if (cur) {
    d.L.emplace();
    for (const auto& [i, l] : cur->all())
      if (!is_zero(l)) d.L->emplace(i, l);
  }
  return d;
}

json data_to_json(const DataFile& d) {
  json j;
  j["group"] = d.band.group.label();
  j["band"] = d.band.label();
  j["mode"] = mode_label(d.mode);
  j["edges"] = keyed(d.edges, function_to_json);
  j["triangles"] = keyed(d.triangles, function_to_json);
  j["alpha"] = keyed(d.alpha, cochain_to_json);
  j["shift"] = keyed(d.shift, cochain_to_json);
  if (d.L) j["L"] = keyed(*d.L, cochain_to_json);
  return j;
}

DataFile data_from_json(const json& j, const CoverPtr& cover) {
  const std::string where = "data";
  DataFile d;
  const GroupSpec spec = GroupSpec::parse(get_string(j, "group", where, "U1"));
  d.band = Band::parse(spec, get_string(j, "band", where, "whole"));
  d.mode = parse_mode(get_string(j, "mode", where, "full"));
  if (j.contains("edges")) d.edges = functions_from_json(j.at("edges"), cover, 1, spec, where + "/edges");
  if (j.contains("triangles"))
    d.triangles = functions_from_json(j.at("triangles"), cover, 2, spec, where + "/triangles");
  if (j.contains("alpha")) {
    const json& a = j.at("alpha");
    if (!a.is_object()) fail(where + "/alpha", "expected an object keyed by vertices");
    for (const auto& [key, value] : a.items()) {
      const std::string loc = where + "/alpha/" + key;
      const int v = parse_int(key, loc);
      if (!cover->base().contains({v})) fail(loc, "unknown vertex");
      d.alpha.emplace(v, cochain_from_json(value, cover, cover->overlap({v}), 1, spec, loc));
    }
  }
  if (j.contains("shift")) {
    const json& s = j.at("shift");
    if (!s.is_object()) fail(where + "/shift", "expected an object keyed by edges");
    for (const auto& [key, value] : s.items()) {
      const std::string loc = where + "/shift/" + key;
      const Simplex e = parse_base_key(cover, 1, key, loc);
      d.shift.emplace(e, cochain_from_json(value, cover, cover->overlap(e), 1, spec, loc));
    }
  }
  if (j.contains("L")) {
    const json& l = j.at("L");
    if (!l.is_object()) fail(where + "/L", "expected an object keyed by vertices");
    d.L.emplace();
    for (const auto& [key, value] : l.items()) {
      const std::string loc = where + "/L/" + key;
      const int v = parse_int(key, loc);
      if (!cover->base().contains({v})) fail(loc, "unknown vertex");
      d.L->emplace(v, cochain_from_json(value, cover, cover->overlap({v}), 2, spec, loc));
    }
  }
  return d;
}

json quotient_to_json(const QuotientFile& q) {
  json j;
  j["extension"] = q.extension;
  j["transitions"] = keyed(q.transitions, function_to_json);
  return j;
}

QuotientFile quotient_from_json(const json& j, const CoverPtr& cover) {
  const std::string where = "quotient";
  QuotientFile q;
  q.extension = get_string(j, "extension", where, "u2-su2");
  const ExtensionSpec ext = ExtensionSpec::by_name(q.extension);
  q.transitions = functions_from_json(field(j, "transitions", where), cover, 1, ext.quotient_group, where + "/transitions");
  return q;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot write");
  out << j.dump(1) << '\n';
}

json report_json(const CocycleReport& r) {
  json j;
  j["check"] = "cocycle";
  j["status"] = r.pass() ? "PASS" : "FAIL";
  j["max_deviation"] = r.max_deviation;
  j["tolerance"] = r.tolerance;
  j["tetrahedra"] = r.tetrahedra;
  if (!r.worst.empty()) j["worst"] = simplex_key(r.worst);
  return j;
}

json report_json(const BoundaryReport& r) {
  json j;
  j["check"] = "boundary_identity";
  j["max_deviation"] = r.max_deviation;
  if (!r.worst.empty()) j["worst"] = simplex_key(r.worst);
  json per = json::object();
  for (const auto& [t, dev] : r.deviation) per[simplex_key(t)] = dev;
  j["deviation"] = per;
  return j;
}

json report_json(const HolonomyReport& r) {
  json j;
  json kappa = json::object(), spread = json::object();
  for (const auto& [t, k] : r.kappa) kappa[simplex_key(t)] = report_mat(k);
  for (const auto& [t, s] : r.kappa_spread) spread[simplex_key(t)] = s;
  j["kappa"] = kappa;
  j["kappa_spread"] = spread;
  j["integral"] = report_mat(r.integral);
  j["value"] = report_mat(r.value);
  j["frame_convention"] = r.frame_convention;
  j["residuals"] = {{"potentials", r.potential_residual},
                    {"wedge_potentials", r.wedge_residual},
                    {"rho_closedness", r.rho_closedness},
                    {"delta_h_closedness", r.delta_h_closedness},
                    {"max_kappa_spread", r.max_kappa_spread}};
  return j;
}

}  // namespace gerbecalc
