#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>

#include "gerbecalc/examples.hpp"
#include "gerbecalc/generators.hpp"
#include "gerbecalc/holonomy.hpp"
#include "gerbecalc/io.hpp"

using namespace gerbecalc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::string mesh;
  std::string data;
  std::string out;
  double tol_alg = kTolAlg;
  double tol_grp = kTolGroup;
  std::string group;
};

struct GenConfig {
  std::string kind;
  std::vector<int> sizes;
  int level = 1;
  int charge = 1;
  int cls = 1;
  double total = 0.25;
  bool twisted = false;
};

CoverPtr load_cover(const std::string& path) {
  return std::make_shared<const StarCover>(TriangulatedComplex::build(mesh_from_json(read_json_file(path))));
}

json tolerances(const RunConfig& c) { return {{"tol_alg", c.tol_alg}, {"tol_grp", c.tol_grp}}; }

void emit(const RunConfig& c, const json& j) {
  if (c.out.empty())
    std::cout << j.dump(1) << '\n';
  else
    write_json_file(c.out, j);
}

json check_entry(const std::string& name, bool pass, double deviation) {
  return {{"check", name}, {"status", pass ? "PASS" : "FAIL"}, {"max_deviation", deviation}};
}

int cmd_validate(const RunConfig& c) {
  const CoverPtr cover = load_cover(c.mesh);
  const DataFile d = data_from_json(read_json_file(c.data), cover);
  json checks = json::array();
  bool ok = true;
  auto failed = [&](const std::string& name, const Error& e) {
    checks.push_back({{"check", name}, {"status", "FAIL"}, {"error", e.what()}});
    ok = false;
  };

  std::optional<ConnectiveBundle> cb;
  try {
    cb.emplace(d.bundle(cover, c.tol_grp));
    checks.push_back(check_entry("membership", true, 0.0));
  } catch (const Error& e) {
    failed("membership", e);
  }
  if (cb) {
    CocycleReport cr = check_cocycle(cb->gerbe(), c.tol_alg);
    json entry = report_json(cr);
    checks.push_back(entry);
    ok = ok && cr.pass();

    const BoundaryReport br = boundary_identity_check(*cb);
    const bool bpass = br.max_deviation < c.tol_alg;
    json b = check_entry("boundary_identity", bpass, br.max_deviation);
    if (!br.worst.empty()) b["worst"] = simplex_key(br.worst);
    checks.push_back(b);
    ok = ok && bpass;

    if (d.L) {
      try {
        const CurvingData cur(*cb, *d.L, c.tol_alg);
        checks.push_back(check_entry("curving_compatibility", true, cur.max_deviation()));
      } catch (const Error& e) {
        failed("curving_compatibility", e);
      }
    }
  }
  emit(c, {{"command", "validate"}, {"checks", checks}, {"tolerances", tolerances(c)}, {"status", ok ? "PASS" : "FAIL"}});
  return ok ? kExitOk : kExitFail;
}

int cmd_lift(const RunConfig& c) {
  const CoverPtr cover = load_cover(c.mesh);
  const QuotientFile q = quotient_from_json(read_json_file(c.data), cover);
  const LiftResult r = build_lifting_gerbe(ExtensionSpec::by_name(q.extension), cover, q.transitions, c.tol_alg);
  std::cerr << json{{"extension", q.extension},
                    {"central", r.central},
                    {"quotient_deviation", r.quotient_deviation},
                    {"lift_deviation", r.lift_deviation},
                    {"tolerances", tolerances(c)}}
                   .dump()
            << '\n';
  emit(c, data_to_json(data_of(r.gerbe)));
  return kExitOk;
}

struct Loaded {
  CoverPtr cover;
  DataFile data;
};

Loaded load(const RunConfig& c) {
  Loaded l{load_cover(c.mesh), {}};
  l.data = data_from_json(read_json_file(c.data), l.cover);
  if (!c.group.empty() && GroupSpec::parse(c.group) != l.data.band.group)
    throw ParseError("data group " + std::string(l.data.band.group.label()) + " differs from --group " + c.group);
  return l;
}

int cmd_holonomy(const RunConfig& c) {
  const Loaded l = load(c);
  ConnectiveBundle cb = l.data.bundle(l.cover, c.tol_grp);
  CurvingData cur(cb, l.data.L.value_or(std::map<int, Cochain>{}), c.tol_alg);
  const HolonomyReport r = holonomy(HolonomyProblem(std::move(cb), std::move(cur)), c.tol_alg);
  json j = report_json(r);
  j["command"] = "holonomy";
  j["tolerances"] = tolerances(c);
  emit(c, j);
  return kExitOk;
}

int cmd_charclass(const RunConfig& c, int degree) {
  const Loaded l = load(c);
  ConnectiveBundle cb = l.data.bundle(l.cover, c.tol_grp);
  CurvingData cur(cb, l.data.L.value_or(std::map<int, Cochain>{}), c.tol_alg);
  const Cochain omega = curvature3(cb, cur, c.tol_alg);
  const ScalarCochain form = characteristic_form(InvariantPolynomial{degree}, omega);
  const double integral = integrate(form);
  emit(c, {{"command", "charclass"},
           {"degree", degree},
           {"integral", integral},
           {"integral_over_2pi", integral / (2 * std::numbers::pi)},
           {"tolerances", tolerances(c)}});
  return kExitOk;
}

int size_at(const GenConfig& g, std::size_t i, int dflt) { return i < g.sizes.size() ? g.sizes[i] : dflt; }

int cmd_gen(const RunConfig& c, const GenConfig& g) {
  MeshDescription mesh;
  const std::string& k = g.kind;
  if (k == "sphere" || k == "monopole" || k == "monopole-quotient")
    mesh = icosphere_mesh(size_at(g, 0, g.level));
  else if (k == "torus" || k == "trivial-curving" || k == "monopole-curving")
    mesh = torus_mesh(size_at(g, 0, 8), size_at(g, 1, size_at(g, 0, 8)));
  else if (k == "torus3" || k == "class3")
    mesh = torus3_mesh(size_at(g, 0, 3));
  else
    throw ParseError("unknown generator '" + k + "'");

  const CoverPtr cover = std::make_shared<const StarCover>(TriangulatedComplex::build(mesh));
  const auto& base = cover->base();
  if (c.mesh.empty()) throw ParseError("gen needs --mesh for the mesh output");
  write_json_file(c.mesh, mesh_to_json(base.description()));

  std::optional<json> data;
  if (k == "monopole") {
    data = data_to_json(data_of(monopole_gerbe(cover, g.charge, g.twisted)));
  } else if (k == "monopole-quotient") {
    data = quotient_to_json({ExtensionSpec::u2_over_su2(g.twisted).name, monopole_transitions(cover, g.charge)});
  } else if (k == "trivial-curving") {
    const GerbeExample ex = trivial_curving(cover, g.total);
    data = data_to_json(data_of(ex.cb, &ex.cur));
  } else if (k == "monopole-curving") {
    const GerbeExample ex = monopole_curving(cover, g.charge);
    data = data_to_json(data_of(ex.cb, &ex.cur));
  } else if (k == "class3") {
    const GerbeExample ex = abelian_class3(cover, g.cls);
    data = data_to_json(data_of(ex.cb, &ex.cur));
  }
  if (data) {
    if (c.out.empty()) throw ParseError("generator '" + k + "' needs --out for the data output");
    write_json_file(c.out, *data);
  }
  std::cout << json{{"generator", k},
                    {"dim", base.dim()},
                    {"vertices", base.count(0)},
                    {"edges", base.count(1)},
                    {"triangles", base.count(2)},
                    {"tets", base.dim() == 3 ? base.count(3) : 0},
                    {"euler_characteristic", base.euler_characteristic()}}
                   .dump()
            << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-abelian gerbes on triangulated manifolds"};
  app.require_subcommand(1);
  RunConfig cfg;
  GenConfig gen;
  int degree = 1;

  auto common = [&](CLI::App* sub, bool reads_data) {
    sub->add_option("--mesh", cfg.mesh, "mesh JSON")->required()->check(CLI::ExistingFile);
    if (reads_data) sub->add_option("--data", cfg.data, "data JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", cfg.out, "output JSON (stdout when omitted)");
    sub->add_option("--tol-alg", cfg.tol_alg, "algebraic tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--tol-grp", cfg.tol_grp, "group membership tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--group", cfg.group, "expected structure group (U1, SU2, U2, SO3)");
  };
  auto* validate = app.add_subcommand("validate", "check cocycle, boundary identity and curving compatibility");
  common(validate, true);
  auto* lift = app.add_subcommand("lift", "lifting gerbe of quotient transitions given in --data");
  common(lift, true);
  auto* hol = app.add_subcommand("holonomy", "surface holonomy of a gerbe with curving");
  common(hol, true);
  auto* cc = app.add_subcommand("charclass", "integral of P(Omega) on a 3-manifold");
  common(cc, true);
  cc->add_option("--degree", degree, "degree of the invariant polynomial")->check(CLI::PositiveNumber);

  auto* g = app.add_subcommand("gen", "generate meshes and example data");
  g->add_option("kind", gen.kind,
                "sphere | torus | torus3 | monopole | monopole-quotient | trivial-curving | monopole-curving | class3")
      ->required();
  g->add_option("sizes", gen.sizes, "mesh sizes (sphere level, torus n m, 3-torus n)");
  g->add_option("--mesh", cfg.mesh, "mesh output path");
  g->add_option("--out", cfg.out, "data output path");
  g->add_option("--level", gen.level, "icosphere subdivision level");
  g->add_option("--charge", gen.charge, "monopole charge");
  g->add_option("--class", gen.cls, "integer class on the 3-torus");
  g->add_option("--total", gen.total, "curving integral in units of 2 pi i");
  g->add_flag("--twisted", gen.twisted, "non-central lift of the monopole transitions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(cfg);
    if (*lift) return cmd_lift(cfg);
    if (*hol) return cmd_holonomy(cfg);
    if (*cc) return cmd_charclass(cfg, degree);
    if (*g) return cmd_gen(cfg, gen);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
