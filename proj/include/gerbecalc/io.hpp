#ifndef GERBECALC_IO_HPP
#define GERBECALC_IO_HPP

/* JSON formats for meshes, gerbe data and reports.
 *
 * Subdivision vertices are keyed by their carrier ("0-1" is the barycenter
 * of edge {0,1}); subdivision simplices join the carrier keys of their
 * vertices with '|' ("0|0-1|0-1-2"). Matrices are row-major nested arrays of
 * [re, im] pairs. Object keys are sorted, so output is canonical.
 */

#include <optional>
#include <string>

#include <json.hpp>

#include "gerbecalc/connective.hpp"
#include "gerbecalc/holonomy.hpp"

namespace gerbecalc {

using json = nlohmann::json;

json matrix_to_json(const Mat& m);
/// `where` names the location for ParseError messages.
Mat matrix_from_json(const json& j, const std::string& where);

json mesh_to_json(const MeshDescription& mesh);
MeshDescription mesh_from_json(const json& j);

std::string sd_vertex_key(const Subdivision& sd, int sd_vertex);
std::string sd_simplex_key(const Subdivision& sd, int degree, int idx);
/// Global index of the keyed simplex; throws ParseError.
int parse_sd_simplex(const Subdivision& sd, int degree, const std::string& key, const std::string& where);

/// In-memory image of a data file.
struct DataFile {
  Band band;
  ConnectiveMode mode = ConnectiveMode::Full;
  std::map<Simplex, GroupFunction> edges;      // transitions h_ij, sorted edges
  std::map<Simplex, GroupFunction> triangles;  // c_ijk, sorted triangles
  std::map<int, Cochain> alpha;
  std::map<Simplex, Cochain> shift;
  std::optional<std::map<int, Cochain>> L;

  GerbeCocycle gerbe(const CoverPtr& cover, double tol_grp = kTolGroup) const;
  ConnectiveBundle bundle(const CoverPtr& cover, double tol_grp = kTolGroup) const;
};

DataFile data_of(const GerbeCocycle& gc);
DataFile data_of(const ConnectiveBundle& cb, const CurvingData* cur = nullptr);

json data_to_json(const DataFile& d);
/// Every listed function and cochain must cover its whole overlap.
DataFile data_from_json(const json& j, const CoverPtr& cover);

/// Quotient transitions for the lift command.
struct QuotientFile {
  std::string extension;
  std::map<Simplex, GroupFunction> transitions;
};
json quotient_to_json(const QuotientFile& q);
QuotientFile quotient_from_json(const json& j, const CoverPtr& cover);

/// Throws ParseError with the path and the parser's byte offset.
json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

json report_json(const CocycleReport& r);
json report_json(const BoundaryReport& r);
json report_json(const HolonomyReport& r);

}  // namespace gerbecalc

#endif
