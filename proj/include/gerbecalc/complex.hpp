#ifndef GERBECALC_COMPLEX_HPP
#define GERBECALC_COMPLEX_HPP

/* Closed oriented simplicial 2- and 3-manifolds, their barycentric
 * subdivision, and the open cover by vertex stars.
 *
 * Base simplices are sorted vertex-id lists; orientation is a sign relative
 * to sorted order. Subdivision vertices are numbered by (dimension of the
 * carrier, carrier lexicographic), so a sorted subdivision simplex is a flag
 * tau_0 < tau_1 < ... of base simplices read from the smallest face up.
 */

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gerbecalc/errors.hpp"

namespace gerbecalc {

using Simplex = std::vector<int>;

/// "i-j-k" for sorted ids.
std::string simplex_key(const Simplex& s);
/// Inverse of simplex_key; throws ParseError.
Simplex parse_simplex_key(const std::string& key);

/// Sign of the permutation sorting `verts` (0 if an id repeats).
int permutation_sign(std::span<const int> verts);

struct MeshDescription {
  std::vector<int> vertices;
  std::vector<Simplex> top;      // triangles or tetrahedra, any vertex order
  std::vector<int> orientation;  // +1/-1 per entry of `top`; empty = derive one
};

class TriangulatedComplex {
 public:
  /// Validates the pseudomanifold and vertex-link conditions and fixes a
  /// coherent orientation. Throws NonManifold / NonOrientable.
  static TriangulatedComplex build(const MeshDescription& mesh);

  int dim() const { return dim_; }
  const std::vector<int>& vertices() const { return vertices_; }
  /// Sorted simplices of dimension k, in lexicographic order.
  const std::vector<Simplex>& simplices(int k) const { return simplices_.at(k); }
  int count(int k) const { return static_cast<int>(simplices_.at(k).size()); }
  /// Index in simplices(k) or -1.
  int index_of(const Simplex& s) const;
  bool contains(const Simplex& s) const { return index_of(s) >= 0; }
  /// Orientation of simplices(dim())[i] relative to its sorted order.
  int orientation(int top_index) const { return orientation_.at(top_index); }
  int euler_characteristic() const;

  /// Sorted top simplices with their orientation signs.
  MeshDescription description() const;

 private:
  int dim_ = 0;
  std::vector<int> vertices_;
  std::array<std::vector<Simplex>, 4> simplices_;
  std::map<Simplex, int> index_;
  std::vector<int> orientation_;
};

/// Barycentric subdivision with its carrier map b_tau -> tau.
class Subdivision {
 public:
  explicit Subdivision(const TriangulatedComplex& base);

  int dim() const { return dim_; }
  int vertex_count() const { return static_cast<int>(carrier_.size()); }
  const Simplex& carrier(int sd_vertex) const { return carrier_.at(sd_vertex); }
  /// Subdivision vertex b_tau, or -1 when tau is not a base simplex.
  int vertex_of(const Simplex& tau) const;

  int count(int k) const { return static_cast<int>(verts_.at(k).size() / (k + 1)); }
  /// Sorted subdivision vertex ids of simplex `idx` of dimension k.
  std::span<const int> simplex(int k, int idx) const {
    return {verts_[k].data() + static_cast<std::size_t>(idx) * (k + 1), static_cast<std::size_t>(k + 1)};
  }
  /// Index of the sorted vertex tuple in dimension size-1, or -1.
  int find(std::span<const int> sorted_verts) const;
  /// Face i omits vertex i; k >= 1.
  std::span<const int> faces(int k, int idx) const {
    return {faces_[k].data() + static_cast<std::size_t>(idx) * (k + 1), static_cast<std::size_t>(k + 1)};
  }
  /// Orientation of a top simplex induced by the base orientation.
  int orientation(int top_idx) const { return orientation_.at(top_idx); }

 private:
  int dim_ = 0;
  std::vector<Simplex> carrier_;
  std::map<Simplex, int> vertex_index_;
  std::array<std::vector<int>, 4> verts_;
  std::array<std::vector<int>, 4> faces_;
  std::array<std::unordered_map<std::uint64_t, int>, 4> lookup_;
  std::vector<int> orientation_;
};

/// A subcomplex of the subdivision: the overlap U_sigma of the star cover or
/// the whole complex.
struct Support {
  std::optional<Simplex> base;                // nullopt = global
  std::array<std::vector<int>, 4> simplices;  // sorted subdivision indices per dimension
  int apex = -1;                              // b_sigma (cone point), -1 when global or empty

  bool global() const { return !base.has_value(); }
  bool empty() const { return simplices[0].empty(); }
  int size(int k) const { return static_cast<int>(simplices[k].size()); }
  /// Position of global index `idx` among simplices[k], or -1.
  int local_index(int k, int idx) const;
  std::string key() const { return base ? simplex_key(*base) : std::string("global"); }
};

using SupportPtr = std::shared_ptr<const Support>;

/// Cover of the base by open vertex stars, realized on the subdivision.
/// U_{i1..ip} is nonempty iff {i1..ip} spans a base simplex.
class StarCover {
 public:
  explicit StarCover(TriangulatedComplex base);

  const TriangulatedComplex& base() const { return base_; }
  const Subdivision& sd() const { return sd_; }
  int dim() const { return base_.dim(); }

  /// Overlap subcomplex of the vertex set `sigma` (any order); empty when
  /// sigma is not a base simplex.
  SupportPtr overlap(Simplex sigma) const;
  SupportPtr global() const { return global_; }

  /// Partition of unity phi_i(b_tau) = 1/|tau| if i in tau, else 0.
  double phi(int vertex, int sd_vertex) const;

 private:
  TriangulatedComplex base_;
  Subdivision sd_;
  std::map<Simplex, SupportPtr> overlaps_;
  SupportPtr global_;
};

/// Vertex map carrying simplices to simplices (possibly degenerately).
class SimplicialMap {
 public:
  /// Throws NotSimplicial.
  SimplicialMap(std::shared_ptr<const StarCover> source, std::shared_ptr<const StarCover> target,
                std::map<int, int> vertex_map);

  const StarCover& source() const { return *source_; }
  const StarCover& target() const { return *target_; }
  std::shared_ptr<const StarCover> source_ptr() const { return source_; }
  std::shared_ptr<const StarCover> target_ptr() const { return target_; }
  int operator()(int vertex) const { return map_.at(vertex); }
  /// Sorted, deduplicated image of a base simplex.
  Simplex image(const Simplex& s) const;
  /// Induced map on subdivision vertices, b_tau -> b_f(tau).
  int sd_vertex(int v) const { return sd_map_.at(v); }

 private:
  std::shared_ptr<const StarCover> source_, target_;
  std::map<int, int> map_;
  std::vector<int> sd_map_;
};

/// The subdivision as a complex of its own (vertex ids = subdivision ids),
/// together with the simplicial map b_tau -> min(tau) back to the base.
struct SubdivisionInclusion {
  std::shared_ptr<const StarCover> fine;
  std::map<int, int> to_base;
};
SubdivisionInclusion subdivision_complex(const StarCover& cover);

}  // namespace gerbecalc

#endif
