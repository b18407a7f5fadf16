#include "gerbecalc/complex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include <Eigen/Dense>

namespace gerbecalc {

std::string simplex_key(const Simplex& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(s[i]);
  }
  return out;
}

Simplex parse_simplex_key(const std::string& key) {
  Simplex s;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, '-')) {
    if (part.empty()) throw ParseError("malformed simplex key '" + key + "'");
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw ParseError("malformed simplex key '" + key + "'");
    }
    if (used != part.size()) throw ParseError("malformed simplex key '" + key + "'");
    s.push_back(v);
  }
  if (s.empty()) throw ParseError("empty simplex key");
  if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
    throw ParseError("simplex key '" + key + "' is not strictly sorted");
  return s;
}

int permutation_sign(std::span<const int> verts) {
  int sign = 1;
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      if (verts[i] == verts[j]) return 0;
      if (verts[i] > verts[j]) sign = -sign;
    }
  return sign;
}

namespace {

Simplex without(const Simplex& s, std::size_t i) {
  Simplex f;
  f.reserve(s.size() - 1);
  for (std::size_t j = 0; j < s.size(); ++j)
    if (j != i) f.push_back(s[j]);
  return f;
}

// Number of connected components of the graph on `nodes` with edges `edges`.
int components(const std::set<int>& nodes, const std::vector<std::pair<int, int>>& edges) {
  std::map<int, int> parent;
  for (int n : nodes) parent[n] = n;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : edges) parent[find(a)] = find(b);
  int count = 0;
  for (int n : nodes) count += find(n) == n;
  return count;
}

void check_links(int dim, const std::vector<int>& vertices, const std::vector<Simplex>& top) {
  std::map<int, std::vector<Simplex>> link;
  for (const auto& s : top)
    for (std::size_t i = 0; i < s.size(); ++i) link[s[i]].push_back(without(s, i));

  for (int v : vertices) {
    auto it = link.find(v);
    if (it == link.end()) throw NonManifold("vertex " + std::to_string(v) + " lies in no top simplex");
    const auto& cells = it->second;
    std::set<int> nodes;
    for (const auto& c : cells) nodes.insert(c.begin(), c.end());
    if (dim == 2) {
      // Link is a single cycle of edges.
      std::map<int, int> degree;
      std::set<Simplex> seen;
      std::vector<std::pair<int, int>> edges;
      for (const auto& c : cells) {
        if (!seen.insert(c).second)
          throw NonManifold("link of vertex " + std::to_string(v) + " repeats an edge");
        ++degree[c[0]];
        ++degree[c[1]];
        edges.emplace_back(c[0], c[1]);
      }
      for (auto [n, d] : degree)
        if (d != 2) throw NonManifold("link of vertex " + std::to_string(v) + " is not a circle");
      if (components(nodes, edges) != 1)
        throw NonManifold("link of vertex " + std::to_string(v) + " is disconnected");
    } else {
      // Link is a connected closed surface with Euler characteristic 2.
      std::map<Simplex, int> edge_use;
      std::set<Simplex> seen;
      std::vector<std::pair<int, int>> edges;
      for (const auto& c : cells) {
        if (!seen.insert(c).second)
          throw NonManifold("link of vertex " + std::to_string(v) + " repeats a triangle");
        for (std::size_t i = 0; i < 3; ++i) ++edge_use[without(c, i)];
        edges.emplace_back(c[0], c[1]);
        edges.emplace_back(c[1], c[2]);
      }
      for (const auto& [e, n] : edge_use)
        if (n != 2) throw NonManifold("link of vertex " + std::to_string(v) + " is not a closed surface");
      const int chi = static_cast<int>(nodes.size()) - static_cast<int>(edge_use.size()) +
                      static_cast<int>(cells.size());
      if (chi != 2 || components(nodes, edges) != 1)
        throw NonManifold("link of vertex " + std::to_string(v) + " is not a sphere");
    }
  }
}

// Orientation induced on face `i` of a top simplex with sign `o`.
int induced(int o, std::size_t i) { return (i % 2 == 0) ? o : -o; }

}  // namespace

TriangulatedComplex TriangulatedComplex::build(const MeshDescription& mesh) {
  TriangulatedComplex k;
  if (mesh.top.empty()) throw NonManifold("mesh has no top simplices");
  const std::size_t width = mesh.top.front().size();
  if (width != 3 && width != 4) throw NonManifold("top simplices must be triangles or tetrahedra");
  k.dim_ = static_cast<int>(width) - 1;
  if (!mesh.orientation.empty() && mesh.orientation.size() != mesh.top.size())
    throw NonOrientable("orientation list length does not match the top simplices");

  std::set<int> vset(mesh.vertices.begin(), mesh.vertices.end());
  if (vset.size() != mesh.vertices.size()) throw NonManifold("duplicate vertex ids");
  k.vertices_.assign(vset.begin(), vset.end());

  // Sorted top simplices with orientation relative to sorted order.
  std::vector<Simplex> top;
  std::vector<int> given;
  std::set<Simplex> seen;
  for (std::size_t t = 0; t < mesh.top.size(); ++t) {
    const auto& raw = mesh.top[t];
    if (raw.size() != width) throw NonManifold("mixed top-simplex dimensions");
    for (int v : raw)
      if (!vset.count(v)) throw NonManifold("simplex uses undeclared vertex " + std::to_string(v));
    const int parity = permutation_sign(raw);
    if (parity == 0) throw NonManifold("degenerate top simplex");
    Simplex s = raw;
    std::sort(s.begin(), s.end());
    if (!seen.insert(s).second) throw NonManifold("top simplex " + simplex_key(s) + " appears twice");
    top.push_back(s);
    if (!mesh.orientation.empty()) {
      const int o = mesh.orientation[t];
      if (o != 1 && o != -1) throw NonOrientable("orientation entries must be +1 or -1");
      given.push_back(o * parity);
    }
  }

  // Codimension-one adjacency.
  std::map<Simplex, std::vector<std::pair<int, std::size_t>>> cofaces;
  for (std::size_t t = 0; t < top.size(); ++t)
    for (std::size_t i = 0; i < width; ++i) cofaces[without(top[t], i)].emplace_back(static_cast<int>(t), i);
  for (const auto& [f, cs] : cofaces)
    if (cs.size() != 2)
      throw NonManifold("face " + simplex_key(f) + " lies in " + std::to_string(cs.size()) + " top simplices");

  check_links(k.dim_, k.vertices_, top);

  // Orientation: verify the given one or propagate a coherent one.
  std::vector<int> orient(top.size(), 0);
  if (!given.empty()) {
    orient = given;
    for (const auto& [f, cs] : cofaces)
      if (induced(orient[cs[0].first], cs[0].second) == induced(orient[cs[1].first], cs[1].second))
        throw NonOrientable("orientation is not coherent across face " + simplex_key(f));
  } else {
    std::vector<std::vector<std::pair<int, std::pair<std::size_t, std::size_t>>>> adj(top.size());
    for (const auto& [f, cs] : cofaces) {
      adj[cs[0].first].push_back({cs[1].first, {cs[0].second, cs[1].second}});
      adj[cs[1].first].push_back({cs[0].first, {cs[1].second, cs[0].second}});
    }
    for (std::size_t root = 0; root < top.size(); ++root) {
      if (orient[root]) continue;
      orient[root] = 1;
      std::queue<int> q;
      q.push(static_cast<int>(root));
      while (!q.empty()) {
        const int t = q.front();
        q.pop();
        for (auto [u, idx] : adj[t]) {
          const int want = -induced(orient[t], idx.first);
          const int ou = induced(1, idx.second) == want ? 1 : -1;
          if (orient[u] == 0) {
            orient[u] = ou;
            q.push(u);
          } else if (orient[u] != ou) {
            throw NonOrientable("complex is not orientable");
          }
        }
      }
    }
  }

  // All faces.
  std::array<std::set<Simplex>, 4> faces;
  for (const auto& s : top) {
    const int n = static_cast<int>(s.size());
    for (int mask = 1; mask < (1 << n); ++mask) {
      Simplex f;
      for (int j = 0; j < n; ++j)
        if (mask & (1 << j)) f.push_back(s[j]);
      faces[f.size() - 1].insert(f);
    }
  }
  for (int d = 0; d <= k.dim_; ++d) {
    k.simplices_[d].assign(faces[d].begin(), faces[d].end());
    for (std::size_t i = 0; i < k.simplices_[d].size(); ++i) k.index_[k.simplices_[d][i]] = static_cast<int>(i);
  }
  k.orientation_.assign(k.simplices_[k.dim_].size(), 1);
  for (std::size_t t = 0; t < top.size(); ++t) k.orientation_[k.index_.at(top[t])] = orient[t];
  return k;
}

int TriangulatedComplex::index_of(const Simplex& s) const {
  auto it = index_.find(s);
  return it == index_.end() ? -1 : it->second;
}

int TriangulatedComplex::euler_characteristic() const {
  int chi = 0;
  for (int d = 0; d <= dim_; ++d) chi += (d % 2 == 0 ? 1 : -1) * count(d);
  return chi;
}

MeshDescription TriangulatedComplex::description() const {
  MeshDescription m;
  m.vertices = vertices_;
  m.top = simplices_[dim_];
  m.orientation = orientation_;
  return m;
}

namespace {

std::uint64_t pack(std::span<const int> verts) {
  std::uint64_t key = 0;
  for (int v : verts) key = (key << 16) | static_cast<std::uint64_t>(v + 1);
  return key;
}

}  // namespace

Subdivision::Subdivision(const TriangulatedComplex& base) : dim_(base.dim()) {
  for (int d = 0; d <= dim_; ++d)
    for (const auto& s : base.simplices(d)) {
      vertex_index_[s] = static_cast<int>(carrier_.size());
      carrier_.push_back(s);
    }
  if (carrier_.size() >= 0xFFFF) throw NonManifold("complex too large for the subdivision index");

  std::array<std::set<std::vector<int>>, 4> flags;
  const auto& tops = base.simplices(dim_);
  for (std::size_t t = 0; t < tops.size(); ++t) {
    Simplex perm = tops[t];
    do {
      std::vector<int> chain;
      Simplex prefix;
      for (int v : perm) {
        prefix.push_back(v);
        Simplex sorted = prefix;
        std::sort(sorted.begin(), sorted.end());
        chain.push_back(vertex_index_.at(sorted));
      }
      const int n = static_cast<int>(chain.size());
      for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> sub;
        for (int j = 0; j < n; ++j)
          if (mask & (1 << j)) sub.push_back(chain[j]);
        flags[sub.size() - 1].insert(sub);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  for (int d = 0; d <= dim_; ++d) {
    int idx = 0;
    for (const auto& f : flags[d]) {
      verts_[d].insert(verts_[d].end(), f.begin(), f.end());
      lookup_[d][pack(f)] = idx++;
    }
  }
  for (int d = 1; d <= dim_; ++d) {
    const int n = count(d);
    faces_[d].resize(static_cast<std::size_t>(n) * (d + 1));
    std::vector<int> face(d);
    for (int s = 0; s < n; ++s) {
      auto vs = simplex(d, s);
      for (int i = 0; i <= d; ++i) {
        int w = 0;
        for (int j = 0; j <= d; ++j)
          if (j != i) face[w++] = vs[j];
        faces_[d][static_cast<std::size_t>(s) * (d + 1) + i] = find(face);
      }
    }
  }

  // Orientation of top flags: sign of the barycentric determinant in the
  // parent simplex, times the parent's orientation.
  const int n = count(dim_);
  orientation_.resize(n);
  for (int s = 0; s < n; ++s) {
    auto vs = simplex(dim_, s);
    const Simplex& parent = carrier_[vs[dim_]];
    Eigen::MatrixXd bary(dim_ + 1, dim_ + 1);
    for (int r = 0; r <= dim_; ++r) {
      const Simplex& c = carrier_[vs[r]];
      for (int col = 0; col <= dim_; ++col)
        bary(r, col) = std::count(c.begin(), c.end(), parent[col]) ? 1.0 / static_cast<double>(c.size()) : 0.0;
    }
    Eigen::MatrixXd diff(dim_, dim_);
    for (int r = 1; r <= dim_; ++r)
      for (int col = 1; col <= dim_; ++col) diff(r - 1, col - 1) = bary(r, col) - bary(0, col);
    const double det = diff.determinant();
    orientation_[s] = (det > 0 ? 1 : -1) * base.orientation(base.index_of(parent));
  }
}

int Subdivision::vertex_of(const Simplex& tau) const {
  auto it = vertex_index_.find(tau);
  return it == vertex_index_.end() ? -1 : it->second;
}

int Subdivision::find(std::span<const int> sorted_verts) const {
  const int k = static_cast<int>(sorted_verts.size()) - 1;
  if (k < 0 || k > dim_) return -1;
  auto it = lookup_[k].find(pack(sorted_verts));
  return it == lookup_[k].end() ? -1 : it->second;
}

int Support::local_index(int k, int idx) const {
  const auto& v = simplices[k];
  auto it = std::lower_bound(v.begin(), v.end(), idx);
  return (it != v.end() && *it == idx) ? static_cast<int>(it - v.begin()) : -1;
}

StarCover::StarCover(TriangulatedComplex base) : base_(std::move(base)), sd_(base_) {
  std::map<Simplex, Support> building;
  for (int d = 0; d <= base_.dim(); ++d)
    for (const auto& s : base_.simplices(d)) {
      Support sup;
      sup.base = s;
      sup.apex = sd_.vertex_of(s);
      building.emplace(s, std::move(sup));
    }
  auto global = std::make_shared<Support>();
  for (int k = 0; k <= sd_.dim(); ++k) {
    const int n = sd_.count(k);
    global->simplices[k].resize(n);
    std::iota(global->simplices[k].begin(), global->simplices[k].end(), 0);
    for (int s = 0; s < n; ++s) {
      // s lies in U_sigma iff sigma is a face of the carrier of its first vertex.
      const Simplex& c = sd_.carrier(sd_.simplex(k, s)[0]);
      const int m = static_cast<int>(c.size());
      for (int mask = 1; mask < (1 << m); ++mask) {
        Simplex sigma;
        for (int j = 0; j < m; ++j)
          if (mask & (1 << j)) sigma.push_back(c[j]);
        building.at(sigma).simplices[k].push_back(s);
      }
    }
  }
  global_ = global;
  for (auto& [s, sup] : building) overlaps_.emplace(s, std::make_shared<const Support>(std::move(sup)));
}

SupportPtr StarCover::overlap(Simplex sigma) const {
  std::sort(sigma.begin(), sigma.end());
  sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
  auto it = overlaps_.find(sigma);
  if (it != overlaps_.end()) return it->second;
  auto empty = std::make_shared<Support>();
  empty->base = sigma;
  return empty;
}

double StarCover::phi(int vertex, int sd_vertex) const {
  const Simplex& c = sd_.carrier(sd_vertex);
  return std::binary_search(c.begin(), c.end(), vertex) ? 1.0 / static_cast<double>(c.size()) : 0.0;
}

SimplicialMap::SimplicialMap(std::shared_ptr<const StarCover> source, std::shared_ptr<const StarCover> target,
                             std::map<int, int> vertex_map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(vertex_map)) {
  for (int v : source_->base().vertices()) {
    auto it = map_.find(v);
    if (it == map_.end()) throw NotSimplicial("vertex " + std::to_string(v) + " has no image");
    if (target_->base().index_of({it->second}) < 0)
      throw NotSimplicial("image of vertex " + std::to_string(v) + " is not a target vertex");
  }
  const auto& src = source_->base();
  for (const auto& s : src.simplices(src.dim()))
    if (!target_->base().contains(image(s)))
      throw NotSimplicial("image of " + simplex_key(s) + " is not a simplex");
  const auto& sd = source_->sd();
  sd_map_.resize(sd.vertex_count());
  for (int v = 0; v < sd.vertex_count(); ++v) sd_map_[v] = target_->sd().vertex_of(image(sd.carrier(v)));
}

Simplex SimplicialMap::image(const Simplex& s) const {
  Simplex out;
  for (int v : s) out.push_back(map_.at(v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SubdivisionInclusion subdivision_complex(const StarCover& cover) {
  const auto& sd = cover.sd();
  MeshDescription mesh;
  mesh.vertices.resize(sd.vertex_count());
  std::iota(mesh.vertices.begin(), mesh.vertices.end(), 0);
  for (int s = 0; s < sd.count(sd.dim()); ++s) {
    auto vs = sd.simplex(sd.dim(), s);
    mesh.top.emplace_back(vs.begin(), vs.end());
    mesh.orientation.push_back(sd.orientation(s));
  }
  SubdivisionInclusion inc;
  inc.fine = std::make_shared<const StarCover>(TriangulatedComplex::build(mesh));
  for (int v = 0; v < sd.vertex_count(); ++v) inc.to_base[v] = sd.carrier(v).front();
  return inc;
}

}  // namespace gerbecalc
