#include "gerbecalc/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>

namespace gerbecalc {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 normalized(Vec3 v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

}  // namespace

MeshDescription icosphere_mesh(int level) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> pos = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                           {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : pos) p = normalized(p);
  std::vector<std::array<int, 3>> faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                           {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                           {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                           {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      const Vec3 m = normalized({pos[a][0] + pos[b][0], pos[a][1] + pos[b][1], pos[a][2] + pos[b][2]});
      pos.push_back(m);
      const int id = static_cast<int>(pos.size()) - 1;
      mid[key] = id;
      return id;
    };
    std::vector<std::array<int, 3>> next;
    for (auto [a, b, c] : faces) {
      const int ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
      next.push_back({a, ab, ca});
      next.push_back({b, bc, ab});
      next.push_back({c, ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
  MeshDescription mesh;
  mesh.vertices.resize(pos.size());
  std::iota(mesh.vertices.begin(), mesh.vertices.end(), 0);
  for (auto [a, b, c] : faces) {
    const Vec3 u{pos[b][0] - pos[a][0], pos[b][1] - pos[a][1], pos[b][2] - pos[a][2]};
    const Vec3 v{pos[c][0] - pos[a][0], pos[c][1] - pos[a][1], pos[c][2] - pos[a][2]};
    const Vec3 n{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
    const double out = n[0] * (pos[a][0] + pos[b][0] + pos[c][0]) + n[1] * (pos[a][1] + pos[b][1] + pos[c][1]) +
                       n[2] * (pos[a][2] + pos[b][2] + pos[c][2]);
    mesh.top.push_back({a, b, c});
    mesh.orientation.push_back(out > 0 ? 1 : -1);
  }
  return mesh;
}

MeshDescription torus_mesh(int n, int m) {
  MeshDescription mesh;
  auto id = [&](int i, int j) { return ((i % n + n) % n) * m + ((j % m + m) % m); };
  mesh.vertices.resize(static_cast<std::size_t>(n) * m);
  std::iota(mesh.vertices.begin(), mesh.vertices.end(), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      mesh.top.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      mesh.top.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
      mesh.orientation.push_back(1);
      mesh.orientation.push_back(1);
    }
  return mesh;
}

MeshDescription torus3_mesh(int n) {
  MeshDescription mesh;
  auto id = [&](int x, int y, int z) { return ((x % n) * n + (y % n)) * n + (z % n); };
  mesh.vertices.resize(static_cast<std::size_t>(n) * n * n);
  std::iota(mesh.vertices.begin(), mesh.vertices.end(), 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        std::array<int, 3> axes = {0, 1, 2};
        do {
          std::array<int, 3> p = {x, y, z};
          Simplex tet = {id(p[0], p[1], p[2])};
          for (int a : axes) {
            ++p[a];
            tet.push_back(id(p[0], p[1], p[2]));
          }
          mesh.top.push_back(tet);
          mesh.orientation.push_back(permutation_sign(axes));
        } while (std::next_permutation(axes.begin(), axes.end()));
      }
  return mesh;
}

}  // namespace gerbecalc
