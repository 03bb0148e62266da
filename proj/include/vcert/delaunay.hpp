#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vcert/linalg.hpp"
#include "vcert/parallelotope.hpp"
#include "vcert/tiling_patch.hpp"
#include "vcert/vertices.hpp"
#include "vcert/voronoi.hpp"

namespace vcert {

struct DelaunayCell {
  std::vector<IntVector> lattice_points;  ///< sorted
  RatVector center;                       ///< the Voronoi vertex
  Rat squared_radius;
  bool matches_tiles = false;  ///< equals { t in patch : center in P(t) }
};

/// Lattice points of the patch at minimal D-distance from v, compared with
/// the set of patch tiles of the Voronoi tiling that contain v.
inline DelaunayCell delaunay_cell_at(const RatVector& v, const LatticeForm& F, const Parallelotope& voronoi,
                                     const Patch& patch) {
  DelaunayCell cell;
  cell.center = v;
  std::optional<Rat> best;
  for (const auto& t : patch.centers) {
    const Rat d = F.form()(v - to_rat(t));
    if (!best || d < *best) {
      best = d;
      cell.lattice_points = {t};
    } else if (d == *best) {
      cell.lattice_points.push_back(t);
    }
  }
  cell.squared_radius = *best;
  std::sort(cell.lattice_points.begin(), cell.lattice_points.end());

  std::vector<IntVector> tiles;
  for (const auto& t : patch.centers)
    if (contains(voronoi, t, v)) tiles.push_back(t);
  std::sort(tiles.begin(), tiles.end());
  cell.matches_tiles = tiles == cell.lattice_points;
  return cell;
}

/// Translate so the lexicographically least point is 0.
inline std::vector<IntVector> translation_class(std::vector<IntVector> pts) {
  std::sort(pts.begin(), pts.end());
  const IntVector base = pts.front();
  for (auto& p : pts) p = p - base;
  return pts;
}

struct DualityReport {
  std::vector<DelaunayCell> cells;  ///< one per vertex of P_f(0), in vertex order
  std::size_t translation_classes = 0;
  bool distinct = true;        ///< distinct vertices give distinct cells
  bool spanning = true;        ///< >= n+1 points, affinely spanning
  bool matches_tiles = true;
  bool empty_ellipsoid = true; ///< no patch point strictly inside any cell's D-sphere
  bool complete = true;        ///< every lattice point in each closed D-sphere lies in the patch
  std::optional<bool> orthogonal;  ///< n = 2 only
  std::vector<std::string> failures;

  bool pass() const { return failures.empty(); }
};

/// True when every lattice point z with (z - v)^T D (z - v) <= R lies in the
/// patch. Such z satisfy (z_j - v_j)^2 <= R (D^{-1})_jj, which bounds the box.
inline bool sphere_inside_patch(const LatticeForm& F, const Patch& patch, const RatVector& v, const Rat& R) {
  const std::size_t n = F.dim();
  const RatMatrix Dinv = *inverse(F.gram());
  IntVector lo(n), width(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Rat bound = R * Dinv(j, j);
    std::int64_t k = 0;
    while (Rat(k * k) < bound) ++k;
    const mpz_class fl = v[j].get_num() / v[j].get_den();  // truncation; widened below
    lo[j] = fl.get_si() - k - 1;
    width[j] = 2 * k + 3;
  }
  bool ok = true;
  IntVector off(n, 0);
  while (ok) {
    IntVector z(n);
    for (std::size_t j = 0; j < n; ++j) z[j] = lo[j] + off[j];
    if (F.form()(to_rat(z) - v) <= R && !patch.find(z)) ok = false;
    std::size_t j = 0;
    while (j < n && off[j] == width[j] - 1) off[j++] = 0;
    if (j == n) break;
    ++off[j];
  }
  return ok;
}

/// The cube needs lattice points at graph distance n from 0, so the default
/// radius is max(2, n).
inline DualityReport duality_check(const LatticeForm& F, std::optional<std::size_t> radius_opt = std::nullopt) {
  const std::size_t n = F.dim();
  const std::size_t radius = radius_opt.value_or(std::max<std::size_t>(2, n));
  const Parallelotope V = build_voronoi(F);
  const VertexSet vs = enumerate_vertices(V);
  const Patch patch = build_patch(V, radius);
  DualityReport r;

  for (const auto& vert : vs.vertices) r.cells.push_back(delaunay_cell_at(vert.point, F, V, patch));

  std::set<std::vector<IntVector>> cells, classes;
  for (const auto& c : r.cells) {
    if (!cells.insert(c.lattice_points).second) r.distinct = false;
    classes.insert(translation_class(c.lattice_points));
    std::vector<RatVector> pts;
    for (const auto& t : c.lattice_points) pts.push_back(to_rat(t));
    if (c.lattice_points.size() < n + 1 || affine_dimension(pts) != static_cast<int>(n)) r.spanning = false;
    if (!c.matches_tiles) r.matches_tiles = false;
    for (const auto& t : patch.centers)
      if (F.form()(c.center - to_rat(t)) < c.squared_radius) r.empty_ellipsoid = false;
    if (!sphere_inside_patch(F, patch, c.center, c.squared_radius)) r.complete = false;
  }
  r.translation_classes = classes.size();

  if (n == 2) {
    // Facet i of P_f(0) is the Voronoi edge between its two vertices; the
    // Delaunay edge crossing it joins 0 and t_i.
    r.orthogonal = true;
    for (std::size_t h = 0; h < vs.halfspace_count; ++h) {
      const auto on = vs.on(h);
      const IntVector t = (h % 2 == 0 ? 1 : -1) * V.pairs[h / 2].t;
      if (on.size() != 2) {
        r.orthogonal = false;
        continue;
      }
      const RatVector dir = vs.vertices[on[1]].point - vs.vertices[on[0]].point;
      if (dot(dir, F.gram() * t) != 0) r.orthogonal = false;
      const IntVector zero(2, 0);
      for (auto v : on) {
        const auto& pts = r.cells[v].lattice_points;
        if (!std::binary_search(pts.begin(), pts.end(), zero) || !std::binary_search(pts.begin(), pts.end(), t))
          r.orthogonal = false;
      }
    }
  }

  if (!r.distinct) r.failures.push_back("two vertices share a Delaunay cell");
  if (!r.spanning) r.failures.push_back("a Delaunay cell does not span");
  if (!r.matches_tiles) r.failures.push_back("distance cell differs from the tiles containing the vertex");
  if (!r.complete) r.failures.push_back("patch radius too small to contain a Delaunay sphere");
  if (!r.empty_ellipsoid) r.failures.push_back("a patch point lies inside a Delaunay sphere");
  if (r.orthogonal == false) r.failures.push_back("a Voronoi edge is not D-orthogonal to its Delaunay edge");
  return r;
}

}  // namespace vcert
