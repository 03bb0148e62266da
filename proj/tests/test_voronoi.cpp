#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace vt;

namespace {

std::set<IntVector> with_negatives(const std::vector<IntVector>& vs) {
  std::set<IntVector> s;
  for (const auto& v : vs) {
    s.insert(v);
    s.insert(-v);
  }
  return s;
}

/// Relevant vectors recovered as the irredundant constraints among all
/// bisector halfspaces t^T D x <= t^T D t / 2 with |t_j| <= box.
std::vector<IntVector> irredundant_bisectors(const LatticeForm& F, std::int64_t box) {
  const std::size_t n = F.dim();
  HalfspaceSystem h{n, {}};
  std::vector<IntVector> ts;
  IntVector z(n, -box);
  while (true) {
    if (!is_zero(z)) {
      const RatVector q = F.gram() * z;
      h.halfspaces.push_back({q, dot(q, z) / 2});
      ts.push_back(z);
    }
    std::size_t i = 0;
    while (i < n && z[i] == box) z[i++] = -box;
    if (i == n) break;
    ++z[i];
  }
  const auto vs = enumerate_vertices(h);
  std::vector<IntVector> out;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    std::vector<RatVector> on;
    for (auto v : vs.on(k)) on.push_back(vs.vertices[v].point);
    if (affine_dimension(on) == static_cast<int>(n) - 1) out.push_back(normalize_sign(ts[k]));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

TEST(RelevantVectors, Examples) {
  EXPECT_EQ(relevant_vectors(cube_form(2)).vectors, (std::vector<IntVector>{{1, 0}, {0, 1}}));
  EXPECT_EQ(relevant_vectors(hexagonal_form()).vectors, (std::vector<IntVector>{{1, 0}, {0, 1}, {1, -1}}));
  EXPECT_EQ(relevant_vectors(fcc_form()).vectors.size(), 6u);
  EXPECT_EQ(relevant_vectors(cube_form(4)).vectors.size(), 4u);
}

TEST(RelevantVectors, MatchBruteForceCosetOracle) {
  for (const auto& [name, F] : builtin_forms())
    EXPECT_EQ(sorted(relevant_vectors(F).vectors), brute_relevant(F.gram(), 3)) << name;
  std::mt19937_64 rng(5);
  for (int k = 0; k < 30; ++k) {
    const auto F = random_form(rng, 2 + k % 2);
    EXPECT_EQ(sorted(relevant_vectors(F).vectors), brute_relevant(F.gram(), 3)) << k;
  }
}

TEST(RelevantVectors, MatchIrredundantBisectors) {
  std::vector<LatticeForm> forms{cube_form(2), hexagonal_form(), cube_form(3), fcc_form(),
                                 LatticeForm(RatMatrix::from_ints({{3, 1}, {1, 2}})),
                                 LatticeForm(RatMatrix::from_ints({{2, -1, 0}, {-1, 3, 1}, {0, 1, 2}}))};
  std::mt19937_64 rng(6);
  for (int k = 0; k < 6; ++k) forms.push_back(random_form(rng, 2));
  // In three dimensions the box is 1: every relevant vector of these forms
  // fits, and the oracle stays cheap.
  for (const auto& F : forms)
    EXPECT_EQ(sorted(relevant_vectors(F).vectors), irredundant_bisectors(F, F.dim() == 2 ? 3 : 1));
}

TEST(RelevantVectors, InvariantUnderAutomorphisms) {
  for (const auto& [name, F] : builtin_forms()) {
    const std::size_t n = F.dim();
    if (n > 3) continue;
    const auto rel = with_negatives(relevant_vectors(F).vectors);
    std::size_t autos = 0;
    const std::size_t cells = n * n;
    std::vector<int> code(cells, -1);
    while (true) {
      std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n));
      for (std::size_t c = 0; c < cells; ++c) rows[c / n][c % n] = code[c];
      const RatMatrix U = RatMatrix::from_ints(rows);
      if (U.transpose() * F.gram() * U == F.gram()) {
        ++autos;
        for (const auto& t : rel) {
          const RatVector img = U * t;
          IntVector it;
          for (const auto& x : img) it.push_back(x.get_num().get_si());
          EXPECT_TRUE(rel.count(it)) << name;
        }
      }
      std::size_t c = 0;
      while (c < cells && code[c] == 1) code[c++] = -1;
      if (c == cells) break;
      ++code[c];
    }
    EXPECT_GE(autos, 4u) << name;
  }
}

TEST(RelevantVectors, BoundIsReportedAndEnforced) {
  const auto r = relevant_vectors(hexagonal_form());
  EXPECT_GE(r.box_radius, 2);
  EXPECT_GT(r.coset_bound, 0);
  const LatticeForm skinny(RatMatrix::from_ints({{1, 0}, {0, 100}}));
  EXPECT_THROW(relevant_vectors(skinny), BoundNotCertified);
  EXPECT_EQ(relevant_vectors(skinny, 20).vectors, (std::vector<IntVector>{{1, 0}, {0, 1}}));
  EXPECT_THROW(relevant_vectors(cube_form(7)), InvalidInput);
}

TEST(LatticeForm, RejectsIndefinite) {
  EXPECT_THROW(LatticeForm(RatMatrix::from_ints({{1, 2}, {2, 1}})), InvalidInput);
}

TEST(BuildVoronoi, Examples) {
  const auto C = build_voronoi(cube_form(2));
  ASSERT_EQ(C.size(), 2u);
  EXPECT_EQ(C.pairs[0].q, rv({1, 0}));
  EXPECT_EQ(C.pairs[1].q, rv({0, 1}));
  const auto H = hexagon();
  EXPECT_EQ(H.pairs[0].q, rv({2, 1}));
  EXPECT_EQ(H.pairs[1].q, rv({1, 2}));
  EXPECT_EQ(H.pairs[2].q, rv({1, -1}));
  EXPECT_EQ(build_voronoi(cube_form(3)).size(), 3u);
}

TEST(BuildVoronoi, FacetCentersLieOnTheirFacets) {
  for (const auto& [name, P] : builtins()) {
    const auto h = hrep(P);
    for (std::size_t i = 0; i < P.size(); ++i) {
      const RatVector c = Rat(1, 2) * to_rat(P.pairs[i].t);
      EXPECT_EQ(dot(h.halfspaces[2 * i].normal, c), h.halfspaces[2 * i].offset) << name;
      EXPECT_TRUE(contains(P, IntVector(P.dim, 0), c));
    }
  }
}

TEST(AffineImage, Examples) {
  const auto C = build_voronoi(cube_form(2));
  const auto same = affine_image(C, RatMatrix::identity(2));
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(same.pairs[i].q, C.pairs[i].q);
    EXPECT_EQ(same.pairs[i].t, C.pairs[i].t);
  }
  const auto S = affine_image(C, RatMatrix::from_ints({{1, 1}, {0, 1}}));
  EXPECT_EQ(S.pairs[0].q, rv({1, -1}));
  EXPECT_EQ(S.pairs[0].t, (IntVector{1, 0}));
  EXPECT_EQ(S.pairs[1].q, rv({0, 1}));
  EXPECT_EQ(S.pairs[1].t, (IntVector{1, 1}));
  const auto twice = affine_image(C, RatMatrix::from_ints({{2, 0}, {0, 2}}));
  EXPECT_EQ(twice.pairs[0].t, (IntVector{2, 0}));
  EXPECT_EQ(twice.pairs[0].q, rv({Rat(1, 2), 0}));
  const auto half = RatMatrix::from_rows({rv({Rat(1, 2), 0}), rv({0, 1})});
  EXPECT_THROW(affine_image(C, half), NonIntegralImage);
  EXPECT_THROW(affine_image(C, RatMatrix::from_ints({{1, 1}, {1, 1}})), InvalidInput);
}

TEST(AffineImage, MapsVerticesLinearly) {
  const auto P = hexagon();
  const RatMatrix A = RatMatrix::from_ints({{2, 1}, {1, 1}});
  std::set<RatVector> mapped, direct;
  for (const auto& v : enumerate_vertices(P).vertices) mapped.insert(A * v.point);
  for (const auto& v : enumerate_vertices(affine_image(P, A)).vertices) direct.insert(v.point);
  EXPECT_EQ(mapped, direct);
}

TEST(ScalePerturb, Examples) {
  const auto H = hexagon();
  const auto same = scale_perturb(H, 1, 1);
  EXPECT_EQ(same.pairs[1].q, H.pairs[1].q);
  const auto P = perturbed_hexagon();
  EXPECT_EQ(P.pairs[0].q, rv({4, 2}));
  EXPECT_THROW(scale_perturb(H, 0, 0), InvalidInput);
  EXPECT_THROW(scale_perturb(H, 0, -1), InvalidInput);
  EXPECT_THROW(scale_perturb(H, 3, 2), InvalidInput);
  // The body does not move.
  std::set<RatVector> a, b;
  for (const auto& v : enumerate_vertices(H).vertices) a.insert(v.point);
  for (const auto& v : enumerate_vertices(P).vertices) b.insert(v.point);
  EXPECT_EQ(a, b);
}
