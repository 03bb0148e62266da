#include <gtest/gtest.h>

#include "support.hpp"

using namespace vt;

namespace {

std::vector<Step> steps(std::initializer_list<std::pair<std::size_t, int>> xs) {
  std::vector<Step> out;
  for (auto [i, s] : xs) out.push_back({i, s});
  return out;
}

Rat dnorm(const RatMatrix& D, const IntVector& t) { return dot(to_rat(t), D * t); }

Parallelotope rescaled(const Parallelotope& P) {
  const auto r = canonical_scaling(P, belts(P, enumerate_vertices(P)));
  return apply_scaling(P, *r.scaling);
}

}  // namespace

TEST(Patch, Sizes) {
  const auto cube = build_voronoi(cube_form(2));
  EXPECT_EQ(build_patch(cube, 0).size(), 1u);
  EXPECT_EQ(build_patch(cube, 1).size(), 5u);
  EXPECT_EQ(build_patch(cube, 2).size(), 13u);
  EXPECT_EQ(build_patch(hexagon(), 1).size(), 7u);
  EXPECT_EQ(build_patch(hexagon(), 2).size(), 19u);
  EXPECT_EQ(build_patch(build_voronoi(cube_form(3)), 1).size(), 7u);
}

TEST(Patch, TreePathsReachTheirCenters) {
  for (const auto& [name, P] : builtins()) {
    const auto patch = build_patch(P, 2);
    EXPECT_EQ(patch.centers[0], IntVector(P.dim, 0));
    for (std::size_t c = 0; c < patch.size(); ++c) {
      const auto tp = tree_path(P, patch, c);
      EXPECT_EQ(tp.size(), patch.depth[c]) << name;
      EXPECT_EQ(path_end(P, IntVector(P.dim, 0), tp), patch.centers[c]) << name;
    }
  }
}

TEST(Patch, WalkCountMatchesPowers) {
  const auto cube = build_voronoi(cube_form(2));
  const auto patch = build_patch(cube, 3);
  std::size_t walks = 0;
  for_each_walk(patch, 0, 3, [&](const std::vector<Step>&, const std::vector<std::size_t>&) { ++walks; });
  EXPECT_EQ(walks, 4u + 16u + 64u);
}

TEST(PathSums, Examples) {
  const auto H = hexagon();
  const auto s = path_sums(H, steps({{0, 1}, {1, 1}, {2, -1}}));
  EXPECT_EQ(s.t, (IntVector{0, 2}));
  EXPECT_EQ(s.q, rv({2, 4}));
  EXPECT_EQ(path_sums(H, {}).t, (IntVector{0, 0}));
  EXPECT_EQ(reversed(steps({{0, 1}, {1, -1}})), steps({{1, 1}, {0, -1}}));
}

TEST(Phi, Examples) {
  const auto H = hexagon();
  const IntVector zero{0, 0};
  for (std::size_t i = 0; i < H.size(); ++i)
    EXPECT_EQ(phi(H, zero, steps({{i, 1}})), dot(H.pairs[i].q, to_rat(H.pairs[i].t)) / 2);
  // Hand evaluation: 2 + 2 - 4 - 1.
  EXPECT_EQ(phi(perturbed_hexagon(), zero, quadrangle(0, 1)), -1);
  EXPECT_EQ(phi(H, zero, quadrangle(0, 1)), 0);
}

/// With q = D t, phi(t0, P) = (|t0 + t(P)|_D^2 - |t0|_D^2) / 2.
TEST(PhiProperty, SymmetricCaseIsANormDifference) {
  std::mt19937_64 rng(11);
  for (const auto& [name, F] : builtin_forms()) {
    const auto P = build_voronoi(F);
    const auto patch = build_patch(P, 3);
    SampleRng srng(rng());
    for (int k = 0; k < 40; ++k) {
      const auto walk = random_patch_walk(patch, srng, 6);
      const IntVector t0 = patch.centers[srng.below(patch.size())];
      const IntVector end = path_end(P, t0, walk);
      EXPECT_EQ(phi(P, t0, walk), (dnorm(F.gram(), end) - dnorm(F.gram(), t0)) / 2) << name;
      EXPECT_EQ(phi(P, t0, walk), phi_closed(P, t0, walk)) << name;
    }
  }
}

TEST(PhiProperty, ScaledIntegerMatchesRational) {
  std::vector<Parallelotope> corpus{perturbed_hexagon(), scale_perturb(hexagon(), 2, Rat(3, 7))};
  for (const auto& [name, P] : builtins()) corpus.push_back(P);
  for (const auto& P : corpus) {
    const ScaledPathAlgebra alg(P);
    const auto patch = build_patch(P, 2);
    SampleRng rng(3);
    for (int k = 0; k < 60; ++k) {
      const auto walk = random_patch_walk(patch, rng, 6);
      const IntVector t0 = patch.centers[rng.below(patch.size())];
      const Rat exact = phi(P, t0, walk);
      EXPECT_EQ(Rat(alg.phi2(t0, walk)), 2 * alg.scale() * exact);
      EXPECT_EQ(Rat(alg.phi2_closed(t0, walk)), 2 * alg.scale() * phi_closed(P, t0, walk));
    }
  }
}

TEST(PhiIdentities, HoldOnCorpus) {
  for (const auto& [name, P] : builtins()) {
    const auto rep = check_phi_identities(P, build_patch(P, 2), P.dim <= 2 ? 6 : 4);
    EXPECT_TRUE(rep.pass) << name;
    EXPECT_EQ(rep.nonzero_quadrangles, 0u) << name;
    EXPECT_GT(rep.walks, 0u);
    for (const auto& c : rep.checks) EXPECT_EQ(c.failed, 0u) << name << " " << c.name;
  }
}

TEST(PhiIdentities, PerturbedHexagonHasNonzeroQuadrangles) {
  const auto P = perturbed_hexagon();
  const auto rep = check_phi_identities(P, build_patch(P, 2), 6);
  // The general identities still hold; only the quadrangle values move.
  EXPECT_TRUE(rep.pass);
  EXPECT_GT(rep.nonzero_quadrangles, 0u);
  const auto fixed = check_phi_identities(rescaled(P), build_patch(P, 2), 6);
  EXPECT_TRUE(fixed.pass);
  EXPECT_EQ(fixed.nonzero_quadrangles, 0u);
}

TEST(Circuits, BuiltinsCloseUp) {
  for (const auto& [name, P] : builtins()) {
    const auto r = circuit_q_check(P, belts(P, enumerate_vertices(P)), build_patch(P, 2), 4);
    EXPECT_TRUE(r.pass) << name;
    EXPECT_GT(r.circuits, 0u);
  }
  const auto hex = circuit_q_check(hexagon(), belts(hexagon(), enumerate_vertices(hexagon())),
                                   build_patch(hexagon(), 2), 6);
  EXPECT_EQ(hex.triangles, 1u);
}

TEST(Circuits, PerturbedHexagonWitnessTriangle) {
  const auto P = perturbed_hexagon();
  const auto bs = belts(P, enumerate_vertices(P));
  const auto r = circuit_q_check(P, bs, build_patch(P, 2), 6);
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(encode_steps(r.witness->steps), (std::vector<std::string>{"+1", "+2", "-0"}));
  EXPECT_EQ(path_sums(P, r.witness->steps).q, rv({-2, -1}));
  EXPECT_TRUE(circuit_q_check(rescaled(P), bs, build_patch(P, 2), 6).pass);
}

TEST(Generatrissa, Examples) {
  const Generatrissa hex{QuadraticForm(hexagonal_form().gram())};
  EXPECT_EQ(generatrissa_eval(hex, rv({0, 0}), {1, 0}), -1);
  EXPECT_EQ(generatrissa_eval(hex, rv({0, 0}), {0, 0}), 0);
  const Generatrissa cube{QuadraticForm(RatMatrix::identity(2))};
  EXPECT_EQ(generatrissa_eval(cube, rv({0, 0}), {1, 0}), Rat(-1, 2));
  EXPECT_EQ(generatrissa_eval(cube, rv({Rat(1, 2), 0}), {1, 0}), 0);
  const auto H = hexagon();
  for (const auto& p : H.pairs) EXPECT_EQ(generatrissa_eval(hex, Rat(1, 2) * to_rat(p.t), p.t), 0);
}

/// l(x; t) = (|x|^2 - |x - t|^2) / 2 in the D norm.
TEST(GeneratrissaProperty, MatchesNormDifference) {
  for (const auto& [name, F] : builtin_forms()) {
    const Generatrissa g{QuadraticForm(F.gram())};
    const auto P = build_voronoi(F);
    const auto vs = enumerate_vertices(P);
    const auto patch = build_patch(P, 2);
    for (const auto& x : interior_samples(vs, P.dim, 20, 4)) {
      const Rat xx = dot(x, F.gram() * x);
      for (const auto& t : patch.centers) {
        const RatVector d = x - to_rat(t);
        EXPECT_EQ(2 * generatrissa_eval(g, x, t), xx - dot(d, F.gram() * d)) << name;
      }
    }
  }
}

TEST(Generatrissa, VerifiedOnBuiltins) {
  for (const auto& [name, F] : builtin_forms()) {
    const auto P = build_voronoi(F);
    const auto vs = enumerate_vertices(P);
    const auto patch = build_patch(P, 2);
    const auto samples = interior_samples(vs, P.dim, 100, 9);
    for (const auto& x : samples) EXPECT_TRUE(contains_interior(P, IntVector(P.dim, 0), x)) << name;
    const auto r = verify_generatrissa(P, QuadraticForm(F.gram()), vs, patch, samples, 9);
    EXPECT_TRUE(r.pass) << name;
    EXPECT_GT(r.interior_checks, 100u);
  }
}

TEST(Generatrissa, WrongFormIsRejected) {
  const auto cube = build_voronoi(cube_form(2));
  const auto vs = enumerate_vertices(cube);
  const auto r = verify_generatrissa(cube, QuadraticForm(hexagonal_form().gram()), vs, build_patch(cube, 2),
                                     interior_samples(vs, 2, 20, 1));
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.failures.empty());
}

TEST(Generatrissa, PathIndependence) {
  for (const auto& [name, F] : builtin_forms()) {
    const auto P = build_voronoi(F);
    const auto r = check_generatrissa_paths(P, QuadraticForm(F.gram()), build_patch(P, 3), 50, 17);
    EXPECT_EQ(r.paths, 50u);
    EXPECT_EQ(r.agree, r.paths) << name;
    EXPECT_FALSE(r.disagreeing_pair) << name;
  }
  const auto P = perturbed_hexagon();
  const QuadraticForm D(Rat(2) * hexagonal_form().gram());
  EXPECT_FALSE(check_generatrissa_paths(rescaled(P), D, build_patch(P, 3), 50, 17).disagreeing_pair);
}

TEST(Generatrissa, UnscaledPerturbedHexagonDependsOnPath) {
  const auto P = perturbed_hexagon();
  const auto r = check_generatrissa_paths(P, QuadraticForm(Rat(2) * hexagonal_form().gram()), build_patch(P, 3), 200, 17);
  ASSERT_TRUE(r.disagreeing_pair);
  const auto& [a, b] = *r.disagreeing_pair;
  EXPECT_EQ(path_end(P, a.start, a.steps), path_end(P, b.start, b.steps));
  EXPECT_NE(generatrissa_recursive(P, a.steps), generatrissa_recursive(P, b.steps));
  EXPECT_LT(r.agree, r.paths);
}

TEST(Pegs, Multipliers) {
  const auto cube = build_voronoi(cube_form(2));
  const auto ok = verify_pegs(cube, QuadraticForm(RatMatrix::identity(2)), build_patch(cube, 2));
  EXPECT_TRUE(ok.pass);
  for (const auto& m : ok.multipliers) EXPECT_EQ(m, Rat(1));

  // q = 2 D t checked against D.
  const auto H = hexagon();
  const auto doubled = apply_scaling(H, CanonicalScaling{rv({2, 2, 2}), 1, {{0, 1, 2}}});
  const auto half = verify_pegs(doubled, QuadraticForm(hexagonal_form().gram()), build_patch(H, 2));
  EXPECT_TRUE(half.pass);
  for (const auto& m : half.multipliers) EXPECT_EQ(m, Rat(1, 2));

  const auto bad = verify_pegs(cube, QuadraticForm(hexagonal_form().gram()), build_patch(cube, 1));
  EXPECT_FALSE(bad.pass);
  EXPECT_TRUE(bad.witness);
}

TEST(Primitivity, Examples) {
  auto level = [](const PrimitivityReport& r, std::size_t k) {
    for (const auto& l : r.levels)
      if (l.k == k) return l;
    ADD_FAILURE() << "missing level " << k;
    return PrimitivityLevel{};
  };
  const auto cube2 = build_voronoi(cube_form(2));
  const auto c2 = primitivity_report(cube2, enumerate_vertices(cube2), build_patch(cube2, 2));
  EXPECT_EQ(level(c2, 0).counts, (std::vector<std::size_t>(4, 4)));
  EXPECT_FALSE(level(c2, 0).primitive);
  EXPECT_EQ(level(c2, 1).counts, (std::vector<std::size_t>(4, 2)));

  const auto H = hexagon();
  const auto h = primitivity_report(H, enumerate_vertices(H), build_patch(H, 2));
  EXPECT_EQ(level(h, 0).counts, (std::vector<std::size_t>(6, 3)));
  EXPECT_TRUE(level(h, 0).primitive);

  const auto cube3 = build_voronoi(cube_form(3));
  const auto c3 = primitivity_report(cube3, enumerate_vertices(cube3), build_patch(cube3, 3));
  EXPECT_EQ(level(c3, 1).expected, 3u);
  EXPECT_EQ(level(c3, 1).counts, (std::vector<std::size_t>(12, 4)));
  EXPECT_FALSE(level(c3, 1).primitive);
  EXPECT_EQ(level(c3, 0).counts, (std::vector<std::size_t>(8, 8)));

  const auto fcc = build_voronoi(fcc_form());
  const auto f = primitivity_report(fcc, enumerate_vertices(fcc), build_patch(fcc, 3));
  EXPECT_TRUE(level(f, 2).primitive);
}

/// Tiles of a patch cover the sampled region and overlap only on boundaries.
TEST(TilingProperty, CoveringAndPacking) {
  for (const auto& [name, P] : builtins()) {
    if (P.dim > 3) continue;
    const auto patch = build_patch(P, P.dim + 1);
    SampleRng rng(21);
    for (int s = 0; s < 60; ++s) {
      RatVector x(P.dim);
      for (auto& c : x) c = make_rat(static_cast<std::int64_t>(rng.below(5)) - 2, 2 + static_cast<std::int64_t>(rng.below(5)));
      std::size_t closed = 0, open = 0;
      for (const auto& t : patch.centers) {
        if (contains(P, t, x)) ++closed;
        if (contains_interior(P, t, x)) ++open;
      }
      EXPECT_GE(closed, 1u) << name;
      EXPECT_LE(open, 1u) << name;
    }
  }
}
