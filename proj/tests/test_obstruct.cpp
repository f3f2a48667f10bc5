#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "obstruct/obstruct.hpp"
#include "oracles.hpp"

using namespace obs;

namespace {

const AbelianGroup Z2 = AbelianGroup::cyclic(2);

struct Case {
  std::string complex;
  std::string extension;
};

std::vector<Case> grid() {
  std::vector<Case> out;
  for (const auto& c : builtin_complex_names())
    for (const auto& e : builtin_extension_names()) out.push_back({c, e});
  return out;
}

// E(sigma(s_bc)) E(sigma(s_ac))^-1 E(sigma(s_ab)) computed from the raw
// simplex lists, without the library's facet indexing.
int raw_obstruction(const BundleCocycle& s, const CentralExtension& ext, const Section& sigma, const Simplex& t) {
  const auto& E = ext.total();
  const int a = t.vertices[0], b = t.vertices[1], c = t.vertices[2];
  return E.mul(E.mul(sigma(s.value(b, c)), E.inv(sigma(s.value(a, c)))), sigma(s.value(a, b)));
}

}  // namespace

TEST(Obstruct, CocycleValidation) {
  auto X = share(builtin_complex("sphere2"));
  auto G = quaternion_group();
  auto s = identity_cocycle(X, G);
  EXPECT_TRUE(validate_cocycle(s).valid);
  s.values[0] = 2;
  auto check = validate_cocycle(s);
  EXPECT_FALSE(check.valid);
  ASSERT_TRUE(check.failing_triangle.has_value());
  EXPECT_THROW(make_cocycle(X, G, s.values), Error);
  EXPECT_THROW(obstruction_class(s, builtin_extension("q8_over_v4")), Error);
}

TEST(Obstruct, RandomCocyclesAreValidAndReproducible) {
  for (const auto& c : builtin_complex_names()) {
    auto X = share(builtin_complex(c));
    for (auto G : {cyclic_group(2), klein_four_group(), quaternion_group(), dihedral_group(4)})
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto s = random_cocycle(X, G, seed);
        EXPECT_TRUE(validate_cocycle(s).valid);
        EXPECT_EQ(s.values, random_cocycle(X, G, seed).values);
      }
  }
}

TEST(Obstruct, ObstructionLiesInKernelAndIsCocycle) {
  std::mt19937_64 rng(21);
  for (const auto& [c, e] : grid()) {
    SCOPED_TRACE(c + " / " + e);
    auto X = share(builtin_complex(c));
    auto ext = builtin_extension(e);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      auto s = random_cocycle(X, ext.base(), seed);
      auto sigma = random_section(ext, rng);
      auto q = obstruction_cocycle(s, ext, sigma);
      EXPECT_TRUE(is_cocycle(q));
      const auto& tris = X->simplices_of_dim(2);
      for (std::size_t t = 0; t < tris.size(); ++t) {
        const int x = raw_obstruction(s, ext, sigma, tris[t]);
        EXPECT_EQ(ext.rho(x), ext.base().identity());
        EXPECT_EQ(ext.embed(q[t]), x);
      }
    }
  }
}

TEST(Obstruct, SectionIndependence) {
  std::mt19937_64 rng(22);
  for (const auto& [c, e] : grid()) {
    auto X = share(builtin_complex(c));
    auto ext = builtin_extension(e);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      auto s = random_cocycle(X, ext.base(), seed);
      for (int k = 0; k < 4; ++k) {
        auto s1 = random_section(ext, rng), s2 = random_section(ext, rng);
        auto q1 = obstruction_cocycle(s, ext, s1), q2 = obstruction_cocycle(s, ext, s2);
        EXPECT_TRUE(classes_equal(q1, q2)) << c << " / " << e;
      }
    }
  }
}

TEST(Obstruct, GaugeInvariance) {
  std::mt19937_64 rng(23);
  for (const auto& [c, e] : grid()) {
    auto X = share(builtin_complex(c));
    auto ext = builtin_extension(e);
    auto s = random_cocycle(X, ext.base(), 5);
    std::vector<int> h(static_cast<std::size_t>(X->vertex_count()));
    for (auto& x : h) x = static_cast<int>(rng() % static_cast<std::uint64_t>(ext.base().order()));
    auto t = conjugate_cocycle(s, h);
    EXPECT_EQ(obstruction_class(s, ext).trivial, obstruction_class(t, ext).trivial) << c << " / " << e;
  }
}

TEST(Obstruct, LiftingCriterionMatchesBruteForce) {
  for (const auto& [c, e] : grid()) {
    auto X = share(builtin_complex(c));
    if (X->count(1) > 15) continue;
    auto ext = builtin_extension(e);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      auto s = random_cocycle(X, ext.base(), seed);
      auto r = obstruction_class(s, ext);
      auto brute = brute_force_lift(s, ext);
      EXPECT_EQ(r.trivial, brute.has_value()) << c << " / " << e << " seed " << seed;
      EXPECT_EQ(r.trivial, !oracle::all_lifts(s, ext).empty());
      if (brute) {
        EXPECT_TRUE(verify_lift(s, ext, *brute));
      }
      if (r.trivial) {
        ASSERT_TRUE(r.global_lift.has_value());
        EXPECT_TRUE(verify_lift(s, ext, *r.global_lift));
        EXPECT_TRUE(r.kappa.is_zero());
      } else {
        EXPECT_FALSE(construct_lift(s, ext).has_value());
      }
    }
  }
}

TEST(Obstruct, MobiusThroughZ4) {
  auto s = rp2_mobius_cocycle();
  auto ext = builtin_extension("z4_over_z2");
  auto r = obstruction_class(s, ext);
  EXPECT_FALSE(r.trivial);
  EXPECT_FALSE(brute_force_lift(s, ext).has_value());
  EXPECT_TRUE(oracle::all_lifts(s, ext).empty());
  // the split extension always lifts
  auto split = builtin_extension("split_z2");
  EXPECT_TRUE(obstruction_class(s, split).trivial);
}

TEST(Obstruct, TwistMovesObstructionByCoboundary) {
  std::mt19937_64 rng(24);
  auto X = share(builtin_complex("torus7"));
  auto ext = builtin_extension("q8_over_v4");
  auto s = random_cocycle(X, ext.base(), 3);
  auto sigma = canonical_section(ext);
  const auto& E = ext.total();
  for (int k = 0; k < 20; ++k) {
    auto t = random_cochain(X, 1, Z2, rng);
    auto lifted = twist(ext, section_lift(s, sigma), t);
    // obstruction of the twisted edge values, read directly
    std::vector<AbelianElement> q;
    for (std::size_t i = 0; i < X->count(2); ++i) {
      auto f = X->facet_indices(2, i);
      q.push_back(*ext.pullback(E.mul(E.mul(lifted.values[f[0]], E.inv(lifted.values[f[1]])), lifted.values[f[2]])));
    }
    Cochain qt(X, 2, Z2, q);
    EXPECT_EQ(qt, obstruction_cocycle(s, ext, sigma) + coboundary(t));
  }
}

TEST(Obstruct, BruteForceCap) {
  auto s = identity_cocycle(share(builtin_complex("torus7")), cyclic_group(2));
  try {
    brute_force_lift(s, builtin_extension("z4_over_z2"), 1 << 10);
    FAIL() << "cap not enforced";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CapExceeded);
  }
}

TEST(Obstruct, BruteForceIsLexLeast) {
  auto X = share(builtin_complex("sphere2"));
  auto ext = builtin_extension("z4_over_z2");
  auto s = identity_cocycle(X, cyclic_group(2));
  auto lift = brute_force_lift(s, ext);
  ASSERT_TRUE(lift.has_value());
  EXPECT_EQ(lift->values, std::vector<int>(6, 0));
  auto all = oracle::all_lifts(s, ext);
  EXPECT_EQ(lift->values, *std::min_element(all.begin(), all.end()));
}

TEST(Obstruct, LiftCountsMatchOracle) {
  struct Row {
    const char* complex;
    std::uint64_t count;
  };
  for (auto r : {Row{"torus7", 4}, Row{"sphere2", 1}, Row{"rp2_6", 2}, Row{"circle", 2}}) {
    for (const auto& e : std::vector<std::string>{"z4_over_z2", "split_z2"}) {
      SCOPED_TRACE(std::string(r.complex) + " / " + e);
      auto X = share(builtin_complex(r.complex));
      auto ext = builtin_extension(e);
      auto s = identity_cocycle(X, cyclic_group(2));
      auto n = count_inequivalent_lifts(s, ext);
      ASSERT_TRUE(n.has_value());
      EXPECT_EQ(*n, r.count);
      auto lifts = oracle::all_lifts(s, ext);
      EXPECT_EQ(oracle::lift_classes(s, ext, lifts), r.count);
    }
  }
  EXPECT_FALSE(count_inequivalent_lifts(rp2_mobius_cocycle(), builtin_extension("z4_over_z2")).has_value());
}

TEST(Obstruct, RandomCocycleReachesEveryTorusClass) {
  auto X = share(builtin_complex("torus7"));
  const auto classes = enumerate_classes(X, 1);
  ASSERT_EQ(classes.size(), 4u);
  const auto phi = cyclic_identification(cyclic_group(2));
  std::set<std::size_t> seen;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto c = pushforward_class(random_cocycle(X, cyclic_group(2), seed), phi);
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (classes_equal(c.representative, classes[i].representative)) seen.insert(i);
  }
  EXPECT_EQ(seen.size(), 4u);
}

TEST(Obstruct, Pushforward) {
  const auto phi = cyclic_identification(cyclic_group(2));
  EXPECT_FALSE(pushforward_class(rp2_mobius_cocycle(), phi).is_zero());
  auto X = share(builtin_complex("rp2_6"));
  auto g = gauge_cocycle(X, cyclic_group(2), {1, 0, 1, 1, 0, 0});
  EXPECT_TRUE(pushforward_class(g, phi).is_zero());
  auto phi4 = cyclic_identification(cyclic_group(4));
  EXPECT_EQ(phi4.codomain(), AbelianGroup::cyclic(4));
  EXPECT_THROW(cyclic_identification(klein_four_group()), Error);
  // V4 -> Z2 reading the first coordinate
  std::vector<AbelianElement> im;
  for (int x = 0; x < 4; ++x) im.push_back(AbelianElement{{x / 2}});
  EXPECT_NO_THROW(AbelianCharacter(klein_four_group(), Z2, im));
  std::vector<AbelianElement> bad = {AbelianElement{{0}}, AbelianElement{{1}}, AbelianElement{{1}}, AbelianElement{{1}}};
  EXPECT_THROW(AbelianCharacter(klein_four_group(), Z2, bad), Error);
}

TEST(Obstruct, MobiusSupportBoundsNothing) {
  auto s = rp2_mobius_cocycle();
  std::vector<int> f;
  for (int v : s.values) f.push_back(v);
  EXPECT_FALSE(oracle::z2_is_vertex_coboundary(*s.base, f));
  EXPECT_EQ(std::count(f.begin(), f.end(), 1), 5);
}

TEST(Obstruct, CocycleFileRoundTrip) {
  auto s = rp2_mobius_cocycle();
  std::stringstream ss;
  write_cocycle(ss, s, "builtin:rp2_6", "builtin:Z2");
  auto t = parse_cocycle(ss);
  EXPECT_EQ(t.values, s.values);
  EXPECT_EQ(*t.base, *s.base);
  std::istringstream bad("complex builtin:circle\ngroup builtin:Z2\n0 1 1\n1 2 1\n");
  EXPECT_THROW(parse_cocycle(bad), Error);
}

TEST(Obstruct, BruteForceClassCountMatchesOracle) {
  for (const std::string c : {"circle", "sphere2", "rp2_6"})
    for (const auto& e : builtin_extension_names()) {
      auto X = share(builtin_complex(c));
      auto ext = builtin_extension(e);
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        auto s = random_cocycle(X, ext.base(), seed);
        auto lifts = oracle::all_lifts(s, ext);
        const auto want = lifts.empty() ? 0 : oracle::lift_classes(s, ext, lifts);
        EXPECT_EQ(brute_force_lift_classes(s, ext), want) << c << " / " << e;
        EXPECT_EQ(count_inequivalent_lifts(s, ext).value_or(0), want);
      }
    }
}
