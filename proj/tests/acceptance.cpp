// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "obstruct/all.hpp"
#include "oracles.hpp"

using namespace obs;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void run(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    o.pass = false;
    o.detail += " [over time budget " + std::to_string(budget_s) + " s]";
  }
  if (!o.pass) ++failures;
  std::printf("%s %d %-28s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::vector<std::string> complexes() { return builtin_complex_names(); }
std::vector<std::string> extensions() { return builtin_extension_names(); }

// Triangle condition and projection read straight off the simplex lists.
bool lift_ok(const BundleCocycle& s, const CentralExtension& ext, const Lift& lift) {
  const auto& X = *s.base;
  const auto& E = ext.total();
  if (lift.values.size() != X.count(1)) return false;
  for (std::size_t i = 0; i < lift.values.size(); ++i)
    if (ext.rho(lift.values[i]) != s.values[i]) return false;
  auto g = [&](Vertex a, Vertex b) { return lift.values[*X.index_of(Simplex{{a, b}})]; };
  for (const auto& t : X.simplices_of_dim(2)) {
    const Vertex a = t.vertices[0], b = t.vertices[1], c = t.vertices[2];
    if (E.mul(g(a, b), g(b, c)) != g(a, c)) return false;
  }
  return true;
}

Outcome cancellation() {
  std::size_t n = 0, bad = 0;
  for (const auto& c : complexes()) {
    auto X = share(builtin_complex(c));
    for (const auto& e : extensions()) {
      auto ext = builtin_extension(e);
      for (std::uint64_t seed = 0; seed < 100; ++seed, ++n) {
        auto s = random_cocycle(X, ext.base(), seed);
        auto r = hyperbolic_obstruction(s, ext);
        if (!r.fused.trivial || !r.fused.global_lift || !lift_ok(r.sum, r.extension.fused, *r.fused.global_lift)) ++bad;
      }
    }
  }
  return {bad == 0, std::to_string(n) + " doubled cocycles, " + std::to_string(bad) + " failures"};
}

Outcome additivity() {
  std::mt19937_64 rng(2024);
  const auto names = extensions();
  const auto mu = fusion_hom_mod2(2);
  std::size_t pairs = 0, cochain_bad = 0, class_checks = 0, class_bad = 0;
  for (const auto& c : complexes()) {
    auto X = share(builtin_complex(c));
    for (int k = 0; k < 100; ++k, ++pairs) {
      auto x1 = builtin_extension(names[rng() % names.size()]);
      auto x2 = builtin_extension(names[rng() % names.size()]);
      auto s1 = random_cocycle(X, x1.base(), rng());
      auto s2 = random_cocycle(X, x2.base(), rng());
      auto exact = additivity_check({s1, s2}, {x1, x2}, mu);
      if (!exact.cochain_level || !exact.class_level) ++cochain_bad;
      const auto F = fused_extension({x1, x2}, mu);
      for (int r = 0; r < 10; ++r, ++class_checks) {
        auto rep = additivity_check({s1, s2}, {x1, x2}, mu, random_section(F.fused, rng),
                                    {random_section(x1, rng), random_section(x2, rng)});
        if (!rep.class_level) ++class_bad;
      }
    }
  }
  return {cochain_bad == 0 && class_bad == 0, std::to_string(pairs) + " pairs exact (" + std::to_string(cochain_bad) + " bad), " +
                                                  std::to_string(class_checks) + " section draws (" + std::to_string(class_bad) +
                                                  " bad)"};
}

Outcome lifting_criterion() {
  std::size_t n = 0, disagree = 0, lifts = 0;
  for (const std::string c : {"circle", "sphere2", "rp2_6"}) {
    auto X = share(builtin_complex(c));
    for (const auto& e : extensions()) {
      auto ext = builtin_extension(e);
      std::vector<BundleCocycle> cases;
      for (std::uint64_t seed = 0; seed < 25; ++seed) cases.push_back(random_cocycle(X, ext.base(), seed));
      if (c == "rp2_6" && ext.base().order() == 2) cases.push_back(rp2_mobius_cocycle(ext.base()));
      for (const auto& s : cases) {
        ++n;
        auto brute = brute_force_lift(s, ext, std::uint64_t{1} << 21);
        auto r = obstruction_class(s, ext);
        auto built = construct_lift(s, ext);
        if (brute.has_value() != r.trivial || built.has_value() != r.trivial) ++disagree;
        if (brute && !lift_ok(s, ext, *brute)) ++disagree;
        if (built && !lift_ok(s, ext, *built)) ++disagree;
        lifts += r.trivial;
      }
    }
  }
  return {disagree == 0, std::to_string(n) + " instances (" + std::to_string(lifts) + " liftable), " + std::to_string(disagree) +
                             " disagreements"};
}

Outcome well_definedness() {
  std::mt19937_64 rng(77);
  std::size_t inst = 0, bad = 0, swaps = 0, swap_bad = 0;
  for (const auto& c : complexes()) {
    auto X = share(builtin_complex(c));
    for (const auto& e : extensions()) {
      auto ext = builtin_extension(e);
      const auto& E = ext.total();
      for (std::uint64_t seed = 0; seed < 10; ++seed, ++inst) {
        auto s = random_cocycle(X, ext.base(), seed);
        auto s1 = random_section(ext, rng), s2 = random_section(ext, rng);
        auto q1 = obstruction_cocycle(s, ext, s1);
        // rho of the raw triangle product is the identity
        for (const auto& t : X->simplices_of_dim(2)) {
          const Vertex a = t.vertices[0], b = t.vertices[1], c3 = t.vertices[2];
          const int x = E.mul(E.mul(s1(s.value(b, c3)), E.inv(s1(s.value(a, c3)))), s1(s.value(a, b)));
          if (ext.rho(x) != ext.base().identity()) ++bad;
        }
        if (!is_cocycle(q1)) ++bad;
        auto q2 = obstruction_cocycle(s, ext, s2);
        ++swaps;
        if (!classes_equal(q1, q2)) ++swap_bad;
      }
    }
  }
  return {bad == 0 && swap_bad == 0 && swaps >= 50, std::to_string(inst) + " instances (" + std::to_string(bad) + " bad), " +
                                                        std::to_string(swaps) + " section swaps (" + std::to_string(swap_bad) +
                                                        " bad)"};
}

Outcome nontriviality() {
  auto s = rp2_mobius_cocycle();
  auto ext = builtin_extension("z4_over_z2");
  auto r = obstruction_class(s, ext);
  const std::uint64_t candidates = std::uint64_t{1} << s.base->count(1);
  auto brute = brute_force_lift(s, ext, candidates);
  std::vector<int> bits(s.values.begin(), s.values.end());
  const bool bounds = oracle::z2_is_vertex_coboundary(*s.base, bits);
  const bool ok = !r.trivial && !brute && !bounds && candidates == (std::uint64_t{1} << 15);
  return {ok, std::string("kappa ") + (r.trivial ? "trivial" : "NONTRIVIAL") + ", " + std::to_string(candidates) +
                  "-candidate search " + (brute ? "found a lift" : "NONE")};
}

Outcome cohomology_vs_oracle() {
  struct Expect {
    std::string name;
    int d[3];
  };
  const std::vector<Expect> expected = {{"sphere2", {1, 0, 1}}, {"torus7", {1, 2, 1}}, {"rp2_6", {1, 1, 1}}, {"circle", {1, 1, 0}}};
  std::size_t bad = 0;
  std::string table;
  for (const auto& c : complexes()) {
    auto X = share(builtin_complex(c));
    long alt = 0;
    std::string row = c + "(";
    for (int p = 0; p <= 2; ++p) {
      const auto dim = static_cast<int>(*cohomology(X, p, AbelianGroup::cyclic(2)).dimension);
      const int ref = oracle::dim_h_mod2(*X, p);
      if (dim != ref) ++bad;
      for (const auto& ex : expected)
        if (ex.name == c && ex.d[p] != ref) ++bad;
      alt += (p % 2 ? -1 : 1) * dim;
      row += std::to_string(dim) + (p < 2 ? "," : ")");
    }
    if (alt != X->euler_characteristic()) ++bad;
    table += (table.empty() ? "" : " ") + row;
  }
  return {bad == 0, table + ", " + std::to_string(bad) + " mismatches"};
}

Outcome structure_count() {
  std::size_t bad = 0, partitions = 0;
  const std::vector<std::pair<std::string, std::uint64_t>> expected = {{"torus7", 4}, {"sphere2", 1}, {"rp2_6", 2}};
  std::string summary;
  for (const auto& [c, want] : expected) {
    auto X = share(builtin_complex(c));
    const std::uint64_t oracle_count = std::uint64_t{1} << oracle::dim_h_mod2(*X, 1);
    for (const auto& e : extensions()) {
      auto ext = builtin_extension(e);
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto n = hyperbolic_structure_count(random_cocycle(X, ext.base(), seed), ext);
        if (n != want || n != oracle_count) ++bad;
      }
    }
    summary += c + "->" + std::to_string(want) + " ";
  }
  for (const std::string c : {"circle", "sphere2"}) {
    auto X = share(builtin_complex(c));
    for (const auto& e : extensions()) {
      auto ext = builtin_extension(e);
      for (std::uint64_t seed = 0; seed < 5; ++seed, ++partitions) {
        auto s = random_cocycle(X, ext.base(), seed);
        const auto n = hyperbolic_structure_count(s, ext);
        auto r = hyperbolic_obstruction(s, ext);
        const auto lifts = oracle::all_lifts(r.sum, r.extension.fused);
        if (oracle::lift_classes(r.sum, r.extension.fused, lifts) != n) ++bad;
      }
    }
  }
  return {bad == 0, summary + "| " + std::to_string(partitions) + " exhaustive partitions, " + std::to_string(bad) + " disagreements"};
}

}  // namespace

int main() {
  run(1, "cancellation", 10.0, cancellation);
  run(2, "additivity", 0, additivity);
  run(3, "lifting criterion", 60.0, lifting_criterion);
  run(4, "well-definedness", 0, well_definedness);
  run(5, "nontriviality witness", 5.0, nontriviality);
  run(6, "cohomology vs oracle", 0, cohomology_vs_oracle);
  run(7, "structure count", 0, structure_count);
  std::printf("%d of 7 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
