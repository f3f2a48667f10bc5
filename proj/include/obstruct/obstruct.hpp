#pragma once

// Bundle transition cocycles and their lifts through central extensions.
//
// A cocycle stores s_ab only for edges a < b; s_ba is s_ab^{-1}. For a lift
// candidate gamma = sigma . s the obstruction on a sorted triangle (a, b, c) is
//
//   q(a, b, c) = gamma_bc . gamma_ac^{-1} . gamma_ab   in K.
//
// Twisting gamma by a K-valued 1-cochain t changes q by +dt, so a witness c
// with dc = q gives the global lift gamma_ab . embed(-c_ab).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "obstruct/coefgroup.hpp"
#include "obstruct/cochain.hpp"
#include "obstruct/error.hpp"
#include "obstruct/fingroup.hpp"
#include "obstruct/nerve.hpp"

namespace obs {

struct BundleCocycle {
  ComplexPtr base;
  FiniteGroup group;
  /// One group element per canonical edge.
  std::vector<int> values;

  /// s_ab for any ordered pair of adjacent vertices.
  int value(Vertex a, Vertex b) const {
    if (a < b) return values[base->edge_index(a, b)];
    return group.inv(values[base->edge_index(b, a)]);
  }
};

struct CocycleCheck {
  bool valid = true;
  std::optional<Simplex> failing_triangle;

  explicit operator bool() const { return valid; }
};

/// s_ab s_bc = s_ac on every sorted triangle.
inline CocycleCheck validate_cocycle(const BundleCocycle& s) {
  require(s.values.size() == s.base->count(1), ErrorCode::ShapeMismatch, "cocycle needs one value per edge");
  for (int v : s.values) s.group.check(v);
  const auto& X = *s.base;
  for (std::size_t t = 0; t < X.count(2); ++t) {
    const auto e = X.facet_indices(2, t);  // (b,c), (a,c), (a,b)
    if (s.group.mul(s.values[e[2]], s.values[e[0]]) != s.values[e[1]]) return {false, X.simplices_of_dim(2)[t]};
  }
  return {};
}

inline BundleCocycle make_cocycle(ComplexPtr base, FiniteGroup group, std::vector<int> values) {
  BundleCocycle s{std::move(base), std::move(group), std::move(values)};
  auto check = validate_cocycle(s);
  if (!check) fail(ErrorCode::InvalidInput, "cocycle condition fails on triangle " + to_string(*check.failing_triangle));
  return s;
}

inline BundleCocycle identity_cocycle(ComplexPtr base, FiniteGroup group) {
  const std::size_t m = base->count(1);
  const int e = group.identity();
  return BundleCocycle{std::move(base), std::move(group), std::vector<int>(m, e)};
}

/// s_ab = g_a g_b^{-1}.
inline BundleCocycle gauge_cocycle(ComplexPtr base, FiniteGroup group, const std::vector<int>& labels) {
  require(static_cast<int>(labels.size()) == base->vertex_count(), ErrorCode::ShapeMismatch, "need one label per vertex");
  std::vector<int> values;
  for (const auto& edge : base->simplices_of_dim(1)) {
    const int a = labels[static_cast<std::size_t>(edge.vertices[0])];
    const int b = labels[static_cast<std::size_t>(edge.vertices[1])];
    values.push_back(group.mul(a, group.inv(b)));
  }
  return BundleCocycle{std::move(base), std::move(group), std::move(values)};
}

/// s'_ab = h_a s_ab h_b^{-1}: the same bundle in other trivializations.
inline BundleCocycle conjugate_cocycle(const BundleCocycle& s, const std::vector<int>& h) {
  require(static_cast<int>(h.size()) == s.base->vertex_count(), ErrorCode::ShapeMismatch, "need one element per vertex");
  BundleCocycle out = s;
  const auto& edges = s.base->simplices_of_dim(1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const int ha = h[static_cast<std::size_t>(edges[i].vertices[0])];
    const int hb = h[static_cast<std::size_t>(edges[i].vertices[1])];
    out.values[i] = s.group.mul(s.group.mul(ha, s.values[i]), s.group.inv(hb));
  }
  return out;
}

/// Random valid cocycle: a randomized backtracking search over edge values
/// (edges forced by an already-assigned triangle take the forced value),
/// then conjugated by random vertex labels. Reproducible per seed.
inline BundleCocycle random_cocycle(ComplexPtr base, FiniteGroup group, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& X = *base;
  const std::size_t m = X.count(1);
  const int n = group.order();

  // triangles through each edge, with the edge's slot (0: bc, 1: ac, 2: ab)
  struct Incidence {
    std::size_t tri;
    int slot;
  };
  std::vector<std::vector<Incidence>> through(m);
  std::vector<std::vector<std::size_t>> tri_edges;
  for (std::size_t t = 0; t < X.count(2); ++t) {
    tri_edges.push_back(X.facet_indices(2, t));
    for (int k = 0; k < 3; ++k) through[tri_edges.back()[static_cast<std::size_t>(k)]].push_back({t, k});
  }

  std::vector<int> val(m, -1);
  // value of `slot` implied by the other two edges of the triangle, if set
  auto forced = [&](const Incidence& inc) -> std::optional<int> {
    const auto& e = tri_edges[inc.tri];
    const int bc = val[e[0]], ac = val[e[1]], ab = val[e[2]];
    switch (inc.slot) {
      case 0:
        if (ab < 0 || ac < 0) return std::nullopt;
        return group.mul(group.inv(ab), ac);
      case 1:
        if (ab < 0 || bc < 0) return std::nullopt;
        return group.mul(ab, bc);
      default:
        if (ac < 0 || bc < 0) return std::nullopt;
        return group.mul(ac, group.inv(bc));
    }
  };

  long budget = 200000;
  auto solve = [&](auto&& self, std::size_t i) -> bool {
    if (i == m) return true;
    if (--budget < 0) return false;
    std::optional<int> fixed;
    for (const auto& inc : through[i]) {
      auto f = forced(inc);
      if (!f) continue;
      if (fixed && *fixed != *f) return false;
      fixed = f;
    }
    std::vector<int> candidates;
    if (fixed) {
      candidates.push_back(*fixed);
    } else {
      candidates.resize(static_cast<std::size_t>(n));
      std::iota(candidates.begin(), candidates.end(), 0);
      std::shuffle(candidates.begin(), candidates.end(), rng);
    }
    for (int c : candidates) {
      val[i] = c;
      if (self(self, i + 1)) return true;
    }
    val[i] = -1;
    return false;
  };

  BundleCocycle s{base, group, {}};
  if (solve(solve, 0)) {
    s.values = val;
  } else {
    s = identity_cocycle(base, group);
  }
  std::vector<int> labels(static_cast<std::size_t>(X.vertex_count()));
  for (auto& l : labels) l = std::uniform_int_distribution<int>(0, n - 1)(rng);
  s = conjugate_cocycle(s, labels);
  auto check = validate_cocycle(s);
  require(check.valid, ErrorCode::Internal, "random_cocycle produced an invalid cocycle");
  return s;
}

// ---------------------------------------------------------------------------

/// Total-group element per canonical edge.
struct Lift {
  std::vector<int> values;

  friend bool operator==(const Lift&, const Lift&) = default;
};

inline void check_extension_matches(const BundleCocycle& s, const CentralExtension& ext) {
  require(ext.base() == s.group, ErrorCode::InvalidInput, "extension base group differs from the cocycle group");
}

/// Edgewise projection back to s, plus the triangle condition for gamma.
inline bool verify_lift(const BundleCocycle& s, const CentralExtension& ext, const Lift& lift) {
  const auto& X = *s.base;
  if (lift.values.size() != X.count(1)) return false;
  for (std::size_t i = 0; i < lift.values.size(); ++i) {
    if (lift.values[i] < 0 || lift.values[i] >= ext.total().order()) return false;
    if (ext.rho(lift.values[i]) != s.values[i]) return false;
  }
  const auto& E = ext.total();
  for (std::size_t t = 0; t < X.count(2); ++t) {
    const auto e = X.facet_indices(2, t);
    if (E.mul(lift.values[e[2]], lift.values[e[0]]) != lift.values[e[1]]) return false;
  }
  return true;
}

/// gamma_e . embed(t_e)
inline Lift twist(const CentralExtension& ext, const Lift& lift, const Cochain& t) {
  require(t.degree() == 1 && t.coefficients() == ext.kernel() && t.size() == lift.values.size(), ErrorCode::ShapeMismatch,
          "twist needs a K-valued 1-cochain");
  Lift out = lift;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = ext.total().mul(out.values[i], ext.embed(t[i]));
  return out;
}

inline Lift section_lift(const BundleCocycle& s, const Section& sigma) {
  Lift l;
  l.values.reserve(s.values.size());
  for (int g : s.values) l.values.push_back(sigma(g));
  return l;
}

/// K-valued 2-cochain q(a,b,c) = sigma(s_bc) sigma(s_ac)^{-1} sigma(s_ab).
inline Cochain obstruction_cocycle(const BundleCocycle& s, const CentralExtension& ext, const Section& sigma) {
  check_extension_matches(s, ext);
  auto check = validate_cocycle(s);
  require(check.valid, ErrorCode::InvalidInput, "not a cocycle: triangle " + (check.failing_triangle ? to_string(*check.failing_triangle) : ""));
  const auto& X = *s.base;
  const auto& E = ext.total();
  std::vector<AbelianElement> q(X.count(2));
  for (std::size_t t = 0; t < q.size(); ++t) {
    const auto e = X.facet_indices(2, t);
    const int x = E.mul(E.mul(sigma(s.values[e[0]]), E.inv(sigma(s.values[e[1]]))), sigma(s.values[e[2]]));
    auto k = ext.pullback(x);
    if (!k)
      fail(ErrorCode::KernelViolation, "obstruction value " + E.name_of(x) + " on triangle " + to_string(X.simplices_of_dim(2)[t]) +
                                           " is not in the kernel");
    q[t] = std::move(*k);
  }
  return Cochain(s.base, 2, ext.kernel(), std::move(q));
}

struct ObstructionResult {
  Cochain q;
  CohomologyClass kappa;
  bool trivial = false;
  std::optional<Lift> global_lift;
  Section section;
};

namespace detail {

inline ObstructionResult resolve(const BundleCocycle& s, const CentralExtension& ext, const Section& sigma, Cochain q) {
  ObstructionResult r{q, CohomologyClass{q}, false, std::nullopt, sigma};
  require(is_cocycle(q), ErrorCode::Internal, "obstruction cochain is not a cocycle");
  auto witness = is_coboundary(q);
  if (!witness) return r;
  r.trivial = true;
  Lift lift = twist(ext, section_lift(s, sigma), -*witness);
  if (!verify_lift(s, ext, lift)) fail(ErrorCode::Internal, "corrected lift fails the triangle condition");
  r.global_lift = std::move(lift);
  return r;
}

}  // namespace detail

inline ObstructionResult obstruction_class(const BundleCocycle& s, const CentralExtension& ext, const Section& sigma) {
  return detail::resolve(s, ext, sigma, obstruction_cocycle(s, ext, sigma));
}

inline ObstructionResult obstruction_class(const BundleCocycle& s, const CentralExtension& ext) {
  return obstruction_class(s, ext, canonical_section(ext));
}

inline std::optional<Lift> construct_lift(const BundleCocycle& s, const CentralExtension& ext) {
  return obstruction_class(s, ext).global_lift;
}

inline constexpr std::uint64_t default_brute_force_cap = std::uint64_t{1} << 24;

/// Tries every K-twist of the canonical section lift, edge 0 most
/// significant, and returns the lexicographically least valid one.
inline std::optional<Lift> brute_force_lift(const BundleCocycle& s, const CentralExtension& ext,
                                            std::uint64_t cap = default_brute_force_cap) {
  check_extension_matches(s, ext);
  const auto& X = *s.base;
  const std::size_t m = X.count(1);
  const std::uint64_t k = ext.kernel().order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    total *= k;
    require(total <= cap, ErrorCode::CapExceeded, "|K|^edges exceeds brute-force cap " + std::to_string(cap));
  }
  const Section sigma = canonical_section(ext);
  const auto& E = ext.total();
  // options[e][d] = sigma(s_e) . embed(d-th kernel element)
  std::vector<std::vector<int>> options(m);
  for (std::size_t e = 0; e < m; ++e)
    for (std::uint64_t d = 0; d < k; ++d) options[e].push_back(E.mul(sigma(s.values[e]), ext.embed(ext.kernel().element_at(d))));
  std::vector<std::vector<std::size_t>> tris;
  for (std::size_t t = 0; t < X.count(2); ++t) tris.push_back(X.facet_indices(2, t));

  std::vector<std::uint64_t> digit(m, 0);
  Lift cand;
  cand.values.resize(m);
  for (std::uint64_t code = 0; code < total; ++code) {
    for (std::size_t e = 0; e < m; ++e) cand.values[e] = options[e][digit[e]];
    bool ok = true;
    for (const auto& t : tris)
      if (E.mul(cand.values[t[2]], cand.values[t[0]]) != cand.values[t[1]]) {
        ok = false;
        break;
      }
    if (ok) return cand;
    for (std::size_t e = m; e-- > 0;) {
      if (++digit[e] < k) break;
      digit[e] = 0;
    }
  }
  return std::nullopt;
}

/// Number of lifts up to gamma_ab -> gamma_ab k_a k_b^{-1}, by enumerating
/// every lift and reducing each to the least member of its orbit.
inline std::uint64_t brute_force_lift_classes(const BundleCocycle& s, const CentralExtension& ext,
                                              std::uint64_t cap = default_brute_force_cap) {
  check_extension_matches(s, ext);
  const auto& X = *s.base;
  const std::size_t m = X.count(1);
  const auto& K = ext.kernel();
  const std::uint64_t k = K.order();
  std::uint64_t total = 1, families = 1;
  for (std::size_t i = 0; i < m; ++i) {
    total *= k;
    require(total <= cap, ErrorCode::CapExceeded, "|K|^edges exceeds brute-force cap " + std::to_string(cap));
  }
  for (int v = 0; v < X.vertex_count(); ++v) {
    families *= k;
    require(families <= cap, ErrorCode::CapExceeded, "|K|^vertices exceeds brute-force cap " + std::to_string(cap));
  }
  const Section sigma = canonical_section(ext);
  const auto& E = ext.total();
  const Lift base = section_lift(s, sigma);
  std::set<std::vector<int>> classes;
  std::vector<std::uint64_t> digit(m, 0);
  Lift cand;
  cand.values.resize(m);
  for (std::uint64_t code = 0; code < total; ++code) {
    for (std::size_t e = 0; e < m; ++e) cand.values[e] = E.mul(base.values[e], ext.embed(K.element_at(digit[e])));
    if (verify_lift(s, ext, cand)) {
      std::vector<int> best;
      for (std::uint64_t f = 0; f < families; ++f) {
        auto h = coboundary(Cochain(s.base, 0, K, [&] {
          std::vector<AbelianElement> lab;
          std::uint64_t r = f;
          for (int v = 0; v < X.vertex_count(); ++v, r /= k) lab.push_back(K.element_at(r % k));
          return lab;
        }()));
        auto moved = twist(ext, cand, h).values;
        if (best.empty() || moved < best) best = std::move(moved);
      }
      classes.insert(std::move(best));
    }
    for (std::size_t e = m; e-- > 0;) {
      if (++digit[e] < k) break;
      digit[e] = 0;
    }
  }
  return classes.size();
}

/// |H^1(X; K)| when a lift exists: lifts modulo twists by K-valued
/// 1-coboundaries form a torsor under H^1.
inline std::optional<std::uint64_t> count_inequivalent_lifts(const BundleCocycle& s, const CentralExtension& ext) {
  if (!obstruction_class(s, ext).trivial) return std::nullopt;
  return cohomology(s.base, 1, ext.kernel()).order();
}

/// Homomorphism from a finite group into a finite abelian group.
class AbelianCharacter {
 public:
  AbelianCharacter(FiniteGroup domain, AbelianGroup codomain, std::vector<AbelianElement> images)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {
    require(static_cast<int>(images_.size()) == domain_.order(), ErrorCode::ShapeMismatch, "need one image per group element");
    for (const auto& im : images_) codomain_.check(im);
    for (int a = 0; a < domain_.order(); ++a)
      for (int b = 0; b < domain_.order(); ++b)
        require((*this)(domain_.mul(a, b)) == codomain_.add((*this)(a), (*this)(b)), ErrorCode::NotAHomomorphism,
                "character fails on " + domain_.name_of(a) + ", " + domain_.name_of(b));
  }

  const AbelianElement& operator()(int a) const { return images_.at(static_cast<std::size_t>(a)); }
  const FiniteGroup& domain() const { return domain_; }
  const AbelianGroup& codomain() const { return codomain_; }

 private:
  FiniteGroup domain_;
  AbelianGroup codomain_;
  std::vector<AbelianElement> images_;
};

/// Identification of a cyclic group with Z_n sending its least generator to 1.
inline AbelianCharacter cyclic_identification(const FiniteGroup& G) {
  const int n = G.order();
  for (int g = 0; g < n; ++g) {
    if (G.element_order(g) != n) continue;
    std::vector<AbelianElement> images(static_cast<std::size_t>(n));
    int x = G.identity();
    for (int k = 0; k < n; ++k, x = G.mul(x, g)) images[static_cast<std::size_t>(x)] = AbelianElement{{k}};
    if (n == 1) return AbelianCharacter(G, AbelianGroup{}, {AbelianElement{}});
    return AbelianCharacter(G, AbelianGroup::cyclic(n), std::move(images));
  }
  fail(ErrorCode::InvalidInput, "group is not cyclic");
}

/// Class of the abelian 1-cocycle phi(s_ab).
inline CohomologyClass pushforward_class(const BundleCocycle& s, const AbelianCharacter& phi) {
  require(phi.domain() == s.group, ErrorCode::InvalidInput, "character domain differs from the cocycle group");
  std::vector<AbelianElement> vals;
  for (int g : s.values) vals.push_back(phi(g));
  Cochain c(s.base, 1, phi.codomain(), std::move(vals));
  require(is_cocycle(c), ErrorCode::Internal, "pushforward is not a cocycle");
  return CohomologyClass{std::move(c)};
}

// ---------------------------------------------------------------------------
// Builtin cocycles.

/// Edges carrying the nontrivial value of the Moebius-type Z2 cocycle on
/// rp2_6: (0,2) (0,3) (1,2) (1,4) (3,4). It is a cocycle whose class
/// generates H^1(RP^2; Z2).
inline const std::vector<std::pair<Vertex, Vertex>>& rp2_mobius_support() {
  static const std::vector<std::pair<Vertex, Vertex>> edges = {{0, 2}, {0, 3}, {1, 2}, {1, 4}, {3, 4}};
  return edges;
}

/// The Moebius cocycle on rp2_6 with values in the cyclic group of order 2
/// given by `group` (identity elsewhere).
inline BundleCocycle rp2_mobius_cocycle(const FiniteGroup& group = cyclic_group(2)) {
  require(group.order() == 2, ErrorCode::InvalidInput, "Moebius cocycle needs a group of order 2");
  auto X = share(builtin_complex("rp2_6"));
  const int flip = group.identity() == 0 ? 1 : 0;
  std::vector<int> values(X->count(1), group.identity());
  for (auto [a, b] : rp2_mobius_support()) values[X->edge_index(a, b)] = flip;
  return make_cocycle(std::move(X), group, std::move(values));
}

// ---------------------------------------------------------------------------
// Cocycle file:
//   complex <path | builtin:name>
//   group <path | builtin:name>
//   <a> <b> <element index or name>      one line per canonical edge

inline ComplexPtr resolve_complex(const std::string& ref, const std::filesystem::path& dir = {}) {
  if (ref.rfind("builtin:", 0) == 0) return share(builtin_complex(ref.substr(8)));
  std::filesystem::path p(ref);
  if (p.is_relative() && !dir.empty()) p = dir / p;
  return share(load_complex(p.string()));
}

inline BundleCocycle parse_cocycle(std::istream& in, const std::filesystem::path& dir = {}) {
  ComplexPtr base;
  std::optional<FiniteGroup> group;
  std::vector<int> values;
  std::vector<char> seen;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == '#') continue;
    if (first == "complex" || first == "group") {
      std::string ref;
      if (!(ls >> ref)) fail(ErrorCode::Parse, "missing reference after '" + first + "'");
      if (first == "complex") {
        base = resolve_complex(ref, dir);
        values.assign(base->count(1), -1);
        seen.assign(base->count(1), 0);
      } else {
        group = resolve_group(ref, dir);
      }
      continue;
    }
    if (!base || !group) fail(ErrorCode::Parse, "cocycle file must name complex and group before edges");
    std::string second, elem;
    if (!(ls >> second >> elem)) fail(ErrorCode::Parse, "bad edge line '" + line + "'");
    Vertex a = 0, b = 0;
    try {
      a = std::stoi(first);
      b = std::stoi(second);
    } catch (const std::exception&) {
      fail(ErrorCode::Parse, "bad edge line '" + line + "'");
    }
    if (a > b) fail(ErrorCode::Parse, "edge (" + first + "," + second + ") must be listed with a < b");
    auto idx = base->index_of(Simplex{{a, b}});
    if (!idx) fail(ErrorCode::Parse, "edge (" + first + "," + second + ") not in complex");
    int g = -1;
    if (auto named = group->find(elem)) {
      g = *named;
    } else {
      try {
        g = std::stoi(elem);
      } catch (const std::exception&) {
        fail(ErrorCode::Parse, "unknown group element '" + elem + "'");
      }
    }
    if (g < 0 || g >= group->order()) fail(ErrorCode::Parse, "group element '" + elem + "' out of range");
    values[*idx] = g;
    seen[*idx] = 1;
  }
  if (!base || !group) fail(ErrorCode::Parse, "cocycle file must name complex and group");
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) fail(ErrorCode::Parse, "cocycle file misses edge " + to_string(base->simplices_of_dim(1)[i]));
  return BundleCocycle{std::move(base), std::move(*group), std::move(values)};
}

inline BundleCocycle load_cocycle(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Parse, "cannot open cocycle file '" + path + "'");
  return parse_cocycle(in, std::filesystem::path(path).parent_path());
}

inline void write_cocycle(std::ostream& out, const BundleCocycle& s, const std::string& complex_ref, const std::string& group_ref) {
  out << "complex " << complex_ref << "\ngroup " << group_ref << '\n';
  const auto& edges = s.base->simplices_of_dim(1);
  for (std::size_t i = 0; i < edges.size(); ++i)
    out << edges[i].vertices[0] << ' ' << edges[i].vertices[1] << ' ' << s.group.name_of(s.values[i]) << '\n';
}

}  // namespace obs
