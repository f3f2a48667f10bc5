#pragma once

// Finite groups given by Cayley table, homomorphisms, and central extensions
// rho: E -> G with finite abelian kernel K and a set-theoretic section.
//
// All structures are verified exhaustively when built, so every value that
// exists is known to satisfy its laws. Tables are capped at order 256.

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
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "obstruct/coefgroup.hpp"
#include "obstruct/error.hpp"

namespace obs {

inline constexpr int max_group_order = 256;

class FiniteGroup {
 public:
  FiniteGroup() = default;

  int order() const { return order_; }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a * order_ + b)]; }
  int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  const std::vector<int>& table() const { return table_; }
  const std::vector<std::string>& names() const { return names_; }

  std::string name_of(int a) const {
    if (!names_.empty()) return names_[static_cast<std::size_t>(a)];
    return std::to_string(a);
  }

  std::optional<int> find(std::string_view name) const {
    for (int a = 0; a < order_; ++a)
      if (name_of(a) == name) return a;
    return std::nullopt;
  }

  bool is_abelian() const {
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < a; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  std::vector<int> center() const {
    std::vector<int> z;
    for (int a = 0; a < order_; ++a) {
      bool central = true;
      for (int b = 0; b < order_ && central; ++b) central = mul(a, b) == mul(b, a);
      if (central) z.push_back(a);
    }
    return z;
  }

  int element_order(int a) const {
    int k = 1;
    for (int x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
  }

  int exponent() const {
    int e = 1;
    for (int a = 0; a < order_; ++a) e = std::lcm(e, element_order(a));
    return e;
  }

  void check(int a) const {
    require(a >= 0 && a < order_, ErrorCode::InvalidInput, "element index " + std::to_string(a) + " out of range");
  }

  /// Tables only; labels are presentation.
  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.order_ == b.order_ && a.table_ == b.table_; }

  friend FiniteGroup make_group(std::vector<std::vector<int>> table, std::vector<std::string> names);

 private:
  int order_ = 0;
  int identity_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<std::string> names_;
};

/// Verifies closure, identity, inverses and associativity. Failures name the
/// offending element or triple.
inline FiniteGroup make_group(std::vector<std::vector<int>> table, std::vector<std::string> names = {}) {
  const int n = static_cast<int>(table.size());
  require(n >= 1, ErrorCode::NotAGroup, "empty table");
  require(n <= max_group_order, ErrorCode::InvalidInput, "group order exceeds " + std::to_string(max_group_order));
  require(names.empty() || static_cast<int>(names.size()) == n, ErrorCode::InvalidInput, "need one name per element");
  FiniteGroup G;
  G.order_ = n;
  G.table_.reserve(static_cast<std::size_t>(n * n));
  for (const auto& row : table) {
    require(static_cast<int>(row.size()) == n, ErrorCode::NotAGroup, "table is not square");
    for (int v : row) {
      require(v >= 0 && v < n, ErrorCode::NotAGroup, "table entry " + std::to_string(v) + " out of range");
      G.table_.push_back(v);
    }
  }
  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = G.mul(a, x) == x && G.mul(x, a) == x;
    if (ok) e = a;
  }
  require(e >= 0, ErrorCode::NotAGroup, "no identity element");
  G.identity_ = e;
  G.inverse_.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (G.mul(a, b) == e && G.mul(b, a) == e) {
        G.inverse_[static_cast<std::size_t>(a)] = b;
        break;
      }
    require(G.inverse_[static_cast<std::size_t>(a)] >= 0, ErrorCode::NotAGroup, "element " + std::to_string(a) + " has no inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)))
          fail(ErrorCode::NotAGroup, "associativity fails for (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                         std::to_string(c) + ")");
  G.names_ = std::move(names);
  return G;
}

inline FiniteGroup cyclic_group(int n) {
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) {
    names.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  }
  return make_group(std::move(t), std::move(names));
}

/// Q8 with element 2u + s for the unit u in (1, i, j, k) and sign s (0 = +).
inline FiniteGroup quaternion_group() {
  // unit product table: (u, v) -> (w, sign)
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int u = a / 2, v = b / 2;
      const int s = (a % 2) ^ (b % 2) ^ sign[u][v];
      t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 2 * unit[u][v] + s;
    }
  return make_group(std::move(t), {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

/// Dihedral group of order 2m; r^a s^b has index a + m*b.
inline FiniteGroup dihedral_group(int m) {
  const int n = 2 * m;
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  std::vector<std::string> names;
  for (int x = 0; x < n; ++x) {
    const int a = x % m, b = x / m;
    std::string nm = a == 0 ? (b ? "" : "e") : (a == 1 ? "r" : "r" + std::to_string(a));
    if (b) nm += "s";
    names.push_back(nm);
    for (int y = 0; y < n; ++y) {
      const int c = y % m, d = y / m;
      const int na = ((b ? a - c : a + c) % m + m) % m;
      t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = na + m * ((b + d) % 2);
    }
  }
  return make_group(std::move(t), std::move(names));
}

class GroupHom {
 public:
  GroupHom() = default;
  GroupHom(FiniteGroup domain, FiniteGroup codomain, std::vector<int> map)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), map_(std::move(map)) {
    require(static_cast<int>(map_.size()) == domain_.order(), ErrorCode::InvalidInput, "homomorphism map has wrong length");
    for (int v : map_) codomain_.check(v);
    for (int a = 0; a < domain_.order(); ++a)
      for (int b = 0; b < domain_.order(); ++b)
        if ((*this)(domain_.mul(a, b)) != codomain_.mul((*this)(a), (*this)(b)))
          fail(ErrorCode::NotAHomomorphism, "map(ab) != map(a)map(b) for a=" + std::to_string(a) + ", b=" + std::to_string(b));
  }

  int operator()(int a) const { return map_.at(static_cast<std::size_t>(a)); }
  const FiniteGroup& domain() const { return domain_; }
  const FiniteGroup& codomain() const { return codomain_; }
  const std::vector<int>& map() const { return map_; }

  bool is_surjective() const {
    std::vector<char> hit(static_cast<std::size_t>(codomain_.order()), 0);
    for (int v : map_) hit[static_cast<std::size_t>(v)] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
  }

  std::vector<int> kernel() const {
    std::vector<int> k;
    for (int a = 0; a < domain_.order(); ++a)
      if (map_[static_cast<std::size_t>(a)] == codomain_.identity()) k.push_back(a);
    return k;
  }

 private:
  FiniteGroup domain_;
  FiniteGroup codomain_;
  std::vector<int> map_;
};

struct ProductGroup {
  FiniteGroup group;
  std::vector<GroupHom> injections;
  std::vector<GroupHom> projections;

  /// Index of the tuple (a_1, ..., a_n); the first factor is most significant.
  int pack(const std::vector<int>& parts) const {
    int idx = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) idx = idx * projections[i].codomain().order() + parts[i];
    return idx;
  }
  std::vector<int> unpack(int idx) const {
    std::vector<int> parts(projections.size());
    for (std::size_t i = 0; i < parts.size(); ++i) parts[i] = projections[i](idx);
    return parts;
  }
};

inline ProductGroup direct_product(const std::vector<FiniteGroup>& groups) {
  long total = 1;
  for (const auto& g : groups) {
    total *= g.order();
    require(total <= max_group_order, ErrorCode::InvalidInput, "direct product order exceeds " + std::to_string(max_group_order));
  }
  const int n = static_cast<int>(total);
  auto unpack = [&](int idx) {
    std::vector<int> parts(groups.size());
    for (std::size_t i = groups.size(); i-- > 0;) {
      parts[i] = idx % groups[i].order();
      idx /= groups[i].order();
    }
    return parts;
  };
  auto pack = [&](const std::vector<int>& parts) {
    int idx = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) idx = idx * groups[i].order() + parts[i];
    return idx;
  };
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) {
    const auto pa = unpack(a);
    std::string nm = "(";
    for (std::size_t i = 0; i < pa.size(); ++i) nm += (i ? "," : "") + groups[i].name_of(pa[i]);
    names.push_back(nm + ")");
    for (int b = 0; b < n; ++b) {
      const auto pb = unpack(b);
      std::vector<int> pc(pa.size());
      for (std::size_t i = 0; i < pa.size(); ++i) pc[i] = groups[i].mul(pa[i], pb[i]);
      t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = pack(pc);
    }
  }
  ProductGroup P{make_group(std::move(t), std::move(names)), {}, {}};
  for (std::size_t i = 0; i < groups.size(); ++i) {
    std::vector<int> inj(static_cast<std::size_t>(groups[i].order()));
    for (int a = 0; a < groups[i].order(); ++a) {
      std::vector<int> parts(groups.size());
      for (std::size_t j = 0; j < groups.size(); ++j) parts[j] = groups[j].identity();
      parts[i] = a;
      inj[static_cast<std::size_t>(a)] = pack(parts);
    }
    P.injections.emplace_back(groups[i], P.group, std::move(inj));
    std::vector<int> proj(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) proj[static_cast<std::size_t>(a)] = unpack(a)[i];
    P.projections.emplace_back(P.group, groups[i], std::move(proj));
  }
  return P;
}

struct Quotient {
  FiniteGroup group;
  GroupHom projection;
};

/// G / N for a central subgroup N. Cosets are numbered by their least
/// element, so the coset of the identity is 0 whenever identity() == 0.
inline Quotient quotient_by_central(const FiniteGroup& G, const std::vector<int>& subset) {
  const int n = G.order();
  std::vector<char> in_n(static_cast<std::size_t>(n), 0);
  for (int a : subset) {
    G.check(a);
    in_n[static_cast<std::size_t>(a)] = 1;
  }
  require(in_n[static_cast<std::size_t>(G.identity())] != 0, ErrorCode::NotSubgroup, "subset misses the identity");
  for (int a = 0; a < n; ++a) {
    if (!in_n[static_cast<std::size_t>(a)]) continue;
    for (int b = 0; b < n; ++b)
      if (in_n[static_cast<std::size_t>(b)] && !in_n[static_cast<std::size_t>(G.mul(a, b))])
        fail(ErrorCode::NotSubgroup, "subset not closed: " + G.name_of(a) + "*" + G.name_of(b));
    for (int x = 0; x < n; ++x)
      if (G.mul(a, x) != G.mul(x, a)) fail(ErrorCode::NotCentral, "element " + G.name_of(a) + " does not commute with " + G.name_of(x));
  }
  std::vector<int> coset(static_cast<std::size_t>(n), -1);
  std::vector<int> rep;
  for (int a = 0; a < n; ++a) {
    if (coset[static_cast<std::size_t>(a)] >= 0) continue;
    const int c = static_cast<int>(rep.size());
    rep.push_back(a);
    for (int k = 0; k < n; ++k)
      if (in_n[static_cast<std::size_t>(k)]) coset[static_cast<std::size_t>(G.mul(a, k))] = c;
  }
  const int m = static_cast<int>(rep.size());
  std::vector<std::vector<int>> t(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m)));
  std::vector<std::string> names;
  for (int c = 0; c < m; ++c) {
    names.push_back("[" + G.name_of(rep[static_cast<std::size_t>(c)]) + "]");
    for (int d = 0; d < m; ++d)
      t[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)] =
          coset[static_cast<std::size_t>(G.mul(rep[static_cast<std::size_t>(c)], rep[static_cast<std::size_t>(d)]))];
  }
  FiniteGroup Q = make_group(std::move(t), std::move(names));
  GroupHom proj(G, Q, coset);
  return Quotient{std::move(Q), std::move(proj)};
}

/// rho: total -> base with central kernel K embedded in total.
/// `kernel_embed[i]` is the total-group image of the i-th element of K in
/// AbelianGroup enumeration order.
class CentralExtension {
 public:
  CentralExtension() = default;

  const FiniteGroup& total() const { return projection_.domain(); }
  const FiniteGroup& base() const { return projection_.codomain(); }
  const GroupHom& projection() const { return projection_; }
  const AbelianGroup& kernel() const { return kernel_; }
  const std::vector<int>& kernel_embed() const { return embed_; }

  int rho(int x) const { return projection_(x); }
  int embed(const AbelianElement& k) const { return embed_[static_cast<std::size_t>(kernel_.index_of(k))]; }

  /// Pulls a kernel element of the total group back to K.
  std::optional<AbelianElement> pullback(int x) const {
    const int pos = pull_[static_cast<std::size_t>(x)];
    if (pos < 0) return std::nullopt;
    return kernel_.element_at(static_cast<std::uint64_t>(pos));
  }

  /// Total-group elements over base element g, ascending.
  std::vector<int> fiber(int g) const {
    std::vector<int> f;
    for (int x = 0; x < total().order(); ++x)
      if (rho(x) == g) f.push_back(x);
    return f;
  }

  friend CentralExtension make_extension(GroupHom projection, AbelianGroup kernel, std::vector<int> kernel_embed);

 private:
  GroupHom projection_;
  AbelianGroup kernel_;
  std::vector<int> embed_;
  std::vector<int> pull_;
};

inline CentralExtension make_extension(GroupHom projection, AbelianGroup kernel, std::vector<int> kernel_embed) {
  const FiniteGroup& E = projection.domain();
  const FiniteGroup& G = projection.codomain();
  require(kernel.order() <= static_cast<std::uint64_t>(E.order()), ErrorCode::KernelMismatch, "kernel larger than total group");
  require(kernel_embed.size() == kernel.order(), ErrorCode::KernelMismatch, "need one embedded element per kernel element");
  for (int g = 0; g < G.order(); ++g) {
    bool hit = false;
    for (int x = 0; x < E.order() && !hit; ++x) hit = projection(x) == g;
    require(hit, ErrorCode::NotSurjective, "base element " + G.name_of(g) + " has no preimage");
  }
  std::vector<int> pull(static_cast<std::size_t>(E.order()), -1);
  for (std::size_t i = 0; i < kernel_embed.size(); ++i) {
    const int x = kernel_embed[i];
    E.check(x);
    require(pull[static_cast<std::size_t>(x)] < 0, ErrorCode::KernelMismatch, "kernel embedding not injective at " + E.name_of(x));
    require(projection(x) == G.identity(), ErrorCode::KernelMismatch, "embedded element " + E.name_of(x) + " not in ker rho");
    pull[static_cast<std::size_t>(x)] = static_cast<int>(i);
  }
  for (int x : projection.kernel())
    require(pull[static_cast<std::size_t>(x)] >= 0, ErrorCode::KernelMismatch, "ker rho element " + E.name_of(x) + " not embedded");
  const auto elems = kernel.elements();
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) {
      const int lhs = kernel_embed[static_cast<std::size_t>(kernel.index_of(kernel.add(elems[i], elems[j])))];
      require(lhs == E.mul(kernel_embed[i], kernel_embed[j]), ErrorCode::KernelMismatch,
              "kernel embedding is not a homomorphism at " + kernel.format(elems[i]) + ", " + kernel.format(elems[j]));
    }
  for (int k : kernel_embed)
    for (int x = 0; x < E.order(); ++x)
      require(E.mul(k, x) == E.mul(x, k), ErrorCode::NotCentral,
              "kernel element " + E.name_of(k) + " does not commute with " + E.name_of(x));
  CentralExtension ext;
  ext.projection_ = std::move(projection);
  ext.kernel_ = std::move(kernel);
  ext.embed_ = std::move(kernel_embed);
  ext.pull_ = std::move(pull);
  return ext;
}

/// Builds the extension when the kernel is cyclic, choosing the embedding
/// from a generator of ker rho.
inline CentralExtension make_cyclic_kernel_extension(GroupHom projection) {
  const auto ker = projection.kernel();
  const FiniteGroup& E = projection.domain();
  const int n = static_cast<int>(ker.size());
  for (int g : ker) {
    if (E.element_order(g) != n) continue;
    std::vector<int> embed;
    int x = E.identity();
    for (int i = 0; i < n; ++i, x = E.mul(x, g)) embed.push_back(x);
    if (n == 1) return make_extension(std::move(projection), AbelianGroup{}, {E.identity()});
    return make_extension(std::move(projection), AbelianGroup::cyclic(n), std::move(embed));
  }
  fail(ErrorCode::KernelMismatch, "kernel of projection is not cyclic");
}

/// Set-theoretic right inverse of rho.
struct Section {
  std::vector<int> map;

  int operator()(int g) const { return map.at(static_cast<std::size_t>(g)); }
  friend bool operator==(const Section&, const Section&) = default;
};

/// Checks rho . s = id, and s(e) = e unless `allow_unnormalized`.
inline Section make_section(const CentralExtension& ext, std::vector<int> map, bool allow_unnormalized = false) {
  require(static_cast<int>(map.size()) == ext.base().order(), ErrorCode::InvalidInput, "section needs one value per base element");
  for (int g = 0; g < ext.base().order(); ++g) {
    ext.total().check(map[static_cast<std::size_t>(g)]);
    require(ext.rho(map[static_cast<std::size_t>(g)]) == g, ErrorCode::InvalidInput, "section value over " + ext.base().name_of(g) + " is in the wrong fiber");
  }
  require(allow_unnormalized || map[static_cast<std::size_t>(ext.base().identity())] == ext.total().identity(), ErrorCode::InvalidInput,
          "section must send identity to identity");
  return Section{std::move(map)};
}

inline Section canonical_section(const CentralExtension& ext) {
  std::vector<int> map(static_cast<std::size_t>(ext.base().order()), -1);
  for (int x = ext.total().order() - 1; x >= 0; --x) map[static_cast<std::size_t>(ext.rho(x))] = x;
  map[static_cast<std::size_t>(ext.base().identity())] = ext.total().identity();
  return make_section(ext, std::move(map));
}

template <class Rng>
Section random_section(const CentralExtension& ext, Rng& rng, bool normalized = true) {
  std::vector<int> map(static_cast<std::size_t>(ext.base().order()));
  for (int g = 0; g < ext.base().order(); ++g) {
    const auto f = ext.fiber(g);
    map[static_cast<std::size_t>(g)] = f[std::uniform_int_distribution<std::size_t>(0, f.size() - 1)(rng)];
  }
  if (normalized) map[static_cast<std::size_t>(ext.base().identity())] = ext.total().identity();
  return make_section(ext, std::move(map), !normalized);
}

inline bool is_homomorphic_section(const CentralExtension& ext, const Section& s) {
  const auto& G = ext.base();
  const auto& E = ext.total();
  for (int a = 0; a < G.order(); ++a)
    for (int b = 0; b < G.order(); ++b)
      if (s(G.mul(a, b)) != E.mul(s(a), s(b))) return false;
  return true;
}

/// Exhaustive search over every section; returns a splitting homomorphism
/// when one exists.
inline std::optional<Section> find_splitting(const CentralExtension& ext) {
  const int n = ext.base().order();
  std::vector<std::vector<int>> fibers;
  std::uint64_t total = 1;
  for (int g = 0; g < n; ++g) {
    fibers.push_back(ext.fiber(g));
    total *= fibers.back().size();
    require(total <= (std::uint64_t{1} << 24), ErrorCode::CapExceeded, "too many candidate sections");
  }
  std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t r = code;
    Section s;
    s.map.resize(static_cast<std::size_t>(n));
    for (int g = n - 1; g >= 0; --g) {
      const auto& f = fibers[static_cast<std::size_t>(g)];
      s.map[static_cast<std::size_t>(g)] = f[r % f.size()];
      r /= f.size();
    }
    if (is_homomorphic_section(ext, s)) return s;
  }
  return std::nullopt;
}

inline bool is_split(const CentralExtension& ext) { return find_splitting(ext).has_value(); }

// ---------------------------------------------------------------------------
// Builtins: four extensions with kernel Z2.

inline FiniteGroup klein_four_group() { return direct_product({cyclic_group(2), cyclic_group(2)}).group; }

inline const std::vector<std::string>& builtin_extension_names() {
  static const std::vector<std::string> names = {"z4_over_z2", "split_z2", "q8_over_v4", "d8_over_v4"};
  return names;
}

inline CentralExtension builtin_extension(std::string_view name) {
  const AbelianGroup z2 = AbelianGroup::cyclic(2);
  if (name == "z4_over_z2") {
    GroupHom rho(cyclic_group(4), cyclic_group(2), {0, 1, 0, 1});
    return make_extension(std::move(rho), z2, {0, 2});
  }
  if (name == "split_z2") {
    auto P = direct_product({cyclic_group(2), cyclic_group(2)});
    // kernel is the second factor: (0,0), (0,1)
    return make_extension(P.projections[0], z2, {P.pack({0, 0}), P.pack({0, 1})});
  }
  if (name == "q8_over_v4") {
    // +-1 -> (0,0), +-i -> (1,0), +-j -> (0,1), +-k -> (1,1); V4 index is 2a + b
    GroupHom rho(quaternion_group(), klein_four_group(), {0, 0, 2, 2, 1, 1, 3, 3});
    return make_extension(std::move(rho), z2, {0, 1});
  }
  if (name == "d8_over_v4") {
    // r^a s^b -> (a mod 2, b)
    std::vector<int> map(8);
    for (int x = 0; x < 8; ++x) map[static_cast<std::size_t>(x)] = 2 * ((x % 4) % 2) + x / 4;
    GroupHom rho(dihedral_group(4), klein_four_group(), std::move(map));
    return make_extension(std::move(rho), z2, {0, 2});
  }
  fail(ErrorCode::InvalidInput, "unknown builtin extension '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Files.
//
// Group file: first line the order n, then n rows of n indices, then an
// optional `names: a b c ...` line.
//
// Extension file (keyword per line, paths relative to the file):
//   total <group-ref>
//   base <group-ref>
//   kernel <group literal>
//   projection <n indices>
//   kernel_embed <|K| indices>
// A group-ref is a path or `builtin:Zn`, `builtin:V4`, `builtin:Q8`, `builtin:D8`.

inline FiniteGroup parse_group(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    lines.push_back(line);
  }
  if (lines.empty()) fail(ErrorCode::Parse, "empty group file");
  int n = 0;
  {
    std::istringstream hs(lines[0]);
    if (!(hs >> n) || n < 1) fail(ErrorCode::Parse, "bad group order line '" + lines[0] + "'");
  }
  if (static_cast<int>(lines.size()) < n + 1) fail(ErrorCode::Parse, "group file has fewer than n table rows");
  std::vector<std::vector<int>> table;
  for (int r = 1; r <= n; ++r) {
    std::istringstream ls(lines[static_cast<std::size_t>(r)]);
    std::vector<int> row;
    int v = 0;
    while (ls >> v) row.push_back(v);
    if (!ls.eof() || static_cast<int>(row.size()) != n) fail(ErrorCode::Parse, "bad table row " + std::to_string(r));
    table.push_back(std::move(row));
  }
  std::vector<std::string> names;
  if (static_cast<int>(lines.size()) > n + 1) {
    std::istringstream ls(lines[static_cast<std::size_t>(n + 1)]);
    std::string kw;
    ls >> kw;
    if (kw != "names:") fail(ErrorCode::Parse, "expected 'names:' line");
    std::string nm;
    while (ls >> nm) names.push_back(nm);
    if (static_cast<int>(names.size()) != n) fail(ErrorCode::Parse, "names line needs " + std::to_string(n) + " names");
  }
  return make_group(std::move(table), std::move(names));
}

inline void write_group(std::ostream& out, const FiniteGroup& G) {
  out << G.order() << '\n';
  for (int a = 0; a < G.order(); ++a) {
    for (int b = 0; b < G.order(); ++b) out << (b ? " " : "") << G.mul(a, b);
    out << '\n';
  }
  if (!G.names().empty()) {
    out << "names:";
    for (const auto& n : G.names()) out << ' ' << n;
    out << '\n';
  }
}

inline FiniteGroup builtin_group(std::string_view name) {
  if (name == "V4") return klein_four_group();
  if (name == "Q8") return quaternion_group();
  if (name == "D8") return dihedral_group(4);
  if (name.size() >= 2 && name[0] == 'Z') {
    int n = 0;
    try {
      n = std::stoi(std::string(name.substr(1)));
    } catch (const std::exception&) {
      n = 0;
    }
    if (n >= 1 && n <= max_group_order) return cyclic_group(n);
  }
  fail(ErrorCode::InvalidInput, "unknown builtin group '" + std::string(name) + "'");
}

inline FiniteGroup resolve_group(const std::string& ref, const std::filesystem::path& dir = {}) {
  if (ref.rfind("builtin:", 0) == 0) return builtin_group(ref.substr(8));
  std::filesystem::path p(ref);
  if (p.is_relative() && !dir.empty()) p = dir / p;
  std::ifstream in(p);
  if (!in) fail(ErrorCode::Parse, "cannot open group file '" + p.string() + "'");
  return parse_group(in);
}

inline CentralExtension parse_extension(std::istream& in, const std::filesystem::path& dir = {}) {
  std::optional<FiniteGroup> total, base;
  std::optional<AbelianGroup> kernel;
  std::vector<int> projection, embed;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    if (kw == "total" || kw == "base") {
      std::string ref;
      if (!(ls >> ref)) fail(ErrorCode::Parse, "missing group reference after '" + kw + "'");
      (kw == "total" ? total : base) = resolve_group(ref, dir);
    } else if (kw == "kernel") {
      std::string lit;
      if (!(ls >> lit)) fail(ErrorCode::Parse, "missing kernel literal");
      kernel = parse_group_literal(lit);
    } else if (kw == "projection" || kw == "kernel_embed") {
      auto& dst = kw == "projection" ? projection : embed;
      int v = 0;
      while (ls >> v) dst.push_back(v);
      if (!ls.eof()) fail(ErrorCode::Parse, "bad index list after '" + kw + "'");
    } else {
      fail(ErrorCode::Parse, "unknown extension keyword '" + kw + "'");
    }
  }
  if (!total || !base || !kernel) fail(ErrorCode::Parse, "extension file needs total, base and kernel");
  GroupHom rho(std::move(*total), std::move(*base), std::move(projection));
  return make_extension(std::move(rho), std::move(*kernel), std::move(embed));
}

inline CentralExtension load_extension(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Parse, "cannot open extension file '" + path + "'");
  return parse_extension(in, std::filesystem::path(path).parent_path());
}

}  // namespace obs
