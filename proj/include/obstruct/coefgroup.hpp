#pragma once

// Finite abelian coefficient groups Z_{n1} + ... + Z_{nk}, written additively.

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "obstruct/error.hpp"

namespace obs {

struct AbelianElement {
  std::vector<int> residues;

  friend auto operator<=>(const AbelianElement&, const AbelianElement&) = default;
  friend bool operator==(const AbelianElement&, const AbelianElement&) = default;
};

class AbelianGroup {
 public:
  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
    for (int n : factors_) require(n >= 2, ErrorCode::InvalidInput, "cyclic factor order must be >= 2");
  }

  static AbelianGroup cyclic(int n) { return AbelianGroup({n}); }
  static AbelianGroup z2_power(int k) { return AbelianGroup(std::vector<int>(static_cast<std::size_t>(k), 2)); }

  const std::vector<int>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (int n : factors_) o *= static_cast<std::uint64_t>(n);
    return o;
  }

  bool is_trivial() const { return factors_.empty(); }

  AbelianElement zero() const { return AbelianElement{std::vector<int>(factors_.size(), 0)}; }

  bool contains(const AbelianElement& a) const {
    if (a.residues.size() != factors_.size()) return false;
    for (std::size_t j = 0; j < factors_.size(); ++j)
      if (a.residues[j] < 0 || a.residues[j] >= factors_[j]) return false;
    return true;
  }

  void check(const AbelianElement& a) const {
    require(contains(a), ErrorCode::ShapeMismatch, "element " + format(a) + " not in " + name());
  }

  AbelianElement add(const AbelianElement& a, const AbelianElement& b) const {
    check(a);
    check(b);
    AbelianElement c = a;
    for (std::size_t j = 0; j < factors_.size(); ++j) c.residues[j] = (a.residues[j] + b.residues[j]) % factors_[j];
    return c;
  }

  AbelianElement neg(const AbelianElement& a) const {
    check(a);
    AbelianElement c = a;
    for (std::size_t j = 0; j < factors_.size(); ++j) c.residues[j] = (factors_[j] - a.residues[j]) % factors_[j];
    return c;
  }

  AbelianElement sub(const AbelianElement& a, const AbelianElement& b) const { return add(a, neg(b)); }

  /// k * a for any integer k.
  AbelianElement scale(long k, const AbelianElement& a) const {
    check(a);
    AbelianElement c = a;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      long r = (k % factors_[j]) * a.residues[j] % factors_[j];
      c.residues[j] = static_cast<int>((r + factors_[j]) % factors_[j]);
    }
    return c;
  }

  AbelianElement generator(std::size_t j) const {
    AbelianElement e = zero();
    e.residues.at(j) = 1;
    return e;
  }

  /// Mixed-radix enumeration index; the first factor is most significant.
  std::uint64_t index_of(const AbelianElement& a) const {
    check(a);
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < factors_.size(); ++j) idx = idx * static_cast<std::uint64_t>(factors_[j]) + static_cast<std::uint64_t>(a.residues[j]);
    return idx;
  }

  AbelianElement element_at(std::uint64_t idx) const {
    require(idx < order(), ErrorCode::InvalidInput, "element index out of range");
    AbelianElement a = zero();
    for (std::size_t j = factors_.size(); j-- > 0;) {
      a.residues[j] = static_cast<int>(idx % static_cast<std::uint64_t>(factors_[j]));
      idx /= static_cast<std::uint64_t>(factors_[j]);
    }
    return a;
  }

  std::vector<AbelianElement> elements() const {
    std::vector<AbelianElement> out;
    out.reserve(order());
    for (std::uint64_t i = 0; i < order(); ++i) out.push_back(element_at(i));
    return out;
  }

  /// Literal such as `Z2`, `Z2xZ4`, or `0` for the trivial group.
  std::string name() const {
    if (factors_.empty()) return "0";
    std::string s;
    for (std::size_t j = 0; j < factors_.size(); ++j) s += (j ? "xZ" : "Z") + std::to_string(factors_[j]);
    return s;
  }

  std::string format(const AbelianElement& a) const {
    std::string s = "(";
    for (std::size_t j = 0; j < a.residues.size(); ++j) s += (j ? "," : "") + std::to_string(a.residues[j]);
    return s + ")";
  }

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  std::vector<int> factors_;
};

/// Parses `Z2`, `Z4`, `Z2xZ2`, `Zn1xZn2x...`; `0` or `1` is the trivial group.
inline AbelianGroup parse_group_literal(std::string_view text) {
  if (text == "0" || text == "1") return AbelianGroup{};
  std::vector<int> factors;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] != 'Z' && text[pos] != 'z') fail(ErrorCode::Parse, "bad group literal '" + std::string(text) + "'");
    ++pos;
    std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (start == pos || pos - start > 6) fail(ErrorCode::Parse, "bad group literal '" + std::string(text) + "'");
    int n = std::stoi(std::string(text.substr(start, pos - start)));
    if (n < 2) fail(ErrorCode::Parse, "cyclic factor order must be >= 2 in '" + std::string(text) + "'");
    factors.push_back(n);
    if (pos < text.size()) {
      if (text[pos] != 'x' || pos + 1 == text.size()) fail(ErrorCode::Parse, "bad group literal '" + std::string(text) + "'");
      ++pos;
    }
  }
  if (factors.empty()) fail(ErrorCode::Parse, "empty group literal");
  return AbelianGroup(std::move(factors));
}

/// Homomorphism determined by the images of the standard generators.
class AbelianHom {
 public:
  AbelianHom(AbelianGroup domain, AbelianGroup codomain, std::vector<AbelianElement> images)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {
    require(images_.size() == domain_.rank(), ErrorCode::ShapeMismatch, "one image per domain generator required");
    for (std::size_t j = 0; j < images_.size(); ++j) {
      codomain_.check(images_[j]);
      // n_j * image must vanish for the map to be well defined
      require(codomain_.scale(domain_.factors()[j], images_[j]) == codomain_.zero(), ErrorCode::NotAHomomorphism,
              "image of generator " + std::to_string(j) + " has order not dividing " +
                  std::to_string(domain_.factors()[j]));
    }
  }

  const AbelianGroup& domain() const { return domain_; }
  const AbelianGroup& codomain() const { return codomain_; }
  const std::vector<AbelianElement>& images() const { return images_; }

  AbelianElement operator()(const AbelianElement& a) const {
    require(domain_.contains(a), ErrorCode::ShapeMismatch, "element " + domain_.format(a) + " not in domain " + domain_.name());
    AbelianElement out = codomain_.zero();
    for (std::size_t j = 0; j < images_.size(); ++j) out = codomain_.add(out, codomain_.scale(a.residues[j], images_[j]));
    return out;
  }

  bool is_surjective() const {
    std::vector<char> hit(codomain_.order(), 0);
    for (const auto& a : domain_.elements()) hit[codomain_.index_of((*this)(a))] = 1;
    for (char h : hit)
      if (!h) return false;
    return true;
  }

  /// Kernel as a list of domain elements, in enumeration order.
  std::vector<AbelianElement> kernel() const {
    std::vector<AbelianElement> out;
    for (const auto& a : domain_.elements())
      if ((*this)(a) == codomain_.zero()) out.push_back(a);
    return out;
  }

  static AbelianHom identity(const AbelianGroup& G) {
    std::vector<AbelianElement> imgs;
    for (std::size_t j = 0; j < G.rank(); ++j) imgs.push_back(G.generator(j));
    return AbelianHom(G, G, std::move(imgs));
  }

 private:
  AbelianGroup domain_;
  AbelianGroup codomain_;
  std::vector<AbelianElement> images_;
};

inline AbelianElement hom_apply(const AbelianHom& phi, const AbelianElement& a) { return phi(a); }

/// g . f
inline AbelianHom compose(const AbelianHom& g, const AbelianHom& f) {
  require(f.codomain() == g.domain(), ErrorCode::ShapeMismatch, "cannot compose: codomain/domain differ");
  std::vector<AbelianElement> imgs;
  for (const auto& im : f.images()) imgs.push_back(g(im));
  return AbelianHom(f.domain(), g.codomain(), std::move(imgs));
}

struct DirectSum {
  AbelianGroup group;
  std::vector<AbelianHom> injections;
  std::vector<AbelianHom> projections;

  AbelianElement pack(const std::vector<AbelianElement>& parts) const {
    require(parts.size() == injections.size(), ErrorCode::ShapeMismatch, "wrong number of summands");
    AbelianElement out = group.zero();
    for (std::size_t i = 0; i < parts.size(); ++i) out = group.add(out, injections[i](parts[i]));
    return out;
  }
};

inline DirectSum direct_sum(const std::vector<AbelianGroup>& groups) {
  std::vector<int> all;
  for (const auto& g : groups) all.insert(all.end(), g.factors().begin(), g.factors().end());
  DirectSum ds{AbelianGroup(all), {}, {}};
  std::size_t offset = 0;
  for (const auto& g : groups) {
    std::vector<AbelianElement> inj;
    for (std::size_t j = 0; j < g.rank(); ++j) inj.push_back(ds.group.generator(offset + j));
    ds.injections.emplace_back(g, ds.group, std::move(inj));
    std::vector<AbelianElement> proj;
    for (std::size_t j = 0; j < ds.group.rank(); ++j) {
      AbelianElement e = g.zero();
      if (j >= offset && j < offset + g.rank()) e.residues[j - offset] = 1;
      proj.push_back(e);
    }
    ds.projections.emplace_back(ds.group, g, std::move(proj));
    offset += g.rank();
  }
  return ds;
}

/// Kernel fusion Z2^n -> Z2, (x1..xn) -> x1 + ... + xn mod 2.
inline AbelianHom fusion_hom_mod2(int n) {
  require(n >= 1, ErrorCode::InvalidInput, "fusion needs n >= 1");
  AbelianGroup z2 = AbelianGroup::cyclic(2);
  return AbelianHom(AbelianGroup::z2_power(n), z2, std::vector<AbelianElement>(static_cast<std::size_t>(n), z2.generator(0)));
}

}  // namespace obs
