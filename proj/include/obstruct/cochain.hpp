#pragma once

// Cech cochains on a nerve with values in a finite abelian group, the
// coboundary operator, and cohomology.
//
// A p-cochain stores one coefficient per canonical p-simplex. The coboundary
// uses the alternating-sign formula
//   (df)(v0..v{p+1}) = sum_j (-1)^j f(v0..^vj..v{p+1}),
// which over Z2 is the multiplicative formula with all signs dropped.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "obstruct/coefgroup.hpp"
#include "obstruct/error.hpp"
#include "obstruct/linalg.hpp"
#include "obstruct/nerve.hpp"

namespace obs {

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

inline ComplexPtr share(SimplicialComplex X) { return std::make_shared<const SimplicialComplex>(std::move(X)); }

inline bool same_base(const ComplexPtr& a, const ComplexPtr& b) { return a == b || (a && b && *a == *b); }

class Cochain {
 public:
  Cochain() = default;
  Cochain(ComplexPtr base, int degree, AbelianGroup coefficients, std::vector<AbelianElement> values)
      : base_(std::move(base)), degree_(degree), coefficients_(std::move(coefficients)), values_(std::move(values)) {
    require(base_ != nullptr, ErrorCode::InvalidInput, "cochain needs a base complex");
    require(values_.size() == base_->count(degree_), ErrorCode::ShapeMismatch,
            "cochain of degree " + std::to_string(degree_) + " needs " + std::to_string(base_->count(degree_)) + " values");
    for (const auto& v : values_) coefficients_.check(v);
  }

  static Cochain zero(ComplexPtr base, int degree, const AbelianGroup& K) {
    const std::size_t n = base->count(degree);
    return Cochain(std::move(base), degree, K, std::vector<AbelianElement>(n, K.zero()));
  }

  const ComplexPtr& base() const { return base_; }
  const SimplicialComplex& complex() const { return *base_; }
  int degree() const { return degree_; }
  const AbelianGroup& coefficients() const { return coefficients_; }
  const std::vector<AbelianElement>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  const AbelianElement& operator[](std::size_t i) const { return values_.at(i); }
  const AbelianElement& at(const Simplex& s) const {
    auto idx = base_->index_of(s);
    require(idx.has_value() && s.dimension() == degree_, ErrorCode::InvalidInput, "simplex " + to_string(s) + " not indexed by this cochain");
    return values_[*idx];
  }
  void set(std::size_t i, AbelianElement v) {
    coefficients_.check(v);
    values_.at(i) = std::move(v);
  }

  bool is_zero() const {
    const auto z = coefficients_.zero();
    return std::all_of(values_.begin(), values_.end(), [&](const AbelianElement& v) { return v == z; });
  }

  /// Residues of coefficient factor j, one per simplex.
  std::vector<long> component(std::size_t j) const {
    std::vector<long> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[i].residues[j];
    return out;
  }

  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.degree_ == b.degree_ && a.coefficients_ == b.coefficients_ && same_base(a.base_, b.base_) && a.values_ == b.values_;
  }

 private:
  ComplexPtr base_;
  int degree_ = 0;
  AbelianGroup coefficients_;
  std::vector<AbelianElement> values_;
};

inline void check_compatible(const Cochain& f, const Cochain& g) {
  require(f.degree() == g.degree() && f.coefficients() == g.coefficients() && same_base(f.base(), g.base()),
          ErrorCode::ShapeMismatch, "cochains differ in degree, coefficients or base");
}

inline Cochain operator+(const Cochain& f, const Cochain& g) {
  check_compatible(f, g);
  std::vector<AbelianElement> v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) v[i] = f.coefficients().add(f[i], g[i]);
  return Cochain(f.base(), f.degree(), f.coefficients(), std::move(v));
}

inline Cochain operator-(const Cochain& f) {
  std::vector<AbelianElement> v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) v[i] = f.coefficients().neg(f[i]);
  return Cochain(f.base(), f.degree(), f.coefficients(), std::move(v));
}

inline Cochain operator-(const Cochain& f, const Cochain& g) { return f + (-g); }

/// Matrix of d: C^p -> C^{p+1}; rows are (p+1)-simplices, columns p-simplices.
inline linalg::IntMatrix coboundary_matrix(const SimplicialComplex& X, int p) {
  linalg::IntMatrix D(X.count(p + 1), X.count(p));
  if (p < 0) return D;
  for (std::size_t i = 0; i < D.rows; ++i) {
    const auto faces = X.facet_indices(p + 1, i);
    for (std::size_t j = 0; j < faces.size(); ++j) D(i, faces[j]) += (j % 2 == 0) ? 1 : -1;
  }
  return D;
}

inline Cochain coboundary(const Cochain& f) {
  const auto& X = f.complex();
  const auto& K = f.coefficients();
  const int q = f.degree() + 1;
  std::vector<AbelianElement> out(X.count(q), K.zero());
  if (f.degree() >= 0) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto faces = X.facet_indices(q, i);
      for (std::size_t j = 0; j < faces.size(); ++j) {
        const auto& term = f[faces[j]];
        out[i] = (j % 2 == 0) ? K.add(out[i], term) : K.sub(out[i], term);
      }
    }
  }
  return Cochain(f.base(), q, K, std::move(out));
}

inline bool is_cocycle(const Cochain& f) { return coboundary(f).is_zero(); }

/// Solves dg = f factor by factor and returns a witness g, or nullopt when f
/// is not a coboundary. For degree 0 the witness is the empty (-1)-cochain.
inline std::optional<Cochain> is_coboundary(const Cochain& f) {
  const auto& X = f.complex();
  const auto& K = f.coefficients();
  const int p = f.degree();
  if (p == 0) {
    if (!f.is_zero()) return std::nullopt;
    return Cochain(f.base(), -1, K, {});
  }
  const auto D = coboundary_matrix(X, p - 1);
  std::vector<AbelianElement> g(X.count(p - 1), K.zero());
  for (std::size_t j = 0; j < K.rank(); ++j) {
    auto sol = linalg::solve_mod_n(D, f.component(j), K.factors()[j]);
    if (!sol) return std::nullopt;
    for (std::size_t i = 0; i < g.size(); ++i) g[i].residues[j] = static_cast<int>((*sol)[i]);
  }
  return Cochain(f.base(), p - 1, K, std::move(g));
}

inline bool classes_equal(const Cochain& f, const Cochain& g) {
  check_compatible(f, g);
  require(is_cocycle(f), ErrorCode::InvalidInput, "classes_equal: first argument is not a cocycle");
  require(is_cocycle(g), ErrorCode::InvalidInput, "classes_equal: second argument is not a cocycle");
  return is_coboundary(f - g).has_value();
}

/// Simplexwise image under a coefficient homomorphism.
inline Cochain push_cochain(const AbelianHom& phi, const Cochain& f) {
  require(phi.domain() == f.coefficients(), ErrorCode::ShapeMismatch, "homomorphism domain differs from cochain coefficients");
  std::vector<AbelianElement> v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) v[i] = phi(f[i]);
  return Cochain(f.base(), f.degree(), phi.codomain(), std::move(v));
}

/// (f1 + ... + fn)(s) = (f1(s), ..., fn(s)) with values in the direct sum.
inline Cochain direct_sum_cochain(const std::vector<Cochain>& parts) {
  require(!parts.empty(), ErrorCode::InvalidInput, "direct sum of no cochains");
  std::vector<AbelianGroup> groups;
  for (const auto& f : parts) {
    require(f.degree() == parts[0].degree() && same_base(f.base(), parts[0].base()), ErrorCode::ShapeMismatch,
            "direct sum needs cochains of equal degree on one base");
    groups.push_back(f.coefficients());
  }
  const DirectSum ds = direct_sum(groups);
  std::vector<AbelianElement> v(parts[0].size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::vector<AbelianElement> tuple;
    for (const auto& f : parts) tuple.push_back(f[i]);
    v[i] = ds.pack(tuple);
  }
  return Cochain(parts[0].base(), parts[0].degree(), ds.group, std::move(v));
}

template <class Rng>
Cochain random_cochain(ComplexPtr base, int degree, const AbelianGroup& K, Rng& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, K.order() - 1);
  std::vector<AbelianElement> v(base->count(degree));
  for (auto& e : v) e = K.element_at(pick(rng));
  return Cochain(std::move(base), degree, K, std::move(v));
}

struct CohomologyClass {
  Cochain representative;

  bool is_zero() const { return is_coboundary(representative).has_value(); }
};

struct CohomologySpace {
  ComplexPtr base;
  int degree = 0;
  AbelianGroup coefficients;
  /// Invariant factors d1 | d2 | ... (all >= 2); the group is their sum.
  std::vector<long> invariant_factors;
  /// Set when the coefficients are Z_p, p prime.
  std::optional<long> prime;
  std::optional<std::size_t> dimension;
  std::vector<Cochain> basis;

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (long d : invariant_factors) o *= static_cast<std::uint64_t>(d);
    return o;
  }
};

namespace detail {

/// Rewrites a list of cyclic orders as invariant factors in ascending order.
inline std::vector<long> invariant_factors(const std::vector<long>& cyclic) {
  std::map<long, std::vector<long>> by_prime;
  for (long m : cyclic) {
    long r = m;
    for (long q = 2; q * q <= r; ++q) {
      if (r % q) continue;
      long pw = 1;
      while (r % q == 0) {
        r /= q;
        pw *= q;
      }
      by_prime[q].push_back(pw);
    }
    if (r > 1) by_prime[r].push_back(r);
  }
  std::size_t len = 0;
  for (auto& [q, v] : by_prime) {
    std::sort(v.rbegin(), v.rend());
    len = std::max(len, v.size());
  }
  std::vector<long> out(len, 1);
  for (auto& [q, v] : by_prime)
    for (std::size_t i = 0; i < v.size(); ++i) out[i] *= v[i];
  std::reverse(out.begin(), out.end());
  return out;
}

struct IntegralHomology {
  long betti = 0;
  std::vector<long> torsion;
};

inline IntegralHomology integral_homology(const SimplicialComplex& X, int p) {
  // boundary d_{p+1}: C_{p+1} -> C_p is the transpose of the coboundary d^p
  IntegralHomology h;
  const auto up = linalg::smith_diagonal(coboundary_matrix(X, p).transposed());
  std::size_t rank_down = 0;
  if (p > 0) rank_down = linalg::smith_diagonal(coboundary_matrix(X, p - 1).transposed()).size();
  h.betti = static_cast<long>(X.count(p)) - static_cast<long>(rank_down) - static_cast<long>(up.size());
  for (long d : up)
    if (d > 1) h.torsion.push_back(d);
  return h;
}

}  // namespace detail

/// Over Z_p the dimension and a basis of cocycle representatives come from
/// GF(p) elimination; for any finite K the group structure comes from the
/// integral Smith form and the universal coefficient theorem
///   H^p(X; Z_n) = Hom(H_p, Z_n) + Ext(H_{p-1}, Z_n).
inline CohomologySpace cohomology(const ComplexPtr& X, int p, const AbelianGroup& K) {
  require(p >= 0, ErrorCode::InvalidInput, "cohomology degree must be >= 0");
  CohomologySpace H;
  H.base = X;
  H.degree = p;
  H.coefficients = K;

  const auto hp = detail::integral_homology(*X, p);
  const auto hprev = p > 0 ? detail::integral_homology(*X, p - 1) : detail::IntegralHomology{};
  std::vector<long> cyclic;
  for (long n : K.factors()) {
    for (long b = 0; b < hp.betti; ++b) cyclic.push_back(n);
    for (long d : hp.torsion) cyclic.push_back(std::gcd(d, n));
    for (long d : hprev.torsion) cyclic.push_back(std::gcd(d, n));
  }
  std::erase(cyclic, 1L);
  H.invariant_factors = detail::invariant_factors(cyclic);

  if (K.rank() == 1 && linalg::is_prime(K.factors()[0])) {
    const long q = K.factors()[0];
    H.prime = q;
    const auto Dp = coboundary_matrix(*X, p);
    const auto Dprev = coboundary_matrix(*X, p - 1);
    const std::size_t n = X->count(p);
    const std::size_t rank_p = linalg::rank_mod_prime(Dp, q);
    const std::size_t rank_prev = p > 0 ? linalg::rank_mod_prime(Dprev, q) : 0;
    H.dimension = n - rank_p - rank_prev;

    // complete a basis of im d^{p-1} to one of ker d^p
    std::vector<std::vector<long>> span;
    if (p > 0)
      for (std::size_t j = 0; j < Dprev.cols; ++j) {
        std::vector<long> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = Dprev(i, j);
        span.push_back(std::move(col));
      }
    auto rank_of = [&](const std::vector<std::vector<long>>& vs) {
      linalg::IntMatrix M(vs.size(), n);
      for (std::size_t r = 0; r < vs.size(); ++r)
        for (std::size_t c = 0; c < n; ++c) M(r, c) = vs[r][c];
      return linalg::rank_mod_prime(M, q);
    };
    std::size_t current = rank_of(span);
    for (auto& z : linalg::nullspace_mod_prime(Dp, q)) {
      if (H.basis.size() == *H.dimension) break;
      span.push_back(z);
      const std::size_t r = rank_of(span);
      if (r == current) {
        span.pop_back();
        continue;
      }
      current = r;
      std::vector<AbelianElement> vals(n);
      for (std::size_t i = 0; i < n; ++i) vals[i] = AbelianElement{{static_cast<int>(z[i])}};
      H.basis.emplace_back(X, p, K, std::move(vals));
    }
    require(H.basis.size() == *H.dimension, ErrorCode::Internal, "cohomology basis has wrong size");
  }
  return H;
}

inline constexpr std::uint64_t default_enumeration_cap = std::uint64_t{1} << 16;

/// One representative per class of H^p(X; Z_p), as all combinations of the
/// basis in base-p counting order.
inline std::vector<CohomologyClass> enumerate_classes(const ComplexPtr& X, int p, const AbelianGroup& K = AbelianGroup::cyclic(2),
                                                      std::uint64_t cap = default_enumeration_cap) {
  const auto H = cohomology(X, p, K);
  require(H.prime.has_value(), ErrorCode::InvalidInput, "class enumeration needs prime cyclic coefficients");
  const std::uint64_t q = static_cast<std::uint64_t>(*H.prime);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < *H.dimension; ++i) {
    total *= q;
    require(total <= cap, ErrorCode::CapExceeded, "class count exceeds enumeration cap " + std::to_string(cap));
  }
  std::vector<CohomologyClass> out;
  out.reserve(total);
  for (std::uint64_t code = 0; code < total; ++code) {
    Cochain c = Cochain::zero(X, p, K);
    std::uint64_t r = code;
    for (const auto& b : H.basis) {
      const long coeff = static_cast<long>(r % q);
      r /= q;
      if (coeff == 0) continue;
      for (std::size_t i = 0; i < c.size(); ++i) c.set(i, K.add(c[i], K.scale(coeff, b[i])));
    }
    out.push_back(CohomologyClass{std::move(c)});
  }
  return out;
}

// Text format:
//   degree <p> group <literal> complex <hash>
//   <v0> ... <vp> <r1> ... <rk>      one line per canonical p-simplex

inline void write_cochain(std::ostream& out, const Cochain& f) {
  out << "degree " << f.degree() << " group " << f.coefficients().name() << " complex " << complex_hash(f.complex()) << '\n';
  const auto& simplices = f.complex().simplices_of_dim(f.degree());
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t k = 0; k < simplices[i].vertices.size(); ++k) out << (k ? " " : "") << simplices[i].vertices[k];
    for (int r : f[i].residues) out << ' ' << r;
    out << '\n';
  }
}

inline Cochain parse_cochain(std::istream& in, const ComplexPtr& base) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      auto first = line.find_first_not_of(" \t\r");
      if (first != std::string::npos && line[first] != '#') return true;
    }
    return false;
  };
  if (!next_line()) fail(ErrorCode::Parse, "empty cochain file");
  std::istringstream hs(line);
  std::string kw_degree, kw_group, literal, kw_complex, hash;
  int p = 0;
  if (!(hs >> kw_degree >> p >> kw_group >> literal >> kw_complex >> hash) || kw_degree != "degree" || kw_group != "group" ||
      kw_complex != "complex")
    fail(ErrorCode::Parse, "bad cochain header '" + line + "'");
  if (hash != complex_hash(*base)) fail(ErrorCode::Parse, "cochain complex hash " + hash + " does not match base complex");
  const AbelianGroup K = parse_group_literal(literal);
  Cochain f = Cochain::zero(base, p, K);
  std::vector<char> seen(f.size(), 0);
  while (next_line()) {
    std::istringstream ls(line);
    std::vector<long> nums;
    long v = 0;
    while (ls >> v) nums.push_back(v);
    if (!ls.eof() || nums.size() != static_cast<std::size_t>(p + 1) + K.rank())
      fail(ErrorCode::Parse, "bad cochain line '" + line + "'");
    Simplex s;
    for (int k = 0; k <= p; ++k) s.vertices.push_back(static_cast<Vertex>(nums[static_cast<std::size_t>(k)]));
    auto idx = base->index_of(s);
    if (!idx || s.dimension() != p) fail(ErrorCode::Parse, "simplex " + to_string(s) + " not in base complex");
    AbelianElement a;
    for (std::size_t j = 0; j < K.rank(); ++j) a.residues.push_back(static_cast<int>(nums[static_cast<std::size_t>(p + 1) + j]));
    if (!K.contains(a)) fail(ErrorCode::Parse, "residue out of range on line '" + line + "'");
    f.set(*idx, a);
    seen[*idx] = 1;
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) fail(ErrorCode::Parse, "cochain file misses simplex " + to_string(base->simplices_of_dim(p)[i]));
  return f;
}

}  // namespace obs
