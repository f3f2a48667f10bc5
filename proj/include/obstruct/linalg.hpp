#pragma once

// Exact linear algebra over GF(2), GF(p), Z/nZ and Z.
//
// GF(2) matrices are bit-packed by row. The Z/nZ solver diagonalizes with
// unimodular row and column operations (extended-gcd 2x2 blocks), so it
// works for composite moduli where plain Gaussian elimination does not.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "obstruct/error.hpp"

namespace obs::linalg {

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

/// Extended gcd: returns g = gcd(a, b) >= 0 with x*a + y*b = g.
inline long ext_gcd(long a, long b, long& x, long& y) {
  long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    long q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
    std::tie(old_t, t) = std::pair{t, old_t - q * t};
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

inline long inverse_mod(long a, long n) {
  long x = 0, y = 0;
  long g = ext_gcd(mod(a, n), n, x, y);
  require(g == 1, ErrorCode::Internal, "element not invertible");
  return mod(x, n);
}

/// Dense integer matrix, row-major.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<long> a;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

  long& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  long operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  IntMatrix transposed() const {
    IntMatrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
};

// ---------------------------------------------------------------------------
// GF(2)

class Gf2Matrix {
 public:
  Gf2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

  static Gf2Matrix from(const IntMatrix& m) {
    Gf2Matrix g(m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t j = 0; j < m.cols; ++j)
        if (mod(m(i, j), 2)) g.set(i, j, true);
    return g;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t i, std::size_t j) const { return (row(i)[j / 64] >> (j % 64)) & 1u; }
  void set(std::size_t i, std::size_t j, bool v) {
    auto& w = row(i)[j / 64];
    const std::uint64_t bit = std::uint64_t{1} << (j % 64);
    w = v ? (w | bit) : (w & ~bit);
  }

  void xor_rows(std::size_t dst, std::size_t src) {
    auto* d = row(dst);
    const auto* s = row(src);
    for (std::size_t w = 0; w < words_; ++w) d[w] ^= s[w];
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap_ranges(row(i), row(i) + words_, row(j));
  }

  /// Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && !get(p, c)) ++p;
      if (p == rows_) continue;
      swap_rows(r, p);
      for (std::size_t i = 0; i < rows_; ++i)
        if (i != r && get(i, c)) xor_rows(i, r);
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    Gf2Matrix copy = *this;
    return copy.rref().size();
  }

 private:
  std::uint64_t* row(std::size_t i) { return bits_.data() + i * words_; }
  const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }

  std::size_t rows_, cols_, words_;
  std::vector<std::uint64_t> bits_;
};

// ---------------------------------------------------------------------------
// GF(p), p prime. p == 2 is routed through the packed representation.

inline std::size_t rank_mod_prime(const IntMatrix& m, long p) {
  if (p == 2) return Gf2Matrix::from(m).rank();
  IntMatrix a = m;
  for (auto& v : a.a) v = mod(v, p);
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
    std::size_t piv = r;
    while (piv < a.rows && a(piv, c) == 0) ++piv;
    if (piv == a.rows) continue;
    for (std::size_t j = 0; j < a.cols; ++j) std::swap(a(r, j), a(piv, j));
    const long inv = inverse_mod(a(r, c), p);
    for (std::size_t j = 0; j < a.cols; ++j) a(r, j) = a(r, j) * inv % p;
    for (std::size_t i = r + 1; i < a.rows; ++i) {
      const long f = a(i, c);
      if (f == 0) continue;
      for (std::size_t j = c; j < a.cols; ++j) a(i, j) = mod(a(i, j) - f * a(r, j), p);
    }
    ++r;
  }
  return r;
}

/// RREF of the augmented system [A | b] over GF(p); first solution with free
/// variables set to zero.
inline std::optional<std::vector<long>> solve_mod_prime(const IntMatrix& A, const std::vector<long>& b, long p) {
  require(b.size() == A.rows, ErrorCode::ShapeMismatch, "rhs length does not match matrix rows");
  const std::size_t n = A.cols;
  if (p == 2) {
    Gf2Matrix g(A.rows, n + 1);
    for (std::size_t i = 0; i < A.rows; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        if (mod(A(i, j), 2)) g.set(i, j, true);
      if (mod(b[i], 2)) g.set(i, n, true);
    }
    auto piv = g.rref();
    if (!piv.empty() && piv.back() == n) return std::nullopt;
    std::vector<long> x(n, 0);
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = g.get(r, n) ? 1 : 0;
    return x;
  }
  IntMatrix a(A.rows, n + 1);
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = mod(A(i, j), p);
    a(i, n) = mod(b[i], p);
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c <= n && r < a.rows; ++c) {
    std::size_t piv = r;
    while (piv < a.rows && a(piv, c) == 0) ++piv;
    if (piv == a.rows) continue;
    if (c == n) return std::nullopt;
    for (std::size_t j = 0; j <= n; ++j) std::swap(a(r, j), a(piv, j));
    const long inv = inverse_mod(a(r, c), p);
    for (std::size_t j = 0; j <= n; ++j) a(r, j) = a(r, j) * inv % p;
    for (std::size_t i = 0; i < a.rows; ++i) {
      if (i == r) continue;
      const long f = a(i, c);
      if (f == 0) continue;
      for (std::size_t j = 0; j <= n; ++j) a(i, j) = mod(a(i, j) - f * a(r, j), p);
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<long> x(n, 0);
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = a(k, n);
  return x;
}

/// Basis of the right null space {x : A x = 0} over GF(p).
inline std::vector<std::vector<long>> nullspace_mod_prime(const IntMatrix& A, long p) {
  IntMatrix a = A;
  for (auto& v : a.a) v = mod(v, p);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
    std::size_t piv = r;
    while (piv < a.rows && a(piv, c) == 0) ++piv;
    if (piv == a.rows) continue;
    for (std::size_t j = 0; j < a.cols; ++j) std::swap(a(r, j), a(piv, j));
    const long inv = inverse_mod(a(r, c), p);
    for (std::size_t j = 0; j < a.cols; ++j) a(r, j) = a(r, j) * inv % p;
    for (std::size_t i = 0; i < a.rows; ++i) {
      if (i == r) continue;
      const long f = a(i, c);
      if (f == 0) continue;
      for (std::size_t j = 0; j < a.cols; ++j) a(i, j) = mod(a(i, j) - f * a(r, j), p);
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<char> is_pivot(a.cols, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  std::vector<std::vector<long>> basis;
  for (std::size_t free = 0; free < a.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<long> x(a.cols, 0);
    x[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = mod(-a(k, free), p);
    basis.push_back(std::move(x));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Z/nZ for arbitrary n >= 2.

/// Solves A x = b (mod n). Diagonalizes S = U A V with U, V invertible over
/// Z/nZ, solves the diagonal system, and maps back x = V y.
inline std::optional<std::vector<long>> solve_mod_n(const IntMatrix& A, const std::vector<long>& b, long n) {
  require(n >= 2, ErrorCode::InvalidInput, "modulus must be >= 2");
  require(b.size() == A.rows, ErrorCode::ShapeMismatch, "rhs length does not match matrix rows");
  if (is_prime(n)) return solve_mod_prime(A, b, n);

  const std::size_t m = A.rows, k = A.cols;
  IntMatrix S = A;
  for (auto& v : S.a) v = mod(v, n);
  std::vector<long> c(b.size());
  for (std::size_t i = 0; i < m; ++i) c[i] = mod(b[i], n);
  IntMatrix V(k, k);
  for (std::size_t i = 0; i < k; ++i) V(i, i) = 1;

  // rows i, j <- [[x, y], [-v/g, u/g]] applied to (row i, row j)
  auto row_op = [&](std::size_t i, std::size_t j, long x, long y, long s, long t) {
    for (std::size_t col = 0; col < k; ++col) {
      const long ri = S(i, col), rj = S(j, col);
      S(i, col) = mod(x * ri + y * rj, n);
      S(j, col) = mod(s * ri + t * rj, n);
    }
    const long ci = c[i], cj = c[j];
    c[i] = mod(x * ci + y * cj, n);
    c[j] = mod(s * ci + t * cj, n);
  };
  auto col_op = [&](std::size_t i, std::size_t j, long x, long y, long s, long t) {
    for (std::size_t row = 0; row < m; ++row) {
      const long ai = S(row, i), aj = S(row, j);
      S(row, i) = mod(x * ai + y * aj, n);
      S(row, j) = mod(s * ai + t * aj, n);
    }
    for (std::size_t row = 0; row < k; ++row) {
      const long ai = V(row, i), aj = V(row, j);
      V(row, i) = mod(x * ai + y * aj, n);
      V(row, j) = mod(s * ai + t * aj, n);
    }
  };

  std::size_t t = 0;
  for (; t < std::min(m, k); ++t) {
    // pivot: entry with the smallest gcd with n
    long best = 0;
    std::size_t bi = m, bj = k;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < k; ++j)
        if (S(i, j) != 0) {
          long g = std::gcd(S(i, j), n);
          if (bi == m || g < best) {
            best = g;
            bi = i;
            bj = j;
          }
        }
    if (bi == m) break;
    if (bi != t) {
      for (std::size_t j = 0; j < k; ++j) std::swap(S(t, j), S(bi, j));
      std::swap(c[t], c[bi]);
    }
    if (bj != t) {
      for (std::size_t i = 0; i < m; ++i) std::swap(S(i, t), S(i, bj));
      for (std::size_t i = 0; i < k; ++i) std::swap(V(i, t), V(i, bj));
    }
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        const long u = S(t, t), v = S(i, t);
        if (v == 0) continue;
        if (u != 0 && v % u == 0) {
          row_op(t, i, 1, 0, -(v / u), 1);
          continue;
        }
        long x = 0, y = 0;
        const long g = ext_gcd(u, v, x, y);
        row_op(t, i, x, y, -(v / g), u / g);
        dirty = true;
      }
      for (std::size_t j = t + 1; j < k; ++j) {
        const long u = S(t, t), v = S(t, j);
        if (v == 0) continue;
        if (u != 0 && v % u == 0) {
          col_op(t, j, 1, 0, -(v / u), 1);
          continue;
        }
        long x = 0, y = 0;
        const long g = ext_gcd(u, v, x, y);
        col_op(t, j, x, y, -(v / g), u / g);
        dirty = true;
      }
    }
  }

  std::vector<long> y(k, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const long d = i < t ? S(i, i) : 0;
    if (d == 0) {
      if (c[i] != 0) return std::nullopt;
      continue;
    }
    const long g = std::gcd(d, n);
    if (c[i] % g != 0) return std::nullopt;
    const long nn = n / g;
    y[i] = nn == 1 ? 0 : mod((c[i] / g) * inverse_mod(d / g, nn), nn);
  }
  std::vector<long> x(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    long acc = 0;
    for (std::size_t j = 0; j < k; ++j) acc = mod(acc + V(i, j) * y[j], n);
    x[i] = acc;
  }
  return x;
}

// ---------------------------------------------------------------------------
// Integers.

namespace detail {
inline long checked(__int128 v) {
  require(v <= static_cast<__int128>(INT64_MAX) && v >= static_cast<__int128>(INT64_MIN), ErrorCode::Internal,
          "integer overflow in Smith normal form");
  return static_cast<long>(v);
}
}  // namespace detail

/// Nonzero diagonal entries (absolute values) of a diagonalization of the
/// integer matrix by unimodular operations. The cokernel is Z^(rows - r) plus
/// the sum of Z/d over the returned entries d; entries equal to 1 contribute
/// nothing.
inline std::vector<long> smith_diagonal(IntMatrix S) {
  const std::size_t m = S.rows, k = S.cols;
  std::vector<long> diag;
  for (std::size_t t = 0; t < std::min(m, k); ++t) {
    long best = 0;
    std::size_t bi = m, bj = k;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < k; ++j)
        if (S(i, j) != 0 && (bi == m || std::labs(S(i, j)) < best)) {
          best = std::labs(S(i, j));
          bi = i;
          bj = j;
        }
    if (bi == m) break;
    for (std::size_t j = 0; j < k; ++j) std::swap(S(t, j), S(bi, j));
    for (std::size_t i = 0; i < m; ++i) std::swap(S(i, t), S(i, bj));
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        const long u = S(t, t), v = S(i, t);
        if (v == 0) continue;
        long x = 1, y = 0, g = u;
        if (v % u != 0) g = ext_gcd(u, v, x, y);
        const long s = -(v / g), w = u / g;
        for (std::size_t j = t; j < k; ++j) {
          const long ri = S(t, j), rj = S(i, j);
          S(t, j) = detail::checked(static_cast<__int128>(x) * ri + static_cast<__int128>(y) * rj);
          S(i, j) = detail::checked(static_cast<__int128>(s) * ri + static_cast<__int128>(w) * rj);
        }
        if (std::labs(g) != std::labs(u)) dirty = true;
      }
      for (std::size_t j = t + 1; j < k; ++j) {
        const long u = S(t, t), v = S(t, j);
        if (v == 0) continue;
        long x = 1, y = 0, g = u;
        if (v % u != 0) g = ext_gcd(u, v, x, y);
        const long s = -(v / g), w = u / g;
        for (std::size_t i = t; i < m; ++i) {
          const long ai = S(i, t), aj = S(i, j);
          S(i, t) = detail::checked(static_cast<__int128>(x) * ai + static_cast<__int128>(y) * aj);
          S(i, j) = detail::checked(static_cast<__int128>(s) * ai + static_cast<__int128>(w) * aj);
        }
        if (std::labs(g) != std::labs(u)) dirty = true;
      }
      // the column pass may have refilled the pivot column
      for (std::size_t i = t + 1; i < m && !dirty; ++i)
        if (S(i, t) != 0) dirty = true;
    }
    diag.push_back(std::labs(S(t, t)));
  }
  return diag;
}

}  // namespace obs::linalg
