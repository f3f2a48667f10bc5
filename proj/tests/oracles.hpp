#pragma once

// Test-only reference computations. Nothing here calls into the library's
// linear algebra or cochain code; the oracles rebuild what they need from the
// raw simplex lists.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "obstruct/fingroup.hpp"
#include "obstruct/nerve.hpp"
#include "obstruct/obstruct.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<int>>;

/// Coboundary d^p mod 2 built by searching facets in the raw simplex lists.
inline Matrix coboundary_mod2(const obs::SimplicialComplex& X, int p) {
  const auto& rows = X.simplices_of_dim(p + 1);
  const auto& cols = X.simplices_of_dim(p);
  Matrix M(rows.size(), std::vector<int>(cols.size(), 0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (std::includes(rows[i].vertices.begin(), rows[i].vertices.end(), cols[j].vertices.begin(), cols[j].vertices.end()))
        M[i][j] = 1;
  return M;
}

/// Textbook elimination with row swaps, one entry at a time.
inline int rank_mod2(Matrix M) {
  int rank = 0;
  const int rows = static_cast<int>(M.size());
  const int cols = rows ? static_cast<int>(M[0].size()) : 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] % 2) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(M[static_cast<std::size_t>(piv)], M[static_cast<std::size_t>(rank)]);
    for (int r = 0; r < rows; ++r)
      if (r != rank && M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] % 2)
        for (int k = 0; k < cols; ++k)
          M[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] ^= M[static_cast<std::size_t>(rank)][static_cast<std::size_t>(k)];
    ++rank;
  }
  return rank;
}

inline int dim_h_mod2(const obs::SimplicialComplex& X, int p) {
  const int n = static_cast<int>(X.count(p));
  const int up = X.count(p + 1) ? rank_mod2(coboundary_mod2(X, p)) : 0;
  const int down = (p > 0 && n) ? rank_mod2(coboundary_mod2(X, p - 1)) : 0;
  return n - up - down;
}

/// Is the Z2 1-cochain f (one bit per edge) of the form h_a + h_b for some
/// vertex labelling h? Checks all 2^vertices labellings.
inline bool z2_is_vertex_coboundary(const obs::SimplicialComplex& X, const std::vector<int>& f) {
  const int n = X.vertex_count();
  const auto& edges = X.simplices_of_dim(1);
  for (std::uint32_t h = 0; h < (1u << n); ++h) {
    bool ok = true;
    for (std::size_t e = 0; e < edges.size() && ok; ++e) {
      const int a = edges[e].vertices[0], b = edges[e].vertices[1];
      ok = static_cast<int>(((h >> a) ^ (h >> b)) & 1u) == f[e] % 2;
    }
    if (ok) return true;
  }
  return false;
}

/// Every valid lift of s through ext, by exhaustive enumeration of all
/// total-group values in each fiber.
inline std::vector<std::vector<int>> all_lifts(const obs::BundleCocycle& s, const obs::CentralExtension& ext) {
  const auto& X = *s.base;
  const auto& E = ext.total();
  const std::size_t m = X.count(1);
  std::vector<std::vector<int>> fibers;
  for (int g : s.values) {
    std::vector<int> f;
    for (int x = 0; x < E.order(); ++x)
      if (ext.projection()(x) == g) f.push_back(x);
    fibers.push_back(f);
  }
  std::vector<std::vector<int>> out;
  std::vector<std::size_t> digit(m, 0);
  std::vector<int> cand(m);
  while (true) {
    for (std::size_t e = 0; e < m; ++e) cand[e] = fibers[e][digit[e]];
    bool ok = true;
    for (const auto& t : X.simplices_of_dim(2)) {
      const int a = t.vertices[0], b = t.vertices[1], c = t.vertices[2];
      const int ab = cand[X.edge_index(a, b)], bc = cand[X.edge_index(b, c)], ac = cand[X.edge_index(a, c)];
      if (E.mul(ab, bc) != ac) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(cand);
    std::size_t e = m;
    while (e-- > 0) {
      if (++digit[e] < fibers[e].size()) break;
      digit[e] = 0;
    }
    if (e == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

/// Number of classes of lifts under gamma_ab -> gamma_ab . k_a . k_b^{-1} for
/// every vertex family k of kernel elements: each lift is replaced by the
/// least member of its orbit and distinct minima are counted.
inline std::size_t lift_classes(const obs::BundleCocycle& s, const obs::CentralExtension& ext,
                                const std::vector<std::vector<int>>& lifts) {
  const auto& X = *s.base;
  const auto& E = ext.total();
  const auto& kernel = ext.kernel_embed();
  const int n = X.vertex_count();
  std::uint64_t families = 1;
  for (int v = 0; v < n; ++v) families *= kernel.size();
  std::set<std::vector<int>> minima;
  for (const auto& lift : lifts) {
    std::vector<int> best;
    for (std::uint64_t code = 0; code < families; ++code) {
      std::vector<int> k(static_cast<std::size_t>(n));
      std::uint64_t r = code;
      for (int v = 0; v < n; ++v) {
        k[static_cast<std::size_t>(v)] = kernel[r % kernel.size()];
        r /= kernel.size();
      }
      std::vector<int> moved(lift.size());
      const auto& edges = X.simplices_of_dim(1);
      for (std::size_t e = 0; e < edges.size(); ++e)
        moved[e] = E.mul(E.mul(lift[e], k[static_cast<std::size_t>(edges[e].vertices[0])]),
                         E.inv(k[static_cast<std::size_t>(edges[e].vertices[1])]));
      if (best.empty() || moved < best) best = moved;
    }
    minima.insert(best);
  }
  return minima.size();
}

}  // namespace oracle
