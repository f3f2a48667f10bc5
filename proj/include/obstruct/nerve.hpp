#pragma once

// Finite simplicial complexes standing in for the nerve of a good cover.
//
// Vertices are non-negative integers; every simplex is stored with its
// vertices strictly increasing, and the simplices of each dimension are kept
// in lexicographic order. The position of a simplex in that order is its
// canonical index, which every cochain and matrix in the library uses.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "obstruct/error.hpp"

namespace obs {

using Vertex = int;

struct Simplex {
  std::vector<Vertex> vertices;

  int dimension() const { return static_cast<int>(vertices.size()) - 1; }

  /// The face opposite vertex position `j` (vertex j removed).
  Simplex facet(std::size_t j) const {
    Simplex f;
    f.vertices.reserve(vertices.size() - 1);
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (i != j) f.vertices.push_back(vertices[i]);
    return f;
  }

  friend auto operator<=>(const Simplex&, const Simplex&) = default;
  friend bool operator==(const Simplex&, const Simplex&) = default;
};

inline std::string to_string(const Simplex& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.vertices.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s.vertices[i]);
  }
  return out + ")";
}

class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  int vertex_count() const { return vertex_count_; }
  /// -1 for the empty complex.
  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }

  /// Canonically ordered simplices of dimension p; empty when p > dimension().
  const std::vector<Simplex>& simplices_of_dim(int p) const {
    static const std::vector<Simplex> empty;
    if (p < 0 || p >= static_cast<int>(by_dim_.size())) return empty;
    return by_dim_[static_cast<std::size_t>(p)];
  }

  std::size_t count(int p) const { return simplices_of_dim(p).size(); }

  /// Canonical index of `s` among simplices of its dimension.
  std::optional<std::size_t> index_of(const Simplex& s) const {
    const int p = s.dimension();
    if (p < 0 || p >= static_cast<int>(index_.size())) return std::nullopt;
    const auto& m = index_[static_cast<std::size_t>(p)];
    auto it = m.find(s.vertices);
    if (it == m.end()) return std::nullopt;
    return it->second;
  }

  std::size_t edge_index(Vertex a, Vertex b) const {
    if (a > b) std::swap(a, b);
    auto idx = index_of(Simplex{{a, b}});
    if (!idx) fail(ErrorCode::InvalidInput, "edge " + to_string(Simplex{{a, b}}) + " not in complex");
    return *idx;
  }

  /// Canonical indices of the p+1 facets of the j-th p-simplex, facet k
  /// being the face with vertex k removed.
  std::vector<std::size_t> facet_indices(int p, std::size_t j) const {
    const Simplex& s = simplices_of_dim(p).at(j);
    std::vector<std::size_t> out;
    out.reserve(s.vertices.size());
    for (std::size_t k = 0; k < s.vertices.size(); ++k) out.push_back(*index_of(s.facet(k)));
    return out;
  }

  long euler_characteristic() const {
    long chi = 0;
    for (std::size_t p = 0; p < by_dim_.size(); ++p)
      chi += (p % 2 == 0 ? 1 : -1) * static_cast<long>(by_dim_[p].size());
    return chi;
  }

  /// Maximal simplices in canonical order (by dimension, then lexicographic).
  std::vector<Simplex> facets() const {
    std::vector<Simplex> out;
    for (int p = 0; p <= dimension(); ++p) {
      for (const auto& s : simplices_of_dim(p)) {
        bool maximal = true;
        for (const auto& t : simplices_of_dim(p + 1)) {
          if (std::includes(t.vertices.begin(), t.vertices.end(), s.vertices.begin(), s.vertices.end())) {
            maximal = false;
            break;
          }
        }
        if (maximal) out.push_back(s);
      }
    }
    return out;
  }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.vertex_count_ == b.vertex_count_ && a.by_dim_ == b.by_dim_;
  }

  friend SimplicialComplex build_complex(const std::vector<std::vector<Vertex>>& maximal_simplices);

 private:
  int vertex_count_ = 0;
  std::vector<std::vector<Simplex>> by_dim_;
  std::vector<std::map<std::vector<Vertex>, std::size_t>> index_;
};

/// Face closure of the given simplices. Input order and duplicates are
/// irrelevant. Rejects repeated vertices within a simplex, negative ids, and
/// vertex ids that leave a gap in [0, max].
inline SimplicialComplex build_complex(const std::vector<std::vector<Vertex>>& maximal_simplices) {
  std::vector<std::map<std::vector<Vertex>, std::size_t>> sets;
  Vertex max_vertex = -1;
  for (const auto& raw : maximal_simplices) {
    require(!raw.empty(), ErrorCode::InvalidInput, "empty vertex list");
    std::vector<Vertex> v = raw;
    std::sort(v.begin(), v.end());
    for (std::size_t i = 0; i < v.size(); ++i) {
      require(v[i] >= 0, ErrorCode::InvalidInput, "negative vertex id " + std::to_string(v[i]));
      require(i == 0 || v[i] != v[i - 1], ErrorCode::InvalidInput,
              "repeated vertex " + std::to_string(v[i]) + " in simplex");
    }
    max_vertex = std::max(max_vertex, v.back());
    const std::size_t n = v.size();
    require(n <= 24, ErrorCode::InvalidInput, "simplex dimension too large");
    if (sets.size() < n) sets.resize(n);
    // every non-empty subset is a face
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<Vertex> face;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) face.push_back(v[i]);
      sets[face.size() - 1].emplace(std::move(face), 0);
    }
  }

  SimplicialComplex X;
  X.vertex_count_ = max_vertex + 1;
  if (!sets.empty()) {
    require(static_cast<int>(sets[0].size()) == X.vertex_count_, ErrorCode::InvalidInput,
            "vertex ids must be contiguous from 0");
  }
  X.by_dim_.resize(sets.size());
  X.index_.resize(sets.size());
  for (std::size_t p = 0; p < sets.size(); ++p) {
    std::size_t i = 0;
    for (auto& [verts, idx] : sets[p]) {
      idx = i++;
      X.by_dim_[p].push_back(Simplex{verts});
    }
    X.index_[p] = std::move(sets[p]);
  }
  return X;
}

// Builtin triangulations. Facet lists are reproduced verbatim so they can be
// checked by hand.
namespace builtin_facets {

inline const std::vector<std::vector<Vertex>> circle = {{0, 1}, {1, 2}, {0, 2}};

inline const std::vector<std::vector<Vertex>> sphere2 = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};

// Moebius-Kantor 7-vertex torus: {i, i+1, i+3} and {i, i+2, i+3} mod 7.
inline const std::vector<std::vector<Vertex>> torus7 = {
    {0, 1, 3}, {0, 1, 5}, {0, 2, 3}, {0, 2, 6}, {0, 4, 5}, {0, 4, 6}, {1, 2, 4},
    {1, 2, 6}, {1, 3, 4}, {1, 5, 6}, {2, 3, 5}, {2, 4, 5}, {3, 4, 6}, {3, 5, 6}};

// 6-vertex real projective plane (antipodal quotient of the icosahedron).
inline const std::vector<std::vector<Vertex>> rp2_6 = {
    {0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
    {1, 2, 4}, {1, 3, 4}, {1, 3, 5}, {2, 3, 5}, {2, 4, 5}};

// 3x3 grid on the square with (x+3, y) ~ (x, -y) and (x, y+3) ~ (x, y);
// vertex (x, y) is 3x + y.
inline const std::vector<std::vector<Vertex>> klein = {
    {0, 1, 4}, {0, 1, 8}, {0, 2, 3}, {0, 2, 6}, {0, 3, 4}, {0, 6, 8},
    {1, 2, 5}, {1, 2, 7}, {1, 4, 5}, {1, 7, 8}, {2, 3, 5}, {2, 6, 7},
    {3, 4, 7}, {3, 5, 6}, {3, 6, 7}, {4, 5, 8}, {4, 7, 8}, {5, 6, 8}};

}  // namespace builtin_facets

inline const std::vector<std::string>& builtin_complex_names() {
  static const std::vector<std::string> names = {"circle", "sphere2", "torus7", "rp2_6", "klein"};
  return names;
}

inline SimplicialComplex builtin_complex(std::string_view name) {
  if (name == "circle") return build_complex(builtin_facets::circle);
  if (name == "sphere2") return build_complex(builtin_facets::sphere2);
  if (name == "torus7") return build_complex(builtin_facets::torus7);
  if (name == "rp2_6") return build_complex(builtin_facets::rp2_6);
  if (name == "klein") return build_complex(builtin_facets::klein);
  fail(ErrorCode::InvalidInput, "unknown builtin complex '" + std::string(name) + "'");
}

/// `.cplx` text: one maximal simplex per line, whitespace-separated vertex
/// ids, `#` starts a comment line.
inline SimplicialComplex parse_complex(std::istream& in) {
  std::vector<std::vector<Vertex>> facets;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<Vertex> simplex;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        long v = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        simplex.push_back(static_cast<Vertex>(v));
      } catch (const std::exception&) {
        fail(ErrorCode::Parse, "line " + std::to_string(lineno) + ": bad vertex '" + tok + "'");
      }
    }
    facets.push_back(std::move(simplex));
  }
  if (facets.empty()) fail(ErrorCode::Parse, "complex file has no simplices");
  return build_complex(facets);
}

inline SimplicialComplex load_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Parse, "cannot open complex file '" + path + "'");
  return parse_complex(in);
}

inline void write_complex(std::ostream& out, const SimplicialComplex& X) {
  for (const auto& f : X.facets()) {
    for (std::size_t i = 0; i < f.vertices.size(); ++i) out << (i ? " " : "") << f.vertices[i];
    out << '\n';
  }
}

/// FNV-1a over the canonical simplex enumeration, as 16 hex digits.
inline std::string complex_hash(const SimplicialComplex& X) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  };
  mix(static_cast<std::uint64_t>(X.vertex_count()));
  for (int p = 0; p <= X.dimension(); ++p) {
    mix(0xffffffffull + static_cast<std::uint64_t>(p));
    for (const auto& s : X.simplices_of_dim(p))
      for (Vertex v : s.vertices) mix(static_cast<std::uint64_t>(v));
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return out;
}

}  // namespace obs
