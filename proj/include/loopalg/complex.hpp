#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "loopalg/errors.hpp"

namespace loopalg {

using Mask = std::uint32_t;

// Largest vertex count accepted by default; subset enumeration is 2^m.
inline constexpr int kDefaultMaxVertices = 24;
inline constexpr int kHardMaxVertices = 30;

/// A subset J of the vertex set [m]. Bit i-1 stands for vertex i.
class VertexSubset {
 public:
  constexpr VertexSubset() = default;
  constexpr explicit VertexSubset(Mask bits) : bits_(bits) {}

  static VertexSubset of(std::initializer_list<int> vertices) {
    Mask bits = 0;
    for (int v : vertices) bits |= Mask{1} << (v - 1);
    return VertexSubset(bits);
  }

  static constexpr VertexSubset full(int m) {
    return VertexSubset(m >= 32 ? ~Mask{0} : (Mask{1} << m) - 1);
  }

  constexpr Mask bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int vertex) const { return (bits_ >> (vertex - 1)) & 1u; }
  constexpr bool is_subset_of(VertexSubset other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(VertexSubset other) const { return (bits_ & other.bits_) != 0; }

  std::vector<int> vertices() const {
    std::vector<int> out;
    for (Mask b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
    return out;
  }

  friend constexpr VertexSubset operator|(VertexSubset a, VertexSubset b) { return VertexSubset(a.bits_ | b.bits_); }
  friend constexpr VertexSubset operator&(VertexSubset a, VertexSubset b) { return VertexSubset(a.bits_ & b.bits_); }
  friend constexpr VertexSubset operator-(VertexSubset a, VertexSubset b) { return VertexSubset(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(VertexSubset, VertexSubset) = default;
  friend constexpr auto operator<=>(VertexSubset, VertexSubset) = default;

 private:
  Mask bits_ = 0;
};

inline std::string to_string(VertexSubset s) {
  std::string out = "{";
  bool first = true;
  for (int v : s.vertices()) {
    if (!first) out += ",";
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

/// Simplicial complex on the vertex set [m], stored as a bitmap over all
/// 2^m subsets. Immutable after construction.
///
/// Complexes built from user input never have ghost vertices (see
/// validate()). Auxiliary complexes (links, Berglund's complexes on sets of
/// missing faces) may have ghosts, which do not change homology.
class SimplicialComplex {
 public:
  /// The complex {∅} on zero vertices.
  SimplicialComplex() : SimplicialComplex(0, std::vector<Mask>{0}) {}

  /// Downward closure of `generators` on [m]. Labels default to 1..m.
  SimplicialComplex(int m, const std::vector<Mask>& generators) : m_(m) {
    if (m < 0 || m > kHardMaxVertices) {
      throw Error(ErrorKind::TooLarge, "vertex count " + std::to_string(m) + " outside [0, " +
                                           std::to_string(kHardMaxVertices) + "]");
    }
    const std::uint64_t n = std::uint64_t{1} << m;
    words_.assign((n + 63) / 64, 0);
    const Mask limit = VertexSubset::full(m).bits();
    for (Mask g : generators) {
      if ((g & ~limit) != 0) throw Error(ErrorKind::OutOfRange, "face outside vertex set");
      set(g);
    }
    set(0);
    // Closure: each subset of a face is a face, one vertex at a time.
    for (int b = 0; b < m; ++b) {
      const Mask bit = Mask{1} << b;
      for (std::uint64_t s = 0; s < n; ++s) {
        if ((s & bit) && test(static_cast<Mask>(s))) set(static_cast<Mask>(s) ^ bit);
      }
    }
    labels_.resize(m);
    std::iota(labels_.begin(), labels_.end(), 1);
    for (std::uint64_t s = 0; s < n; ++s) {
      const Mask f = static_cast<Mask>(s);
      if (!test(f)) continue;
      bool maximal = true;
      for (int b = 0; b < m && maximal; ++b) {
        const Mask bit = Mask{1} << b;
        if (!(f & bit) && test(f | bit)) maximal = false;
      }
      if (maximal) facets_.push_back(f);
    }
  }

  static SimplicialComplex simplex(int m) { return SimplicialComplex(m, {VertexSubset::full(m).bits()}); }

  static SimplicialComplex simplex_boundary(int m) {
    std::vector<Mask> gens;
    for (int i = 0; i < m; ++i) gens.push_back(VertexSubset::full(m).bits() & ~(Mask{1} << i));
    return SimplicialComplex(m, gens);
  }

  static SimplicialComplex discrete(int m) {
    std::vector<Mask> gens;
    for (int i = 0; i < m; ++i) gens.push_back(Mask{1} << i);
    return SimplicialComplex(m, gens);
  }

  /// Cycle graph 1-2-...-m-1 (m >= 3).
  static SimplicialComplex cycle(int m) {
    std::vector<Mask> gens;
    for (int i = 0; i < m; ++i) gens.push_back((Mask{1} << i) | (Mask{1} << ((i + 1) % m)));
    return SimplicialComplex(m, gens);
  }

  int vertex_count() const { return m_; }
  VertexSubset vertices() const { return VertexSubset::full(m_); }
  const std::vector<Mask>& facets() const { return facets_; }

  bool is_face(VertexSubset s) const {
    return s.is_subset_of(vertices()) && test(s.bits());
  }
  bool is_face(Mask s) const { return is_face(VertexSubset(s)); }

  /// Original vertex labels; differs from 1..m after restriction or relabelling.
  const std::vector<int>& labels() const { return labels_; }

  /// All faces, including ∅, in increasing mask order.
  std::vector<VertexSubset> faces() const {
    std::vector<VertexSubset> out;
    const std::uint64_t n = std::uint64_t{1} << m_;
    for (std::uint64_t s = 0; s < n; ++s) {
      if (test(static_cast<Mask>(s))) out.emplace_back(static_cast<Mask>(s));
    }
    return out;
  }

  /// Faces with `dim + 1` vertices (dim = -1 gives {∅}), increasing mask order.
  std::vector<Mask> faces_of_dim(int dim) const {
    std::vector<Mask> out;
    const std::uint64_t n = std::uint64_t{1} << m_;
    for (std::uint64_t s = 0; s < n; ++s) {
      const Mask f = static_cast<Mask>(s);
      if (std::popcount(f) == dim + 1 && test(f)) out.push_back(f);
    }
    return out;
  }

  std::uint64_t face_count() const {
    std::uint64_t count = 0;
    for (std::uint64_t w : words_) count += std::popcount(w);
    return count;
  }

  int dimension() const {
    int d = -1;
    for (Mask f : facets_) d = std::max(d, std::popcount(f) - 1);
    return d;
  }

  std::vector<int> ghost_vertices() const {
    std::vector<int> out;
    for (int i = 1; i <= m_; ++i) {
      if (!test(Mask{1} << (i - 1))) out.push_back(i);
    }
    return out;
  }

  SimplicialComplex with_labels(std::vector<int> labels) const {
    SimplicialComplex copy = *this;
    copy.labels_ = std::move(labels);
    return copy;
  }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.m_ == b.m_ && a.words_ == b.words_;
  }

 private:
  bool test(Mask s) const { return (words_[s >> 6] >> (s & 63)) & 1u; }
  void set(Mask s) { words_[s >> 6] |= std::uint64_t{1} << (s & 63); }

  int m_ = 0;
  std::vector<std::uint64_t> words_;
  std::vector<Mask> facets_;
  std::vector<int> labels_;
};

/// Build a complex from user facets with 1-based labels, rejecting ghost
/// vertices and labels outside 1..m.
inline SimplicialComplex validate(const std::vector<std::vector<int>>& raw_facets, int m,
                                  int max_vertices = kDefaultMaxVertices) {
  if (m < 0) throw Error(ErrorKind::InvalidInput, "negative vertex count");
  if (m > max_vertices) {
    throw Error(ErrorKind::TooLarge, "m = " + std::to_string(m) + " exceeds the vertex cap " +
                                         std::to_string(max_vertices));
  }
  std::vector<Mask> gens;
  gens.reserve(raw_facets.size());
  for (const auto& facet : raw_facets) {
    Mask bits = 0;
    for (int v : facet) {
      if (v < 1 || v > m) {
        throw Error(ErrorKind::OutOfRange, "vertex label " + std::to_string(v) + " outside 1.." + std::to_string(m));
      }
      bits |= Mask{1} << (v - 1);
    }
    gens.push_back(bits);
  }
  SimplicialComplex complex(m, gens);
  const auto ghosts = complex.ghost_vertices();
  if (!ghosts.empty()) throw Error(ErrorKind::GhostVertex, "vertex " + std::to_string(ghosts.front()) + " spans no face");
  return complex;
}

/// Map a mask over [m] to a mask over [|J|] by keeping only the bits of J, in order.
inline Mask compress(Mask s, Mask j) {
  Mask out = 0;
  int pos = 0;
  for (Mask b = j; b != 0; b &= b - 1, ++pos) {
    if (s & (b & -b)) out |= Mask{1} << pos;
  }
  return out;
}

/// Inverse of compress(): spread the low |J| bits of `s` onto the positions of J.
inline Mask expand(Mask s, Mask j) {
  Mask out = 0;
  int pos = 0;
  for (Mask b = j; b != 0; b &= b - 1, ++pos) {
    if ((s >> pos) & 1u) out |= (b & -b);
  }
  return out;
}

/// Full subcomplex K_J, relabelled onto 1..|J|; labels() keeps the original names.
inline SimplicialComplex full_subcomplex(const SimplicialComplex& k, VertexSubset j) {
  std::vector<Mask> gens;
  for (Mask f : k.facets()) gens.push_back(compress(f & j.bits(), j.bits()));
  SimplicialComplex sub(j.size(), gens);
  std::vector<int> labels;
  for (int v : j.vertices()) labels.push_back(k.labels()[v - 1]);
  return sub.with_labels(std::move(labels));
}

/// Minimal non-faces, increasing mask order.
inline std::vector<VertexSubset> missing_faces(const SimplicialComplex& k) {
  std::vector<VertexSubset> out;
  const int m = k.vertex_count();
  const std::uint64_t n = std::uint64_t{1} << m;
  for (std::uint64_t s = 1; s < n; ++s) {
    const Mask f = static_cast<Mask>(s);
    if (k.is_face(f)) continue;
    bool minimal = true;
    for (Mask b = f; b != 0 && minimal; b &= b - 1) {
      if (!k.is_face(f ^ (b & -b))) minimal = false;
    }
    if (minimal) out.emplace_back(f);
  }
  return out;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

/// Sperner: an antichain in 2^[m] has at most C(m, floor(m/2)) members.
inline void check_sperner(const std::vector<VertexSubset>& mf, int m) {
  require(mf.size() <= binomial(m, m / 2), "missing faces exceed the Sperner bound");
}

inline bool is_flag(const SimplicialComplex& k) {
  for (VertexSubset f : missing_faces(k)) {
    if (f.size() != 2) return false;
  }
  return true;
}

inline bool is_k_neighbourly(const SimplicialComplex& k, int order) {
  if (order < 0) throw Error(ErrorKind::InvalidInput, "neighbourliness order must be non-negative");
  const std::uint64_t n = std::uint64_t{1} << k.vertex_count();
  for (std::uint64_t s = 0; s < n; ++s) {
    const Mask f = static_cast<Mask>(s);
    if (std::popcount(f) == order + 1 && !k.is_face(f)) return false;
  }
  return true;
}

/// Non-reduced Euler characteristic over non-empty faces; 0 for {∅}.
inline long long euler_char(const SimplicialComplex& k) {
  long long chi = 0;
  for (VertexSubset f : k.faces()) {
    if (f.empty()) continue;
    chi += (f.size() % 2 == 1) ? 1 : -1;
  }
  return chi;
}

/// link_K(i) on the vertex set [m] \ i. Vertices not adjacent to i are ghosts.
inline SimplicialComplex link(const SimplicialComplex& k, int vertex) {
  const Mask bit = Mask{1} << (vertex - 1);
  const Mask rest = k.vertices().bits() & ~bit;
  std::vector<Mask> gens;
  for (Mask f : k.facets()) {
    if (f & bit) gens.push_back(compress(f & ~bit, rest));
  }
  SimplicialComplex out(k.vertex_count() - 1, gens);
  std::vector<int> labels;
  for (int v : VertexSubset(rest).vertices()) labels.push_back(k.labels()[v - 1]);
  return out.with_labels(std::move(labels));
}

/// K \ i, the full subcomplex on [m] \ i.
inline SimplicialComplex deletion(const SimplicialComplex& k, int vertex) {
  return full_subcomplex(k, k.vertices() - VertexSubset::of({vertex}));
}

}  // namespace loopalg
