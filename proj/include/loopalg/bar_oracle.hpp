#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loopalg/berglund.hpp"
#include "loopalg/complex.hpp"
#include "loopalg/linalg.hpp"
#include "loopalg/parallel.hpp"
#include "loopalg/poly.hpp"

// Brute-force b-polynomials straight from the bar construction of the
// Stanley-Reisner ring, restricted to squarefree multidegrees. Shares only
// the linear algebra with the Berglund path.

namespace loopalg {

inline constexpr int kDefaultOracleCap = 6;

/// One basis element [a1|...|an] of the normalized bar complex.
using BarWord = std::vector<Mask>;

/// Ordered partitions of J into n non-empty faces of K, in lexicographic
/// order of the block masks.
inline std::vector<BarWord> bar_basis(const SimplicialComplex& k, VertexSubset j, int n) {
  std::vector<BarWord> out;
  BarWord word;
  auto rec = [&](auto&& self, Mask rest, int left) -> void {
    if (left == 0) {
      if (rest == 0) out.push_back(word);
      return;
    }
    if (std::popcount(rest) < left) return;
    // Increasing order over the non-empty submasks of rest.
    std::vector<Mask> subs;
    for (Mask a = rest; a != 0; a = (a - 1) & rest) subs.push_back(a);
    for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
      if (!k.is_face(*it)) continue;
      word.push_back(*it);
      self(self, rest & ~*it, left - 1);
      word.pop_back();
    }
  };
  if (n >= 1) rec(rec, j.bits(), n);
  return out;
}

/// Differential from degree n to degree n-1: merge blocks t and t+1 with
/// sign (-1)^t; merges that are not faces vanish in k[K].
inline SparseMatrix bar_differential(const SimplicialComplex& k, const std::vector<BarWord>& source,
                                     const std::vector<BarWord>& target) {
  std::map<BarWord, int> index;
  for (std::size_t i = 0; i < target.size(); ++i) index.emplace(target[i], static_cast<int>(i));
  SparseMatrix d(static_cast<int>(target.size()), static_cast<int>(source.size()));
  for (std::size_t c = 0; c < source.size(); ++c) {
    const BarWord& w = source[c];
    std::map<int, std::int64_t> column;
    for (std::size_t t = 0; t + 1 < w.size(); ++t) {
      const Mask merged = w[t] | w[t + 1];
      if (!k.is_face(merged)) continue;
      BarWord image;
      image.insert(image.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(t));
      image.push_back(merged);
      image.insert(image.end(), w.begin() + static_cast<std::ptrdiff_t>(t) + 2, w.end());
      const auto it = index.find(image);
      require(it != index.end(), "bar differential leaves the basis");
      column[it->second] += ((t + 1) % 2 == 0) ? 1 : -1;
    }
    for (const auto& [r, v] : column) {
      if (v != 0) d.columns[c].emplace_back(r, v);
    }
  }
  return d;
}

inline SparseMatrix bar_differential(const SimplicialComplex& k, VertexSubset j, int n) {
  return bar_differential(k, bar_basis(k, j, n), bar_basis(k, j, n - 1));
}

namespace detail {

inline void check_square_zero(const SparseMatrix& outer, const SparseMatrix& inner) {
  for (const auto& col : inner.columns) {
    std::map<int, std::int64_t> acc;
    for (const auto& [mid, v] : col) {
      for (const auto& [r, w] : outer.columns[mid]) acc[r] += v * w;
    }
    for (const auto& [r, v] : acc) require(v == 0, "bar differential does not square to zero");
  }
}

}  // namespace detail

/// dim Tor^{k[K]}_{n,2J}(k,k) for n = 0..|J|, zeros omitted.
inline std::map<int, std::uint64_t> tor_dims(const SimplicialComplex& k, VertexSubset j, const FieldSpec& field) {
  std::map<int, std::uint64_t> out;
  if (j.empty()) {
    out[0] = 1;
    return out;
  }
  const int top = j.size();
  std::vector<std::vector<BarWord>> basis(static_cast<std::size_t>(top) + 2);
  for (int n = 1; n <= top; ++n) basis[n] = bar_basis(k, j, n);
  // d[n]: degree n -> n-1; d[1] and d[top+1] are zero maps.
  std::vector<SparseMatrix> d(static_cast<std::size_t>(top) + 2);
  std::vector<std::size_t> rank(static_cast<std::size_t>(top) + 2, 0);
  for (int n = 2; n <= top; ++n) {
    d[n] = bar_differential(k, basis[n], basis[n - 1]);
    rank[n] = rank_over_field(d[n], field);
  }
  for (int n = 3; n <= top; ++n) detail::check_square_zero(d[n - 1], d[n]);
  for (int n = 1; n <= top; ++n) {
    const std::uint64_t dim = basis[n].size() - rank[n] - rank[n + 1];
    if (dim != 0) out[n] = dim;
  }
  return out;
}

/// Squarefree part of the bigraded Tor Poincaré series, by subset.
struct TorProfile {
  std::vector<std::map<int, std::uint64_t>> per_subset;
};

inline TorProfile tor_profile(const SimplicialComplex& k, const FieldSpec& field, int jobs = 1) {
  const std::size_t n = std::size_t{1} << k.vertex_count();
  TorProfile p;
  p.per_subset = parallel_map(n, jobs, [&](std::size_t j) { return tor_dims(k, VertexSubset(static_cast<Mask>(j)), field); });
  return p;
}

/// b-table from Tor dimensions alone: invert P over squarefree monomials,
/// then multiply by prod (1 + x_i z).
inline BBTable oracle_bb_table(const SimplicialComplex& k, const FieldSpec& field, int oracle_cap = kDefaultOracleCap,
                               int jobs = 1) {
  if (k.vertex_count() > oracle_cap) {
    throw Error(ErrorKind::TooLarge, "oracle limited to " + std::to_string(oracle_cap) + " vertices");
  }
  const TorProfile tor = tor_profile(k, field, jobs);
  const std::size_t n = tor.per_subset.size();
  std::vector<LaurentPoly> g(n);
  for (std::size_t j = 1; j < n; ++j) {
    for (const auto& [deg, dim] : tor.per_subset[j]) g[j].add_term(deg, BigInt(dim));
  }
  std::vector<LaurentPoly> h(n);
  h[0] = LaurentPoly::constant(1);
  for (Mask j = 1; j < n; ++j) {
    LaurentPoly acc;
    for (Mask a = j; a != 0; a = (a - 1) & j) acc += g[a] * h[j & ~a];
    h[j] = -acc;
  }
  BBTable t;
  t.m = k.vertex_count();
  t.field = field;
  t.by_subset.resize(n);
  for (Mask j = 0; j < n; ++j) {
    LaurentPoly b = h[j];
    for (Mask l = j; l != 0; l = (l - 1) & j) b += LaurentPoly::monomial(1, std::popcount(l)) * h[j & ~l];
    t.by_subset[j] = std::move(b);
  }
  return t;
}

struct VerifyResult {
  bool ok = true;
  std::string discrepancy;
  std::optional<VertexSubset> subset;
  std::optional<int> degree;
};

/// Compare the Berglund table against the bar oracle, reporting the first
/// differing (J, degree).
inline VerifyResult verify(const SimplicialComplex& k, const FieldSpec& field, int oracle_cap = kDefaultOracleCap,
                           const BerglundOptions& opt = {}) {
  const BBTable fast = bb_table(k, field, opt);
  const BBTable slow = oracle_bb_table(k, field, oracle_cap, opt.jobs);
  VerifyResult r;
  for (std::size_t j = 0; j < fast.by_subset.size(); ++j) {
    const LaurentPoly& a = fast.by_subset[j];
    const LaurentPoly& b = slow.by_subset[j];
    if (a == b) continue;
    const LaurentPoly diff = a - b;
    r.ok = false;
    r.subset = VertexSubset(static_cast<Mask>(j));
    r.degree = diff.min_degree();
    r.discrepancy = "J=" + to_string(*r.subset) + " degree " + std::to_string(*r.degree) + ": berglund " +
                    a.to_string() + " vs oracle " + b.to_string();
    break;
  }
  return r;
}

}  // namespace loopalg
