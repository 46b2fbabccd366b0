#pragma once

#include <random>
#include <vector>

#include "loopalg/complex.hpp"

namespace loopalg::testing {

inline SimplicialComplex make(int m, std::vector<std::vector<int>> facets) { return validate(facets, m); }

/// Every downward-closed family on [m] with all singletons present, by brute
/// force over antichains of non-singleton sets.
inline std::vector<SimplicialComplex> all_complexes(int m) {
  std::vector<SimplicialComplex> out;
  const Mask n = Mask{1} << m;
  std::vector<Mask> big;  // subsets of size >= 2
  for (Mask s = 0; s < n; ++s) {
    if (std::popcount(s) >= 2) big.push_back(s);
  }
  // Enumerate downward-closed families of big sets recursively in mask order.
  std::vector<bool> in(n, false);
  for (Mask s = 0; s < n; ++s) {
    if (std::popcount(s) <= 1) in[s] = true;
  }
  auto closed_to_add = [&](Mask s) {
    for (Mask b = s; b != 0; b &= b - 1) {
      if (!in[s & ~(b & (~b + 1))]) return false;
    }
    return true;
  };
  // Process big sets in increasing popcount then mask, so all facets of s
  // have been decided before s.
  std::sort(big.begin(), big.end(), [](Mask a, Mask b) {
    return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b;
  });
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == big.size()) {
      std::vector<Mask> faces;
      for (Mask s = 0; s < n; ++s) {
        if (in[s]) faces.push_back(s);
      }
      out.emplace_back(m, faces);
      return;
    }
    self(self, i + 1);
    if (closed_to_add(big[i])) {
      in[big[i]] = true;
      self(self, i + 1);
      in[big[i]] = false;
    }
  };
  rec(rec, 0);
  return out;
}

/// Random complex on [m] without ghosts: closure of random facets plus singletons.
inline SimplicialComplex random_complex(int m, std::mt19937_64& rng) {
  std::vector<Mask> gens;
  for (int v = 0; v < m; ++v) gens.push_back(Mask{1} << v);
  std::uniform_int_distribution<Mask> pick(1, (Mask{1} << m) - 1);
  std::uniform_int_distribution<int> count(0, 2 * m);
  const int k = count(rng);
  for (int i = 0; i < k; ++i) gens.push_back(pick(rng));
  return SimplicialComplex(m, gens);
}

/// Clique complex of a random graph on [m].
inline SimplicialComplex random_flag_complex(int m, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution edge(p);
  std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) adj[a][b] = adj[b][a] = edge(rng);
  }
  std::vector<Mask> cliques;
  for (Mask s = 1; s < (Mask{1} << m); ++s) {
    bool clique = true;
    for (int a = 0; a < m && clique; ++a) {
      for (int b = a + 1; b < m && clique; ++b) {
        if (((s >> a) & 1) && ((s >> b) & 1) && !adj[a][b]) clique = false;
      }
    }
    if (clique) cliques.push_back(s);
  }
  return SimplicialComplex(m, cliques);
}

/// Minimal 6-vertex triangulation of the real projective plane.
inline SimplicialComplex projective_plane() {
  return make(6, {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6}, {2, 3, 5}, {2, 4, 5}, {2, 4, 6}, {3, 4, 6}, {3, 5, 6}});
}

}  // namespace loopalg::testing
