#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "loopalg/complex.hpp"
#include "loopalg/errors.hpp"
#include "loopalg/linalg.hpp"
#include "loopalg/parallel.hpp"
#include "loopalg/poly.hpp"

namespace loopalg {

inline constexpr int kDefaultMaxMissingFaces = 20;

/// Missing faces of K in increasing mask order; a subset of it is a bit mask
/// over these indices.
struct MFCollection {
  std::vector<VertexSubset> elements;

  std::size_t size() const { return elements.size(); }
  VertexSubset union_of(std::uint32_t members) const {
    VertexSubset u;
    for (std::uint32_t b = members; b != 0; b &= b - 1) u = u | elements[std::countr_zero(b)];
    return u;
  }
  /// Members contained in `u`.
  std::uint32_t inside(VertexSubset u) const {
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (elements[i].is_subset_of(u)) out |= std::uint32_t{1} << i;
    }
    return out;
  }
};

inline MFCollection mf_collection(const SimplicialComplex& k) {
  MFCollection mf{missing_faces(k)};
  check_sperner(mf.elements, k.vertex_count());
  return mf;
}

struct SaturatedSet {
  std::uint32_t members = 0;
  VertexSubset union_set;
  std::vector<std::uint32_t> components;

  int size() const { return std::popcount(members); }
  int c() const { return static_cast<int>(components.size()); }
};

namespace detail {

// Connected components of the intersection graph on `members`, each as a
// mask over the same index space, ordered by lowest member.
inline std::vector<std::uint32_t> component_masks(const std::vector<VertexSubset>& elems, std::uint32_t members) {
  std::vector<std::uint32_t> out;
  std::uint32_t left = members;
  while (left != 0) {
    std::uint32_t comp = left & -left;
    VertexSubset reach = elems[std::countr_zero(comp)];
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::uint32_t b = left & ~comp; b != 0; b &= b - 1) {
        const int i = std::countr_zero(b);
        if (elems[i].intersects(reach)) {
          comp |= std::uint32_t{1} << i;
          reach = reach | elems[i];
          grew = true;
        }
      }
    }
    out.push_back(comp);
    left &= ~comp;
  }
  return out;
}

inline bool is_connected(const std::vector<VertexSubset>& elems, std::uint32_t members) {
  return members != 0 && component_masks(elems, members).size() == 1;
}

}  // namespace detail

/// Components of the graph on `s` with an edge whenever two sets meet.
inline std::vector<std::vector<VertexSubset>> intersection_components(const std::vector<VertexSubset>& s) {
  if (s.empty()) throw Error(ErrorKind::EmptySet, "intersection graph of an empty collection");
  if (s.size() > 32) throw Error(ErrorKind::TooLarge, "more than 32 sets");
  const std::uint32_t all = s.size() == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << s.size()) - 1;
  std::vector<std::vector<VertexSubset>> out;
  for (std::uint32_t comp : detail::component_masks(s, all)) {
    std::vector<VertexSubset> part;
    for (std::uint32_t b = comp; b != 0; b &= b - 1) part.push_back(s[std::countr_zero(b)]);
    out.push_back(std::move(part));
  }
  return out;
}

/// Literal saturation test: for every connected T in S, each missing face
/// inside the union of T belongs to S. Exponential in |S|.
inline bool is_saturated(const MFCollection& mf, std::uint32_t members) {
  for (std::uint32_t t = members; t != 0; t = (t - 1) & members) {
    if (!detail::is_connected(mf.elements, t)) continue;
    if ((mf.inside(mf.union_of(t)) & ~members) != 0) return false;
  }
  return true;
}

inline SaturatedSet make_saturated_set(const MFCollection& mf, std::uint32_t members) {
  SaturatedSet s;
  s.members = members;
  s.union_set = mf.union_of(members);
  s.components = detail::component_masks(mf.elements, members);
  return s;
}

/// All non-empty saturated subsets, ordered by (|S|, mask).
///
/// Each component C of a saturated S equals the set of missing faces inside
/// its union, and the unions of the components are disjoint. Conversely any
/// family of pairwise disjoint unions of connected sets of missing faces
/// yields a saturated set. The enumeration walks those families.
inline std::vector<SaturatedSet> saturated_subsets(const MFCollection& mf, int max_mf = kDefaultMaxMissingFaces) {
  if (static_cast<int>(mf.size()) > max_mf || mf.size() > 31) {
    throw Error(ErrorKind::TooLarge, std::to_string(mf.size()) + " missing faces exceed the cap " + std::to_string(max_mf));
  }
  // Unions of connected subsets of MF, grown one intersecting face at a time.
  std::unordered_set<Mask> seen;
  std::vector<Mask> frontier;
  for (VertexSubset e : mf.elements) {
    if (seen.insert(e.bits()).second) frontier.push_back(e.bits());
  }
  while (!frontier.empty()) {
    const Mask u = frontier.back();
    frontier.pop_back();
    for (VertexSubset e : mf.elements) {
      if (!e.intersects(VertexSubset(u)) || e.is_subset_of(VertexSubset(u))) continue;
      const Mask next = u | e.bits();
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  std::vector<Mask> blocks(seen.begin(), seen.end());
  std::sort(blocks.begin(), blocks.end());
  std::vector<std::uint32_t> block_members;
  for (Mask u : blocks) block_members.push_back(mf.inside(VertexSubset(u)));

  std::vector<std::uint32_t> found;
  auto walk = [&](auto&& self, std::size_t start, Mask used, std::uint32_t members) -> void {
    for (std::size_t i = start; i < blocks.size(); ++i) {
      if (blocks[i] & used) continue;
      const std::uint32_t next = members | block_members[i];
      found.push_back(next);
      self(self, i + 1, used | blocks[i], next);
    }
  };
  walk(walk, 0, 0, 0);

  std::sort(found.begin(), found.end(), [](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a);
    const int pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  std::vector<SaturatedSet> out;
  out.reserve(found.size());
  for (std::uint32_t members : found) out.push_back(make_saturated_set(mf, members));
  return out;
}

/// Berglund's complex on the vertex set S (vertex i+1 is the i-th member of
/// S): R is a face iff it does not cover the union of S, or meets some
/// component of S in a disconnected collection.
inline SimplicialComplex delta_prime(const MFCollection& mf, const SaturatedSet& s) {
  if (s.members == 0) throw Error(ErrorKind::EmptySet, "Berglund complex of an empty set");
  std::vector<VertexSubset> elems;
  for (std::uint32_t b = s.members; b != 0; b &= b - 1) elems.push_back(mf.elements[std::countr_zero(b)]);
  const int n = static_cast<int>(elems.size());
  std::vector<std::uint32_t> comps;
  for (std::uint32_t comp : s.components) comps.push_back(compress(comp, s.members));

  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<Mask> unions(total, 0);
  std::vector<Mask> faces;
  for (std::uint64_t r = 0; r < total; ++r) {
    const auto rm = static_cast<std::uint32_t>(r);
    if (rm != 0) unions[r] = unions[rm & (rm - 1)] | elems[std::countr_zero(rm)].bits();
    bool face = unions[r] != s.union_set.bits();
    for (std::size_t i = 0; !face && i < comps.size(); ++i) {
      if (!detail::is_connected(elems, rm & comps[i])) face = true;
    }
    if (face) faces.push_back(rm);
  }
  return SimplicialComplex(n, faces);
}

/// Convenience overload for an explicit collection of missing faces of K.
inline SimplicialComplex delta_prime(const SimplicialComplex& k, const std::vector<VertexSubset>& s) {
  const MFCollection mf = mf_collection(k);
  std::uint32_t members = 0;
  for (VertexSubset e : s) {
    auto it = std::find(mf.elements.begin(), mf.elements.end(), e);
    if (it == mf.elements.end()) throw Error(ErrorKind::InvalidInput, to_string(e) + " is not a missing face");
    members |= std::uint32_t{1} << (it - mf.elements.begin());
  }
  return delta_prime(mf, make_saturated_set(mf, members));
}

/// Contribution (-z)^(c(S)+2) F(H~(Δ'_S; k); z) of one saturated set.
inline LaurentPoly berglund_term(const MFCollection& mf, const SaturatedSet& s, const FieldSpec& field) {
  const LaurentPoly f = homology_series(reduced_homology(delta_prime(mf, s), field));
  const int e = s.c() + 2;
  return LaurentPoly::monomial(e % 2 == 0 ? 1 : -1, e) * f;
}

/// b_{K_J,k}(z) for every J in [m], indexed by the mask of J.
struct BBTable {
  int m = 0;
  FieldSpec field = FieldSpec::rational();
  std::vector<LaurentPoly> by_subset;

  const LaurentPoly& operator[](VertexSubset j) const { return by_subset[j.bits()]; }
  const LaurentPoly& operator[](Mask j) const { return by_subset[j]; }
  friend bool operator==(const BBTable& a, const BBTable& b) { return a.m == b.m && a.by_subset == b.by_subset; }
};

struct BerglundOptions {
  int max_mf = kDefaultMaxMissingFaces;
  int jobs = 1;
};

inline void check_bb_table(const BBTable& t) {
  require(t.by_subset[0] == LaurentPoly::constant(1), "b of the empty subcomplex must be 1");
  for (std::size_t j = 1; j < t.by_subset.size(); ++j) {
    const LaurentPoly& b = t.by_subset[j];
    if (b.is_zero()) continue;
    require(b.min_degree() >= 1, "b-polynomial with constant or negative-degree term");
    require(b.max_degree() <= std::popcount(static_cast<Mask>(j)), "b-polynomial degree exceeds |J|");
  }
}

inline BBTable bb_table(const SimplicialComplex& k, const FieldSpec& field, const BerglundOptions& opt = {}) {
  const MFCollection mf = mf_collection(k);
  const auto sats = saturated_subsets(mf, opt.max_mf);
  const auto terms = parallel_map(sats.size(), opt.jobs, [&](std::size_t i) { return berglund_term(mf, sats[i], field); });
  BBTable t;
  t.m = k.vertex_count();
  t.field = field;
  t.by_subset.assign(std::size_t{1} << t.m, LaurentPoly());
  t.by_subset[0] = LaurentPoly::constant(1);
  for (std::size_t i = 0; i < sats.size(); ++i) t.by_subset[sats[i].union_set.bits()] += terms[i];
  check_bb_table(t);
  return t;
}

/// b_{K,k}(z) for J = [m]; 1 for the complex {∅}.
inline LaurentPoly bb_polynomial(const SimplicialComplex& k, const FieldSpec& field, const BerglundOptions& opt = {}) {
  if (k.vertex_count() == 0) return LaurentPoly::constant(1);
  const MFCollection mf = mf_collection(k);
  const auto sats = saturated_subsets(mf, opt.max_mf);
  LaurentPoly b;
  for (const auto& s : sats) {
    if (s.union_set == k.vertices()) b += berglund_term(mf, s, field);
  }
  return b;
}

/// z^size * b(1/z).
inline LaurentPoly reflect(const LaurentPoly& b, int size) {
  if (b.is_zero()) return b;
  if (b.min_degree() < 0 || b.max_degree() > size) {
    throw Error(ErrorKind::DegreeTooHigh, b.to_string() + " cannot be reflected at size " + std::to_string(size));
  }
  LaurentPoly out;
  for (const auto& [d, c] : b.terms()) out.add_term(size - d, c);
  return out;
}

/// Table of reflected polynomials b^_{K_J}(t) = t^|J| b_{K_J}(1/t).
inline BBTable reflect_table(const BBTable& t) {
  BBTable out = t;
  for (std::size_t j = 0; j < t.by_subset.size(); ++j) {
    out.by_subset[j] = reflect(t.by_subset[j], std::popcount(static_cast<Mask>(j)));
  }
  return out;
}

/// Reflected table of a flag complex: the constants 1 - χ(K_J).
inline BBTable flag_bb_table(const SimplicialComplex& k) {
  if (!is_flag(k)) throw Error(ErrorKind::NotFlag, "complex has a missing face of size > 2");
  BBTable t;
  t.m = k.vertex_count();
  t.by_subset.resize(std::size_t{1} << t.m);
  for (std::size_t j = 0; j < t.by_subset.size(); ++j) {
    const auto sub = full_subcomplex(k, VertexSubset(static_cast<Mask>(j)));
    t.by_subset[j] = LaurentPoly::constant(1 - euler_char(sub));
  }
  return t;
}

/// Primes that can make b_{K_J,F_p} differ from b_{K_J,Q}: the union of
/// integral torsion primes of every Δ'_S. A superset of the loop-space
/// torsion primes of the moment-angle complex, not claimed to be tight.
inline PrimeSet bad_primes(const SimplicialComplex& k, const BerglundOptions& opt = {}) {
  const MFCollection mf = mf_collection(k);
  const auto sats = saturated_subsets(mf, opt.max_mf);
  const auto per_set = parallel_map(sats.size(), opt.jobs, [&](std::size_t i) { return integral_torsion_primes(delta_prime(mf, sats[i])); });
  PrimeSet out;
  for (const auto& p : per_set) out.insert(p.begin(), p.end());
  return out;
}

}  // namespace loopalg
