#pragma once

#include <boost/multiprecision/integer.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "loopalg/berglund.hpp"
#include "loopalg/bounds.hpp"
#include "loopalg/complex.hpp"
#include "loopalg/errors.hpp"
#include "loopalg/linalg.hpp"
#include "loopalg/parallel.hpp"
#include "loopalg/series.hpp"

namespace loopalg {

/// Rational simplicial fan (K, A): primitive rays a_1..a_m in Z^n and the
/// complex of cones. The pairwise cone-intersection condition is assumed.
struct Fan {
  int n = 0;
  std::vector<std::vector<long long>> rays;
  SimplicialComplex k;

  int m() const { return static_cast<int>(rays.size()); }

  /// Columns of A indexed by I (n x |I|).
  IntMatrix submatrix(Mask cols) const {
    const auto idx = VertexSubset(cols).vertices();
    IntMatrix a(n, static_cast<int>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) {
      for (int r = 0; r < n; ++r) a.at(r, static_cast<int>(c)) = rays[idx[c] - 1][r];
    }
    return a;
  }
  IntMatrix matrix() const { return submatrix(VertexSubset::full(m()).bits()); }
};

inline Fan make_fan(int n, const std::vector<std::vector<long long>>& rays, const std::vector<std::vector<int>>& cones,
                    int max_vertices = kDefaultMaxVertices) {
  if (n < 0) throw Error(ErrorKind::InvalidInput, "lattice rank must be non-negative");
  Fan f;
  f.n = n;
  f.rays = rays;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (static_cast<int>(rays[i].size()) != n) {
      throw Error(ErrorKind::InvalidInput, "ray " + std::to_string(i + 1) + " does not have " + std::to_string(n) + " entries");
    }
    BigInt g = 0;
    for (long long v : rays[i]) g = boost::multiprecision::gcd(g, BigInt(v < 0 ? -v : v));
    if (g != 1) throw Error(ErrorKind::NonPrimitiveRay, "ray " + std::to_string(i + 1) + " is not primitive");
  }
  f.k = validate(cones, static_cast<int>(rays.size()), max_vertices);
  // Independence on facets implies it on every face.
  for (Mask facet : f.k.facets()) {
    if (rank_over_field(f.submatrix(facet), FieldSpec::rational()) != static_cast<std::size_t>(std::popcount(facet))) {
      throw Error(ErrorKind::DependentCone, "rays of cone " + to_string(VertexSubset(facet)) + " are linearly dependent");
    }
  }
  return f;
}

/// Fan JSON: {"n": int, "rays": [[int,...],...], "cones": [[ray,...],...]},
/// rays numbered from 1, cones are the facets of K.
inline Fan parse_fan(const nlohmann::json& j, int max_vertices = kDefaultMaxVertices) {
  try {
    const int n = j.at("n").get<int>();
    const auto rays = j.at("rays").get<std::vector<std::vector<long long>>>();
    const auto cones = j.at("cones").get<std::vector<std::vector<int>>>();
    return make_fan(n, rays, cones, max_vertices);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed fan: ") + e.what());
  }
}

/// N/N_Σ = coker A: non-unit invariant factors followed by one 0 per free
/// summand. Empty exactly when the rays generate N.
struct Pi1Data {
  std::vector<BigInt> invariants;
  int free_rank = 0;
  int rank = 0;  // rank of A
  std::vector<std::string> warnings;

  bool trivial() const { return invariants.empty(); }
};

inline Pi1Data pi1_data(const Fan& f) {
  Pi1Data d;
  for (const BigInt& x : smith_normal_form(f.matrix())) {
    if (x == 0) continue;
    ++d.rank;
    if (x != 1) d.invariants.push_back(x);
  }
  d.free_rank = f.n - d.rank;
  for (int i = 0; i < d.free_rank; ++i) d.invariants.push_back(0);
  if (d.free_rank > 0) {
    d.warnings.push_back("rays do not span N (rank " + std::to_string(d.rank) + " < " + std::to_string(f.n) +
                         "): X_Σ splits off a torus factor (C^x)^" + std::to_string(d.free_rank) + ", not computed");
  }
  return d;
}

inline std::vector<BigInt> pi1_invariants(const Fan& f) { return pi1_data(f).invariants; }

namespace detail {

// Invariant factors of N/N_I for every non-empty face I, in mask order.
inline std::vector<std::vector<BigInt>> face_invariants(const Fan& f, int jobs) {
  std::vector<Mask> faces;
  for (VertexSubset s : f.k.faces()) {
    if (!s.empty()) faces.push_back(s.bits());
  }
  return parallel_map(faces.size(), jobs, [&](std::size_t i) {
    auto snf = smith_normal_form(f.submatrix(faces[i]));
    for (const BigInt& x : snf) require(x != 0, "cone with dependent rays");
    return snf;
  });
}

}  // namespace detail

/// P_Σ: primes dividing |Tors N/N_I| over all faces I (not just facets).
inline PrimeSet stabiliser_primes(const Fan& f, int jobs = 1) {
  PrimeSet out;
  for (const auto& snf : detail::face_invariants(f, jobs)) {
    for (const BigInt& x : snf) {
      if (x > 1) {
        const PrimeSet ps = prime_factors(x);
        out.insert(ps.begin(), ps.end());
      }
    }
  }
  return out;
}

/// Every N_I is a direct summand of N.
inline bool is_smooth(const Fan& f, int jobs = 1) {
  for (const auto& snf : detail::face_invariants(f, jobs)) {
    for (const BigInt& x : snf) {
      if (x != 1) return false;
    }
  }
  return true;
}

struct OrbifoldReport {
  bool simply_connected = true;
  std::vector<BigInt> pi1_invariants;
  int free_rank = 0;
  PrimeSet p_sigma;
  std::optional<bool> smooth;  // unknown for partial quotients given by K alone
  PrimeProvenance anick_primes;
  LaurentPoly inv_series;      // 1/F(H_*(ΩZ_K;Q);t)
  SphereExponents decomposition;
  int pi2_rank = 0;
  std::optional<std::string> discrete_factor;  // N/N_Σ on the universal-cover path
  std::string homotopy_line;
  std::vector<std::string> notes;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::string group_text(const std::vector<BigInt>& invariants) {
  if (invariants.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < invariants.size(); ++i) {
    if (i) out += " + ";
    out += invariants[i] == 0 ? "Z" : "Z/" + invariants[i].str();
  }
  return out;
}

inline std::string prime_set_text(const PrimeSet& ps) {
  std::string out = "{";
  bool first = true;
  for (std::uint64_t p : ps) {
    if (!first) out += ",";
    out += std::to_string(p);
    first = false;
  }
  return out + "}";
}

inline std::string sphere_sum_text(const SphereExponents& e) {
  if (e.d.empty()) return "0";
  std::string out;
  for (const auto& [n, d] : e.d) {
    if (!out.empty()) out += " + ";
    out += "π_N(S^" + std::to_string(n) + ")";
    if (d != 1) out += "^{+" + d.str() + "}";
  }
  return out;
}

inline void fill_decomposition(OrbifoldReport& r, const SimplicialComplex& k, int torus_rank, int trunc,
                               const BerglundOptions& opt) {
  r.inv_series = inv_poincare_zk(k, FieldSpec::rational(), opt);
  r.decomposition = extract_zk_exponents(r.inv_series, trunc);
  r.decomposition.torus_rank = torus_rank;
  r.pi2_rank = torus_rank;
}

}  // namespace detail

/// Loop decomposition of a toric orbifold X_Σ away from P = P_Σ ∪ τ ∪ {p < 2m}.
/// Refuses non-simply-connected fans unless they are smooth, in which case
/// the universal cover is a partial quotient and N/N_Σ splits off as a
/// discrete factor.
inline OrbifoldReport orbifold_report(const Fan& f, int trunc = kDefaultTrunc, const BerglundOptions& opt = {}) {
  OrbifoldReport r;
  const Pi1Data pi1 = pi1_data(f);
  r.pi1_invariants = pi1.invariants;
  r.free_rank = pi1.free_rank;
  r.simply_connected = pi1.trivial();
  r.warnings = pi1.warnings;
  r.p_sigma = stabiliser_primes(f, opt.jobs);
  r.smooth = r.p_sigma.empty() && is_smooth(f, opt.jobs);
  if (!r.simply_connected && !*r.smooth) {
    throw Error(ErrorKind::NotSimplyConnected,
                "π_1(X_Σ) = N/N_Σ = " + detail::group_text(pi1.invariants) + " and the fan is not smooth");
  }
  r.notes.push_back("fan conditions assumed: cone intersections σ_I ∩ σ_J = σ_{I∩J} are not verified");
  const int torus_rank = f.m() - pi1.rank;
  detail::fill_decomposition(r, f.k, torus_rank, trunc, opt);
  r.anick_primes = anick_prime_set(f.k, opt);
  r.anick_primes.add_all(r.p_sigma, kSourceStabiliser);
  const std::string p_text = detail::prime_set_text(r.anick_primes.primes());
  r.homotopy_line = "π_N(X_Σ) ⊗ Z[1/P] ≅ " + detail::sphere_sum_text(r.decomposition) +
                    " ⊗ Z[1/P] for N ≥ 3, P = " + p_text;
  if (!r.simply_connected) {
    r.discrete_factor = detail::group_text(pi1.invariants);
    r.notes.push_back("smooth fan: the universal cover is the partial quotient Z_K/T^" + std::to_string(torus_rank) +
                      ", ΩX_Σ ≃ T^" + std::to_string(torus_rank) + " × ΩZ_K × " + *r.discrete_factor);
    r.homotopy_line = "universal cover: " + r.homotopy_line;
  }
  r.notes.push_back("D_n determined for n ≤ " + std::to_string(r.decomposition.determined_up_to()));
  return r;
}

/// Partial quotient Z_K/T^r for a subtorus the caller asserts acts freely.
inline OrbifoldReport partial_quotient_report(const SimplicialComplex& k, int r, int trunc = kDefaultTrunc,
                                              const BerglundOptions& opt = {}) {
  if (r < 0 || r >= k.vertex_count()) {
    throw Error(ErrorKind::BadRank, "quotient rank " + std::to_string(r) + " outside [0, " +
                                        std::to_string(k.vertex_count()) + ")");
  }
  OrbifoldReport out;
  detail::fill_decomposition(out, k, r, trunc, opt);
  out.anick_primes = anick_prime_set(k, opt);
  out.homotopy_line = "π_2 ≅ Z^" + std::to_string(r) + "; π_N(Z_K/T^" + std::to_string(r) + ") ⊗ Z[1/P] ≅ " +
                      detail::sphere_sum_text(out.decomposition) + " ⊗ Z[1/P] for N ≥ 3, P = " +
                      detail::prime_set_text(out.anick_primes.primes());
  out.notes.push_back("freeness of the T^" + std::to_string(r) + " action is assumed, not checked");
  out.notes.push_back("D_n determined for n ≤ " + std::to_string(out.decomposition.determined_up_to()));
  return out;
}

}  // namespace loopalg
