#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loopalg/bar_oracle.hpp"
#include "loopalg/berglund.hpp"
#include "loopalg/bounds.hpp"
#include "loopalg/io.hpp"
#include "loopalg/series.hpp"
#include "loopalg/toric.hpp"

namespace loopalg {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// An error that still produced a partial report worth emitting.
class ReportedError : public Error {
 public:
  ReportedError(const Error& e, Json report) : Error(e), report_(std::move(report)) {}
  const Json& report() const { return report_; }

 private:
  Json report_;
};

/// Settings shared by every command. `jobs` never appears in reports so that
/// output is independent of the worker count.
struct RunConfig {
  FieldSpec field = FieldSpec::rational();
  int trunc = kDefaultTrunc;
  int jobs = 1;
  int max_vertices = kDefaultMaxVertices;
  int max_mf = kDefaultMaxMissingFaces;
  int oracle_cap = kDefaultOracleCap;

  BerglundOptions berglund() const { return {max_mf, jobs}; }

  void check() const {
    if (trunc < 0) throw Error(ErrorKind::InvalidInput, "--trunc must be non-negative");
    if (jobs < 1 || max_vertices < 1 || max_mf < 1 || oracle_cap < 1) {
      throw Error(ErrorKind::InvalidInput, "worker count and caps must be positive");
    }
    if (max_vertices > kHardMaxVertices) {
      throw Error(ErrorKind::InvalidInput, "--max-vertices cannot exceed " + std::to_string(kHardMaxVertices));
    }
  }
};

/// "fp:<p>" or "q".
inline FieldSpec parse_field(const std::string& s) {
  if (s == "q" || s == "Q") return FieldSpec::rational();
  if (s.rfind("fp:", 0) == 0) {
    const std::string digits = s.substr(3);
    if (digits.empty() || digits.size() > 10 || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorKind::InvalidInput, "bad prime in field '" + s + "'");
    }
    return FieldSpec::prime(std::stoull(digits));
  }
  throw Error(ErrorKind::InvalidInput, "field must be q or fp:<p>, got '" + s + "'");
}

inline std::string field_flag(const FieldSpec& f) { return f.is_rational() ? "q" : "fp:" + std::to_string(f.characteristic()); }

inline Json config_json(const RunConfig& c) {
  return Json{{"field", field_flag(c.field)},
              {"trunc", c.trunc},
              {"max_vertices", c.max_vertices},
              {"max_mf", c.max_mf},
              {"oracle_cap", c.oracle_cap}};
}

inline Json report_header(const std::string& command, const RunConfig& c) {
  return Json{{"schema", kSchemaVersion}, {"tool", {{"name", "loopalg"}, {"version", kVersion}}}, {"command", command},
              {"config", config_json(c)}};
}

inline Json subset_json(Mask j) {
  Json out = Json::array();
  for (int v : VertexSubset(j).vertices()) out.push_back(v);
  return out;
}

inline Json prime_set_json(const PrimeSet& ps) {
  Json out = Json::array();
  for (std::uint64_t p : ps) out.push_back(p);
  return out;
}

inline Json provenance_json(const PrimeProvenance& p) {
  Json out = Json::array();
  for (const auto& [prime, sources] : p.sources) out.push_back(Json{{"p", prime}, {"sources", sources}});
  return out;
}

/// Non-zero entries of a table in mask order: [{"J": [...], "coeffs": [...]}].
inline Json table_json(const BBTable& t) {
  Json out = Json::array();
  for (std::size_t j = 0; j < t.by_subset.size(); ++j) {
    if (t.by_subset[j].is_zero()) continue;
    out.push_back(Json{{"J", subset_json(static_cast<Mask>(j))}, {"coeffs", poly_coeffs(t.by_subset[j])}});
  }
  return out;
}

inline Json exponents_json(const SphereExponents& e) {
  Json d = Json::array();
  for (const auto& [n, v] : e.d) d.push_back(Json{{"n", n}, {"D", big_to_json(v)}});
  Json out{{"determined_up_to", e.determined_up_to()}, {"D", std::move(d)}, {"torus_rank", e.torus_rank}};
  if (e.a) out["A"] = *e.a;
  if (e.b) out["B"] = *e.b;
  if (e.c) out["C"] = *e.c;
  return out;
}

inline Json radical_json(const RadicalPower& r) {
  Json out{{"base", big_to_json(r.base)}, {"exponent", r.exponent ? big_to_json(*r.exponent) : Json(r.exponent_text)},
           {"form", r.to_string()}};
  out["value"] = r.value ? big_to_json(*r.value) : Json(nullptr);
  out["log2"] = std::isfinite(r.log2) ? Json(r.log2) : Json(nullptr);
  out["log2_log2"] = std::isfinite(r.log2_log2) ? Json(r.log2_log2) : Json(nullptr);
  return out;
}

inline Json bounds_json(int m) {
  const BoundReport b = bound_report(m);
  Json crude{{"log2", b.crude.log2 ? big_to_json(*b.crude.log2) : Json(b.crude.log2_text)}, {"form", "2^(" + b.crude.log2_text + ")"}};
  crude["log2_log2"] = std::isfinite(b.crude.log2_log2) ? Json(b.crude.log2_log2) : Json(nullptr);
  return Json{{"m", m}, {"f", radical_json(b.f)}, {"crude", std::move(crude)},
              {"simplicial_torsion_bound", radical_json(simplicial_torsion_bound(m))},
              {"primes_below_2m", prime_set_json(b.primes_below_2m)}};
}

inline std::string homotopy_line_zk(const SphereExponents& e, const PrimeSet& p) {
  return "π_N(Z_K) ⊗ Z[1/P] ≅ " + detail::sphere_sum_text(e) + " ⊗ Z[1/P] for N ≥ 3, P = " + detail::prime_set_text(p);
}

inline Json cmd_bb(const SimplicialComplex& k, const RunConfig& c) {
  Json r = report_header("bb", c);
  r["input"] = complex_to_json(k);
  const BBTable t = bb_table(k, c.field, c.berglund());
  r["bb_table"] = table_json(t);
  r["reflected_table"] = table_json(reflect_table(t));
  r["warnings"] = Json::array();
  return r;
}

inline Json cmd_series(const SimplicialComplex& k, const RunConfig& c) {
  Json r = report_header("series", c);
  r["input"] = complex_to_json(k);
  const BBTable t = bb_table(k, c.field, c.berglund());
  const LaurentPoly inv = inv_poincare_zk(t);
  const CheckedPoly rk = inv_poincare_rk(k, t);
  r["zk"] = Json{{"inverse", poly_coeffs(inv)}, {"series", series_to_json(poincare_zk(t, c.trunc))}};
  r["dj"] = Json{{"series", series_to_json(poincare_dj(t, c.trunc))}};
  r["rk"] = Json{{"inverse", poly_coeffs(rk.value)}, {"valid", rk.warnings.empty()}};
  r["warnings"] = rk.warnings;
  return r;
}

inline Json cmd_decompose(const SimplicialComplex& k, const RunConfig& c) {
  Json r = report_header("decompose", c);
  r["input"] = complex_to_json(k);
  Json warnings = Json::array();
  const LaurentPoly inv = inv_poincare_zk(k, c.field, c.berglund());
  r["zk_inverse"] = poly_coeffs(inv);
  const PrimeProvenance primes = anick_prime_set(k, c.berglund());
  if (c.field.is_rational()) {
    const SphereExponents e = extract_zk_exponents(inv, c.trunc);
    r["exponents"] = exponents_json(e);
    r["homotopy_line"] = homotopy_line_zk(e, primes.primes());
  } else {
    r["exponents"] = nullptr;
    warnings.push_back("D_n are extracted over Q only; rerun with --field q");
  }
  r["anick_primes"] = prime_set_json(primes.primes());
  r["anick_prime_sources"] = provenance_json(primes);
  r["bounds"] = bounds_json(k.vertex_count());
  r["warnings"] = std::move(warnings);
  return r;
}

/// The report and whether the two tables agreed.
inline std::pair<Json, bool> cmd_oracle(const SimplicialComplex& k, const RunConfig& c) {
  Json r = report_header("oracle", c);
  r["input"] = complex_to_json(k);
  const VerifyResult v = verify(k, c.field, c.oracle_cap, c.berglund());
  r["agree"] = v.ok;
  if (!v.ok) {
    r["discrepancy"] = Json{{"J", subset_json(v.subset->bits())}, {"degree", *v.degree}, {"detail", v.discrepancy}};
  }
  r["warnings"] = Json::array();
  return {r, v.ok};
}

struct SphereCounts {
  long long a = 0, b = 0, c = 0;
};

inline Json cmd_pp(const SimplicialComplex& k, const std::vector<TruncatedSeries>& fibres,
                   const std::vector<TruncatedSeries>& loops, const std::optional<SphereCounts>& spheres, const RunConfig& c) {
  Json r = report_header("pp", c);
  r["input"] = complex_to_json(k);
  const BBTable t = bb_table(k, c.field, c.berglund());
  const TruncatedSeries inv = general_pp_inverse(t, fibres, loops, c.trunc);
  r["inverse"] = series_to_json(inv);
  r["series"] = series_to_json(inv.inverse());
  Json warnings = Json::array();
  if (spheres) {
    if (c.field.is_rational()) {
      const SphereExponents e = extract_with_spheres(inv, spheres->a, spheres->b, spheres->c);
      r["exponents"] = exponents_json(e);
      for (const auto& w : e.warnings) warnings.push_back(w);
    } else {
      warnings.push_back("D_n are extracted over Q only; rerun with --field q");
    }
  } else {
    warnings.push_back("no sphere counts A, B, C given: the decomposition needs them as extra input, none extracted");
  }
  r["warnings"] = std::move(warnings);
  return r;
}

inline Json orbifold_json(const OrbifoldReport& o) {
  Json pi1 = Json::array();
  for (const BigInt& x : o.pi1_invariants) pi1.push_back(big_to_json(x));
  Json r{{"simply_connected", o.simply_connected}, {"pi1_invariants", std::move(pi1)}, {"free_rank", o.free_rank}};
  r["p_sigma"] = prime_set_json(o.p_sigma);
  r["smooth"] = o.smooth ? Json(*o.smooth) : Json(nullptr);
  r["anick_primes"] = prime_set_json(o.anick_primes.primes());
  r["anick_prime_sources"] = provenance_json(o.anick_primes);
  r["zk_inverse"] = poly_coeffs(o.inv_series);
  r["exponents"] = exponents_json(o.decomposition);
  r["pi2_rank"] = o.pi2_rank;
  r["discrete_factor"] = o.discrete_factor ? Json(*o.discrete_factor) : Json(nullptr);
  r["homotopy_line"] = o.homotopy_line;
  r["notes"] = o.notes;
  return r;
}

inline Json fan_json(const Fan& f) {
  Json rays = Json::array();
  for (const auto& ray : f.rays) rays.push_back(ray);
  Json cones = Json::array();
  for (Mask facet : f.k.facets()) {
    if (facet != 0 || f.m() == 0) cones.push_back(subset_json(facet));
  }
  return Json{{"n", f.n}, {"rays", std::move(rays)}, {"cones", std::move(cones)}};
}

/// Refusals (NotSimplyConnected) still carry the π_1 data.
inline Json cmd_fan(const Fan& f, const RunConfig& c) {
  Json r = report_header("fan", c);
  r["input"] = fan_json(f);
  try {
    const OrbifoldReport o = orbifold_report(f, c.trunc, c.berglund());
    r["orbifold"] = orbifold_json(o);
    r["warnings"] = o.warnings;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotSimplyConnected) throw;
    const Pi1Data pi1 = pi1_data(f);
    Json inv = Json::array();
    for (const BigInt& x : pi1.invariants) inv.push_back(big_to_json(x));
    r["orbifold"] = Json{{"simply_connected", false}, {"pi1_invariants", std::move(inv)}, {"free_rank", pi1.free_rank}};
    r["warnings"] = pi1.warnings;
    throw ReportedError(e, r);
  }
  return r;
}

inline Json cmd_quotient(const SimplicialComplex& k, int rank, const RunConfig& c) {
  Json r = report_header("quotient", c);
  r["input"] = complex_to_json(k);
  r["rank"] = rank;
  const OrbifoldReport o = partial_quotient_report(k, rank, c.trunc, c.berglund());
  r["quotient"] = orbifold_json(o);
  r["warnings"] = o.warnings;
  return r;
}

inline Json cmd_bounds(int m, const std::optional<SimplicialComplex>& k, const RunConfig& c) {
  Json r = report_header("bounds", c);
  if (k) r["input"] = complex_to_json(*k);
  r["bounds"] = bounds_json(m);
  if (k) {
    const PrimeProvenance p = anick_prime_set(*k, c.berglund());
    r["anick_primes"] = prime_set_json(p.primes());
    r["anick_prime_sources"] = provenance_json(p);
  }
  r["warnings"] = Json::array();
  return r;
}

}  // namespace loopalg
