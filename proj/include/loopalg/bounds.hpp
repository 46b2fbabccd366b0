#pragma once

#include <boost/multiprecision/integer.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loopalg/berglund.hpp"
#include "loopalg/complex.hpp"
#include "loopalg/linalg.hpp"
#include "loopalg/poly.hpp"

namespace loopalg {

/// sqrt(base)^exponent, kept symbolic. The exponent is a central binomial
/// coefficient that is only materialised while it stays small.
struct RadicalPower {
  BigInt base;
  std::string exponent_text;        // e.g. "C(20,10)"
  std::optional<BigInt> exponent;   // exact value of the exponent, when small
  std::optional<BigInt> value;      // exact value, when an integer of modest size
  double log2 = 0;                  // log2 of the bound; +inf when out of double range
  double log2_log2 = 0;             // log2(log2(bound)); -inf when the bound is 1

  std::string to_string() const {
    std::string out = "sqrt(" + base.str() + ")^" + (exponent ? exponent->str() : exponent_text);
    if (value) out += " = " + value->str();
    return out;
  }
};

namespace detail {

inline constexpr int kExactExponentLimit = 20000;  // largest k for which C(k, k/2) is built
inline constexpr double kExactValueBits = 4096;

inline BigInt big_binomial(int n, int k) {
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline double log2_binomial(int n, int k) {
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) / std::log(2.0);
}

// sqrt(k+1)^C(k, floor(k/2)).
inline RadicalPower central_radical(std::uint64_t k) {
  RadicalPower r;
  r.base = BigInt(k) + 1;
  const int ki = static_cast<int>(k);
  const int half = ki / 2;
  r.exponent_text = "C(" + std::to_string(k) + "," + std::to_string(half) + ")";
  const double log2_base = std::log2(static_cast<double>(k) + 1.0);
  const double log2_exp = log2_binomial(ki, half);
  r.log2_log2 = k == 0 ? -std::numeric_limits<double>::infinity() : log2_exp - 1 + std::log2(log2_base);
  r.log2 = std::exp2(log2_exp - 1) * log2_base;
  if (k <= static_cast<std::uint64_t>(kExactExponentLimit)) {
    r.exponent = big_binomial(ki, half);
    const BigInt root = boost::multiprecision::sqrt(r.base);
    if (r.log2 <= kExactValueBits) {
      const auto e = static_cast<unsigned>(static_cast<std::uint64_t>(*r.exponent));
      if (e % 2 == 0) {
        r.value = boost::multiprecision::pow(r.base, e / 2);
      } else if (root * root == r.base) {
        r.value = boost::multiprecision::pow(root, e);
      }
    }
  }
  return r;
}

}  // namespace detail

/// Primes below which Berglund's formula can see torsion: f(m) =
/// sqrt(k+1)^C(k, floor(k/2)) with k = C(m, floor(m/2)).
inline RadicalPower f_bound(int m) {
  if (m < 0) throw Error(ErrorKind::InvalidInput, "m must be non-negative");
  return detail::central_radical(binomial(m, m / 2));
}

/// Largest torsion prime possible in a simplicial complex on k vertices.
inline RadicalPower simplicial_torsion_bound(int k) {
  if (k < 0) throw Error(ErrorKind::InvalidInput, "vertex count must be non-negative");
  return detail::central_radical(static_cast<std::uint64_t>(k));
}

/// The crude bound 2^(m 2^(2^m)), through its base-2 logarithm.
struct CrudeBound {
  int m = 0;
  std::optional<BigInt> log2;  // m * 2^(2^m), exact while 2^m <= 64
  std::string log2_text;
  double log2_log2 = 0;        // log2(m) + 2^m
};

inline CrudeBound crude_bound(int m) {
  if (m < 0) throw Error(ErrorKind::InvalidInput, "m must be non-negative");
  CrudeBound c;
  c.m = m;
  c.log2_text = std::to_string(m) + "*2^(2^" + std::to_string(m) + ")";
  if (m <= 6) c.log2 = BigInt(m) << (1u << m);
  c.log2_log2 = m == 0 ? -std::numeric_limits<double>::infinity() : std::log2(static_cast<double>(m)) + std::exp2(m);
  return c;
}

/// A prime set with the reason each prime is included.
struct PrimeProvenance {
  std::map<std::uint64_t, std::vector<std::string>> sources;

  void add(std::uint64_t p, const std::string& source) { sources[p].push_back(source); }
  void add_all(const PrimeSet& ps, const std::string& source) {
    for (std::uint64_t p : ps) add(p, source);
  }
  PrimeSet primes() const {
    PrimeSet out;
    for (const auto& [p, s] : sources) out.insert(p);
    return out;
  }
};

inline constexpr const char* kSourceBadPrimes = "berglund_torsion";
inline constexpr const char* kSourceBelow2m = "below_2m";
inline constexpr const char* kSourceStabiliser = "stabiliser";

/// Primes to invert for the loops-on-spheres decomposition of ΩZ_K: the
/// torsion primes of Berglund's complexes together with every p < 2m.
inline PrimeProvenance anick_prime_set(const SimplicialComplex& k, const BerglundOptions& opt = {}) {
  PrimeProvenance out;
  out.add_all(bad_primes(k, opt), kSourceBadPrimes);
  out.add_all(primes_below(2 * static_cast<std::uint64_t>(k.vertex_count())), kSourceBelow2m);
  return out;
}

struct BoundReport {
  int m = 0;
  RadicalPower f;
  CrudeBound crude;
  PrimeSet primes_below_2m;
};

inline BoundReport bound_report(int m) {
  if (m < 0) throw Error(ErrorKind::InvalidInput, "m must be non-negative");
  return {m, f_bound(m), crude_bound(m), primes_below(2 * static_cast<std::uint64_t>(m))};
}

}  // namespace loopalg
