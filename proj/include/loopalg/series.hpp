#pragma once

#include <bit>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loopalg/berglund.hpp"
#include "loopalg/complex.hpp"
#include "loopalg/errors.hpp"
#include "loopalg/poly.hpp"

namespace loopalg {

inline constexpr int kDefaultTrunc = 16;

/// Integer power series modulo t^(trunc+1).
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int trunc = kDefaultTrunc) : coeffs_(static_cast<std::size_t>(check(trunc)) + 1) {}

  TruncatedSeries(int trunc, const std::vector<BigInt>& coeffs) : TruncatedSeries(trunc) {
    for (std::size_t i = 0; i < coeffs.size() && i < coeffs_.size(); ++i) coeffs_[i] = coeffs[i];
  }

  /// Truncation of a polynomial; negative degrees are rejected.
  static TruncatedSeries from_poly(const LaurentPoly& p, int trunc) {
    TruncatedSeries s(trunc);
    for (const auto& [d, c] : p.terms()) {
      if (d < 0) throw Error(ErrorKind::InvalidInput, "negative-degree term in a power series");
      if (d <= trunc) s.coeffs_[d] = c;
    }
    return s;
  }
  static TruncatedSeries one(int trunc) { return from_poly(LaurentPoly::constant(1), trunc); }
  /// 1 + sign * t^k
  static TruncatedSeries binomial(int k, int sign, int trunc) {
    return from_poly(LaurentPoly::constant(1) + LaurentPoly::monomial(sign, k), trunc);
  }

  int trunc() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  const BigInt& operator[](int d) const { return coeffs_[d]; }
  BigInt& operator[](int d) { return coeffs_[d]; }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    match(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    match(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.match(b);
    const int n = a.trunc();
    TruncatedSeries out(n);
    for (int i = 0; i <= n; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (int j = 0; i + j <= n; ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return out;
  }
  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

  /// Multiplicative inverse; needs constant term +1 or -1 to stay integral.
  TruncatedSeries inverse() const {
    const BigInt& c0 = coeffs_[0];
    if (c0 != 1 && c0 != -1) throw Error(ErrorKind::NonUnitConstant, "constant term " + c0.str() + " is not a unit");
    const int n = trunc();
    TruncatedSeries out(n);
    out.coeffs_[0] = c0;  // 1/c0 == c0 for c0 = +-1
    for (int k = 1; k <= n; ++k) {
      BigInt acc = 0;
      for (int i = 1; i <= k; ++i) acc += coeffs_[i] * out.coeffs_[k - i];
      out.coeffs_[k] = -acc * c0;
    }
    return out;
  }

  TruncatedSeries pow(long long e) const {
    TruncatedSeries base = e < 0 ? inverse() : *this;
    unsigned long long left = static_cast<unsigned long long>(e < 0 ? -e : e);
    TruncatedSeries out = one(trunc());
    while (left) {
      if (left & 1) out = out * base;
      left >>= 1;
      if (left) base = base * base;
    }
    return out;
  }

  std::string to_string(char var = 't') const {
    LaurentPoly p;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) p.add_term(static_cast<int>(i), coeffs_[i]);
    return p.to_string(var) + " + O(" + var + "^" + std::to_string(trunc() + 1) + ")";
  }

 private:
  static int check(int trunc) {
    if (trunc < 0) throw Error(ErrorKind::InvalidInput, "truncation degree must be non-negative");
    return trunc;
  }
  void match(const TruncatedSeries& o) const {
    if (o.trunc() != trunc()) throw Error(ErrorKind::InvalidInput, "mixing series of different truncation");
  }

  std::vector<BigInt> coeffs_;
};

/// 1/F(H_*(ΩZ_K);t) = sum_J b^_{K_J}(t) t^|J|, from a (non-reflected) b-table.
inline LaurentPoly inv_poincare_zk(const BBTable& table) {
  LaurentPoly out;
  for (std::size_t j = 0; j < table.by_subset.size(); ++j) {
    const int size = std::popcount(static_cast<Mask>(j));
    out += reflect(table.by_subset[j], size).shifted(size);
  }
  require(out.coefficient(0) == 1, "inverse loop series must start with 1");
  require(out.coefficient(1) == 0, "moment-angle complexes are 2-connected: no t term allowed");
  return out;
}

inline LaurentPoly inv_poincare_zk(const SimplicialComplex& k, const FieldSpec& field, const BerglundOptions& opt = {}) {
  return inv_poincare_zk(bb_table(k, field, opt));
}

inline TruncatedSeries poincare_zk(const BBTable& table, int trunc) {
  return TruncatedSeries::from_poly(inv_poincare_zk(table), trunc).inverse();
}

/// Split fibration ΩZ_K -> ΩDJ(K) -> T^m: F_DJ = (1+t)^m F_ZK.
inline TruncatedSeries poincare_dj(const BBTable& table, int trunc) {
  return TruncatedSeries::binomial(1, 1, trunc).pow(table.m) * poincare_zk(table, trunc);
}

inline TruncatedSeries poincare_zk(const SimplicialComplex& k, const FieldSpec& field, int trunc,
                                   const BerglundOptions& opt = {}) {
  return poincare_zk(bb_table(k, field, opt), trunc);
}
inline TruncatedSeries poincare_dj(const SimplicialComplex& k, const FieldSpec& field, int trunc,
                                   const BerglundOptions& opt = {}) {
  return poincare_dj(bb_table(k, field, opt), trunc);
}

struct CheckedPoly {
  LaurentPoly value;
  std::vector<std::string> warnings;
};

/// 1/F(H_*(ΩR_K);t) = sum_J b^_{K_J}(t). Valid only for 1-neighbourly K;
/// otherwise the formal sum is still returned with a warning.
inline CheckedPoly inv_poincare_rk(const SimplicialComplex& k, const BBTable& table) {
  CheckedPoly out;
  if (!is_k_neighbourly(k, 1)) {
    out.warnings.push_back("complex is not 1-neighbourly: the real moment-angle formula does not apply, value is formal");
  }
  for (std::size_t j = 0; j < table.by_subset.size(); ++j) {
    out.value += reflect(table.by_subset[j], std::popcount(static_cast<Mask>(j)));
  }
  return out;
}

inline CheckedPoly inv_poincare_rk(const SimplicialComplex& k, const FieldSpec& field, const BerglundOptions& opt = {}) {
  return inv_poincare_rk(k, bb_table(k, field, opt));
}

/// Inverse loop-homology series of a polyhedral product (X,A)^K, given for
/// each vertex the reduced series of the fibre G_i of A_i -> X_i and the
/// series of ΩX_i.
inline TruncatedSeries general_pp_inverse(const BBTable& table, const std::vector<TruncatedSeries>& fibre,
                                          const std::vector<TruncatedSeries>& loop_base, int trunc) {
  const int m = table.m;
  if (static_cast<int>(fibre.size()) != m || static_cast<int>(loop_base.size()) != m) {
    throw Error(ErrorKind::InvalidInput, "expected one fibre series and one loop series per vertex");
  }
  for (int i = 0; i < m; ++i) {
    if (fibre[i].trunc() != trunc || loop_base[i].trunc() != trunc) {
      throw Error(ErrorKind::InvalidInput, "series truncation differs from the requested degree");
    }
    if (fibre[i][0] != 0) throw Error(ErrorKind::BadConstantTerm, "fibre series " + std::to_string(i + 1) + " must be reduced");
    if (loop_base[i][0] != 1) throw Error(ErrorKind::BadConstantTerm, "loop series " + std::to_string(i + 1) + " must start with 1");
  }
  // prod_{j in J} G_j, built up subset by subset.
  const std::size_t n = std::size_t{1} << m;
  std::vector<TruncatedSeries> fibre_product(n, TruncatedSeries(trunc));
  fibre_product[0] = TruncatedSeries::one(trunc);
  TruncatedSeries sum(trunc);
  for (std::size_t j = 0; j < n; ++j) {
    const Mask jm = static_cast<Mask>(j);
    if (j != 0) fibre_product[j] = fibre_product[jm & (jm - 1)] * fibre[std::countr_zero(jm)];
    const LaurentPoly hat = reflect(table.by_subset[j], std::popcount(jm));
    if (hat.is_zero()) continue;
    sum += TruncatedSeries::from_poly(hat, trunc) * fibre_product[j];
  }
  for (int i = 0; i < m; ++i) sum = sum * loop_base[i].inverse();
  return sum;
}

/// Exponents D_n of Π (1 - t^(n-1))^(D_n), plus optional sphere counts.
struct SphereExponents {
  int trunc = kDefaultTrunc;
  std::map<int, BigInt> d;  // n -> D_n, non-zero entries only
  int torus_rank = 0;
  std::optional<long long> a, b, c;
  std::vector<std::string> warnings;

  BigInt operator[](int n) const {
    auto it = d.find(n);
    return it == d.end() ? BigInt(0) : it->second;
  }
  /// D_n is determined by the series for n <= trunc + 1.
  int determined_up_to() const { return trunc + 1; }
};

namespace detail {

// (1 - t^k)^(-e) = sum_i C(e+i-1, i) t^(k i)
inline TruncatedSeries geometric_power(int k, const BigInt& e, int trunc) {
  TruncatedSeries out(trunc);
  BigInt coeff = 1;
  for (int i = 0; static_cast<long long>(i) * k <= trunc; ++i) {
    out[i * k] = coeff;
    coeff = coeff * (e + i) / (i + 1);
  }
  return out;
}

}  // namespace detail

/// Peel s = Π_{n>=3} (1 - t^(n-1))^(D_n) one degree at a time.
inline SphereExponents extract_zk_exponents(const TruncatedSeries& s) {
  if (s[0] != 1) throw Error(ErrorKind::NonUnitConstant, "series must have constant term 1");
  const int n = s.trunc();
  if (n >= 1 && s[1] != 0) {
    throw Error(ErrorKind::InvalidInput, "t^1 coefficient must vanish: loops on spheres start at S^3");
  }
  SphereExponents out;
  out.trunc = n;
  TruncatedSeries rest = s;
  for (int k = 2; k <= n; ++k) {
    const BigInt dn = -rest[k];
    if (dn == 0) continue;
    if (dn < 0) {
      throw Error(ErrorKind::NegativeExponent, "D_" + std::to_string(k + 1) + " = " + dn.str());
    }
    out.d[k + 1] = dn;
    rest = rest * detail::geometric_power(k, dn, n);
  }
  return out;
}

inline SphereExponents extract_zk_exponents(const LaurentPoly& p, int trunc) {
  return extract_zk_exponents(TruncatedSeries::from_poly(p, trunc));
}

/// Π_n (1 - t^(n-1))^(D_n) modulo t^(trunc+1).
inline TruncatedSeries rebuild(const SphereExponents& e, int trunc) {
  TruncatedSeries out = TruncatedSeries::one(trunc);
  for (const auto& [n, dn] : e.d) {
    out = out * detail::geometric_power(n - 1, dn, trunc).inverse();
  }
  return out;
}

/// Peel after clearing (1+t)^A (1+t^3)^B (1+t^7)^C; A, B, C are the numbers
/// of S^1, S^3, S^7 factors, supplied by the caller.
inline SphereExponents extract_with_spheres(const TruncatedSeries& s, long long a, long long b, long long c) {
  if (a < 0 || b < 0 || c < 0) throw Error(ErrorKind::InvalidInput, "sphere counts must be non-negative");
  const int n = s.trunc();
  const TruncatedSeries cleared = s * TruncatedSeries::binomial(1, 1, n).pow(a) * TruncatedSeries::binomial(3, 1, n).pow(b) *
                                  TruncatedSeries::binomial(7, 1, n).pow(c);
  SphereExponents out = extract_zk_exponents(cleared);
  out.a = a;
  out.b = b;
  out.c = c;
  for (int special : {4, 8}) {
    if (out[special] != 0) {
      out.warnings.push_back("D_" + std::to_string(special) +
                             " is non-zero; in the H-space decomposition this factor is absorbed into the S^3/S^7 counts");
    }
  }
  return out;
}

}  // namespace loopalg
