#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>

namespace loopalg {

using BigInt = boost::multiprecision::cpp_int;

/// Integer polynomial in one variable, allowing negative exponents.
/// Only non-zero coefficients are stored, so zero is the empty map.
class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly monomial(const BigInt& coefficient, int degree) {
    LaurentPoly p;
    p.add_term(degree, coefficient);
    return p;
  }
  static LaurentPoly constant(const BigInt& c) { return monomial(c, 0); }

  BigInt coefficient(int degree) const {
    auto it = coeffs_.find(degree);
    return it == coeffs_.end() ? BigInt(0) : it->second;
  }

  void add_term(int degree, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(degree, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  const std::map<int, BigInt>& terms() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  // Both are meaningless for the zero polynomial; callers check is_zero() first.
  int min_degree() const { return coeffs_.begin()->first; }
  int max_degree() const { return coeffs_.rbegin()->first; }

  LaurentPoly shifted(int by) const {
    LaurentPoly out;
    for (const auto& [d, c] : coeffs_) out.coeffs_.emplace(d + by, c);
    return out;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [d, c] : o.coeffs_) add_term(d, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [d, c] : o.coeffs_) add_term(d, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(const LaurentPoly& a) { return LaurentPoly() - a; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [da, ca] : a.coeffs_) {
      for (const auto& [db, cb] : b.coeffs_) out.add_term(da + db, ca * cb);
    }
    return out;
  }
  friend LaurentPoly operator*(const BigInt& s, const LaurentPoly& p) { return LaurentPoly::constant(s) * p; }
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  std::string to_string(char var = 'z') const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      const auto& [d, c] = *it;
      BigInt mag = c < 0 ? BigInt(-c) : c;
      if (out.empty()) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      if (d == 0 || mag != 1) out += mag.str();
      if (d != 0) {
        out += var;
        if (d != 1) out += "^" + std::to_string(d);
      }
    }
    return out;
  }

 private:
  std::map<int, BigInt> coeffs_;
};

}  // namespace loopalg
