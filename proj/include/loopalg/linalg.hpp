#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "loopalg/complex.hpp"
#include "loopalg/errors.hpp"
#include "loopalg/poly.hpp"

namespace loopalg {

using PrimeSet = std::set<std::uint64_t>;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline PrimeSet primes_below(std::uint64_t bound) {
  PrimeSet out;
  for (std::uint64_t p = 2; p < bound; ++p) {
    if (is_prime(p)) out.insert(p);
  }
  return out;
}

inline PrimeSet prime_factors(BigInt n) {
  PrimeSet out;
  if (n < 0) n = -n;
  if (n < 2) return out;
  for (std::uint64_t d = 2; BigInt(d) * d <= n; ++d) {
    if (n % d == 0) {
      out.insert(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) {
    require(n <= BigInt(UINT64_MAX), "prime factor does not fit in 64 bits");
    out.insert(static_cast<std::uint64_t>(n));
  }
  return out;
}

/// Coefficient field: the rationals or a prime field F_p.
class FieldSpec {
 public:
  static FieldSpec rational() { return FieldSpec(0); }

  static FieldSpec prime(std::uint64_t p) {
    if (!is_prime(p)) throw Error(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
    if (p >= (std::uint64_t{1} << 31)) throw Error(ErrorKind::InvalidInput, "field characteristic must be below 2^31");
    return FieldSpec(p);
  }

  bool is_rational() const { return p_ == 0; }
  std::uint64_t characteristic() const { return p_; }
  std::string name() const { return is_rational() ? "Q" : "F_" + std::to_string(p_); }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  explicit FieldSpec(std::uint64_t p) : p_(p) {}
  std::uint64_t p_;
};

/// Dense integer matrix with exact entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = static_cast<int>(init.size());
    cols_ = rows_ == 0 ? 0 : static_cast<int>(init.begin()->size());
    for (const auto& row : init) {
      require(static_cast<int>(row.size()) == cols_, "ragged matrix literal");
      for (long long v : row) data_.emplace_back(v);
    }
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  BigInt& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const BigInt& at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
  }
  void swap_cols(int a, int b) {
    if (a == b) return;
    for (int r = 0; r < rows_; ++r) std::swap(at(r, a), at(r, b));
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<BigInt> data_;
};

/// Column-sparse integer matrix; each column holds (row, value) with value != 0.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<std::pair<int, std::int64_t>>> columns;

  SparseMatrix() = default;
  SparseMatrix(int r, int c) : rows(r), cols(c), columns(static_cast<std::size_t>(c)) {}

  IntMatrix to_dense() const {
    IntMatrix out(rows, cols);
    for (int c = 0; c < cols; ++c) {
      for (const auto& [r, v] : columns[c]) out.at(r, c) = v;
    }
    return out;
  }
};

namespace detail {

struct Overflow {};

inline std::int64_t checked_fma_sub(std::int64_t base, std::int64_t factor, std::int64_t v) {
  std::int64_t prod = 0;
  std::int64_t out = 0;
  if (__builtin_mul_overflow(factor, v, &prod) || __builtin_sub_overflow(base, prod, &out)) throw Overflow{};
  return out;
}
inline BigInt checked_fma_sub(const BigInt& base, const BigInt& factor, const BigInt& v) { return base - factor * v; }

template <class T>
bool is_unit(const T& v) {
  return v == 1 || v == -1;
}

struct UnitReduction {
  std::size_t unit_pivots = 0;
  IntMatrix remainder;
};

// Schur-complement elimination restricted to pivots equal to +-1. Such a pivot
// is a unit over Z and over every field, so rank over any field and the Smith
// invariants both split as (one per pivot) + (those of the remainder).
template <class T>
UnitReduction eliminate_units(const SparseMatrix& a) {
  std::vector<std::map<int, T>> row(static_cast<std::size_t>(a.rows));
  std::vector<std::set<int>> col(static_cast<std::size_t>(a.cols));
  for (int c = 0; c < a.cols; ++c) {
    for (const auto& [r, v] : a.columns[c]) {
      if (v == 0) continue;
      row[r][c] = T(v);
      col[c].insert(r);
    }
  }

  std::size_t pivots = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<int> order;
    for (int c = 0; c < a.cols; ++c) {
      if (!col[c].empty()) order.push_back(c);
    }
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return col[x].size() < col[y].size(); });
    for (int c : order) {
      if (col[c].empty()) continue;
      int best = -1;
      std::size_t best_len = SIZE_MAX;
      for (int r : col[c]) {
        if (is_unit(row[r].at(c)) && row[r].size() < best_len) {
          best = r;
          best_len = row[r].size();
        }
      }
      if (best < 0) continue;
      const T u = row[best].at(c);
      const std::vector<int> targets(col[c].begin(), col[c].end());
      for (int r2 : targets) {
        if (r2 == best) continue;
        const T factor = row[r2].at(c) * u;
        for (const auto& [c2, v] : row[best]) {
          auto it = row[r2].find(c2);
          const T base = it == row[r2].end() ? T(0) : it->second;
          const T updated = checked_fma_sub(base, factor, v);
          if (updated == 0) {
            if (it != row[r2].end()) row[r2].erase(it);
            col[c2].erase(r2);
          } else if (it == row[r2].end()) {
            row[r2].emplace(c2, updated);
            col[c2].insert(r2);
          } else {
            it->second = updated;
          }
        }
      }
      for (const auto& [c2, v] : row[best]) col[c2].erase(best);
      row[best].clear();
      ++pivots;
      progress = true;
    }
  }

  std::vector<int> live_rows;
  std::vector<int> live_cols;
  std::vector<int> col_index(static_cast<std::size_t>(a.cols), -1);
  for (int r = 0; r < a.rows; ++r) {
    if (!row[r].empty()) live_rows.push_back(r);
  }
  for (int c = 0; c < a.cols; ++c) {
    if (!col[c].empty()) {
      col_index[c] = static_cast<int>(live_cols.size());
      live_cols.push_back(c);
    }
  }
  UnitReduction out;
  out.unit_pivots = pivots;
  out.remainder = IntMatrix(static_cast<int>(live_rows.size()), static_cast<int>(live_cols.size()));
  for (std::size_t i = 0; i < live_rows.size(); ++i) {
    for (const auto& [c, v] : row[live_rows[i]]) out.remainder.at(static_cast<int>(i), col_index[c]) = BigInt(v);
  }
  return out;
}

inline UnitReduction eliminate_units(const SparseMatrix& a) {
  try {
    return eliminate_units<std::int64_t>(a);
  } catch (const Overflow&) {
    return eliminate_units<BigInt>(a);
  }
}

inline std::uint64_t mod_reduce(const BigInt& v, std::uint64_t p) {
  BigInt r = v % p;
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * b) % p);
    b = static_cast<std::uint64_t>((static_cast<unsigned __int128>(b) * b) % p);
    e >>= 1;
  }
  return r;
}

inline std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p) {
  const int rows = m.rows();
  const int cols = m.cols();
  std::vector<std::uint64_t> a(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) a[static_cast<std::size_t>(r) * cols + c] = mod_reduce(m.at(r, c), p);
  }
  auto at = [&](int r, int c) -> std::uint64_t& { return a[static_cast<std::size_t>(r) * cols + c]; };
  std::size_t rank = 0;
  for (int c = 0; c < cols && static_cast<int>(rank) < rows; ++c) {
    int piv = -1;
    for (int r = static_cast<int>(rank); r < rows; ++r) {
      if (at(r, c) != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    const int pr = static_cast<int>(rank);
    if (piv != pr) {
      for (int j = c; j < cols; ++j) std::swap(at(piv, j), at(pr, j));
    }
    const std::uint64_t inv = mod_pow(at(pr, c), p - 2, p);
    for (int r = pr + 1; r < rows; ++r) {
      if (at(r, c) == 0) continue;
      const std::uint64_t f = static_cast<std::uint64_t>((static_cast<unsigned __int128>(at(r, c)) * inv) % p);
      for (int j = c; j < cols; ++j) {
        const std::uint64_t sub = static_cast<std::uint64_t>((static_cast<unsigned __int128>(f) * at(pr, j)) % p);
        at(r, j) = (at(r, j) + p - sub) % p;
      }
    }
    ++rank;
  }
  return rank;
}

// Fraction-free (Bareiss) row echelon form; every division is exact.
inline std::size_t rank_bareiss(IntMatrix m) {
  const int rows = m.rows();
  const int cols = m.cols();
  std::size_t rank = 0;
  BigInt prev = 1;
  for (int c = 0; c < cols && static_cast<int>(rank) < rows; ++c) {
    const int pr = static_cast<int>(rank);
    int piv = -1;
    for (int r = pr; r < rows; ++r) {
      if (m.at(r, c) != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    m.swap_rows(piv, pr);
    for (int r = pr + 1; r < rows; ++r) {
      for (int j = c + 1; j < cols; ++j) {
        m.at(r, j) = (m.at(pr, c) * m.at(r, j) - m.at(r, c) * m.at(pr, j)) / prev;
      }
      m.at(r, c) = 0;
    }
    prev = m.at(pr, c);
    ++rank;
  }
  return rank;
}

inline BigInt abs_big(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

}  // namespace detail

inline std::size_t rank_over_field(const IntMatrix& m, const FieldSpec& k) {
  return k.is_rational() ? detail::rank_bareiss(m) : detail::rank_mod_p(m, k.characteristic());
}

inline std::size_t rank_over_field(const SparseMatrix& m, const FieldSpec& k) {
  const auto red = detail::eliminate_units(m);
  return red.unit_pivots + rank_over_field(red.remainder, k);
}

/// Invariant factors d1 | d2 | ... followed by zeros; length min(rows, cols).
inline std::vector<BigInt> smith_normal_form(IntMatrix a) {
  const int rows = a.rows();
  const int cols = a.cols();
  const int n = std::min(rows, cols);
  std::vector<BigInt> diag;
  int t = 0;
  for (; t < n; ++t) {
    while (true) {
      int pr = -1;
      int pc = -1;
      BigInt best = 0;
      for (int r = t; r < rows; ++r) {
        for (int c = t; c < cols; ++c) {
          if (a.at(r, c) == 0) continue;
          BigInt v = detail::abs_big(a.at(r, c));
          if (pr < 0 || v < best) {
            best = v;
            pr = r;
            pc = c;
          }
        }
      }
      if (pr < 0) goto done;
      a.swap_rows(t, pr);
      a.swap_cols(t, pc);
      const BigInt piv = a.at(t, t);
      bool clean = true;
      for (int r = t + 1; r < rows; ++r) {
        if (a.at(r, t) == 0) continue;
        const BigInt q = a.at(r, t) / piv;
        for (int c = t; c < cols; ++c) a.at(r, c) -= q * a.at(t, c);
        if (a.at(r, t) != 0) clean = false;
      }
      for (int c = t + 1; c < cols; ++c) {
        if (a.at(t, c) == 0) continue;
        const BigInt q = a.at(t, c) / piv;
        for (int r = t; r < rows; ++r) a.at(r, c) -= q * a.at(r, t);
        if (a.at(t, c) != 0) clean = false;
      }
      if (!clean) continue;
      int bad_row = -1;
      for (int r = t + 1; r < rows && bad_row < 0; ++r) {
        for (int c = t + 1; c < cols; ++c) {
          if (a.at(r, c) % piv != 0) {
            bad_row = r;
            break;
          }
        }
      }
      if (bad_row < 0) break;
      for (int c = t; c < cols; ++c) a.at(t, c) += a.at(bad_row, c);
    }
    diag.push_back(detail::abs_big(a.at(t, t)));
  }
done:
  diag.resize(static_cast<std::size_t>(n), BigInt(0));
  for (std::size_t i = 0; i + 1 < diag.size() && diag[i + 1] != 0; ++i) {
    require(diag[i] != 0 && diag[i + 1] % diag[i] == 0, "Smith normal form divisibility chain broken");
  }
  return diag;
}

inline std::vector<BigInt> smith_normal_form(const SparseMatrix& m) {
  const auto red = detail::eliminate_units(m);
  std::vector<BigInt> diag(red.unit_pivots, BigInt(1));
  for (const BigInt& d : smith_normal_form(red.remainder)) {
    if (d != 0) diag.push_back(d);
  }
  diag.resize(static_cast<std::size_t>(std::min(m.rows, m.cols)), BigInt(0));
  return diag;
}

/// Reduced homology: dims by degree from -1 (augmented complex), plus
/// torsion invariant factors by degree when computed integrally.
struct HomologyProfile {
  std::map<int, std::uint64_t> dims;
  std::map<int, std::vector<BigInt>> torsion;

  std::uint64_t dim(int degree) const {
    auto it = dims.find(degree);
    return it == dims.end() ? 0 : it->second;
  }
};

namespace detail {

struct ChainComplex {
  // cells[d + 1] holds the faces with d + 1 vertices, d >= -1.
  std::vector<std::vector<Mask>> cells;
  // boundary[d] maps cells of dimension d to dimension d - 1, d >= 0.
  std::vector<SparseMatrix> boundary;
  int top() const { return static_cast<int>(cells.size()) - 2; }
};

inline ChainComplex augmented_chains(const SimplicialComplex& k) {
  ChainComplex cc;
  const int m = k.vertex_count();
  cc.cells.assign(static_cast<std::size_t>(m) + 1, {});
  const std::uint64_t n = std::uint64_t{1} << m;
  for (std::uint64_t s = 0; s < n; ++s) {
    const Mask f = static_cast<Mask>(s);
    if (k.is_face(f)) cc.cells[std::popcount(f)].push_back(f);
  }
  while (cc.cells.size() > 1 && cc.cells.back().empty()) cc.cells.pop_back();
  for (int d = 0; d <= cc.top(); ++d) {
    const auto& src = cc.cells[d + 1];
    const auto& dst = cc.cells[d];
    SparseMatrix b(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (std::size_t j = 0; j < src.size(); ++j) {
      int i = 0;
      for (Mask rest = src[j]; rest != 0; rest &= rest - 1, ++i) {
        const Mask target = src[j] ^ (rest & -rest);
        const auto it = std::lower_bound(dst.begin(), dst.end(), target);
        b.columns[j].emplace_back(static_cast<int>(it - dst.begin()), (i % 2 == 0) ? 1 : -1);
      }
      std::sort(b.columns[j].begin(), b.columns[j].end());
    }
    cc.boundary.push_back(std::move(b));
  }
  return cc;
}

inline void check_euler_poincare(const ChainComplex& cc, const HomologyProfile& h) {
  long long cells = 0;
  long long homology = 0;
  for (int d = -1; d <= cc.top(); ++d) {
    const long long sign = (d % 2 == 0) ? 1 : -1;
    cells += sign * static_cast<long long>(cc.cells[d + 1].size());
    homology += sign * static_cast<long long>(h.dim(d));
  }
  require(cells == homology, "Euler-Poincare identity violated");
}

}  // namespace detail

inline HomologyProfile reduced_homology(const SimplicialComplex& k, const FieldSpec& field) {
  const auto cc = detail::augmented_chains(k);
  const int top = cc.top();
  std::vector<std::size_t> rank(static_cast<std::size_t>(top) + 2, 0);  // rank[d] = rank of boundary[d]
  for (int d = 0; d <= top; ++d) rank[d] = rank_over_field(cc.boundary[d], field);
  HomologyProfile h;
  for (int d = -1; d <= top; ++d) {
    const std::size_t in = d >= 0 ? rank[d] : 0;
    const std::size_t out = rank[d + 1];
    const std::uint64_t dim = cc.cells[d + 1].size() - in - out;
    if (dim != 0) h.dims[d] = dim;
  }
  detail::check_euler_poincare(cc, h);
  return h;
}

/// Reduced integral homology: Betti numbers in `dims`, invariant factors > 1 in `torsion`.
inline HomologyProfile integral_homology(const SimplicialComplex& k) {
  const auto cc = detail::augmented_chains(k);
  const int top = cc.top();
  std::vector<std::vector<BigInt>> snf(static_cast<std::size_t>(top) + 2);
  std::vector<std::size_t> rank(static_cast<std::size_t>(top) + 2, 0);
  for (int d = 0; d <= top; ++d) {
    snf[d] = smith_normal_form(cc.boundary[d]);
    rank[d] = static_cast<std::size_t>(std::count_if(snf[d].begin(), snf[d].end(), [](const BigInt& x) { return x != 0; }));
  }
  HomologyProfile h;
  for (int d = -1; d <= top; ++d) {
    const std::size_t in = d >= 0 ? rank[d] : 0;
    const std::uint64_t dim = cc.cells[d + 1].size() - in - rank[d + 1];
    if (dim != 0) h.dims[d] = dim;
    if (d + 1 <= top) {
      std::vector<BigInt> tors;
      for (const BigInt& x : snf[d + 1]) {
        if (x > 1) tors.push_back(x);
      }
      if (!tors.empty()) h.torsion[d] = std::move(tors);
    }
  }
  detail::check_euler_poincare(cc, h);
  return h;
}

inline PrimeSet torsion_primes(const HomologyProfile& h) {
  PrimeSet out;
  for (const auto& [d, factors] : h.torsion) {
    for (const BigInt& f : factors) out.merge(prime_factors(f));
  }
  return out;
}

inline PrimeSet integral_torsion_primes(const SimplicialComplex& k) { return torsion_primes(integral_homology(k)); }

/// Sum of dim H_i z^i, including the z^-1 term of {∅}.
inline LaurentPoly homology_series(const HomologyProfile& h) {
  LaurentPoly p;
  for (const auto& [d, dim] : h.dims) p.add_term(d, BigInt(dim));
  return p;
}

}  // namespace loopalg
