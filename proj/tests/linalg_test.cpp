#include <gtest/gtest.h>

#include <boost/multiprecision/integer.hpp>
#include <random>

#include "loopalg/linalg.hpp"
#include "test_util.hpp"

using namespace loopalg;

namespace {

// Laplace expansion; only used on tiny matrices.
BigInt det(const std::vector<std::vector<BigInt>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  BigInt out = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<BigInt>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<BigInt> row;
      for (std::size_t cc = 0; cc < n; ++cc) {
        if (cc != c) row.push_back(a[r][cc]);
      }
      minor.push_back(row);
    }
    const BigInt term = a[0][c] * det(minor);
    out += (c % 2 == 0) ? term : BigInt(-term);
  }
  return out;
}

// gcd of all k x k minors.
BigInt minor_gcd(const IntMatrix& m, int k) {
  BigInt g = 0;
  for (Mask rs = 0; rs < (Mask{1} << m.rows()); ++rs) {
    if (std::popcount(rs) != k) continue;
    for (Mask cs = 0; cs < (Mask{1} << m.cols()); ++cs) {
      if (std::popcount(cs) != k) continue;
      std::vector<std::vector<BigInt>> sub;
      for (int r : VertexSubset(rs).vertices()) {
        std::vector<BigInt> row;
        for (int c : VertexSubset(cs).vertices()) row.push_back(m.at(r - 1, c - 1));
        sub.push_back(row);
      }
      g = boost::multiprecision::gcd(g, detail::abs_big(det(sub)));
    }
  }
  return g;
}

}  // namespace

TEST(Rank, Examples) {
  EXPECT_EQ(rank_over_field(IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, FieldSpec::prime(2)), 3u);
  EXPECT_EQ(rank_over_field(IntMatrix{{2}}, FieldSpec::prime(2)), 0u);
  EXPECT_EQ(rank_over_field(IntMatrix{{2}}, FieldSpec::rational()), 1u);
  // Edges 12, 13, 23 to vertices 1, 2, 3.
  const IntMatrix d1{{-1, -1, 0}, {1, 0, -1}, {0, 1, 1}};
  EXPECT_EQ(rank_over_field(d1, FieldSpec::rational()), 2u);
}

TEST(Field, Validation) {
  EXPECT_THROW(FieldSpec::prime(4), Error);
  EXPECT_THROW(FieldSpec::prime(1), Error);
  EXPECT_EQ(FieldSpec::prime(5).name(), "F_5");
  EXPECT_EQ(FieldSpec::rational().name(), "Q");
}

TEST(Smith, Examples) {
  EXPECT_EQ(smith_normal_form(IntMatrix{{1, 0}, {0, 1}}), (std::vector<BigInt>{1, 1}));
  EXPECT_EQ(smith_normal_form(IntMatrix{{2, 0}, {0, 3}}), (std::vector<BigInt>{1, 6}));
  EXPECT_EQ(smith_normal_form(IntMatrix{{0}}), (std::vector<BigInt>{0}));
  EXPECT_EQ(smith_normal_form(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}), (std::vector<BigInt>{2, 6, 12}));
}

TEST(Smith, MinorGcdProperty) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> entry(-6, 6), dim(1, 4);
  for (int trial = 0; trial < 300; ++trial) {
    IntMatrix m(dim(rng), dim(rng));
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c) m.at(r, c) = entry(rng) * (trial % 3 == 0 ? 2 : 1);
    }
    const auto snf = smith_normal_form(m);
    ASSERT_EQ(snf.size(), static_cast<std::size_t>(std::min(m.rows(), m.cols())));
    BigInt prod = 1;
    for (std::size_t k = 0; k < snf.size(); ++k) {
      if (k + 1 < snf.size() && snf[k + 1] != 0) {
        ASSERT_EQ(snf[k + 1] % snf[k], 0);
      }
      prod *= snf[k];
      ASSERT_EQ(prod, minor_gcd(m, static_cast<int>(k) + 1)) << "k=" << k + 1;
    }
    // The sparse path agrees with the dense one.
    SparseMatrix s(m.rows(), m.cols());
    for (int c = 0; c < m.cols(); ++c) {
      for (int r = 0; r < m.rows(); ++r) {
        if (m.at(r, c) != 0) s.columns[c].emplace_back(r, static_cast<std::int64_t>(m.at(r, c)));
      }
    }
    ASSERT_EQ(smith_normal_form(s), snf);
    for (std::uint64_t p : {0u, 2u, 3u, 5u}) {
      const FieldSpec f = p == 0 ? FieldSpec::rational() : FieldSpec::prime(p);
      ASSERT_EQ(rank_over_field(s, f), rank_over_field(m, f));
    }
  }
}

TEST(Homology, EmptyComplexHasDegreeMinusOne) {
  const auto h = reduced_homology(SimplicialComplex(), FieldSpec::rational());
  EXPECT_EQ(h.dims, (std::map<int, std::uint64_t>{{-1, 1}}));
  EXPECT_EQ(homology_series(h), LaurentPoly::monomial(1, -1));
}

TEST(Homology, Examples) {
  EXPECT_TRUE(reduced_homology(SimplicialComplex::simplex(1), FieldSpec::rational()).dims.empty());
  EXPECT_EQ(homology_series(reduced_homology(SimplicialComplex::discrete(3), FieldSpec::rational())), LaurentPoly::constant(2));
  for (int m = 3; m <= 6; ++m) {
    EXPECT_EQ(homology_series(reduced_homology(SimplicialComplex::cycle(m), FieldSpec::prime(3))), LaurentPoly::monomial(1, 1));
  }
  EXPECT_TRUE(integral_torsion_primes(SimplicialComplex::simplex_boundary(3)).empty());
  EXPECT_TRUE(integral_torsion_primes(SimplicialComplex()).empty());
}

TEST(Homology, ProjectivePlane) {
  const auto rp2 = loopalg::testing::projective_plane();
  EXPECT_EQ(reduced_homology(rp2, FieldSpec::prime(2)).dims, (std::map<int, std::uint64_t>{{1, 1}, {2, 1}}));
  EXPECT_TRUE(reduced_homology(rp2, FieldSpec::rational()).dims.empty());
  EXPECT_TRUE(reduced_homology(rp2, FieldSpec::prime(3)).dims.empty());
  EXPECT_EQ(integral_torsion_primes(rp2), PrimeSet{2});
  const auto z = integral_homology(rp2);
  EXPECT_EQ(z.torsion.at(1), std::vector<BigInt>{2});
}

TEST(Homology, ConesAreAcyclic) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 2 + trial % 6;
    const auto base = loopalg::testing::random_complex(m, rng);
    std::vector<Mask> gens;
    const Mask apex = Mask{1} << m;
    for (Mask f : base.facets()) gens.push_back(f | apex);
    const SimplicialComplex cone(m + 1, gens);
    for (std::uint64_t p : {0u, 2u, 3u}) {
      const FieldSpec f = p == 0 ? FieldSpec::rational() : FieldSpec::prime(p);
      EXPECT_TRUE(reduced_homology(cone, f).dims.empty());
    }
  }
}

TEST(Homology, FiniteFieldRankDropsOnlyAtTorsion) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const auto k = loopalg::testing::random_complex(3 + trial % 5, rng);
    const auto q = reduced_homology(k, FieldSpec::rational());
    const auto primes = integral_torsion_primes(k);
    for (std::uint64_t p : {2u, 3u, 5u}) {
      const auto hp = reduced_homology(k, FieldSpec::prime(p));
      if (primes.count(p)) {
        EXPECT_NE(hp.dims, q.dims);
      } else {
        EXPECT_EQ(hp.dims, q.dims);
      }
    }
  }
}
