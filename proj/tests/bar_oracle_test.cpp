#include <gtest/gtest.h>

#include <random>

#include "loopalg/bar_oracle.hpp"
#include "test_util.hpp"

using namespace loopalg;

namespace {

const FieldSpec kQ = FieldSpec::rational();
const VertexSubset k12 = VertexSubset::of({1, 2});

}  // namespace

TEST(BarBasis, Examples) {
  const auto b1 = SimplicialComplex::simplex_boundary(2);
  EXPECT_EQ(bar_basis(b1, k12, 2), (std::vector<BarWord>{{0b01, 0b10}, {0b10, 0b01}}));
  EXPECT_TRUE(bar_basis(b1, k12, 1).empty());
  EXPECT_EQ(bar_basis(SimplicialComplex::simplex(2), k12, 1), (std::vector<BarWord>{{0b11}}));
}

TEST(BarBasis, CountsOrderedPartitionsForSimplex) {
  // For a simplex every block is a face: ordered set partitions, n! S(k, n).
  const auto k = SimplicialComplex::simplex(4);
  const VertexSubset j = VertexSubset::full(4);
  const std::vector<std::size_t> expected{0, 1, 14, 36, 24};
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(bar_basis(k, j, n).size(), expected[n]);
}

TEST(BarDifferential, Examples) {
  const auto d = bar_differential(SimplicialComplex::simplex(2), k12, 2).to_dense();
  ASSERT_EQ(d.rows(), 1);
  ASSERT_EQ(d.cols(), 2);
  EXPECT_EQ(d.at(0, 0), -1);
  EXPECT_EQ(d.at(0, 1), -1);

  const auto zero = bar_differential(SimplicialComplex::simplex_boundary(2), k12, 2);
  for (const auto& col : zero.columns) EXPECT_TRUE(col.empty());

  const auto to_zero = bar_differential(SimplicialComplex::simplex(3), VertexSubset::of({2}), 1);
  EXPECT_EQ(to_zero.rows, 0);
  EXPECT_EQ(to_zero.cols, 1);
}

TEST(TorDims, Examples) {
  EXPECT_EQ(tor_dims(SimplicialComplex::simplex_boundary(2), k12, kQ), (std::map<int, std::uint64_t>{{2, 2}}));
  EXPECT_EQ(tor_dims(SimplicialComplex::simplex(2), k12, kQ), (std::map<int, std::uint64_t>{{2, 1}}));
  const auto c4 = SimplicialComplex::cycle(4);
  for (int v = 1; v <= 4; ++v) EXPECT_EQ(tor_dims(c4, VertexSubset::of({v}), kQ), (std::map<int, std::uint64_t>{{1, 1}}));
  EXPECT_EQ(tor_dims(c4, VertexSubset(), kQ), (std::map<int, std::uint64_t>{{0, 1}}));
}

// Tor_1(k,k) is spanned by the generators and Tor_2(k,k) = Λ²V ⊕ I/mI, so in
// squarefree degrees the missing faces are read off from Tor_2.
TEST(TorDims, LowDegreesSeeGeneratorsAndMissingFaces) {
  std::mt19937_64 rng(31);
  std::vector<SimplicialComplex> suite;
  for (int m = 1; m <= 4; ++m) {
    for (const auto& k : loopalg::testing::all_complexes(m)) suite.push_back(k);
  }
  for (int i = 0; i < 40; ++i) suite.push_back(loopalg::testing::random_complex(5, rng));
  for (const auto& k : suite) {
    const auto mf = missing_faces(k);
    for (Mask j = 1; j < (Mask{1} << k.vertex_count()); ++j) {
      const auto dims = tor_dims(k, VertexSubset(j), kQ);
      const auto dim = [&](int n) { return dims.count(n) ? dims.at(n) : std::uint64_t{0}; };
      const std::uint64_t missing = std::find(mf.begin(), mf.end(), VertexSubset(j)) != mf.end();
      const int size = std::popcount(j);
      EXPECT_EQ(dim(1), size == 1 ? 1u : 0u);
      EXPECT_EQ(dim(2), (size == 2 ? 1u : 0u) + missing);
      for (const auto& [n, d] : dims) {
        EXPECT_GE(n, 1);
        EXPECT_LE(n, size);
      }
    }
  }
}

TEST(Oracle, Examples) {
  EXPECT_EQ(oracle_bb_table(SimplicialComplex::simplex_boundary(2), kQ)[0b11u], LaurentPoly::monomial(-1, 2));
  EXPECT_TRUE(oracle_bb_table(SimplicialComplex::simplex(2), kQ)[0b11u].is_zero());
  EXPECT_EQ(oracle_bb_table(SimplicialComplex::simplex_boundary(3), kQ)[0b111u], LaurentPoly::monomial(-1, 2));
  try {
    oracle_bb_table(SimplicialComplex::simplex(7), kQ);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooLarge);
  }
}

TEST(Verify, Examples) {
  EXPECT_TRUE(verify(SimplicialComplex::simplex_boundary(3), FieldSpec::prime(2)).ok);
  EXPECT_TRUE(verify(SimplicialComplex::cycle(4), FieldSpec::prime(3)).ok);
  for (int m = 0; m <= 4; ++m) {
    for (const auto& k : loopalg::testing::all_complexes(m)) {
      const auto r = verify(k, kQ);
      EXPECT_TRUE(r.ok) << r.discrepancy;
    }
  }
}

TEST(Verify, ProjectivePlaneOverBothFields) {
  const auto rp2 = loopalg::testing::projective_plane();
  for (std::uint64_t p : {0u, 2u, 3u}) {
    const FieldSpec f = p == 0 ? kQ : FieldSpec::prime(p);
    const auto r = verify(rp2, f, 6, {kDefaultMaxMissingFaces, 2});
    EXPECT_TRUE(r.ok) << f.name() << ": " << r.discrepancy;
  }
}
