#include <gtest/gtest.h>

#include <random>

#include "loopalg/complex.hpp"
#include "test_util.hpp"

using namespace loopalg;
using loopalg::testing::make;

namespace {

std::vector<Mask> face_masks(const SimplicialComplex& k) {
  std::vector<Mask> out;
  for (VertexSubset f : k.faces()) out.push_back(f.bits());
  return out;
}

}  // namespace

TEST(Validate, ClosesPath) {
  const auto k = make(3, {{1, 2}, {2, 3}});
  EXPECT_EQ(face_masks(k), (std::vector<Mask>{0, 1, 2, 3, 4, 6}));
  EXPECT_EQ(k.facets(), (std::vector<Mask>{3, 6}));
}

TEST(Validate, Errors) {
  try {
    make(2, {{1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GhostVertex);
  }
  try {
    make(2, {{1, 3}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfRange);
  }
  try {
    validate({{1}}, 25);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooLarge);
  }
}

TEST(Validate, EmptyComplex) {
  const auto k = make(0, {});
  EXPECT_EQ(k.vertex_count(), 0);
  EXPECT_EQ(face_masks(k), std::vector<Mask>{0});
  EXPECT_EQ(k, SimplicialComplex());
}

TEST(FullSubcomplex, Examples) {
  const auto c4 = SimplicialComplex::cycle(4);
  const auto pts = full_subcomplex(c4, VertexSubset::of({1, 3}));
  EXPECT_EQ(pts, SimplicialComplex::discrete(2));
  EXPECT_EQ(pts.labels(), (std::vector<int>{1, 3}));
  EXPECT_EQ(full_subcomplex(c4, VertexSubset()), SimplicialComplex());
  EXPECT_EQ(full_subcomplex(SimplicialComplex::simplex_boundary(3), VertexSubset::of({1, 2})), SimplicialComplex::simplex(2));
}

TEST(FullSubcomplex, MatchesBruteForceAndIsIdempotent) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 1 + trial % 8;
    const auto k = loopalg::testing::random_complex(m, rng);
    for (Mask j = 0; j < (Mask{1} << m); ++j) {
      const auto sub = full_subcomplex(k, VertexSubset(j));
      std::vector<Mask> expected;
      for (VertexSubset f : k.faces()) {
        if (f.is_subset_of(VertexSubset(j))) expected.push_back(compress(f.bits(), j));
      }
      std::sort(expected.begin(), expected.end());
      ASSERT_EQ(face_masks(sub), expected);
      const auto again = full_subcomplex(sub, VertexSubset::full(sub.vertex_count()));
      ASSERT_EQ(again, sub);
    }
  }
}

TEST(MissingFaces, Examples) {
  EXPECT_EQ(missing_faces(SimplicialComplex::simplex_boundary(3)), std::vector<VertexSubset>{VertexSubset::of({1, 2, 3})});
  EXPECT_EQ(missing_faces(SimplicialComplex::discrete(3)),
            (std::vector<VertexSubset>{VertexSubset::of({1, 2}), VertexSubset::of({1, 3}), VertexSubset::of({2, 3})}));
  EXPECT_TRUE(missing_faces(SimplicialComplex::simplex(4)).empty());
}

TEST(MissingFaces, DefinitionAndSperner) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 2 + trial % 7;
    const auto k = loopalg::testing::random_complex(m, rng);
    const auto mf = missing_faces(k);
    EXPECT_LE(mf.size(), binomial(m, m / 2));
    EXPECT_NO_THROW(check_sperner(mf, m));
    for (VertexSubset f : mf) {
      EXPECT_FALSE(k.is_face(f));
      EXPECT_GE(f.size(), 2);
      for (int v : f.vertices()) EXPECT_TRUE(k.is_face(f - VertexSubset::of({v})));
    }
  }
}

TEST(Flag, Examples) {
  EXPECT_TRUE(is_flag(SimplicialComplex::cycle(4)));
  EXPECT_EQ(missing_faces(SimplicialComplex::cycle(4)),
            (std::vector<VertexSubset>{VertexSubset::of({1, 3}), VertexSubset::of({2, 4})}));
  EXPECT_FALSE(is_flag(SimplicialComplex::simplex_boundary(3)));
  EXPECT_TRUE(is_flag(SimplicialComplex::simplex(3)));
}

TEST(Neighbourly, Examples) {
  EXPECT_TRUE(is_k_neighbourly(SimplicialComplex::simplex_boundary(3), 1));
  EXPECT_FALSE(is_k_neighbourly(SimplicialComplex::cycle(4), 1));
  EXPECT_TRUE(is_k_neighbourly(SimplicialComplex::cycle(5), 0));
  EXPECT_THROW(is_k_neighbourly(SimplicialComplex::cycle(5), -1), Error);
}

TEST(Euler, Examples) {
  EXPECT_EQ(euler_char(SimplicialComplex::discrete(2)), 2);
  EXPECT_EQ(euler_char(SimplicialComplex::cycle(4)), 0);
  EXPECT_EQ(euler_char(SimplicialComplex()), 0);
  EXPECT_EQ(euler_char(loopalg::testing::projective_plane()), 1);
}

TEST(LinkDeletion, Examples) {
  const auto c4 = SimplicialComplex::cycle(4);
  const auto lk = link(c4, 1);
  EXPECT_EQ(lk.vertex_count(), 3);
  EXPECT_EQ(lk.labels(), (std::vector<int>{2, 3, 4}));
  EXPECT_EQ(lk.facets(), (std::vector<Mask>{0b001, 0b100}));  // {2} and {4}; 3 is a ghost
  EXPECT_EQ(lk.ghost_vertices(), std::vector<int>{2});

  const auto del = deletion(c4, 1);
  EXPECT_EQ(del, make(3, {{1, 2}, {2, 3}}));
  EXPECT_EQ(del.labels(), (std::vector<int>{2, 3, 4}));

  const auto lk2 = link(SimplicialComplex::simplex(3), 1);
  EXPECT_EQ(lk2, SimplicialComplex::simplex(2));
}

TEST(Enumeration, CountsSmallComplexes) {
  EXPECT_EQ(loopalg::testing::all_complexes(0).size(), 1u);
  EXPECT_EQ(loopalg::testing::all_complexes(1).size(), 1u);
  EXPECT_EQ(loopalg::testing::all_complexes(2).size(), 2u);
  EXPECT_EQ(loopalg::testing::all_complexes(3).size(), 9u);
  for (const auto& k : loopalg::testing::all_complexes(4)) EXPECT_TRUE(k.ghost_vertices().empty());
}
