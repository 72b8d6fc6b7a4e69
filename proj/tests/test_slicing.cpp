#include "latslice/random.hpp"
#include "latslice/slicing.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace latslice;

namespace {

std::map<IntVector, BigInt> levels(std::initializer_list<std::pair<std::int64_t, int>> xs) {
  std::map<IntVector, BigInt> out;
  for (const auto& [k, n] : xs) {
    out[{k}] = n;
  }
  return out;
}

}  // namespace

TEST(Slicing, Profiles) {
  const auto p = slice_profile(ConvexBody::cross_polytope(3), LatticeSubspace::hyperplane({1, 1, 1}));
  EXPECT_EQ(p.by_translate, levels({{-1, 3}, {0, 1}, {1, 3}}));
  EXPECT_EQ(p.central, 1);
  EXPECT_EQ(p.max_count, 3);
  const auto q = slice_profile(ConvexBody::cube(2), LatticeSubspace::hyperplane({0, 1}));
  EXPECT_EQ(q.by_translate, levels({{-1, 3}, {0, 3}, {1, 3}}));
  const auto r = slice_profile(ConvexBody::box({Rational(1), Rational(2, 5)}),
                               LatticeSubspace::hyperplane({1, 0}));
  EXPECT_EQ(r.by_translate, levels({{-1, 1}, {0, 1}, {1, 1}}));
}

TEST(Slicing, SliceCount) {
  EXPECT_EQ(slice_count(ConvexBody::cross_polytope(3), LatticeSubspace::hyperplane({1, 1, 1})).total, 1);
  EXPECT_EQ(slice_count(ConvexBody::cube(3), LatticeSubspace::hyperplane({0, 0, 1})).total, 9);
  // A line in d = 3.
  const auto line = LatticeSubspace::span({{1, 1, 0}});
  EXPECT_EQ(slice_count(ConvexBody::cube(3), line).total, 3);
}

TEST(Slicing, MaxSliceClosedForms) {
  for (std::size_t d = 2; d <= 4; ++d) {
    const ConvexBody cube = ConvexBody::cube(d);
    const ConvexBody cross = ConvexBody::cross_polytope(d);
    for (std::size_t m = 1; m < d; ++m) {
      const auto a = max_slice(cube, m);
      EXPECT_EQ(a.best_count, pow(BigInt(3), static_cast<unsigned>(m)));
      EXPECT_TRUE(a.exhaustive);
      ASSERT_TRUE(a.witness.has_value());
      EXPECT_EQ(a.witness->dim(), m);
      EXPECT_EQ(slice_count(cube, *a.witness).total, a.best_count);
      const auto b = max_slice(cross, m);
      EXPECT_EQ(b.best_count, BigInt(2 * m + 1));
      EXPECT_TRUE(b.exhaustive);
    }
  }
}

TEST(Slicing, MaxSliceTieBreakIsDeterministic) {
  const auto a = max_slice(ConvexBody::cube(3), 2);
  const auto b = max_slice(ConvexBody::cube(3), 2);
  ASSERT_TRUE(a.witness && b.witness);
  EXPECT_EQ(*a.witness, *b.witness);
  // Among the three coordinate planes the smallest HNF basis wins.
  EXPECT_EQ(a.witness->normal(), (IntVector{1, 0, 0}));
}

TEST(Slicing, MaxSliceArgumentErrors) {
  EXPECT_THROW(max_slice(ConvexBody::cube(3), 0), InvalidArgument);
  EXPECT_THROW(max_slice(ConvexBody::cube(3), 3), InvalidArgument);
}

TEST(Slicing, MaxSliceFallbackIsLowerBound) {
  CandidateStrategy tight;
  tight.exhaustive_limit = 0;
  const auto r = max_slice(ConvexBody::cube(3), 2, tight);
  EXPECT_FALSE(r.exhaustive);
  EXPECT_EQ(r.best_count, 9);
}

TEST(Slicing, OnlyOriginBaseline) {
  // With no lattice points besides the origin every slice counts 1.
  const auto r = max_slice(ConvexBody::cube(3, Rational(1, 2)), 2);
  EXPECT_EQ(r.best_count, 1);
  EXPECT_TRUE(r.exhaustive);
}

TEST(Slicing, Brunn) {
  const auto face = brunn_check(ConvexBody::cross_polytope(3), LatticeSubspace::hyperplane({1, 1, 1}));
  EXPECT_EQ(face.min_ratio, Rational(1, 3));
  EXPECT_EQ(face.bound, Rational(1, 81));
  EXPECT_TRUE(face.holds);
  const auto box = brunn_check(ConvexBody::box({Rational(2), Rational(3, 2), Rational(1)}),
                               LatticeSubspace::hyperplane({0, 1, 0}));
  EXPECT_GE(box.min_ratio, Rational(1));
  EXPECT_TRUE(box.holds);
}

TEST(SlicingProperty, ExhaustiveMaxMatchesNormalOracle) {
  // Lattice points of these bodies lie in [-2,2]^d. A maximizing hyperplane
  // is spanned by lattice points of K, so its primitive normal divides a
  // cross product and has sup-norm <= 8 (d = 3) or <= 2 (d = 2).
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    BodyGenerator gen(seed);
    const std::size_t d = 2 + seed % 2;
    const ConvexBody body = gen.symmetric_polytope(d, d + 1, 2);
    const auto pts = enumerate_points(body);
    const auto r = max_slice(body, d - 1, pts);
    ASSERT_TRUE(r.exhaustive);
    const std::int64_t bound = d == 2 ? 2 : 8;
    EXPECT_EQ(r.best_count, BigInt(oracle::max_hyperplane(pts, d, bound))) << "seed " << seed;
  }
}

TEST(SlicingProperty, ProfileInvariants) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    BodyGenerator gen(1500 + seed);
    const std::size_t d = 2 + seed % 3;
    const ConvexBody body = gen.symmetric_polytope(d);
    const auto pts = enumerate_points(body);
    IntVector u = gen.integer_point(d, 3);
    if (is_zero(u)) {
      continue;
    }
    const auto p = slice_profile(pts, LatticeSubspace::hyperplane(u));
    BigInt total = 0;
    for (const auto& [label, n] : p.by_translate) {
      total += n;
      IntVector neg = label;
      for (auto& c : neg) {
        c = -c;
      }
      ASSERT_TRUE(p.by_translate.count(neg));
      EXPECT_EQ(p.by_translate.at(neg), n);
    }
    EXPECT_EQ(total, BigInt(pts.size()));
    EXPECT_EQ(p.central, BigInt(oracle::count_orthogonal(pts, u)));
    EXPECT_TRUE(brunn_check(p).holds);
  }
}

TEST(SlicingProperty, MaxSliceMonotoneInM) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    BodyGenerator gen(1800 + seed);
    const std::size_t d = 3 + seed % 2;
    const ConvexBody body = gen.symmetric_polytope(d);
    const auto pts = enumerate_points(body);
    BigInt previous = 1;
    for (std::size_t m = 1; m < d; ++m) {
      const auto r = max_slice(body, m, pts);
      EXPECT_GE(r.best_count, previous) << "seed " << seed << " m " << m;
      previous = r.best_count;
      EXPECT_EQ(slice_count(body, *r.witness).total, r.best_count);
    }
  }
}

TEST(SlicingProperty, UnconditionalDominance) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    BodyGenerator gen(2100 + seed);
    const std::size_t d = 2 + seed % 3;
    const ConvexBody body = gen.unconditional_body(d);
    const auto pts = enumerate_points(body);
    for (std::size_t i = 0; i < d; ++i) {
      IntVector e(d, 0);
      e[i] = 1;
      const auto p = slice_profile(pts, LatticeSubspace::hyperplane(e));
      EXPECT_EQ(p.central, p.max_count) << body.label();
    }
  }
}
