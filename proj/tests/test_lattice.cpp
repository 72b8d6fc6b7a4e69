#include "latslice/lattice.hpp"
#include "latslice/random.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace latslice;

namespace {

ConvexBody thin_box() { return ConvexBody::box({Rational(1), Rational(2, 5)}); }

// Random H-description: a box of half-widths <= 6 plus a few random rows.
std::vector<oracle::Row> random_rows(BodyGenerator& gen, std::size_t d) {
  std::vector<oracle::Row> rows;
  for (std::size_t i = 0; i < d; ++i) {
    RationalVector e(d, Rational(0));
    e[i] = 1;
    const Rational r(gen.uniform(1, 24), 4);
    rows.push_back({e, r});
    e[i] = -1;
    rows.push_back({e, r});
  }
  for (int k = 0; k < 3; ++k) {
    RationalVector a(d);
    for (auto& c : a) {
      c = gen.uniform(-3, 3);
    }
    if (is_zero(a)) {
      continue;
    }
    const Rational b(gen.uniform(1, 30), gen.uniform(1, 3));
    rows.push_back({a, b});
    RationalVector na = a;
    for (auto& c : na) {
      c = -c;
    }
    rows.push_back({na, b});
  }
  return rows;
}

ConvexBody from_rows(std::size_t d, const std::vector<oracle::Row>& rows) {
  std::vector<HalfSpaceRow> h;
  for (const auto& r : rows) {
    h.push_back({r.a, r.b});
  }
  return ConvexBody::from_hrep(d, h, SymmetryMode::Strict);
}

}  // namespace

TEST(Lattice, Enumerate) {
  EXPECT_EQ(enumerate_points(ConvexBody::cube(2)).size(), 9U);
  const auto cross = enumerate_points(ConvexBody::cross_polytope(3));
  ASSERT_EQ(cross.size(), 7U);
  EXPECT_EQ(cross.front(), (IntVector{-1, 0, 0}));
  EXPECT_EQ(cross.back(), (IntVector{1, 0, 0}));
  EXPECT_TRUE(std::is_sorted(cross.begin(), cross.end()));
  const std::vector<IntVector> thin{{-1, 0}, {0, 0}, {1, 0}};
  EXPECT_EQ(enumerate_points(thin_box()), thin);
}

TEST(Lattice, Count) {
  EXPECT_EQ(count_points(ConvexBody::cube(3)).total, 27);
  EXPECT_EQ(count_points(ConvexBody::cross_polytope(4)).total, 9);
  EXPECT_EQ(count_points(ConvexBody::cross_polytope(2, Rational(2))).total, 13);
}

TEST(Lattice, SublatticeOfHyperplane) {
  const auto h3 = LatticeSubspace::hyperplane({0, 0, 1});
  EXPECT_EQ(h3.dim(), 2U);
  EXPECT_EQ(h3.lattice().gram_determinant(), 1);
  const auto h2 = LatticeSubspace::hyperplane({1, 1});
  EXPECT_EQ(h2.lattice().gram_determinant(), 2);
  ASSERT_EQ(h2.basis().size(), 1U);
  EXPECT_EQ(primitive_canonical(h2.basis()[0]), (IntVector{1, -1}));
  const auto h = LatticeSubspace::hyperplane({1, 2, 3});
  EXPECT_EQ(h.dim(), 2U);
  EXPECT_EQ(linalg::maximal_minor_gcd(h.basis()), 1);
  // det(Z^d ∩ u^⊥)^2 = |u|^2 for primitive u.
  EXPECT_EQ(h.lattice().gram_determinant(), 14);
  // Non-primitive normals describe the same hyperplane.
  EXPECT_EQ(LatticeSubspace::hyperplane({-2, -4, -6}), h);
}

TEST(Lattice, SpanSubspace) {
  const auto s = LatticeSubspace::span({{2, 0, 0}, {0, 2, 2}});
  EXPECT_EQ(s.dim(), 2U);
  EXPECT_TRUE(s.contains({1, 1, 1}));
  EXPECT_FALSE(s.contains({1, 1, 0}));
  EXPECT_EQ(s, LatticeSubspace::span({{1, 1, 1}, {1, 0, 0}}));
  EXPECT_THROW(LatticeSubspace::span({{1, 1, 1}, {2, 2, 2}}), InvalidArgument);
}

TEST(Lattice, DimOfSpan) {
  EXPECT_EQ(dim_of_lattice_span(ConvexBody::cube(2)), 2U);
  EXPECT_EQ(dim_of_lattice_span(thin_box()), 1U);
  EXPECT_EQ(dim_of_lattice_span(ConvexBody::cube(3, Rational(1, 2))), 0U);
}

TEST(Lattice, ProjectCount) {
  EXPECT_EQ(project_count(ConvexBody::cube(2), {{1, 0}}).total, 3);
  EXPECT_EQ(project_count(ConvexBody::cross_polytope(3), {{1, 0, 0}, {0, 1, 0}}).total, 5);
  EXPECT_EQ(project_count(ConvexBody::cube(3), {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}).total, 27);
  EXPECT_THROW(project_count(ConvexBody::cube(2), {{1, 1}, {2, 2}}), InvalidArgument);
}

TEST(Lattice, NonStandardLattice) {
  // 2Z^2 inside [-3,3]^2: coordinates in {-2,0,2}.
  const Lattice two({{2, 0}, {0, 2}});
  EXPECT_EQ(count_points(ConvexBody::cube(2, Rational(3)), two).total, 9);
  EXPECT_EQ(two.determinant(), 4);
  // Rank-one lattice along (1,1): points t(1,1) with |t| <= 2.
  const Lattice diag({{1, 1}});
  EXPECT_EQ(count_points(ConvexBody::cube(2, Rational(5, 2)), diag).total, 5);
}

TEST(Lattice, LevelsOfCrossPolytope) {
  const PointCount c = count_points_by_level(ConvexBody::cross_polytope(3), {1, 1, 1});
  ASSERT_TRUE(c.by_level.has_value());
  const std::map<std::int64_t, BigInt> expected{{-1, 3}, {0, 1}, {1, 3}};
  EXPECT_EQ(*c.by_level, expected);
  EXPECT_EQ(c.total, 7);
}

TEST(Lattice, CubeScaling) {
  for (std::size_t d = 1; d <= 4; ++d) {
    for (int num = 1; num <= 12; ++num) {
      const Rational r(num, 3);
      const BigInt side = 2 * floor(r) + 1;
      EXPECT_EQ(count_points(ConvexBody::cube(d, r)).total, pow(side, static_cast<unsigned>(d)));
    }
  }
}

TEST(LatticeProperty, EnumerationMatchesGridScan) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    BodyGenerator gen(seed);
    const std::size_t d = 1 + seed % 3;
    const auto rows = random_rows(gen, d);
    const ConvexBody body = from_rows(d, rows);
    EXPECT_EQ(enumerate_points(body), oracle::scan(rows, d, 6)) << "seed " << seed;
    EXPECT_EQ(count_points(body).total, BigInt(oracle::scan(rows, d, 6).size()));
  }
}

TEST(LatticeProperty, SublatticeCountsMatchScan) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    BodyGenerator gen(500 + seed);
    const std::size_t d = 2 + seed % 2;
    const auto rows = random_rows(gen, d);
    const ConvexBody body = from_rows(d, rows);
    IntVector u = gen.integer_point(d, 3);
    if (is_zero(u)) {
      continue;
    }
    const auto h = LatticeSubspace::hyperplane(u);
    EXPECT_EQ(count_points(body, h.lattice()).total,
              BigInt(oracle::count_orthogonal(oracle::scan(rows, d, 6), u)))
        << "seed " << seed;
  }
}

TEST(LatticeProperty, LevelsAdditiveAndSymmetric) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    BodyGenerator gen(700 + seed);
    const std::size_t d = 2 + seed % 3;
    const ConvexBody body = gen.symmetric_polytope(d);
    IntVector u = gen.integer_point(d, 3);
    if (is_zero(u)) {
      continue;
    }
    u = primitive_canonical(u);
    const PointCount c = count_points_by_level(body, u);
    BigInt sum = 0;
    for (const auto& [level, n] : *c.by_level) {
      sum += n;
      ASSERT_TRUE(c.by_level->count(-level));
      EXPECT_EQ(c.by_level->at(-level), n);
      EXPECT_LE(Rational(std::abs(level)), body.support(u));
    }
    EXPECT_EQ(sum, c.total);
    EXPECT_EQ(c.total, count_points(body).total);
  }
}
