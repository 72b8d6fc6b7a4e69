#include "latslice/random.hpp"
#include "latslice/verify.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace latslice;

namespace {

void expect_all_pass(const SlicingReport& r) {
  EXPECT_EQ(r.status, ReportStatus::Passed) << r.body << " " << r.hypothesis;
  for (const auto& e : r.chain) {
    EXPECT_TRUE(e.pass) << r.body << ": " << e.name << " " << e.detail;
  }
}

}  // namespace

TEST(Pick, Examples) {
  const auto sq = pick_quantities({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
  EXPECT_EQ(sq.area, Rational(4));
  EXPECT_EQ(sq.interior, 1);
  EXPECT_EQ(sq.boundary, 8);
  EXPECT_TRUE(sq.identity_holds);
  const auto tri = pick_quantities({{0, 0}, {2, 0}, {0, 2}});
  EXPECT_EQ(tri.area, Rational(2));
  EXPECT_EQ(tri.interior, 0);
  EXPECT_EQ(tri.boundary, 6);
  const auto diamond = pick_quantities(convex_hull_2d(enumerate_points(ConvexBody::cross_polytope(2))));
  EXPECT_EQ(diamond.area, Rational(2));
  EXPECT_EQ(diamond.interior, 1);
  EXPECT_EQ(diamond.boundary, 4);
}

TEST(Pick, Errors) {
  // (0,0) lies strictly inside the hull of the other four.
  EXPECT_THROW(pick_quantities({{2, 0}, {0, 2}, {-2, 0}, {0, -2}, {0, 0}}), InvalidArgument);
  EXPECT_THROW(pick_quantities({{0, 0}, {1, 1}, {2, 2}}), InvalidArgument);
  EXPECT_THROW(pick_quantities({{0, 0}, {1, 1}}), InvalidArgument);
  // Collinear boundary points are accepted.
  EXPECT_TRUE(pick_quantities({{0, 0}, {1, 0}, {2, 0}, {0, 2}}).identity_holds);
}

TEST(PickProperty, RandomPolygonsAgainstOracle) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    BodyGenerator gen(seed);
    const auto poly = gen.integral_polygon();
    const auto q = pick_quantities(poly);
    EXPECT_TRUE(q.identity_holds) << "seed " << seed;
    const auto hull = oracle::gift_wrap(poly);
    EXPECT_EQ(q.area, Rational(oracle::twice_area(hull), 2));
    std::set<IntVector> boundary;
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const auto seg = oracle::segment_points(hull[i], hull[(i + 1) % hull.size()]);
      boundary.insert(seg.begin(), seg.end());
    }
    EXPECT_EQ(q.boundary, BigInt(boundary.size())) << "seed " << seed;
  }
}

TEST(VerifyDim2, Examples) {
  const auto cube = verify_dim2(ConvexBody::cube(2));
  expect_all_pass(cube);
  EXPECT_EQ(cube.count_total, 9);
  EXPECT_EQ(cube.max_slice->best_count, 3);
  EXPECT_EQ(cube.volume, Rational(4));

  const auto box = verify_dim2(ConvexBody::box({Rational(5), Rational(1)}));
  expect_all_pass(box);
  EXPECT_EQ(box.count_total, 33);
  EXPECT_EQ(box.max_slice->best_count, 11);
  EXPECT_EQ(box.volume, Rational(20));

  const auto hex = verify_dim2(ConvexBody::from_vrep(2, {to_rational(IntVector{2, 1}),
                                                          to_rational(IntVector{1, 2})}));
  expect_all_pass(hex);
  // conv{±(2,1), ±(1,2)} = {|y - x| <= 1, |x + y| <= 3}
  EXPECT_EQ(hex.count_total, 11);
  EXPECT_EQ(hex.volume, Rational(6));
}

TEST(VerifyDim2, HypothesisViolation) {
  const auto r = verify_dim2(ConvexBody::box({Rational(1), Rational(2, 5)}));
  EXPECT_EQ(r.status, ReportStatus::HypothesisViolated);
  EXPECT_FALSE(r.hypothesis.empty());
  EXPECT_THROW(verify_dim2(ConvexBody::cube(3)), InvalidArgument);
}

TEST(VerifyUnconditional, Examples) {
  const auto cube = verify_unconditional(ConvexBody::cube(3));
  expect_all_pass(cube);
  EXPECT_EQ(cube.entry("unconditional_count_bound")->detail, "27 <= 3*9");
  const auto cross = verify_unconditional(ConvexBody::cross_polytope(3));
  expect_all_pass(cross);
  EXPECT_EQ(cross.entry("unconditional_count_bound")->detail, "7 <= 3*5");
  const auto box = verify_unconditional(ConvexBody::box({Rational(3), Rational(1)}));
  expect_all_pass(box);
  EXPECT_EQ(box.lambdas.back(), Rational(1));
  EXPECT_EQ(box.entry("unconditional_count_bound")->detail, "21 <= 3*7");
  EXPECT_THROW(verify_unconditional(ConvexBody::from_vrep(2, {to_rational(IntVector{2, 1}),
                                                              to_rational(IntVector{1, 2})})),
               InvalidArgument);
}

TEST(VerifyMain, ObservedConstants) {
  const auto cube2 = verify_main(ConvexBody::cube(3), 2);
  expect_all_pass(cube2);
  EXPECT_EQ(cube2.observed_constant_power, Rational(27, 8));  // (3/2)^3
  EXPECT_NEAR(cube2.observed_constant, 1.5, 1e-12);
  const auto cross2 = verify_main(ConvexBody::cross_polytope(3), 2);
  expect_all_pass(cross2);
  EXPECT_EQ(cross2.observed_constant_power, Rational(343, 125) / Rational(4, 3));
  const auto cube1 = verify_main(ConvexBody::cube(3), 1);
  expect_all_pass(cube1);
  EXPECT_EQ(cube1.observed_constant_power, pow(Rational(9, 4), 3));
  ASSERT_TRUE(cube1.mahler_volume.has_value());
  EXPECT_EQ(*cube1.mahler_volume, Rational(32, 3));
}

TEST(VerifyMain, Errors) {
  EXPECT_THROW(verify_main(ConvexBody::cube(3), 0), InvalidArgument);
  EXPECT_THROW(verify_main(ConvexBody::cube(3), 3), InvalidArgument);
  EXPECT_EQ(verify_main(ConvexBody::cube(3, Rational(1, 2)), 1).status,
            ReportStatus::HypothesisViolated);
}

TEST(VerifyProperty, RandomChains) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    BodyGenerator gen(seed);
    const std::size_t d = 2 + seed % 3;
    const ConvexBody body = gen.symmetric_polytope(d);
    for (std::size_t m = 1; m < d; ++m) {
      expect_all_pass(verify_main(body, m));
    }
    expect_all_pass(verify_unconditional(gen.unconditional_body(d)));
    expect_all_pass(verify_dim2(gen.rational_planar_body()));
  }
}

TEST(VerifyProperty, ObservedPlanarConstantAtMostFour) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    BodyGenerator gen(4000 + seed);
    const auto r = verify_dim2(gen.rational_planar_body());
    EXPECT_LE(r.observed_constant_power, Rational(16));
  }
}

TEST(Packing, Examples) {
  EXPECT_TRUE(packing_lemma_check({{0, 0}}, {{0, 0}}, Lattice::standard(2)).holds);
  std::vector<IntVector> grid;
  for (std::int64_t x = -1; x <= 1; ++x) {
    for (std::int64_t y = -1; y <= 1; ++y) {
      grid.push_back({x, y});
    }
  }
  const auto r = packing_lemma_check(grid, {{0, 0}}, Lattice({{2, 0}, {0, 2}}));
  EXPECT_EQ(r.lhs, 1);
  EXPECT_EQ(r.rhs, 9);
  EXPECT_TRUE(r.holds);
}

TEST(PackingProperty, RandomInstances) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    BodyGenerator gen(seed);
    std::vector<IntVector> a;
    std::vector<IntVector> p;
    for (int i = 0; i < 10; ++i) {
      a.push_back(gen.integer_point(2, 5));
    }
    for (int i = 0; i < 3; ++i) {
      p.push_back(gen.integer_point(2, 2));
    }
    linalg::IntMatrix basis;
    do {
      basis = {gen.integer_point(2, 3), gen.integer_point(2, 3)};
    } while (linalg::small_determinant(basis) == 0);
    EXPECT_TRUE(packing_lemma_check(a, p, Lattice(basis)).holds) << "seed " << seed;
  }
}

TEST(Covering, Examples) {
  const auto a = covering_lemma_check(ConvexBody::cube(2), 2);
  EXPECT_EQ(a.points, 25U);
  EXPECT_LE(a.cover_size, 25U);
  EXPECT_EQ(a.bound, 81);
  EXPECT_TRUE(a.holds);
  const auto b = covering_lemma_check(ConvexBody::cross_polytope(2), 1);
  EXPECT_EQ(b.cover_size, 1U);
  EXPECT_EQ(b.bound, 25);
  const auto c = covering_lemma_check(ConvexBody::cube(1), 3);
  EXPECT_EQ(c.points, 7U);
  EXPECT_EQ(c.bound, 13);
  EXPECT_TRUE(c.holds);
}

TEST(Covering, CentersCoverEveryPoint) {
  const ConvexBody body = ConvexBody::cross_polytope(3);
  const auto r = covering_lemma_check(body, 2);
  const auto tile = enumerate_points(body);
  for (const auto& x : enumerate_points(body.scaled(Rational(2)))) {
    bool covered = false;
    for (const auto& t : r.centers) {
      IntVector diff(3);
      for (std::size_t j = 0; j < 3; ++j) {
        diff[j] = x[j] - t[j];
      }
      covered = covered || std::binary_search(tile.begin(), tile.end(), diff);
    }
    EXPECT_TRUE(covered) << to_string(x);
  }
}

TEST(Gauss, Examples) {
  const auto sq = gauss_scaling(ConvexBody::cube(2), {Rational(1), Rational(2), Rational(3)});
  ASSERT_EQ(sq.rows.size(), 3U);
  EXPECT_EQ(sq.rows[0].count, 9);
  EXPECT_EQ(sq.rows[1].count, 25);
  EXPECT_EQ(sq.rows[2].count, 49);
  EXPECT_EQ(sq.rows[0].abs_deviation, Rational(5));
  EXPECT_EQ(sq.rows[1].abs_deviation, Rational(9));
  EXPECT_EQ(sq.rows[2].abs_deviation, Rational(13));
  const auto cube = gauss_scaling(ConvexBody::cube(3), {Rational(10)});
  EXPECT_EQ(cube.rows[0].count, 9261);
  EXPECT_EQ(cube.rows[0].expected, Rational(8000));
  EXPECT_LT(cube.rows[0].abs_deviation, Rational(1300));
  const auto cross = gauss_scaling(ConvexBody::cross_polytope(2), {Rational(2), Rational(4), Rational(8)});
  for (const auto& row : cross.rows) {
    const auto rows = std::vector<oracle::Row>{
        {{Rational(1), Rational(1)}, row.radius}, {{Rational(1), Rational(-1)}, row.radius},
        {{Rational(-1), Rational(1)}, row.radius}, {{Rational(-1), Rational(-1)}, row.radius}};
    EXPECT_EQ(row.count, BigInt(oracle::scan(rows, 2, 8).size()));
  }
  EXPECT_TRUE(cross.relative_decreasing);
}

TEST(Gauss, Section) {
  const auto r = gauss_scaling(ConvexBody::cube(3), {Rational(5), Rational(10)}, IntVector{1, 1, 0});
  ASSERT_TRUE(r.section.has_value());
  EXPECT_EQ(r.section->gram_determinant, 2);
  // [-1,1]^3 ∩ {x = -y} in coordinates of (1,-1,0), (0,0,1) is [-1,1]^2.
  EXPECT_EQ(r.section->normalized_volume, Rational(4));
  EXPECT_EQ(r.section->rows[0].count, 121);
}
