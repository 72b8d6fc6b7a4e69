#ifndef LATSLICE_RANDOM_HPP
#define LATSLICE_RANDOM_HPP

#include "latslice/body.hpp"
#include "latslice/verify.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace latslice {

/// Seeded generators for the property and acceptance suites. Integers are
/// drawn by modular reduction of raw mt19937_64 output so that a seed gives
/// the same bodies with every standard library.
class BodyGenerator {
public:
  explicit BodyGenerator(std::uint64_t seed) : rng_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng_() % span);
  }

  IntVector integer_point(std::size_t d, std::int64_t radius) {
    IntVector x(d);
    for (auto& c : x) {
      c = uniform(-radius, radius);
    }
    return x;
  }

  /// Hull of `count` integer points in [-radius, radius]^d together with
  /// their negations; redrawn until full-dimensional.
  ConvexBody symmetric_polytope(std::size_t d, std::size_t count = 0, std::int64_t radius = 3) {
    if (count == 0) {
      count = d + 1;
    }
    while (true) {
      std::vector<RationalVector> pts;
      for (std::size_t i = 0; i < count; ++i) {
        pts.push_back(to_rational(integer_point(d, radius)));
      }
      try {
        return ConvexBody::from_vrep(d, pts, SymmetryMode::Complete)
            .with_label("random:" + std::to_string(d) + ":" + std::to_string(seed_));
      } catch (const DegenerateBody&) {
      }
    }
  }

  /// Symmetric planar body whose vertices have small rational coordinates,
  /// redrawn until its lattice points span the plane.
  ConvexBody rational_planar_body(std::size_t count = 3) {
    while (true) {
      std::vector<RationalVector> pts;
      for (std::size_t i = 0; i < count; ++i) {
        RationalVector p(2);
        for (auto& c : p) {
          const std::int64_t q = uniform(1, 4);
          c = Rational(uniform(-4 * q, 4 * q), q);
        }
        pts.push_back(std::move(p));
      }
      try {
        ConvexBody body = ConvexBody::from_vrep(2, pts, SymmetryMode::Complete);
        if (dim_of_lattice_span(body) == 2) {
          return body.with_label("rational2d:" + std::to_string(seed_));
        }
      } catch (const DegenerateBody&) {
      }
    }
  }

  /// Vertices of conv(S) for S a set of at most `max_points` random points
  /// in [-radius, radius]^2 with nonzero area.
  std::vector<IntVector> integral_polygon(std::size_t max_points = 12, std::int64_t radius = 8) {
    while (true) {
      const std::size_t n = static_cast<std::size_t>(uniform(3, static_cast<std::int64_t>(max_points)));
      std::vector<IntVector> pts;
      for (std::size_t i = 0; i < n; ++i) {
        pts.push_back(integer_point(2, radius));
      }
      std::vector<IntVector> hull = convex_hull_2d(pts);
      if (hull.size() >= 3) {
        return hull;
      }
    }
  }

  /// Box with rational half-widths in [1, 4] or a weighted cross-polytope
  /// with rational weights in [1, 3], alternating by a coin flip.
  ConvexBody unconditional_body(std::size_t d) {
    RationalVector r(d);
    if (uniform(0, 1) == 0) {
      for (auto& c : r) {
        const std::int64_t q = uniform(1, 4);
        c = Rational(uniform(q, 4 * q), q);
      }
      return ConvexBody::box(r).with_label("randbox:" + std::to_string(d) + ":" +
                                           std::to_string(seed_));
    }
    for (auto& c : r) {
      const std::int64_t q = uniform(1, 3);
      c = Rational(uniform(q, 3 * q), q);
    }
    return ConvexBody::weighted_cross_polytope(r).with_label("randcross:" + std::to_string(d) +
                                                             ":" + std::to_string(seed_));
  }

private:
  std::mt19937_64 rng_;
  std::uint64_t seed_;
};

}  // namespace latslice

#endif  // LATSLICE_RANDOM_HPP
