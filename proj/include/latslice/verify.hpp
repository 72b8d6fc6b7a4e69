#ifndef LATSLICE_VERIFY_HPP
#define LATSLICE_VERIFY_HPP

#include "latslice/body.hpp"
#include "latslice/lattice.hpp"
#include "latslice/linalg.hpp"
#include "latslice/minima.hpp"
#include "latslice/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace latslice {

// ---------------------------------------------------------------------------
// Pick quantities

struct PickQuantities {
  Rational area;
  BigInt interior;
  BigInt boundary;
  bool identity_holds = false;
};

namespace detail {

inline std::int64_t cross(const IntVector& o, const IntVector& a, const IntVector& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

}  // namespace detail

/// Counter-clockwise convex hull of planar integer points (monotone chain),
/// collinear boundary points dropped.
inline std::vector<IntVector> convex_hull_2d(std::vector<IntVector> pts) {
  for (const auto& p : pts) {
    detail::check_dim(2, p.size());
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) {
    return pts;
  }
  std::vector<IntVector> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && detail::cross(hull[k - 2], hull[k - 1], p) <= 0) {
      --k;
    }
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && detail::cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) {
      --k;
    }
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

/// Area, interior and boundary lattice counts of a convex integral polygon.
inline PickQuantities pick_quantities(const std::vector<IntVector>& polygon) {
  if (polygon.size() < 3) {
    throw InvalidArgument("polygon needs at least three vertices");
  }
  const std::vector<IntVector> hull = convex_hull_2d(polygon);
  if (hull.size() < 3) {
    throw InvalidArgument("polygon is degenerate (zero area)");
  }
  // Every input vertex must sit on the hull boundary.
  for (const auto& p : polygon) {
    bool on_boundary = false;
    for (std::size_t i = 0; i < hull.size() && !on_boundary; ++i) {
      const auto& a = hull[i];
      const auto& b = hull[(i + 1) % hull.size()];
      on_boundary = detail::cross(a, b, p) == 0 && std::min(a[0], b[0]) <= p[0] &&
                    p[0] <= std::max(a[0], b[0]) && std::min(a[1], b[1]) <= p[1] &&
                    p[1] <= std::max(a[1], b[1]);
    }
    if (!on_boundary) {
      throw InvalidArgument("polygon is not convex: " + to_string(p) + " is not on the hull");
    }
  }
  PickQuantities q;
  std::int64_t twice_area = 0;
  std::int64_t boundary = 0;
  std::int64_t lo_x = hull[0][0], hi_x = hull[0][0], lo_y = hull[0][1], hi_y = hull[0][1];
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    twice_area += a[0] * b[1] - a[1] * b[0];
    boundary += gcd_of({b[0] - a[0], b[1] - a[1]});
    lo_x = std::min(lo_x, a[0]);
    hi_x = std::max(hi_x, a[0]);
    lo_y = std::min(lo_y, a[1]);
    hi_y = std::max(hi_y, a[1]);
  }
  std::int64_t inside = 0;
  for (std::int64_t x = lo_x; x <= hi_x; ++x) {
    for (std::int64_t y = lo_y; y <= hi_y; ++y) {
      const IntVector p{x, y};
      bool in = true;
      for (std::size_t i = 0; i < hull.size() && in; ++i) {
        in = detail::cross(hull[i], hull[(i + 1) % hull.size()], p) >= 0;
      }
      inside += in ? 1 : 0;
    }
  }
  q.area = Rational(twice_area, 2);
  q.boundary = boundary;
  q.interior = inside - boundary;
  q.identity_holds = q.area == Rational(q.interior) + Rational(q.boundary, 2) - 1;
  return q;
}

// ---------------------------------------------------------------------------
// Slicing reports

struct ChainEntry {
  std::string name;
  bool pass = false;
  std::string detail;
};

enum class ReportStatus { Passed, Failed, HypothesisViolated };

struct SlicingReport {
  std::string body;
  std::string theorem;
  std::size_t d = 0;
  std::size_t m = 0;
  ReportStatus status = ReportStatus::Passed;
  std::string hypothesis;  // set when status is HypothesisViolated
  BigInt count_total;
  std::optional<MaxSliceResult> max_slice;
  Rational volume;
  /// (#K)^d / ((max slice)^d · vol^{d-m})
  Rational observed_constant_power;
  /// d-th root of the power, for display only.
  double observed_constant = 0.0;
  std::optional<Rational> polar_volume;
  std::optional<Rational> mahler_volume;
  std::vector<Rational> lambdas;
  linalg::IntMatrix directional_basis;
  std::vector<ChainEntry> chain;
  std::optional<std::uint64_t> seed;

  bool passed() const { return status == ReportStatus::Passed; }

  const ChainEntry* entry(const std::string& name) const {
    for (const auto& e : chain) {
      if (e.name == name) {
        return &e;
      }
    }
    return nullptr;
  }

  const ChainEntry* first_failure() const {
    for (const auto& e : chain) {
      if (!e.pass) {
        return &e;
      }
    }
    return nullptr;
  }
};

namespace detail {

inline void add_entry(SlicingReport& r, std::string name, bool pass, std::string detail = {}) {
  r.chain.push_back({std::move(name), pass, std::move(detail)});
}

inline void finalize(SlicingReport& r) {
  if (r.status == ReportStatus::HypothesisViolated) {
    return;
  }
  r.status = ReportStatus::Passed;
  for (const auto& e : r.chain) {
    if (!e.pass) {
      r.status = ReportStatus::Failed;
    }
  }
}

inline void set_observed_constant(SlicingReport& r, const BigInt& best) {
  const unsigned d = static_cast<unsigned>(r.d);
  const unsigned codim = static_cast<unsigned>(r.d - r.m);
  r.observed_constant_power =
      Rational(pow(r.count_total, d)) / (Rational(pow(best, d)) * pow(r.volume, codim));
  r.observed_constant = to_double(Rational(r.count_total, best)) /
                        std::pow(to_double(r.volume), static_cast<double>(codim) / d);
}

inline std::string ratio_detail(const Rational& lhs, const char* op, const Rational& rhs) {
  return to_string(lhs) + " " + op + " " + to_string(rhs);
}

inline bool hypothesis_holds(SlicingReport& r, const std::vector<IntVector>& points) {
  linalg::SpanTracker span(r.d);
  for (const auto& z : points) {
    if (span.rank() == r.d) {
      break;
    }
    if (!is_zero(z)) {
      span.add(z);
    }
  }
  if (span.rank() < r.d) {
    r.status = ReportStatus::HypothesisViolated;
    r.hypothesis = "dim(K ∩ Z^d) = " + std::to_string(span.rank()) + " < " + std::to_string(r.d);
    return false;
  }
  return true;
}

inline BigInt isqrt_floor(const Rational& q) {
  // largest n >= 0 with n^2 <= q
  BigInt hi = floor(q) + 1;
  BigInt lo = 0;
  while (lo < hi) {
    BigInt mid = (lo + hi + 1) / 2;
    if (Rational(mid * mid) <= q) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

}  // namespace detail

/// Planar theorem: #K <= 4 · max_ξ #(K ∩ ξ^⊥) · vol(K)^{1/2}, with each proof
/// step checked on P = conv(K ∩ Z^2).
inline SlicingReport verify_dim2(const ConvexBody& body, const VolumeOptions& opts = {}) {
  if (body.dim() != 2) {
    throw InvalidArgument("verify_dim2 needs a planar body");
  }
  SlicingReport r;
  r.body = body.label();
  r.theorem = "dim2";
  r.d = 2;
  r.m = 1;
  const std::vector<IntVector> points = enumerate_points(body);
  r.count_total = BigInt(points.size());
  r.volume = volume(body, opts).exact;
  if (!detail::hypothesis_holds(r, points)) {
    return r;
  }
  const std::vector<IntVector> hull = convex_hull_2d(points);
  const PickQuantities pick = pick_quantities(hull);
  r.max_slice = max_slice(body, 1, points);
  const BigInt& best = r.max_slice->best_count;
  detail::add_entry(r, "pick_identity", pick.identity_holds,
                    "A=" + to_string(pick.area) + " I=" + pick.interior.str() +
                        " B=" + pick.boundary.str());
  detail::add_entry(r, "hull_count", r.count_total == pick.interior + pick.boundary,
                    r.count_total.str() + " = I+B");
  detail::add_entry(r, "interior_point", pick.interior >= 1, "I=" + pick.interior.str());
  detail::add_entry(r, "hull_area_min", pick.area >= 2, to_string(pick.area) + " >= 2");
  const Rational hull_bound = Rational(5, 2) * pick.area;
  detail::add_entry(r, "hull_count_bound", Rational(r.count_total) <= hull_bound,
                    detail::ratio_detail(Rational(r.count_total), "<=", hull_bound));
  detail::add_entry(r, "hull_inside_body", pick.area <= r.volume,
                    detail::ratio_detail(pick.area, "<=", r.volume));
  // Minkowski: a line through a lattice point of (1/s)K, s = sqrt(vol/4),
  // carries at least 2⌊s⌋+1 points.
  const BigInt s_floor = detail::isqrt_floor(r.volume / 4);
  detail::add_entry(r, "minkowski_line", best >= 2 * s_floor + 1,
                    best.str() + " >= " + BigInt(2 * s_floor + 1).str());
  const Rational lhs = Rational(r.count_total * r.count_total);
  const Rational rhs = Rational(16 * best * best) * r.volume;
  detail::add_entry(r, "slicing_dim2", lhs <= rhs, detail::ratio_detail(lhs, "<=", rhs));
  detail::set_observed_constant(r, best);
  detail::finalize(r);
  return r;
}

/// Unconditional bodies: coordinate sections dominate their translates, the
/// directional basis is a signed permutation of e_i, and
/// #K <= (2⌊1/λ_d⌋+1) · #(K ∩ e_d^⊥).
inline SlicingReport verify_unconditional(const ConvexBody& body, const VolumeOptions& opts = {}) {
  if (!body.is_unconditional()) {
    throw InvalidArgument("body is not unconditional");
  }
  const std::size_t d = body.dim();
  if (d < 2) {
    throw InvalidArgument("verify_unconditional needs d >= 2");
  }
  SlicingReport r;
  r.body = body.label();
  r.theorem = "unconditional";
  r.d = d;
  r.m = d - 1;
  const std::vector<IntVector> points = enumerate_points(body);
  r.count_total = BigInt(points.size());
  r.volume = volume(body, opts).exact;
  if (!detail::hypothesis_holds(r, points)) {
    return r;
  }
  // (i) dominance of every coordinate hyperplane section
  bool dominance = true;
  std::string dominance_detail;
  MaxSliceResult coordinate_max;
  coordinate_max.m = d - 1;
  coordinate_max.exhaustive = false;
  for (std::size_t i = 0; i < d; ++i) {
    IntVector e(d, 0);
    e[i] = 1;
    SliceProfile p = slice_profile(points, LatticeSubspace::hyperplane(e));
    if (p.central != p.max_count) {
      dominance = false;
      dominance_detail = "e_" + std::to_string(i + 1) + ": central " + p.central.str() +
                         " < " + p.max_count.str();
    }
    if (!coordinate_max.witness || p.central > coordinate_max.best_count) {
      coordinate_max.best_count = p.central;
      coordinate_max.witness = p.subspace;
    }
    ++coordinate_max.candidates_searched;
  }
  detail::add_entry(r, "coordinate_dominance", dominance, dominance_detail);
  r.max_slice = coordinate_max;

  SuccessiveMinima minima = successive_minima(body);
  r.lambdas = minima.lambdas;
  r.directional_basis = minima.basis;
  // (ii) directional basis is a rearrangement of the coordinate vectors
  std::set<std::size_t> axes;
  bool coordinate_basis = true;
  for (const auto& v : minima.basis) {
    std::size_t nonzero = 0;
    std::size_t axis = 0;
    for (std::size_t j = 0; j < d; ++j) {
      if (v[j] != 0) {
        ++nonzero;
        axis = j;
      }
    }
    if (nonzero != 1 || (v[axis] != 1 && v[axis] != -1)) {
      coordinate_basis = false;
    }
    axes.insert(axis);
  }
  coordinate_basis = coordinate_basis && axes.size() == d;
  detail::add_entry(r, "coordinate_directional_basis", coordinate_basis);

  const Rational& lambda_d = minima.lambdas.back();
  const IntVector& e_last = minima.basis.back();
  const BigInt line_bound = 2 * floor(Rational(1) / lambda_d) + 1;
  std::uint64_t line = 0;
  for (const auto& z : points) {
    // z on the line through e_last
    bool on_line = true;
    for (std::size_t j = 0; j < d; ++j) {
      if (e_last[j] == 0 && z[j] != 0) {
        on_line = false;
      }
    }
    line += on_line ? 1 : 0;
  }
  detail::add_entry(r, "line_count", BigInt(line) <= line_bound,
                    std::to_string(line) + " <= " + line_bound.str());
  const SliceProfile last = slice_profile(points, LatticeSubspace::hyperplane(e_last));
  const BigInt product = line_bound * last.central;
  detail::add_entry(r, "unconditional_count_bound", r.count_total <= product,
                    r.count_total.str() + " <= " + line_bound.str() + "*" + last.central.str());
  detail::add_entry(r, "lambda_d_at_most_one", lambda_d <= 1, "lambda_d=" + to_string(lambda_d));
  const Rational three_over = Rational(3) / lambda_d;
  detail::add_entry(r, "floor_bound", Rational(line_bound) <= three_over,
                    detail::ratio_detail(Rational(line_bound), "<=", three_over));
  Rational prod = 1;
  for (const auto& l : minima.lambdas) {
    prod *= Rational(2) / l;
  }
  const Rational lower = prod / Rational(factorial(static_cast<unsigned>(d)));
  detail::add_entry(r, "minkowski_second", lower <= r.volume && r.volume <= prod,
                    to_string(lower) + " <= " + to_string(r.volume) + " <= " + to_string(prod));
  detail::set_observed_constant(r, r.max_slice->best_count);
  detail::finalize(r);
  return r;
}

/// Co-dimensional theorem: every exact step of the polar-body argument.
inline SlicingReport verify_main(const ConvexBody& body, std::size_t m,
                                 const VolumeOptions& opts = {},
                                 const CandidateStrategy& strategy = {}) {
  const std::size_t d = body.dim();
  if (d < 2 || m < 1 || m + 1 > d) {
    throw InvalidArgument("verify_main needs d >= 2 and 1 <= m <= d-1");
  }
  SlicingReport r;
  r.body = body.label();
  r.theorem = "main";
  r.d = d;
  r.m = m;
  const std::vector<IntVector> points = enumerate_points(body);
  r.count_total = BigInt(points.size());
  r.volume = volume(body, opts).exact;
  if (!detail::hypothesis_holds(r, points)) {
    return r;
  }
  const ConvexBody polar = body.polar();
  SuccessiveMinima polar_minima = successive_minima(polar);
  r.lambdas = polar_minima.lambdas;
  r.directional_basis = polar_minima.basis;
  const auto& lam = polar_minima.lambdas;
  const auto& v = polar_minima.basis;

  // (ii) K ⊆ {x : |v_i·x| <= λ_i*}, checked on K ∩ Z^d
  bool contained = true;
  std::string contained_detail;
  for (const auto& z : points) {
    for (std::size_t i = 0; i < d && contained; ++i) {
      if (abs(Rational(dot(v[i], z))) > lam[i]) {
        contained = false;
        contained_detail = "point " + to_string(z) + " direction " + std::to_string(i + 1);
      }
    }
  }
  detail::add_entry(r, "polar_containment", contained, contained_detail);

  // (iii) projection onto U = span(v_1..v_{d-m})
  const linalg::IntMatrix u_basis(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(d - m));
  const BigInt projected = project_count(points, u_basis).total;
  BigInt proj_bound = 1;
  Rational lambda_prod = 1;
  for (std::size_t i = 0; i < d - m; ++i) {
    proj_bound *= 2 * floor(lam[i]) + 1;
    lambda_prod *= lam[i];
  }
  detail::add_entry(r, "projection_bound", projected <= proj_bound,
                    projected.str() + " <= " + proj_bound.str());

  // (iv)
  detail::add_entry(r, "polar_first_minimum", lam[0] >= 1, "lambda_1*=" + to_string(lam[0]));

  // (v) #K <= #proj · max_z #(K ∩ (z + H̄)), H̄ = U^⊥
  const LatticeSubspace h_bar = LatticeSubspace::span(linalg::integer_kernel(u_basis, d));
  const SliceProfile profile = slice_profile(points, h_bar);
  detail::add_entry(r, "factorization", r.count_total <= projected * profile.max_count,
                    r.count_total.str() + " <= " + projected.str() + "*" +
                        profile.max_count.str());
  const Rational relaxed = Rational(profile.max_count) *
                           Rational(pow(BigInt(3), static_cast<unsigned>(d - m))) * lambda_prod;
  detail::add_entry(r, "projection_product_relaxed", Rational(r.count_total) <= relaxed,
                    detail::ratio_detail(Rational(r.count_total), "<=", relaxed));

  // (vi) codimensional Brunn step on H̄
  const BrunnReport brunn = brunn_check(profile);
  detail::add_entry(r, "corollary_brunn", brunn.holds,
                    profile.central.str() + "*9^" + std::to_string(m) +
                        " >= " + profile.max_count.str());

  // (vii) Minkowski II for K*
  const Rational polar_vol = volume(polar, opts).exact;
  r.polar_volume = polar_vol;
  r.mahler_volume = r.volume * polar_vol;
  Rational prod = 1;
  for (const auto& l : lam) {
    prod *= Rational(2) / l;
  }
  const Rational lower = prod / Rational(factorial(static_cast<unsigned>(d)));
  detail::add_entry(r, "minkowski_second_polar", lower <= polar_vol && polar_vol <= prod,
                    to_string(lower) + " <= " + to_string(polar_vol) + " <= " + to_string(prod));
  const Rational mink_lhs =
      pow(lambda_prod, static_cast<unsigned>(d)) * pow(polar_vol, static_cast<unsigned>(d - m));
  const Rational mink_rhs = Rational(pow(BigInt(2), static_cast<unsigned>(d * (d - m))));
  detail::add_entry(r, "minkowski_polar_product", mink_lhs <= mink_rhs,
                    detail::ratio_detail(mink_lhs, "<=", mink_rhs));

  r.max_slice = max_slice(body, m, points, strategy);
  detail::set_observed_constant(r, r.max_slice->best_count);
  detail::finalize(r);
  return r;
}

// ---------------------------------------------------------------------------
// Packing and covering lemmas

struct PackingReport {
  BigInt lhs;  // #(A ∩ (Λ + P))
  BigInt rhs;  // #((A − A) ∩ (Λ + P − P))
  bool holds = false;
};

namespace detail {

/// x ∈ Λ + offsets for a full-rank lattice Λ ⊆ Z^d.
inline bool in_lattice_coset(const Lattice& lattice, const linalg::RationalMatrix& basis_t,
                             const std::vector<IntVector>& offsets, const IntVector& x) {
  for (const auto& p : offsets) {
    RationalVector diff(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      diff[j] = x[j] - p[j];
    }
    auto y = linalg::solve(basis_t, diff);
    if (!y) {
      throw InvalidArgument("lattice basis is singular");
    }
    bool integral = true;
    for (const auto& c : *y) {
      if (denominator(c) != 1) {
        integral = false;
        break;
      }
    }
    if (integral) {
      return true;
    }
  }
  (void)lattice;
  return false;
}

inline std::vector<IntVector> difference_set(const std::vector<IntVector>& a,
                                             const std::vector<IntVector>& b) {
  std::set<IntVector> out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      IntVector z(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) {
        z[j] = x[j] - y[j];
      }
      out.insert(std::move(z));
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace detail

/// #(A ∩ (Λ+P)) <= #((A−A) ∩ (Λ+P−P)) by direct evaluation.
inline PackingReport packing_lemma_check(const std::vector<IntVector>& a,
                                         const std::vector<IntVector>& p,
                                         const Lattice& lattice) {
  if (p.empty()) {
    throw InvalidArgument("P must be nonempty");
  }
  if (lattice.rank() != lattice.dim()) {
    throw InvalidArgument("packing lemma check needs a full-rank lattice");
  }
  const linalg::RationalMatrix basis_t = linalg::transpose(linalg::to_rational(lattice.basis()));
  const std::set<IntVector> a_set(a.begin(), a.end());
  const std::set<IntVector> p_set(p.begin(), p.end());
  const std::vector<IntVector> a_unique(a_set.begin(), a_set.end());
  const std::vector<IntVector> p_unique(p_set.begin(), p_set.end());
  PackingReport r;
  std::uint64_t lhs = 0;
  for (const auto& x : a_unique) {
    detail::check_dim(lattice.dim(), x.size());
    lhs += detail::in_lattice_coset(lattice, basis_t, p_unique, x) ? 1 : 0;
  }
  const auto a_diff = detail::difference_set(a_unique, a_unique);
  const auto p_diff = detail::difference_set(p_unique, p_unique);
  std::uint64_t rhs = 0;
  for (const auto& x : a_diff) {
    rhs += detail::in_lattice_coset(lattice, basis_t, p_diff, x) ? 1 : 0;
  }
  r.lhs = BigInt(lhs);
  r.rhs = BigInt(rhs);
  r.holds = r.lhs <= r.rhs;
  return r;
}

struct CoveringReport {
  std::size_t cover_size = 0;
  BigInt bound;  // (4k+1)^d
  std::size_t points = 0;
  std::vector<IntVector> centers;
  bool holds = false;
};

/// Greedy cover of (kB) ∩ Z^d by lattice translates of B ∩ Z^d. Greedy is an
/// upper bound on the optimal cover size, so holds = true certifies the
/// (4k+1)^d bound.
inline CoveringReport covering_lemma_check(const ConvexBody& body, std::int64_t k) {
  if (k < 1) {
    throw InvalidArgument("k must be a positive integer");
  }
  const std::vector<IntVector> target = enumerate_points(body.scaled(Rational(k)));
  const std::vector<IntVector> tile = enumerate_points(body);
  std::set<IntVector> uncovered(target.begin(), target.end());
  CoveringReport r;
  r.points = target.size();
  r.bound = pow(BigInt(4 * k + 1), static_cast<unsigned>(body.dim()));
  auto shifted = [](const IntVector& t, const IntVector& b) {
    IntVector x(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) {
      x[j] = t[j] + b[j];
    }
    return x;
  };
  while (!uncovered.empty()) {
    std::size_t best_gain = 0;
    const IntVector* best = nullptr;
    for (const auto& t : target) {
      std::size_t gain = 0;
      for (const auto& b : tile) {
        gain += uncovered.count(shifted(t, b));
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = &t;
      }
    }
    for (const auto& b : tile) {
      uncovered.erase(shifted(*best, b));
    }
    r.centers.push_back(*best);
  }
  r.cover_size = r.centers.size();
  r.holds = BigInt(r.cover_size) <= r.bound;
  return r;
}

// ---------------------------------------------------------------------------
// Gauss scaling

struct ScalingRow {
  Rational radius;
  BigInt count;
  Rational expected;  // r^k · vol
  Rational abs_deviation;
  Rational rel_deviation;
};

struct GaussScalingReport {
  Rational volume;
  std::vector<ScalingRow> rows;
  bool relative_decreasing = false;

  struct Section {
    IntVector normal;
    BigInt gram_determinant;  // det(Z^d ∩ ξ^⊥)^2
    Rational normalized_volume;  // vol_{d-1}(K ∩ ξ^⊥) / det(Z^d ∩ ξ^⊥)
    std::vector<ScalingRow> rows;
    bool relative_decreasing = false;
  };
  std::optional<Section> section;
};

namespace detail {

inline bool strictly_decreasing(const std::vector<ScalingRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i].rel_deviation < rows[i - 1].rel_deviation)) {
      return false;
    }
  }
  return true;
}

inline ScalingRow scaling_row(const Rational& r, const BigInt& count, const Rational& vol,
                              unsigned k) {
  ScalingRow row;
  row.radius = r;
  row.count = count;
  row.expected = pow(r, k) * vol;
  row.abs_deviation = abs(Rational(count) - row.expected);
  row.rel_deviation = row.abs_deviation / row.expected;
  return row;
}

}  // namespace detail

/// #(rK) against r^d vol(K); with a normal, also #(rK ∩ ξ^⊥) against
/// r^{d-1} vol_{d-1}(K ∩ ξ^⊥) / det(Z^d ∩ ξ^⊥).
inline GaussScalingReport gauss_scaling(const ConvexBody& body, const std::vector<Rational>& radii,
                                        const std::optional<IntVector>& normal = std::nullopt,
                                        const VolumeOptions& opts = {}) {
  GaussScalingReport rep;
  rep.volume = volume(body, opts).exact;
  const unsigned d = static_cast<unsigned>(body.dim());
  for (const auto& r : radii) {
    if (r <= 0) {
      throw InvalidArgument("radii must be positive");
    }
    rep.rows.push_back(detail::scaling_row(r, count_points(body.scaled(r)).total, rep.volume, d));
  }
  rep.relative_decreasing = detail::strictly_decreasing(rep.rows);
  if (normal) {
    const LatticeSubspace h = LatticeSubspace::hyperplane(*normal);
    GaussScalingReport::Section sec;
    sec.normal = *h.normal();
    sec.gram_determinant = h.lattice().gram_determinant();
    sec.normalized_volume = volume(section_in_coordinates(body, h.basis()), opts).exact;
    for (const auto& r : radii) {
      sec.rows.push_back(detail::scaling_row(r, slice_count(body.scaled(r), h).total,
                                             sec.normalized_volume, d - 1));
    }
    sec.relative_decreasing = detail::strictly_decreasing(sec.rows);
    rep.section = std::move(sec);
  }
  return rep;
}

}  // namespace latslice

#endif  // LATSLICE_VERIFY_HPP
