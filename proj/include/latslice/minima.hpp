#ifndef LATSLICE_MINIMA_HPP
#define LATSLICE_MINIMA_HPP

#include "latslice/body.hpp"
#include "latslice/lattice.hpp"
#include "latslice/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

namespace latslice {

struct SuccessiveMinima {
  /// λ_1 <= ... <= λ_k.
  std::vector<Rational> lambdas;
  /// Directional basis: v_j lies on the boundary of λ_j K.
  linalg::IntMatrix basis;
};

namespace detail {

struct GaugedPoint {
  Rational gauge;
  std::int64_t norm2;
  IntVector point;
};

/// Candidate order for the greedy minima search: gauge, then Euclidean
/// length, then lexicographically larger first (so e_1 precedes e_2).
inline bool gauged_before(const GaugedPoint& a, const GaugedPoint& b) {
  if (a.gauge != b.gauge) {
    return a.gauge < b.gauge;
  }
  if (a.norm2 != b.norm2) {
    return a.norm2 < b.norm2;
  }
  return a.point > b.point;
}

}  // namespace detail

/// Exact successive minima of K with respect to a lattice.
///
/// Lattice points of R·K are sorted by gauge and filtered greedily for
/// linear independence; R doubles until the lattice rank is reached. Every
/// lattice point with gauge <= R is seen, so the greedy result is exact.
inline SuccessiveMinima successive_minima(const ConvexBody& body, const Lattice& lattice) {
  detail::check_dim(body.dim(), lattice.dim());
  const std::size_t k = lattice.rank();
  const bool standard = lattice.is_standard();
  Rational radius = 1;
  while (true) {
    ConvexBody scaled = body.scaled(radius);
    std::vector<detail::GaugedPoint> candidates;
    for_each_lattice_point(scaled, lattice, [&](const IntVector& x) {
      if (is_zero(x)) {
        return;
      }
      const auto lead = std::find_if(x.begin(), x.end(), [](auto c) { return c != 0; });
      if (*lead < 0) {
        return;  // one representative per ± pair
      }
      if (standard && gcd_of(x) != 1) {
        return;  // the primitive point on the same ray has smaller gauge
      }
      candidates.push_back({body.gauge(x), dot(x, x), x});
    });
    std::sort(candidates.begin(), candidates.end(), detail::gauged_before);
    linalg::SpanTracker span(body.dim());
    SuccessiveMinima result;
    for (const auto& c : candidates) {
      if (span.add(c.point)) {
        result.lambdas.push_back(c.gauge);
        result.basis.push_back(c.point);
        if (span.rank() == k) {
          return result;
        }
      }
    }
    radius *= 2;
  }
}

inline SuccessiveMinima successive_minima(const ConvexBody& body) {
  return successive_minima(body, Lattice::standard(body.dim()));
}

struct MinkowskiFirstReport {
  Volume vol;
  bool has_nonzero_point = false;
  bool consistent = false;
};

/// vol(K) >= 2^d must force a nonzero integer point.
inline MinkowskiFirstReport minkowski_first_check(const ConvexBody& body,
                                                  const VolumeOptions& opts = {}) {
  MinkowskiFirstReport r;
  r.vol = volume(body, opts);
  r.has_nonzero_point = dim_of_lattice_span(body) > 0;
  const bool large = r.vol.exact >= Rational(pow(BigInt(2), static_cast<unsigned>(body.dim())));
  r.consistent = !(large && !r.has_nonzero_point);
  return r;
}

struct MinkowskiSecondReport {
  SuccessiveMinima minima;
  Rational lhs;        // (1/d!) Π 2/λ_i
  Rational vol_ratio;  // vol(K) / det(Γ)
  Rational rhs;        // Π 2/λ_i
  bool holds = false;
};

inline MinkowskiSecondReport minkowski_second_check(const ConvexBody& body,
                                                    const Lattice& lattice,
                                                    const VolumeOptions& opts = {}) {
  if (lattice.rank() != body.dim()) {
    throw InvalidArgument("Minkowski's second theorem needs a full-rank lattice");
  }
  MinkowskiSecondReport r;
  r.minima = successive_minima(body, lattice);
  Rational product = 1;
  for (const auto& l : r.minima.lambdas) {
    product *= Rational(2) / l;
  }
  r.rhs = product;
  r.lhs = product / Rational(factorial(static_cast<unsigned>(body.dim())));
  r.vol_ratio = volume(body, opts).exact / Rational(lattice.determinant());
  r.holds = r.lhs <= r.vol_ratio && r.vol_ratio <= r.rhs;
  return r;
}

inline MinkowskiSecondReport minkowski_second_check(const ConvexBody& body,
                                                    const VolumeOptions& opts = {}) {
  return minkowski_second_check(body, Lattice::standard(body.dim()), opts);
}

/// Generalized symmetric arithmetic progression [-N, N]·v.
class Progression {
public:
  /// Pairs (N_i, v_i) are reordered so that N is nonincreasing.
  Progression(std::vector<std::int64_t> n, linalg::IntMatrix v) {
    if (n.size() != v.size() || n.empty()) {
      throw InvalidArgument("progression needs one bound per basis vector");
    }
    const std::size_t d = v[0].size();
    for (const auto& x : v) {
      detail::check_dim(d, x.size());
    }
    for (auto x : n) {
      if (x < 0) {
        throw InvalidArgument("progression bounds must be nonnegative");
      }
    }
    std::vector<std::size_t> order(n.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return n[a] > n[b]; });
    for (auto i : order) {
      n_.push_back(n[i]);
      v_.push_back(v[i]);
    }
    dim_ = d;
    if (linalg::rank(v_) == v_.size()) {
      proper_ = true;
    } else {
      proper_ = BigInt(image().size()) == size_bound();
    }
  }

  std::size_t rank() const { return v_.size(); }
  std::size_t ambient_dim() const { return dim_; }
  const std::vector<std::int64_t>& bounds() const { return n_; }
  const linalg::IntMatrix& vectors() const { return v_; }
  /// Injective coefficient map.
  bool proper() const { return proper_; }

  /// Π (2 N_i + 1), the image size when proper.
  BigInt size_bound() const {
    BigInt s = 1;
    for (auto x : n_) {
      s *= 2 * x + 1;
    }
    return s;
  }

  /// Calls visit(point) for every coefficient tuple (with repetitions).
  template <typename Visit>
  void for_each_combination(Visit&& visit) const {
    IntVector coeff(n_.size());
    for (std::size_t i = 0; i < n_.size(); ++i) {
      coeff[i] = -n_[i];
    }
    while (true) {
      IntVector x(dim_, 0);
      for (std::size_t i = 0; i < n_.size(); ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
          x[j] += coeff[i] * v_[i][j];
        }
      }
      visit(static_cast<const IntVector&>(x));
      std::size_t i = n_.size();
      while (i > 0 && coeff[i - 1] == n_[i - 1]) {
        --i;
      }
      if (i == 0) {
        return;
      }
      ++coeff[i - 1];
      for (std::size_t t = i; t < n_.size(); ++t) {
        coeff[t] = -n_[t];
      }
    }
  }

  /// Image(P), deduplicated and sorted.
  std::vector<IntVector> image() const {
    std::set<IntVector> pts;
    for_each_combination([&](const IntVector& x) { pts.insert(x); });
    return {pts.begin(), pts.end()};
  }

private:
  std::size_t dim_ = 0;
  std::vector<std::int64_t> n_;
  linalg::IntMatrix v_;
  bool proper_ = false;
};

inline std::vector<IntVector> progression_image(const Progression& p) {
  return p.image();
}

struct ProgressionBoundReport {
  bool contained = false;
  Rational vol_lb;  // Π 2N_k · |det v|
  Rational vol;
  bool holds = false;
};

namespace detail {

/// Image(P) ⊆ K. Pointwise for small progressions; above the threshold the
/// sign-corner points suffice by convexity.
inline bool progression_contained(const Progression& p, const ConvexBody& body) {
  constexpr std::int64_t kPointwiseLimit = 200000;
  if (p.size_bound() <= kPointwiseLimit) {
    bool ok = true;
    p.for_each_combination([&](const IntVector& x) {
      if (ok && !body.contains(x)) {
        ok = false;
      }
    });
    return ok;
  }
  const std::size_t r = p.rank();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
    IntVector x(p.ambient_dim(), 0);
    for (std::size_t i = 0; i < r; ++i) {
      const std::int64_t c = (mask >> i) & 1U ? p.bounds()[i] : -p.bounds()[i];
      for (std::size_t j = 0; j < x.size(); ++j) {
        x[j] += c * p.vectors()[i][j];
      }
    }
    if (!body.contains(x)) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Image(P) ⊆ K forces vol(K) >= Π 2N_k · |det(v)| (translates of the
/// fundamental parallelepiped tile a subset of K).
inline ProgressionBoundReport progression_volume_bound(const Progression& p,
                                                       const ConvexBody& body,
                                                       const VolumeOptions& opts = {}) {
  detail::check_dim(body.dim(), p.ambient_dim());
  if (p.rank() != body.dim()) {
    throw InvalidArgument("progression rank must equal the ambient dimension");
  }
  for (auto n : p.bounds()) {
    if (n < 1) {
      throw InvalidArgument("volume bound needs every N_k >= 1");
    }
  }
  if (!p.proper()) {
    throw InvalidArgument("volume bound needs a proper progression");
  }
  ProgressionBoundReport r;
  r.contained = detail::progression_contained(p, body);
  Rational lb = abs(Rational(linalg::determinant(p.vectors())));
  for (auto n : p.bounds()) {
    lb *= 2 * n;
  }
  r.vol_lb = lb;
  r.vol = volume(body, opts).exact;
  r.holds = r.contained && r.vol >= r.vol_lb;
  return r;
}

/// Progression on the directional basis with the largest bounds that keep
/// the image inside K: start from N_i = floor(1/λ_i) and shrink the largest
/// bound until the sign corners are contained.
inline Progression heuristic_progression(const ConvexBody& body) {
  if (dim_of_lattice_span(body) != body.dim()) {
    throw InvalidArgument("heuristic progression needs dim(K ∩ Z^d) = d");
  }
  SuccessiveMinima minima = successive_minima(body);
  std::vector<std::int64_t> n;
  for (const auto& l : minima.lambdas) {
    n.push_back(to_int64(floor(Rational(1) / l)));
  }
  while (true) {
    Progression candidate(n, minima.basis);
    bool inside = true;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n.size()) && inside; ++mask) {
      IntVector x(body.dim(), 0);
      for (std::size_t i = 0; i < n.size(); ++i) {
        const std::int64_t c = (mask >> i) & 1U ? n[i] : -n[i];
        for (std::size_t j = 0; j < x.size(); ++j) {
          x[j] += c * minima.basis[i][j];
        }
      }
      inside = body.contains(x);
    }
    if (inside) {
      return candidate;
    }
    std::size_t largest = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
      if (n[i] >= n[largest]) {
        largest = i;
      }
    }
    --n[largest];
  }
}

}  // namespace latslice

#endif  // LATSLICE_MINIMA_HPP
