#ifndef LATSLICE_SLICING_HPP
#define LATSLICE_SLICING_HPP

#include "latslice/body.hpp"
#include "latslice/lattice.hpp"
#include "latslice/linalg.hpp"
#include "latslice/minima.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace latslice {

/// Lattice point counts of the translates K ∩ (H + z), keyed by coset label.
struct SliceProfile {
  LatticeSubspace subspace;
  std::map<IntVector, BigInt> by_translate;
  BigInt central;
  BigInt max_count;
  IntVector max_translate;
};

inline PointCount slice_count(const ConvexBody& body, const LatticeSubspace& subspace) {
  detail::check_dim(body.dim(), subspace.ambient_dim());
  return count_points(body, subspace.lattice());
}

/// Groups the given points (assumed to be K ∩ Z^d) by coset of H ∩ Z^d.
inline SliceProfile slice_profile(const std::vector<IntVector>& points,
                                  const LatticeSubspace& subspace) {
  std::map<IntVector, std::uint64_t> counts;
  for (const auto& z : points) {
    ++counts[subspace.coset_label(z)];
  }
  SliceProfile p{subspace, {}, 0, 0, {}};
  const IntVector zero(subspace.complement().size(), 0);
  for (const auto& [label, n] : counts) {
    BigInt c(n);
    if (c > p.max_count) {
      p.max_count = c;
      p.max_translate = label;
    }
    p.by_translate.emplace(label, std::move(c));
  }
  if (auto it = p.by_translate.find(zero); it != p.by_translate.end()) {
    p.central = it->second;
  }
  return p;
}

inline SliceProfile slice_profile(const ConvexBody& body, const LatticeSubspace& subspace) {
  detail::check_dim(body.dim(), subspace.ambient_dim());
  return slice_profile(enumerate_points(body), subspace);
}

struct CandidateStrategy {
  /// Sup-norm bound for hyperplane normals in the fallback family; nullopt
  /// picks 3 for d <= 4 and 1 above.
  std::optional<std::int64_t> normal_bound;
  /// Largest number of spanning subsets tried for the exhaustive search.
  std::size_t exhaustive_limit = 200000;
};

struct MaxSliceResult {
  std::size_t m = 0;
  BigInt best_count;
  std::optional<LatticeSubspace> witness;
  std::size_t candidates_searched = 0;
  /// The candidate family provably contains a maximizer.
  bool exhaustive = false;
};

namespace detail {

/// Primitive, sign-normalized vector of all maximal minors: identifies the
/// rational span of the rows. Zero iff the rows are dependent.
inline IntVector plucker_key(const linalg::IntMatrix& rows) {
  const std::size_t m = rows.size();
  const std::size_t d = rows[0].size();
  IntVector key;
  linalg::IntMatrix minor(m, IntVector(m));
  for_each_subset(d, m, [&](const std::vector<std::size_t>& cols) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        minor[i][j] = rows[i][cols[j]];
      }
    }
    key.push_back(linalg::small_determinant(minor));
  });
  return primitive_canonical(key);
}

/// Normal of the hyperplane spanned by d-1 rows (cofactor expansion), or
/// zero when the rows are dependent.
inline IntVector cofactor_normal(const linalg::IntMatrix& rows) {
  const std::size_t d = rows[0].size();
  IntVector u(d);
  linalg::IntMatrix minor(d - 1, IntVector(d - 1));
  for (std::size_t skip = 0; skip < d; ++skip) {
    for (std::size_t i = 0; i + 1 < d; ++i) {
      for (std::size_t j = 0, c = 0; j < d; ++j) {
        if (j != skip) {
          minor[i][c++] = rows[i][j];
        }
      }
    }
    const std::int64_t det = linalg::small_determinant(minor);
    u[skip] = skip % 2 == 0 ? det : -det;
  }
  return primitive_canonical(u);
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) {
    return 0;
  }
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > (std::uint64_t{1} << 40)) {
      return r;
    }
  }
  return r;
}

/// Primitive directions of the nonzero points, one per ± pair.
inline std::vector<IntVector> primitive_directions(const std::vector<IntVector>& points) {
  std::set<IntVector> dirs;
  for (const auto& z : points) {
    if (!is_zero(z)) {
      dirs.insert(primitive_canonical(z));
    }
  }
  return {dirs.begin(), dirs.end()};
}

class SliceMaximizer {
public:
  SliceMaximizer(const std::vector<IntVector>& points, std::size_t m)
      : points_(points), m_(m) {}

  /// Candidate span of m independent integer vectors (dependent sets are
  /// ignored).
  void consider(const linalg::IntMatrix& spanning) {
    if (m_ + 1 == spanning[0].size()) {
      consider_normal(cofactor_normal(spanning));
      return;
    }
    IntVector key = plucker_key(spanning);
    if (is_zero(key) || !seen_.insert(key).second) {
      return;
    }
    const linalg::IntMatrix complement = linalg::integer_kernel(spanning, spanning[0].size());
    std::uint64_t n = 0;
    for (const auto& z : points_) {
      bool inside = true;
      for (const auto& w : complement) {
        if (dot(w, z) != 0) {
          inside = false;
          break;
        }
      }
      n += inside ? 1 : 0;
    }
    offer(n, [&] { return LatticeSubspace::span(spanning); });
  }

  void consider_normal(const IntVector& normal) {
    IntVector u = primitive_canonical(normal);
    if (is_zero(u) || !seen_.insert(u).second) {
      return;
    }
    std::uint64_t n = 0;
    for (const auto& z : points_) {
      n += dot(u, z) == 0 ? 1 : 0;
    }
    offer(n, [&] { return LatticeSubspace::hyperplane(u); });
  }

  MaxSliceResult finish(bool exhaustive) {
    result_.m = m_;
    result_.candidates_searched = seen_.size();
    result_.exhaustive = exhaustive;
    return std::move(result_);
  }

private:
  template <typename Make>
  void offer(std::uint64_t n, Make&& make) {
    BigInt c(n);
    if (result_.witness && c < result_.best_count) {
      return;
    }
    LatticeSubspace h = make();
    if (!result_.witness || c > result_.best_count || h < *result_.witness) {
      result_.best_count = c;
      result_.witness = std::move(h);
    }
  }

  const std::vector<IntVector>& points_;
  std::size_t m_;
  std::set<IntVector> seen_;
  MaxSliceResult result_;
};

}  // namespace detail

/// Largest count #(K ∩ H) over m-dimensional lattice subspaces H.
///
/// A maximizer can always be taken spanned by m independent points of
/// K ∩ Z^d, so when the number of m-subsets of primitive directions is below
/// the strategy's limit every such span is tried and the result is exact.
/// Otherwise a candidate family (bounded normals, the polar directional
/// basis, coordinate subspaces, spans of short vectors) gives a lower bound.
inline MaxSliceResult max_slice(const ConvexBody& body, std::size_t m,
                                const std::vector<IntVector>& points,
                                const CandidateStrategy& strategy = {}) {
  const std::size_t d = body.dim();
  if (m < 1 || m + 1 > d) {
    throw InvalidArgument("slice dimension m must satisfy 1 <= m <= d-1");
  }
  detail::SliceMaximizer search(points, m);
  const std::vector<IntVector> dirs = detail::primitive_directions(points);
  const std::size_t span_rank = linalg::rank(dirs);
  auto unit = [d](std::size_t i) {
    IntVector e(d, 0);
    e[i] = 1;
    return e;
  };

  if (span_rank <= m) {
    // All points fit in one m-dimensional lattice subspace.
    linalg::SpanTracker tracker(d);
    linalg::IntMatrix spanning;
    for (const auto& v : dirs) {
      if (tracker.add(v)) {
        spanning.push_back(v);
      }
    }
    for (std::size_t i = 0; i < d && spanning.size() < m; ++i) {
      if (tracker.add(unit(i))) {
        spanning.push_back(unit(i));
      }
    }
    search.consider(spanning);
    return search.finish(true);
  }

  if (detail::binomial(dirs.size(), m) <= strategy.exhaustive_limit) {
    detail::for_each_subset(dirs.size(), m, [&](const std::vector<std::size_t>& idx) {
      linalg::IntMatrix spanning;
      for (auto i : idx) {
        spanning.push_back(dirs[i]);
      }
      search.consider(spanning);
    });
    return search.finish(true);
  }

  // Fallback family.
  if (m + 1 == d) {
    const std::int64_t bound = strategy.normal_bound.value_or(d <= 4 ? 3 : 1);
    IntVector u(d, -bound);
    while (true) {
      if (!is_zero(u) && gcd_of(u) == 1 && primitive_canonical(u) == u) {
        search.consider_normal(u);
      }
      std::size_t j = d;
      while (j > 0 && u[j - 1] == bound) {
        u[j - 1] = -bound;
        --j;
      }
      if (j == 0) {
        break;
      }
      ++u[j - 1];
    }
    for (std::size_t i = 0; i < d; ++i) {
      search.consider_normal(unit(i));
    }
    for (const auto& v : successive_minima(body.polar()).basis) {
      search.consider_normal(v);
    }
  }
  detail::for_each_subset(d, m, [&](const std::vector<std::size_t>& idx) {
    linalg::IntMatrix spanning;
    for (auto i : idx) {
      spanning.push_back(unit(i));
    }
    search.consider(spanning);
  });
  // Spans of the shortest directions (gauge, then length).
  std::vector<detail::GaugedPoint> ranked;
  for (const auto& v : dirs) {
    ranked.push_back({body.gauge(v), dot(v, v), v});
  }
  std::sort(ranked.begin(), ranked.end(), detail::gauged_before);
  std::size_t keep = std::min<std::size_t>(ranked.size(), std::max<std::size_t>(2 * d, m + 2));
  while (keep > m + 1 && detail::binomial(keep, m) > strategy.exhaustive_limit) {
    --keep;
  }
  detail::for_each_subset(keep, m, [&](const std::vector<std::size_t>& idx) {
    linalg::IntMatrix spanning;
    for (auto i : idx) {
      spanning.push_back(ranked[i].point);
    }
    search.consider(spanning);
  });
  return search.finish(false);
}

inline MaxSliceResult max_slice(const ConvexBody& body, std::size_t m,
                                const CandidateStrategy& strategy = {}) {
  return max_slice(body, m, enumerate_points(body), strategy);
}

struct BrunnReport {
  /// min over nonempty translates of central / translate count.
  Rational min_ratio;
  /// 9^{-m}
  Rational bound;
  bool holds = false;
  IntVector witness_translate;
};

/// central · 9^m >= every translate count, with m = dim H.
inline BrunnReport brunn_check(const SliceProfile& profile) {
  const unsigned m = static_cast<unsigned>(profile.subspace.dim());
  BrunnReport r;
  r.bound = Rational(1) / Rational(pow(BigInt(9), m));
  bool first = true;
  for (const auto& [label, count] : profile.by_translate) {
    if (count == 0) {
      continue;  // empty slices are vacuous
    }
    Rational ratio(profile.central, count);
    if (first || ratio < r.min_ratio) {
      r.min_ratio = ratio;
      r.witness_translate = label;
      first = false;
    }
  }
  r.holds = profile.central * pow(BigInt(9), m) >= profile.max_count;
  return r;
}

inline BrunnReport brunn_check(const ConvexBody& body, const LatticeSubspace& subspace) {
  return brunn_check(slice_profile(body, subspace));
}

}  // namespace latslice

#endif  // LATSLICE_SLICING_HPP
