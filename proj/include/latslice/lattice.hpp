#ifndef LATSLICE_LATTICE_HPP
#define LATSLICE_LATTICE_HPP

#include "latslice/body.hpp"
#include "latslice/linalg.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace latslice {

/// Integer lattice of rank k in R^d, given by k linearly independent integer
/// basis vectors.
class Lattice {
public:
  static Lattice standard(std::size_t dim) {
    linalg::IntMatrix basis(dim, IntVector(dim, 0));
    for (std::size_t i = 0; i < dim; ++i) {
      basis[i][i] = 1;
    }
    return Lattice(std::move(basis));
  }

  explicit Lattice(linalg::IntMatrix basis) : basis_(std::move(basis)) {
    if (basis_.empty()) {
      throw InvalidArgument("lattice basis must be nonempty");
    }
    dim_ = basis_[0].size();
    for (const auto& b : basis_) {
      detail::check_dim(dim_, b.size());
    }
    if (linalg::rank(basis_) != basis_.size()) {
      throw InvalidArgument("lattice basis vectors are linearly dependent");
    }
    gram_det_ = linalg::determinant(linalg::gram(basis_));
  }

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  const linalg::IntMatrix& basis() const { return basis_; }

  /// det(BᵀB), the squared covolume; exact.
  const BigInt& gram_determinant() const { return gram_det_; }

  /// Covolume of a full-rank lattice, |det B|.
  BigInt determinant() const {
    if (rank() != dim_) {
      throw Unsupported("covolume as an integer is only defined here for full-rank lattices");
    }
    return abs(linalg::determinant(basis_));
  }

  bool is_standard() const {
    if (rank() != dim_) {
      return false;
    }
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) {
        if (basis_[i][j] != (i == j ? 1 : 0)) {
          return false;
        }
      }
    }
    return true;
  }

  IntVector point(const IntVector& coords) const {
    IntVector x(dim_, 0);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      for (std::size_t j = 0; j < dim_; ++j) {
        x[j] += coords[i] * basis_[i][j];
      }
    }
    return x;
  }

private:
  std::size_t dim_ = 0;
  linalg::IntMatrix basis_;
  BigInt gram_det_;
};

/// m-dimensional lattice subspace H of R^d, stored through the basis of
/// H ∩ Z^d in Hermite normal form (a canonical label), together with a basis
/// of the orthogonal lattice H^⊥ ∩ Z^d used to label cosets.
class LatticeSubspace {
public:
  /// u^⊥ for a nonzero integer normal (content is divided out).
  static LatticeSubspace hyperplane(const IntVector& normal) {
    if (is_zero(normal)) {
      throw InvalidArgument("hyperplane normal must be nonzero");
    }
    if (normal.size() < 2) {
      throw InvalidArgument("hyperplanes need ambient dimension at least 2");
    }
    IntVector u = primitive_canonical(normal);
    LatticeSubspace s;
    s.dim_ = u.size();
    s.basis_ = linalg::hermite_normal_form(linalg::integer_kernel({u}, s.dim_));
    s.complement_ = {u};
    return s;
  }

  /// The span of the given integer vectors (must be independent, fewer than d).
  static LatticeSubspace span(const linalg::IntMatrix& vectors) {
    if (vectors.empty()) {
      throw InvalidArgument("subspace needs at least one spanning vector");
    }
    const std::size_t d = vectors[0].size();
    for (const auto& v : vectors) {
      detail::check_dim(d, v.size());
    }
    if (linalg::rank(vectors) != vectors.size()) {
      throw InvalidArgument("subspace spanning vectors are linearly dependent");
    }
    if (vectors.size() >= d) {
      throw InvalidArgument("subspace dimension must be below the ambient dimension");
    }
    LatticeSubspace s;
    s.dim_ = d;
    s.complement_ = linalg::integer_kernel(vectors, d);
    s.basis_ = linalg::hermite_normal_form(linalg::integer_kernel(s.complement_, d));
    if (s.complement_.size() == 1) {
      s.complement_[0] = primitive_canonical(s.complement_[0]);
    } else {
      s.complement_ = linalg::hermite_normal_form(s.complement_);
    }
    return s;
  }

  std::size_t ambient_dim() const { return dim_; }
  std::size_t dim() const { return basis_.size(); }
  const linalg::IntMatrix& basis() const { return basis_; }
  /// Basis of H^⊥ ∩ Z^d; a single primitive normal for hyperplanes.
  const linalg::IntMatrix& complement() const { return complement_; }

  std::optional<IntVector> normal() const {
    if (dim() + 1 == dim_) {
      return complement_[0];
    }
    return std::nullopt;
  }

  Lattice lattice() const { return Lattice(basis_); }

  bool contains(const IntVector& z) const {
    for (const auto& w : complement_) {
      if (dot(w, z) != 0) {
        return false;
      }
    }
    return true;
  }

  /// Label of the coset z + (H ∩ Z^d): the pairings of z with the
  /// complement basis. Injective on Z^d / (H ∩ Z^d).
  IntVector coset_label(const IntVector& z) const {
    IntVector label;
    label.reserve(complement_.size());
    for (const auto& w : complement_) {
      label.push_back(dot(w, z));
    }
    return label;
  }

  friend bool operator==(const LatticeSubspace& a, const LatticeSubspace& b) {
    return a.basis_ == b.basis_;
  }
  friend bool operator<(const LatticeSubspace& a, const LatticeSubspace& b) {
    return a.basis_ < b.basis_;
  }

private:
  std::size_t dim_ = 0;
  linalg::IntMatrix basis_;
  linalg::IntMatrix complement_;
};

struct PointCount {
  BigInt total = 0;
  std::optional<std::map<std::int64_t, BigInt>> by_level;
};

namespace detail {

inline __int128 floor_div(__int128 a, __int128 b) {
  __int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) {
    --q;
  }
  return q;
}

inline __int128 ceil_div(__int128 a, __int128 b) {
  return -floor_div(-a, b);
}

/// Depth-first lattice point search in lattice coordinates. Each coordinate
/// range comes from the half-space rows with the not-yet-fixed coordinates
/// relaxed to their box, so the last level is an exact membership test.
class PointSearch {
public:
  PointSearch(const ConvexBody& body, const Lattice& lattice) : k_(lattice.rank()) {
    const auto& basis = lattice.basis();
    const std::size_t d = body.dim();
    check_dim(d, lattice.dim());
    for (const auto& f : body.facets()) {
      IntVector row(k_);
      for (std::size_t j = 0; j < k_; ++j) {
        row[j] = dot(f.normal, basis[j]);
      }
      rows_.push_back(std::move(row));
      rhs_.push_back(to_int64(floor(f.offset)));
    }
    // Box in lattice coordinates: y = (BᵀB)^{-1} Bᵀ x, with |x_l| <= R_l.
    box_.assign(k_, 0);
    if (lattice.is_standard()) {
      for (std::size_t j = 0; j < k_; ++j) {
        box_[j] = to_int64(floor(body.bounding_box()[j]));
      }
    } else {
      auto g_inv = linalg::inverse(linalg::to_rational(linalg::gram(basis)));
      for (std::size_t j = 0; j < k_; ++j) {
        Rational bound = 0;
        for (std::size_t l = 0; l < d; ++l) {
          Rational coeff = 0;
          for (std::size_t i = 0; i < k_; ++i) {
            coeff += (*g_inv)[j][i] * basis[i][l];
          }
          bound += abs(coeff) * body.bounding_box()[l];
        }
        box_[j] = to_int64(floor(bound));
      }
    }
    tails_.assign(rows_.size(), std::vector<__int128>(k_ + 1, 0));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      for (std::size_t j = k_; j-- > 0;) {
        __int128 a = rows_[i][j] < 0 ? -static_cast<__int128>(rows_[i][j]) : rows_[i][j];
        tails_[i][j] = tails_[i][j + 1] + a * box_[j];
      }
    }
  }

  /// Calls visit(y) for every lattice-coordinate vector y of a point in the
  /// body, in lexicographic order of y.
  template <typename Visit>
  void run(Visit&& visit) const {
    std::vector<__int128> partial(rows_.size(), 0);
    IntVector y(k_, 0);
    recurse(0, partial, y, visit);
  }

private:
  template <typename Visit>
  void recurse(std::size_t j, std::vector<__int128>& partial, IntVector& y, Visit& visit) const {
    if (j == k_) {
      visit(static_cast<const IntVector&>(y));
      return;
    }
    __int128 lo = -static_cast<__int128>(box_[j]);
    __int128 hi = box_[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const __int128 slack = static_cast<__int128>(rhs_[i]) - partial[i] + tails_[i][j + 1];
      const std::int64_t c = rows_[i][j];
      if (c > 0) {
        hi = std::min(hi, floor_div(slack, c));
      } else if (c < 0) {
        lo = std::max(lo, ceil_div(slack, c));
      } else if (slack < 0) {
        return;
      }
      if (lo > hi) {
        return;
      }
    }
    for (__int128 t = lo; t <= hi; ++t) {
      y[j] = static_cast<std::int64_t>(t);
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        partial[i] += static_cast<__int128>(rows_[i][j]) * t;
      }
      recurse(j + 1, partial, y, visit);
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        partial[i] -= static_cast<__int128>(rows_[i][j]) * t;
      }
    }
    y[j] = 0;
  }

  std::size_t k_;
  std::vector<IntVector> rows_;
  std::vector<std::int64_t> rhs_;
  IntVector box_;
  std::vector<std::vector<__int128>> tails_;
};

}  // namespace detail

/// Calls visit(x) for every point x of K ∩ lattice (ambient coordinates).
template <typename Visit>
void for_each_lattice_point(const ConvexBody& body, const Lattice& lattice, Visit&& visit) {
  detail::PointSearch search(body, lattice);
  if (lattice.is_standard()) {
    search.run(visit);
  } else {
    search.run([&](const IntVector& y) { visit(lattice.point(y)); });
  }
}

/// All points of K ∩ lattice in lexicographic order.
inline std::vector<IntVector> enumerate_points(const ConvexBody& body, const Lattice& lattice) {
  std::vector<IntVector> points;
  for_each_lattice_point(body, lattice, [&](const IntVector& x) { points.push_back(x); });
  if (!lattice.is_standard()) {
    std::sort(points.begin(), points.end());
  }
  return points;
}

inline std::vector<IntVector> enumerate_points(const ConvexBody& body) {
  return enumerate_points(body, Lattice::standard(body.dim()));
}

inline PointCount count_points(const ConvexBody& body, const Lattice& lattice) {
  std::uint64_t n = 0;
  for_each_lattice_point(body, lattice, [&](const IntVector&) { ++n; });
  PointCount c;
  c.total = BigInt(n);
  return c;
}

inline PointCount count_points(const ConvexBody& body) {
  return count_points(body, Lattice::standard(body.dim()));
}

/// Counts grouped by the level normal·x; total equals the sum of levels.
inline PointCount count_points_by_level(const ConvexBody& body, const IntVector& normal) {
  detail::check_dim(body.dim(), normal.size());
  std::map<std::int64_t, std::uint64_t> levels;
  std::uint64_t n = 0;
  for_each_lattice_point(body, Lattice::standard(body.dim()), [&](const IntVector& x) {
    ++levels[dot(normal, x)];
    ++n;
  });
  PointCount c;
  c.total = BigInt(n);
  c.by_level.emplace();
  for (const auto& [level, count] : levels) {
    (*c.by_level)[level] = BigInt(count);
  }
  return c;
}

/// Rank of the set K ∩ lattice.
inline std::size_t dim_of_lattice_span(const ConvexBody& body, const Lattice& lattice) {
  linalg::SpanTracker span(body.dim());
  for_each_lattice_point(body, lattice, [&](const IntVector& x) {
    if (span.rank() < lattice.rank() && !is_zero(x)) {
      span.add(x);
    }
  });
  return span.rank();
}

inline std::size_t dim_of_lattice_span(const ConvexBody& body) {
  return dim_of_lattice_span(body, Lattice::standard(body.dim()));
}

/// Number of distinct tuples (v_1·z, ..., v_r·z) over z in K ∩ Z^d, i.e. the
/// size of the orthogonal projection of K ∩ Z^d onto span(v_1..v_r).
inline PointCount project_count(const std::vector<IntVector>& points,
                                const linalg::IntMatrix& directions) {
  if (directions.empty()) {
    throw InvalidArgument("projection needs at least one direction");
  }
  if (linalg::rank(directions) != directions.size()) {
    throw InvalidArgument("projection directions are linearly dependent");
  }
  std::set<IntVector> images;
  IntVector tuple(directions.size());
  for (const auto& z : points) {
    detail::check_dim(directions[0].size(), z.size());
    for (std::size_t i = 0; i < directions.size(); ++i) {
      tuple[i] = dot(directions[i], z);
    }
    images.insert(tuple);
  }
  PointCount c;
  c.total = BigInt(images.size());
  return c;
}

inline PointCount project_count(const ConvexBody& body, const linalg::IntMatrix& directions) {
  for (const auto& v : directions) {
    detail::check_dim(body.dim(), v.size());
  }
  return project_count(enumerate_points(body), directions);
}

/// K ∩ span(basis) written in the coordinates of the given basis; for a
/// lattice subspace basis the volume of this body equals
/// vol_m(K ∩ H) / det(H ∩ Z^d).
inline ConvexBody section_in_coordinates(const ConvexBody& body, const linalg::IntMatrix& basis) {
  std::vector<HalfSpaceRow> rows;
  for (const auto& f : body.facets()) {
    RationalVector a;
    for (const auto& b : basis) {
      a.emplace_back(dot(f.normal, b));
    }
    if (is_zero(a)) {
      continue;
    }
    rows.push_back({std::move(a), f.offset});
  }
  return ConvexBody::from_hrep(basis.size(), rows);
}

/// Naive scan of the whole integer bounding box; test oracle for the
/// interval-propagating search.
inline std::vector<IntVector> grid_scan_points(const ConvexBody& body) {
  const std::size_t d = body.dim();
  IntVector r(d);
  for (std::size_t j = 0; j < d; ++j) {
    r[j] = to_int64(floor(body.bounding_box()[j]));
  }
  std::vector<IntVector> out;
  IntVector x(d);
  for (std::size_t j = 0; j < d; ++j) {
    x[j] = -r[j];
  }
  while (true) {
    if (body.contains(x)) {
      out.push_back(x);
    }
    std::size_t j = d;
    while (j > 0) {
      --j;
      if (x[j] < r[j]) {
        ++x[j];
        for (std::size_t t = j + 1; t < d; ++t) {
          x[t] = -r[t];
        }
        break;
      }
      if (j == 0) {
        return out;
      }
    }
    if (d == 0) {
      return out;
    }
  }
}

}  // namespace latslice

#endif  // LATSLICE_LATTICE_HPP
