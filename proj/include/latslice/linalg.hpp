#ifndef LATSLICE_LINALG_HPP
#define LATSLICE_LINALG_HPP

#include "latslice/numeric.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

// Exact linear algebra over Q and Z for the small matrices that occur at desk
// scale (dimension <= 8 or so). Matrices are lists of rows.
namespace latslice::linalg {

using RationalMatrix = std::vector<RationalVector>;
using IntMatrix = std::vector<IntVector>;
using BigIntMatrix = std::vector<BigIntVector>;

inline RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix out;
  out.reserve(m.size());
  for (const auto& row : m) {
    out.push_back(latslice::to_rational(row));
  }
  return out;
}

inline RationalMatrix transpose(const RationalMatrix& m) {
  if (m.empty()) {
    return {};
  }
  RationalMatrix t(m[0].size(), RationalVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      t[j][i] = m[i][j];
    }
  }
  return t;
}

inline IntMatrix transpose(const IntMatrix& m) {
  if (m.empty()) {
    return {};
  }
  IntMatrix t(m[0].size(), IntVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      t[j][i] = m[i][j];
    }
  }
  return t;
}

inline Rational determinant(RationalMatrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) {
      ++pivot;
    }
    if (pivot == n) {
      return 0;
    }
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) {
        continue;
      }
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) {
        a[r][c] -= f * a[col][c];
      }
    }
  }
  return det;
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
inline BigInt determinant(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) {
    return 1;
  }
  BigIntMatrix a(n, BigIntVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = m[i][j];
    }
  }
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) {
        ++swap_row;
      }
      if (swap_row == n) {
        return 0;
      }
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// Determinant of a small integer matrix in 128-bit Bareiss arithmetic,
/// falling back to big integers when an intermediate gets large.
inline std::int64_t small_determinant(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) {
    return 1;
  }
  constexpr __int128 kLimit = static_cast<__int128>(1) << 62;
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = m[i][j];
      if (a[i][j] > (1LL << 30) || a[i][j] < -(1LL << 30)) {
        return to_int64(determinant(m));
      }
    }
  }
  __int128 sign = 1;
  __int128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) {
        ++swap_row;
      }
      if (swap_row == n) {
        return 0;
      }
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        if (a[i][j] > kLimit || a[i][j] < -kLimit) {
          return to_int64(determinant(m));
        }
      }
    }
    prev = a[k][k];
  }
  return static_cast<std::int64_t>(sign * a[n - 1][n - 1]);
}

inline std::size_t rank(RationalMatrix a) {
  if (a.empty()) {
    return 0;
  }
  const std::size_t rows = a.size();
  const std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][c] == 0) {
      ++pivot;
    }
    if (pivot == rows) {
      continue;
    }
    std::swap(a[pivot], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) {
        continue;
      }
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) {
        a[i][j] -= f * a[r][j];
      }
    }
    ++r;
  }
  return r;
}

inline std::size_t rank(const IntMatrix& a) {
  return rank(to_rational(a));
}

/// Solves a x = b for square nonsingular a; nullopt when a is singular.
inline std::optional<RationalVector> solve(RationalMatrix a, RationalVector b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) {
      ++pivot;
    }
    if (pivot == n) {
      return std::nullopt;
    }
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) {
        continue;
      }
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) {
        a[r][c] -= f * a[col][c];
      }
      b[r] -= f * b[col];
    }
  }
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = b[i] / a[i][i];
  }
  return x;
}

inline std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
  const std::size_t n = a.size();
  RationalMatrix inv(n, RationalVector(n));
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector e(n, Rational(0));
    e[j] = 1;
    auto col = solve(a, e);
    if (!col) {
      return std::nullopt;
    }
    for (std::size_t i = 0; i < n; ++i) {
      inv[i][j] = (*col)[i];
    }
  }
  return inv;
}

/// Gram matrix BᵀB for a basis given as a list of vectors.
inline IntMatrix gram(const IntMatrix& basis) {
  IntMatrix g(basis.size(), IntVector(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      g[i][j] = dot(basis[i], basis[j]);
    }
  }
  return g;
}

/// Incrementally maintained row echelon form; answers "is v in the span of
/// the vectors accepted so far".
class SpanTracker {
public:
  explicit SpanTracker(std::size_t dim) : dim_(dim) {}

  std::size_t rank() const { return rows_.size(); }

  bool contains(const RationalVector& v) const { return is_zero(reduce(v)); }

  bool contains(const IntVector& v) const {
    return contains(latslice::to_rational(v));
  }

  /// Adds v if independent; returns whether it was added.
  bool add(const RationalVector& v) {
    RationalVector r = reduce(v);
    std::size_t p = 0;
    while (p < dim_ && r[p] == 0) {
      ++p;
    }
    if (p == dim_) {
      return false;
    }
    Rational lead = r[p];
    for (auto& x : r) {
      x /= lead;
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

  bool add(const IntVector& v) { return add(latslice::to_rational(v)); }

private:
  RationalVector reduce(RationalVector v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational f = v[pivots_[i]];
      if (f == 0) {
        continue;
      }
      for (std::size_t j = 0; j < dim_; ++j) {
        if (rows_[i][j] != 0) {
          v[j] -= f * rows_[i][j];
        }
      }
    }
    return v;
  }

  std::size_t dim_;
  RationalMatrix rows_;
  std::vector<std::size_t> pivots_;
};

namespace detail {

inline BigIntMatrix to_big(const IntMatrix& m) {
  BigIntMatrix out;
  out.reserve(m.size());
  for (const auto& row : m) {
    BigIntVector r;
    r.reserve(row.size());
    for (auto x : row) {
      r.emplace_back(x);
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline IntVector to_int(const BigIntVector& v) {
  IntVector out;
  out.reserve(v.size());
  for (const auto& x : v) {
    out.push_back(to_int64(x));
  }
  return out;
}

}  // namespace detail

/// Basis of the full integer kernel lattice {x in Z^d : A x = 0}, where A is
/// given by rows of length d. Computed by unimodular column reduction, so the
/// result is a basis of the kernel lattice, not a finite-index sublattice.
inline IntMatrix integer_kernel(const IntMatrix& rows, std::size_t d) {
  BigIntMatrix m = detail::to_big(rows);
  // u holds the unimodular transform as columns: u[j] is column j.
  BigIntMatrix u(d, BigIntVector(d, BigInt(0)));
  for (std::size_t j = 0; j < d; ++j) {
    u[j][j] = 1;
  }
  auto col_axpy = [&](std::size_t dst, std::size_t src, const BigInt& q) {
    for (auto& row : m) {
      row[dst] -= q * row[src];
    }
    for (std::size_t i = 0; i < d; ++i) {
      u[dst][i] -= q * u[src][i];
    }
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    for (auto& row : m) {
      std::swap(row[a], row[b]);
    }
    std::swap(u[a], u[b]);
  };
  std::size_t piv = 0;
  for (std::size_t i = 0; i < m.size() && piv < d; ++i) {
    for (std::size_t j = piv + 1; j < d; ++j) {
      while (m[i][j] != 0) {
        BigInt q = m[i][piv] / m[i][j];
        col_axpy(piv, j, q);
        col_swap(piv, j);
      }
    }
    if (m[i][piv] != 0) {
      ++piv;
    }
  }
  IntMatrix kernel;
  for (std::size_t j = piv; j < d; ++j) {
    kernel.push_back(detail::to_int(u[j]));
  }
  return kernel;
}

/// Row Hermite normal form of the lattice generated by the given rows: upper
/// echelon, positive pivots, entries above each pivot reduced into
/// [0, pivot). Zero rows are dropped. Unique per lattice, so it serves as a
/// canonical label.
inline IntMatrix hermite_normal_form(const IntMatrix& rows) {
  if (rows.empty()) {
    return {};
  }
  BigIntMatrix a = detail::to_big(rows);
  const std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    // Euclid on column c among rows r..end.
    while (true) {
      std::size_t best = a.size();
      for (std::size_t i = r; i < a.size(); ++i) {
        if (a[i][c] != 0 && (best == a.size() || abs(a[i][c]) < abs(a[best][c]))) {
          best = i;
        }
      }
      if (best == a.size()) {
        break;
      }
      std::swap(a[r], a[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < a.size(); ++i) {
        if (a[i][c] == 0) {
          continue;
        }
        BigInt q = a[i][c] / a[r][c];
        for (std::size_t j = c; j < cols; ++j) {
          a[i][j] -= q * a[r][j];
        }
        if (a[i][c] != 0) {
          done = false;
        }
      }
      if (done) {
        break;
      }
    }
    if (a[r][c] == 0) {
      continue;
    }
    if (a[r][c] < 0) {
      for (std::size_t j = c; j < cols; ++j) {
        a[r][j] = -a[r][j];
      }
    }
    for (std::size_t i = 0; i < r; ++i) {
      BigInt q = a[i][c] / a[r][c];
      if (a[i][c] - q * a[r][c] < 0) {
        q -= 1;
      }
      if (q != 0) {
        for (std::size_t j = c; j < cols; ++j) {
          a[i][j] -= q * a[r][j];
        }
      }
    }
    ++r;
  }
  IntMatrix out;
  for (std::size_t i = 0; i < r; ++i) {
    out.push_back(detail::to_int(a[i]));
  }
  return out;
}

/// Basis of span(vectors) ∩ Z^d, in Hermite normal form.
inline IntMatrix saturate(const IntMatrix& vectors, std::size_t d) {
  IntMatrix complement = integer_kernel(vectors, d);
  if (complement.empty()) {
    IntMatrix identity(d, IntVector(d, 0));
    for (std::size_t i = 0; i < d; ++i) {
      identity[i][i] = 1;
    }
    return identity;
  }
  return hermite_normal_form(integer_kernel(complement, d));
}

/// gcd of all maximal minors of the m x d matrix whose rows are `basis`.
/// A basis is primitive (extends to a basis of Z^d) iff this equals 1.
inline BigInt maximal_minor_gcd(const IntMatrix& basis) {
  const std::size_t m = basis.size();
  if (m == 0) {
    return 1;
  }
  const std::size_t d = basis[0].size();
  BigInt g = 0;
  std::vector<std::size_t> cols(m);
  for (std::size_t i = 0; i < m; ++i) {
    cols[i] = i;
  }
  while (true) {
    IntMatrix minor(m, IntVector(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        minor[i][j] = basis[i][cols[j]];
      }
    }
    g = gcd(g, abs(determinant(minor)));
    // next combination
    std::size_t k = m;
    while (k > 0 && cols[k - 1] == d - m + (k - 1)) {
      --k;
    }
    if (k == 0) {
      break;
    }
    ++cols[k - 1];
    for (std::size_t j = k; j < m; ++j) {
      cols[j] = cols[j - 1] + 1;
    }
  }
  return g;
}

}  // namespace latslice::linalg

#endif  // LATSLICE_LINALG_HPP
