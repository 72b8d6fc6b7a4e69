#ifndef LATSLICE_BODY_HPP
#define LATSLICE_BODY_HPP

#include "latslice/linalg.hpp"
#include "latslice/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace latslice {

/// Closed half-space normal·x <= offset with a primitive integer normal.
struct Facet {
  IntVector normal;
  Rational offset;

  friend bool operator==(const Facet&, const Facet&) = default;
};

struct HalfSpaceRow {
  RationalVector normal;
  Rational offset;
};

enum class Representation { HRep, VRep };

/// How to treat inputs that are missing their origin-symmetric partners.
enum class SymmetryMode { Complete, Strict };

/// Origin-symmetric, full-dimensional rational polytope.
///
/// Both descriptions are kept after construction: the irredundant facet list
/// and the vertex list, with the facet/vertex incidence. Either one is
/// derived from the other by exact brute-force enumeration, which is fine at
/// the dimensions this library targets (d <= 6). Instances are immutable.
class ConvexBody {
public:
  static ConvexBody from_hrep(std::size_t dim, const std::vector<HalfSpaceRow>& rows,
                              SymmetryMode mode = SymmetryMode::Complete);
  static ConvexBody from_vrep(std::size_t dim, const std::vector<RationalVector>& points,
                              SymmetryMode mode = SymmetryMode::Complete);

  static ConvexBody cube(std::size_t dim, const Rational& radius = 1);
  static ConvexBody cross_polytope(std::size_t dim, const Rational& radius = 1);
  static ConvexBody box(const RationalVector& radii);
  /// {x : sum |x_i| / w_i <= 1}.
  static ConvexBody weighted_cross_polytope(const RationalVector& weights);

  std::size_t dim() const { return dim_; }
  Representation representation() const { return rep_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<RationalVector>& vertices() const { return vertices_; }
  /// Indices into vertices() of the vertices lying on facet i.
  const std::vector<std::size_t>& facet_vertices(std::size_t i) const { return incidence_[i]; }
  /// Per-coordinate sup-norm radius of the body.
  const RationalVector& bounding_box() const { return bbox_; }

  const std::string& label() const { return label_; }
  ConvexBody with_label(std::string label) const {
    ConvexBody copy = *this;
    copy.label_ = std::move(label);
    return copy;
  }

  bool contains(const RationalVector& point) const;
  bool contains(const IntVector& point) const;

  /// min{t > 0 : point in tK}.
  Rational gauge(const RationalVector& point) const;
  Rational gauge(const IntVector& point) const { return gauge(to_rational(point)); }

  /// max over the body of normal·x.
  Rational support(const RationalVector& direction) const;
  Rational support(const IntVector& direction) const { return support(to_rational(direction)); }

  ConvexBody polar() const;
  ConvexBody scaled(const Rational& factor) const;

  /// Invariant under every coordinate sign flip.
  bool is_unconditional() const;

private:
  ConvexBody() = default;

  static ConvexBody build(std::size_t dim, Representation rep, std::vector<Facet> facets,
                          std::vector<RationalVector> vertices);
  void finish();

  std::size_t dim_ = 0;
  Representation rep_ = Representation::HRep;
  std::vector<Facet> facets_;
  std::vector<RationalVector> vertices_;
  std::vector<std::vector<std::size_t>> incidence_;
  RationalVector bbox_;
  std::string label_;
};

namespace detail {

using latslice::dot;

inline void check_dim(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw DimensionMismatch("expected a vector of length " + std::to_string(expected) +
                            ", got " + std::to_string(got));
  }
}

/// Scales a rational row a·x <= b to a primitive integer normal.
inline Facet normalize_row(const RationalVector& a, const Rational& b) {
  BigInt l = 1;
  for (const auto& x : a) {
    l = lcm(l, denominator(x));
  }
  BigIntVector scaled;
  BigInt g = 0;
  for (const auto& x : a) {
    BigInt v = numerator(x) * (l / denominator(x));
    g = gcd(g, abs(v));
    scaled.push_back(v);
  }
  if (g == 0) {
    throw InvalidArgument("half-space with zero normal");
  }
  Facet f;
  for (auto& v : scaled) {
    f.normal.push_back(to_int64(v / g));
  }
  f.offset = b * Rational(l, g);
  return f;
}

inline Rational dot(const IntVector& a, const RationalVector& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0) {
      s += x[i] * a[i];
    }
  }
  return s;
}

inline RationalVector negate(RationalVector v) {
  for (auto& x : v) {
    x = -x;
  }
  return v;
}

inline IntVector negate(IntVector v) {
  for (auto& x : v) {
    x = -x;
  }
  return v;
}

/// Visits every k-subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& visit) {
  if (k > n) {
    return;
  }
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) {
    idx[i] = i;
  }
  while (true) {
    visit(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t j = k;
    while (j > 0 && idx[j - 1] == n - k + (j - 1)) {
      --j;
    }
    if (j == 0) {
      return;
    }
    ++idx[j - 1];
    for (std::size_t t = j; t < k; ++t) {
      idx[t] = idx[t - 1] + 1;
    }
  }
}

/// Enumerates candidate solutions of a symmetric system: picks k of the
/// representatives and a sign for each (the first sign fixed to +, the
/// negated solution is produced by symmetry), solves rows·x = rhs.
template <typename Solve>
void for_each_signed_subset(std::size_t n, std::size_t k, Solve&& solve) {
  std::vector<int> signs(k);
  for_each_subset(n, k, [&](const std::vector<std::size_t>& idx) {
    const std::size_t combos = k == 0 ? 1 : (std::size_t{1} << (k - 1));
    for (std::size_t mask = 0; mask < combos; ++mask) {
      signs[0] = 1;
      for (std::size_t j = 1; j < k; ++j) {
        signs[j] = (mask >> (j - 1)) & 1U ? -1 : 1;
      }
      solve(idx, signs);
    }
  });
}

inline bool lex_less(const RationalVector& a, const RationalVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace detail

inline ConvexBody ConvexBody::build(std::size_t dim, Representation rep,
                                    std::vector<Facet> facets,
                                    std::vector<RationalVector> vertices) {
  ConvexBody body;
  body.dim_ = dim;
  body.rep_ = rep;
  body.facets_ = std::move(facets);
  body.vertices_ = std::move(vertices);
  body.finish();
  return body;
}

inline void ConvexBody::finish() {
  std::sort(facets_.begin(), facets_.end(), [](const Facet& a, const Facet& b) {
    return a.normal < b.normal;
  });
  std::sort(vertices_.begin(), vertices_.end(), detail::lex_less);
  incidence_.assign(facets_.size(), {});
  for (std::size_t i = 0; i < facets_.size(); ++i) {
    for (std::size_t j = 0; j < vertices_.size(); ++j) {
      if (detail::dot(facets_[i].normal, vertices_[j]) == facets_[i].offset) {
        incidence_[i].push_back(j);
      }
    }
  }
  bbox_.assign(dim_, Rational(0));
  for (const auto& v : vertices_) {
    for (std::size_t j = 0; j < dim_; ++j) {
      bbox_[j] = std::max(bbox_[j], abs(v[j]));
    }
  }
}

inline ConvexBody ConvexBody::from_hrep(std::size_t dim, const std::vector<HalfSpaceRow>& rows,
                                        SymmetryMode mode) {
  if (dim == 0) {
    throw InvalidArgument("dimension must be positive");
  }
  std::map<IntVector, Rational> best;
  for (const auto& row : rows) {
    detail::check_dim(dim, row.normal.size());
    if (row.offset <= 0) {
      throw DegenerateBody("half-space offsets must be positive (origin in the interior)");
    }
    Facet f = detail::normalize_row(row.normal, row.offset);
    auto it = best.find(f.normal);
    if (it == best.end() || f.offset < it->second) {
      best[f.normal] = f.offset;
    }
  }
  // Symmetric completion: intersect with the reflected body.
  std::map<IntVector, Rational> sym;
  for (const auto& [normal, offset] : best) {
    IntVector neg = detail::negate(normal);
    auto partner = best.find(neg);
    if (partner == best.end() || partner->second != offset) {
      if (mode == SymmetryMode::Strict) {
        throw AsymmetricBody("half-space " + to_string(normal) +
                             " has no origin-symmetric partner");
      }
    }
    Rational b = offset;
    if (partner != best.end()) {
      b = std::min(b, partner->second);
    }
    for (const auto& n : {normal, neg}) {
      auto it = sym.find(n);
      if (it == sym.end() || b < it->second) {
        sym[n] = b;
      }
    }
  }
  // Keep one representative per ± pair.
  std::vector<Facet> reps;
  for (const auto& [normal, offset] : sym) {
    if (primitive_canonical(normal) == normal) {
      reps.push_back({normal, offset});
    }
  }
  {
    linalg::IntMatrix normals;
    for (const auto& f : reps) {
      normals.push_back(f.normal);
    }
    if (normals.empty() || linalg::rank(normals) < dim) {
      throw UnboundedBody("half-space normals do not span the ambient space");
    }
  }
  // Vertex enumeration: solve every nonsingular choice of dim rows.
  std::set<RationalVector> verts;
  detail::for_each_signed_subset(
      reps.size(), dim, [&](const std::vector<std::size_t>& idx, const std::vector<int>& signs) {
        linalg::RationalMatrix a;
        RationalVector b;
        for (std::size_t j = 0; j < idx.size(); ++j) {
          RationalVector row;
          for (auto x : reps[idx[j]].normal) {
            row.emplace_back(x * signs[j]);
          }
          a.push_back(std::move(row));
          b.push_back(reps[idx[j]].offset);
        }
        auto x = linalg::solve(std::move(a), std::move(b));
        if (!x) {
          return;
        }
        for (const auto& f : reps) {
          if (abs(detail::dot(f.normal, *x)) > f.offset) {
            return;
          }
        }
        verts.insert(detail::negate(*x));
        verts.insert(std::move(*x));
      });
  std::vector<RationalVector> vertices(verts.begin(), verts.end());
  // Drop redundant rows: a facet's tight vertices span the ambient space.
  std::vector<Facet> facets;
  for (const auto& f : reps) {
    linalg::RationalMatrix tight;
    for (const auto& v : vertices) {
      if (detail::dot(f.normal, v) == f.offset) {
        tight.push_back(v);
      }
    }
    if (linalg::rank(tight) == dim) {
      facets.push_back(f);
      facets.push_back({detail::negate(f.normal), f.offset});
    }
  }
  return build(dim, Representation::HRep, std::move(facets), std::move(vertices));
}

inline ConvexBody ConvexBody::from_vrep(std::size_t dim, const std::vector<RationalVector>& points,
                                        SymmetryMode mode) {
  if (dim == 0) {
    throw InvalidArgument("dimension must be positive");
  }
  std::set<RationalVector> pts;
  for (const auto& p : points) {
    detail::check_dim(dim, p.size());
    pts.insert(p);
  }
  for (const auto& p : std::vector<RationalVector>(pts.begin(), pts.end())) {
    auto neg = detail::negate(p);
    if (!pts.count(neg)) {
      if (mode == SymmetryMode::Strict) {
        throw AsymmetricBody("point has no origin-symmetric partner");
      }
      pts.insert(std::move(neg));
    }
  }
  // Representatives: lexicographically larger of each ± pair, origin dropped.
  std::vector<RationalVector> reps;
  for (const auto& p : pts) {
    if (!is_zero(p) && detail::lex_less(detail::negate(p), p)) {
      reps.push_back(p);
    }
  }
  if (linalg::rank(reps) < dim) {
    throw DegenerateBody("points do not span the ambient space");
  }
  std::set<Facet, bool (*)(const Facet&, const Facet&)> found(
      [](const Facet& a, const Facet& b) { return a.normal < b.normal; });
  detail::for_each_signed_subset(
      reps.size(), dim, [&](const std::vector<std::size_t>& idx, const std::vector<int>& signs) {
        linalg::RationalMatrix a;
        for (std::size_t j = 0; j < idx.size(); ++j) {
          RationalVector row = reps[idx[j]];
          if (signs[j] < 0) {
            row = detail::negate(std::move(row));
          }
          a.push_back(std::move(row));
        }
        auto y = linalg::solve(std::move(a), RationalVector(dim, Rational(1)));
        if (!y) {
          return;
        }
        for (const auto& p : reps) {
          if (abs(dot(*y, p)) > 1) {
            return;
          }
        }
        Facet f = detail::normalize_row(*y, 1);
        found.insert({detail::negate(f.normal), f.offset});
        found.insert(std::move(f));
      });
  std::vector<Facet> facets(found.begin(), found.end());
  // A point is a vertex iff the normals of its tight facets span R^d.
  std::vector<RationalVector> vertices;
  for (const auto& p : pts) {
    if (is_zero(p)) {
      continue;
    }
    linalg::IntMatrix tight;
    for (const auto& f : facets) {
      if (detail::dot(f.normal, p) == f.offset) {
        tight.push_back(f.normal);
      }
    }
    if (!tight.empty() && linalg::rank(tight) == dim) {
      vertices.push_back(p);
    }
  }
  return build(dim, Representation::VRep, std::move(facets), std::move(vertices));
}

inline ConvexBody ConvexBody::cube(std::size_t dim, const Rational& radius) {
  return box(RationalVector(dim, radius));
}

inline ConvexBody ConvexBody::box(const RationalVector& radii) {
  std::vector<HalfSpaceRow> rows;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    RationalVector e(radii.size(), Rational(0));
    e[i] = 1;
    rows.push_back({e, radii[i]});
    rows.push_back({detail::negate(e), radii[i]});
  }
  return from_hrep(radii.size(), rows, SymmetryMode::Strict);
}

inline ConvexBody ConvexBody::cross_polytope(std::size_t dim, const Rational& radius) {
  return weighted_cross_polytope(RationalVector(dim, radius));
}

inline ConvexBody ConvexBody::weighted_cross_polytope(const RationalVector& weights) {
  std::vector<RationalVector> pts;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    RationalVector e(weights.size(), Rational(0));
    e[i] = weights[i];
    pts.push_back(e);
    pts.push_back(detail::negate(e));
  }
  return from_vrep(weights.size(), pts, SymmetryMode::Strict);
}

inline bool ConvexBody::contains(const RationalVector& point) const {
  detail::check_dim(dim_, point.size());
  for (const auto& f : facets_) {
    if (detail::dot(f.normal, point) > f.offset) {
      return false;
    }
  }
  return true;
}

inline bool ConvexBody::contains(const IntVector& point) const {
  detail::check_dim(dim_, point.size());
  for (const auto& f : facets_) {
    if (Rational(dot(f.normal, point)) > f.offset) {
      return false;
    }
  }
  return true;
}

inline Rational ConvexBody::gauge(const RationalVector& point) const {
  detail::check_dim(dim_, point.size());
  if (is_zero(point)) {
    throw InvalidArgument("gauge of the zero vector");
  }
  Rational best = 0;
  for (const auto& f : facets_) {
    Rational t = detail::dot(f.normal, point) / f.offset;
    if (t > best) {
      best = t;
    }
  }
  return best;
}

inline Rational ConvexBody::support(const RationalVector& direction) const {
  detail::check_dim(dim_, direction.size());
  Rational best = 0;
  for (const auto& v : vertices_) {
    Rational s = dot(direction, v);
    if (s > best) {
      best = s;
    }
  }
  return best;
}

inline ConvexBody ConvexBody::polar() const {
  ConvexBody p;
  p.dim_ = dim_;
  p.rep_ = rep_ == Representation::HRep ? Representation::VRep : Representation::HRep;
  for (const auto& f : facets_) {
    RationalVector v;
    for (auto x : f.normal) {
      v.push_back(Rational(x) / f.offset);
    }
    p.vertices_.push_back(std::move(v));
  }
  for (const auto& v : vertices_) {
    p.facets_.push_back(detail::normalize_row(v, 1));
  }
  p.finish();
  if (!label_.empty()) {
    p.label_ = "polar(" + label_ + ")";
  }
  return p;
}

inline ConvexBody ConvexBody::scaled(const Rational& factor) const {
  if (factor <= 0) {
    throw InvalidArgument("scale factor must be positive");
  }
  ConvexBody s = *this;
  for (auto& f : s.facets_) {
    f.offset *= factor;
  }
  for (auto& v : s.vertices_) {
    for (auto& x : v) {
      x *= factor;
    }
  }
  for (auto& x : s.bbox_) {
    x *= factor;
  }
  if (!label_.empty()) {
    s.label_ = to_string(factor) + "*" + label_;
  }
  return s;
}

inline bool ConvexBody::is_unconditional() const {
  std::set<std::pair<IntVector, Rational>> rows;
  for (const auto& f : facets_) {
    rows.insert({f.normal, f.offset});
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    for (const auto& f : facets_) {
      IntVector flipped = f.normal;
      flipped[i] = -flipped[i];
      if (!rows.count({flipped, f.offset})) {
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Volume

enum class VolumeMode { Exact, MonteCarlo };

struct Volume {
  VolumeMode mode = VolumeMode::Exact;
  Rational exact;
  double estimate = 0.0;
  /// Standard error of the Monte Carlo estimate; zero in exact mode.
  double std_error = 0.0;

  double value() const { return mode == VolumeMode::Exact ? to_double(exact) : estimate; }
};

struct VolumeOptions {
  VolumeMode mode = VolumeMode::Exact;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  /// Largest dimension handled in exact mode; nullopt reads
  /// LATSLICE_EXACT_DIM_CAP and falls back to 5.
  std::optional<std::size_t> exact_dim_cap;
};

inline std::size_t exact_dim_cap(const VolumeOptions& opts = {}) {
  if (opts.exact_dim_cap) {
    return *opts.exact_dim_cap;
  }
  if (const char* env = std::getenv("LATSLICE_EXACT_DIM_CAP")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      return static_cast<std::size_t>(v);
    }
  }
  return 5;
}

namespace detail {

using VertexSet = std::vector<std::size_t>;

/// Pulling triangulation of a face given by its vertex indices. Sub-faces of
/// a face F are the inclusion-maximal proper sets F ∩ G over the facets G of
/// the polytope.
inline void pull_triangulate(const VertexSet& face, std::size_t face_dim,
                             const std::vector<VertexSet>& facet_sets,
                             std::vector<VertexSet>& out) {
  if (face.size() == face_dim + 1) {
    out.push_back(face);
    return;
  }
  const std::size_t apex = face.front();
  std::vector<VertexSet> subfaces;
  for (const auto& g : facet_sets) {
    VertexSet inter;
    std::set_intersection(face.begin(), face.end(), g.begin(), g.end(),
                          std::back_inserter(inter));
    if (inter.size() == face.size() || inter.size() < face_dim) {
      continue;
    }
    subfaces.push_back(std::move(inter));
  }
  std::sort(subfaces.begin(), subfaces.end());
  subfaces.erase(std::unique(subfaces.begin(), subfaces.end()), subfaces.end());
  std::vector<VertexSet> maximal;
  for (std::size_t i = 0; i < subfaces.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < subfaces.size() && !dominated; ++j) {
      if (i != j && subfaces[j].size() > subfaces[i].size() &&
          std::includes(subfaces[j].begin(), subfaces[j].end(), subfaces[i].begin(),
                        subfaces[i].end())) {
        dominated = true;
      }
    }
    if (!dominated) {
      maximal.push_back(subfaces[i]);
    }
  }
  for (const auto& sub : maximal) {
    if (std::binary_search(sub.begin(), sub.end(), apex)) {
      continue;
    }
    std::vector<VertexSet> pieces;
    pull_triangulate(sub, face_dim - 1, facet_sets, pieces);
    for (auto& s : pieces) {
      s.insert(s.begin(), apex);
      out.push_back(std::move(s));
    }
  }
}

}  // namespace detail

/// Exact volume: every facet is triangulated by pulling, and each
/// (d-1)-simplex is coned to the origin (an interior point).
inline Rational exact_volume(const ConvexBody& body) {
  const std::size_t d = body.dim();
  std::vector<detail::VertexSet> facet_sets;
  for (std::size_t i = 0; i < body.facets().size(); ++i) {
    facet_sets.push_back(body.facet_vertices(i));
  }
  Rational total = 0;
  for (const auto& facet : facet_sets) {
    std::vector<detail::VertexSet> simplices;
    detail::pull_triangulate(facet, d - 1, facet_sets, simplices);
    for (const auto& s : simplices) {
      linalg::RationalMatrix m;
      for (auto idx : s) {
        m.push_back(body.vertices()[idx]);
      }
      total += abs(linalg::determinant(std::move(m)));
    }
  }
  return total / Rational(factorial(static_cast<unsigned>(d)));
}

inline Volume volume(const ConvexBody& body, const VolumeOptions& opts = {}) {
  Volume v;
  v.mode = opts.mode;
  if (opts.mode == VolumeMode::Exact) {
    const std::size_t cap = exact_dim_cap(opts);
    if (body.dim() > cap) {
      throw Unsupported("exact volume unsupported above dimension " + std::to_string(cap) +
                        " (got " + std::to_string(body.dim()) + ")");
    }
    v.exact = exact_volume(body);
    v.estimate = to_double(v.exact);
    return v;
  }
  if (opts.samples == 0) {
    throw InvalidArgument("Monte Carlo volume needs at least one sample");
  }
  std::mt19937_64 rng(opts.seed);
  const auto& box = body.bounding_box();
  std::vector<std::uniform_real_distribution<double>> dists;
  double box_volume = 1.0;
  for (const auto& r : box) {
    double rd = to_double(r);
    dists.emplace_back(-rd, rd);
    box_volume *= 2.0 * rd;
  }
  std::vector<std::vector<double>> normals;
  std::vector<double> offsets;
  for (const auto& f : body.facets()) {
    normals.emplace_back(f.normal.begin(), f.normal.end());
    offsets.push_back(to_double(f.offset));
  }
  std::size_t hits = 0;
  std::vector<double> x(body.dim());
  for (std::size_t s = 0; s < opts.samples; ++s) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] = dists[j](rng);
    }
    bool inside = true;
    for (std::size_t i = 0; i < normals.size() && inside; ++i) {
      double t = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) {
        t += normals[i][j] * x[j];
      }
      inside = t <= offsets[i];
    }
    hits += inside ? 1 : 0;
  }
  const double n = static_cast<double>(opts.samples);
  const double p = static_cast<double>(hits) / n;
  v.estimate = box_volume * p;
  // Floor the error at one-sample resolution so it stays positive at p in {0, 1}.
  v.std_error = std::max(box_volume * std::sqrt(p * (1.0 - p) / n), box_volume / n);
  return v;
}

}  // namespace latslice

#endif  // LATSLICE_BODY_HPP
