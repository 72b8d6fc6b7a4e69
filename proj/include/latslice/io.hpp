#ifndef LATSLICE_IO_HPP
#define LATSLICE_IO_HPP

#include "latslice/body.hpp"
#include "latslice/minima.hpp"
#include "latslice/random.hpp"
#include "latslice/slicing.hpp"
#include "latslice/verify.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace latslice::io {

using Json = nlohmann::json;

namespace detail {

inline std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) {
      return out;
    }
    start = pos + 1;
  }
}

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::size_t parse_size(const std::string& text, const char* what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &pos);
  } catch (const std::exception&) {
    throw ParseError(std::string("bad ") + what + ": '" + text + "'");
  }
  if (pos != text.size() || v < 0) {
    throw ParseError(std::string("bad ") + what + ": '" + text + "'");
  }
  return static_cast<std::size_t>(v);
}

inline Rational json_rational(const Json& j) {
  if (j.is_string()) {
    return parse_rational(j.get<std::string>());
  }
  if (j.is_number_integer()) {
    return Rational(j.get<std::int64_t>());
  }
  throw ParseError("expected a rational as \"p\" or \"p/q\", got " + j.dump());
}

inline RationalVector json_vector(const Json& j) {
  if (!j.is_array()) {
    throw ParseError("expected an array, got " + j.dump());
  }
  RationalVector v;
  for (const auto& x : j) {
    v.push_back(json_rational(x));
  }
  return v;
}

}  // namespace detail

/// Comma-separated rationals, e.g. "1,3/2,-2".
inline RationalVector parse_rational_list(std::string_view text) {
  RationalVector out;
  for (const auto& part : detail::split(text, ',')) {
    out.push_back(parse_rational(detail::trim(part)));
  }
  return out;
}

/// Comma-separated integers.
inline IntVector parse_int_list(std::string_view text) {
  IntVector out;
  for (const auto& q : parse_rational_list(text)) {
    if (denominator(q) != 1 || !fits_int64(numerator(q))) {
      throw ParseError("expected integers, got '" + std::string(text) + "'");
    }
    out.push_back(to_int64(numerator(q)));
  }
  return out;
}

/// One normal "1,1,0" (optionally "u:1,1,0") gives a hyperplane; several
/// separated by ';' give their common orthogonal complement.
inline LatticeSubspace parse_subspace(std::string_view text, std::size_t dim) {
  const bool basis = text.substr(0, 2) == "b:";
  if (basis || text.substr(0, 2) == "u:") {
    text.remove_prefix(2);
  }
  linalg::IntMatrix normals;
  for (const auto& part : detail::split(text, ';')) {
    IntVector u = parse_int_list(detail::trim(part));
    if (u.size() != dim) {
      throw InvalidArgument("vector " + to_string(u) + " does not have dimension " +
                            std::to_string(dim));
    }
    if (is_zero(u)) {
      throw InvalidArgument("subspace vectors must be nonzero");
    }
    normals.push_back(std::move(u));
  }
  if (basis) {
    if (normals.size() >= dim) {
      throw InvalidArgument("a subspace basis must have fewer than " + std::to_string(dim) +
                            " vectors");
    }
    return LatticeSubspace::span(normals);
  }
  if (normals.size() == 1) {
    return LatticeSubspace::hyperplane(normals[0]);
  }
  if (linalg::rank(normals) != normals.size() || normals.size() >= dim) {
    throw InvalidArgument("subspace normals must be independent and fewer than the dimension");
  }
  return LatticeSubspace::span(linalg::integer_kernel(normals, dim));
}

/// "N:1,1; v:(1,0),(0,1)"
inline Progression parse_progression(std::string_view text) {
  const auto parts = detail::split(text, ';');
  if (parts.size() != 2) {
    throw ParseError("progression spec is \"N:n1,...; v:(..),(..)\"");
  }
  const std::string n_part = detail::trim(parts[0]);
  const std::string v_part = detail::trim(parts[1]);
  if (n_part.rfind("N:", 0) != 0 || v_part.rfind("v:", 0) != 0) {
    throw ParseError("progression spec is \"N:n1,...; v:(..),(..)\"");
  }
  const IntVector n = parse_int_list(n_part.substr(2));
  linalg::IntMatrix v;
  std::string_view rest = std::string_view(v_part).substr(2);
  while (true) {
    const auto open = rest.find('(');
    if (open == std::string_view::npos) {
      break;
    }
    const auto close = rest.find(')', open);
    if (close == std::string_view::npos) {
      throw ParseError("unbalanced parenthesis in progression vectors");
    }
    v.push_back(parse_int_list(rest.substr(open + 1, close - open - 1)));
    rest.remove_prefix(close + 1);
  }
  return Progression(n, v);
}

/// Body file contents: {"dim": d, "hrep": [[[a...], b], ...]} or
/// {"vrep": [[p...], ...]}.
inline ConvexBody body_from_json(const Json& j, const std::string& label = "file") {
  if (!j.is_object()) {
    throw ParseError("body description must be a JSON object");
  }
  const bool has_h = j.contains("hrep");
  const bool has_v = j.contains("vrep");
  if (has_h == has_v) {
    throw ParseError("body description needs exactly one of \"hrep\" or \"vrep\"");
  }
  std::optional<std::size_t> dim;
  if (j.contains("dim")) {
    if (!j["dim"].is_number_unsigned()) {
      throw ParseError("\"dim\" must be a positive integer");
    }
    dim = j["dim"].get<std::size_t>();
  }
  if (has_h) {
    if (!j["hrep"].is_array() || j["hrep"].empty()) {
      throw ParseError("\"hrep\" must be a nonempty array");
    }
    std::vector<HalfSpaceRow> rows;
    for (const auto& row : j["hrep"]) {
      if (!row.is_array() || row.size() != 2) {
        throw ParseError("hrep rows are [[a1,...,ad], b]");
      }
      rows.push_back({detail::json_vector(row[0]), detail::json_rational(row[1])});
    }
    const std::size_t d = dim.value_or(rows[0].normal.size());
    return ConvexBody::from_hrep(d, rows).with_label(label);
  }
  if (!j["vrep"].is_array() || j["vrep"].empty()) {
    throw ParseError("\"vrep\" must be a nonempty array");
  }
  std::vector<RationalVector> pts;
  for (const auto& p : j["vrep"]) {
    pts.push_back(detail::json_vector(p));
  }
  const std::size_t d = dim.value_or(pts[0].size());
  return ConvexBody::from_vrep(d, pts).with_label(label);
}

/// Built-in names (cube:d, cross:d, box:r1,...,rd, random:d[,count[,radius]])
/// or a path to a body file. A suffix "@c" scales the body by the rational c.
inline ConvexBody parse_body(const std::string& spec, std::uint64_t seed = 0) {
  std::string base = spec;
  std::optional<Rational> scale;
  if (const auto at = spec.rfind('@'); at != std::string::npos) {
    base = spec.substr(0, at);
    scale = parse_rational(spec.substr(at + 1));
    if (*scale <= 0) {
      throw InvalidArgument("scale factor must be positive");
    }
  }
  auto finish = [&](ConvexBody body) {
    return scale ? body.scaled(*scale) : body;
  };
  const auto colon = base.find(':');
  const std::string kind = base.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : base.substr(colon + 1);
  if (kind == "cube" || kind == "cross") {
    const std::size_t d = detail::parse_size(args, "dimension");
    if (d < 1) {
      throw InvalidArgument("dimension must be positive");
    }
    return finish((kind == "cube" ? ConvexBody::cube(d) : ConvexBody::cross_polytope(d))
                      .with_label(base));
  }
  if (kind == "box") {
    RationalVector radii = parse_rational_list(args);
    for (const auto& r : radii) {
      if (r <= 0) {
        throw InvalidArgument("box half-widths must be positive");
      }
    }
    return finish(ConvexBody::box(radii).with_label(base));
  }
  if (kind == "random") {
    const auto parts = detail::split(args, ',');
    const std::size_t d = detail::parse_size(parts[0], "dimension");
    const std::size_t count = parts.size() > 1 ? detail::parse_size(parts[1], "point count") : 0;
    const std::int64_t radius =
        parts.size() > 2 ? static_cast<std::int64_t>(detail::parse_size(parts[2], "radius")) : 3;
    if (d < 1 || radius < 1 || parts.size() > 3) {
      throw InvalidArgument("random bodies are random:d[,count[,radius]]");
    }
    BodyGenerator gen(seed);
    return finish(gen.symmetric_polytope(d, count, radius));
  }
  std::ifstream in(spec);
  if (!in) {
    throw ParseError("unknown body '" + spec + "' (not a built-in and not a readable file)");
  }
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("cannot parse body file '" + spec + "': " + e.what());
  }
  return body_from_json(j, spec);
}

// ---------------------------------------------------------------------------
// Serialization

inline Json to_json(const Rational& q) { return to_string(q); }
inline Json to_json(const BigInt& z) { return z.str(); }

inline Json to_json(const IntVector& v) {
  Json j = Json::array();
  for (auto x : v) {
    j.push_back(x);
  }
  return j;
}

inline Json to_json(const linalg::IntMatrix& rows) {
  Json j = Json::array();
  for (const auto& r : rows) {
    j.push_back(to_json(r));
  }
  return j;
}

inline Json to_json(const LatticeSubspace& h) {
  Json j;
  j["dim"] = h.dim();
  j["basis"] = to_json(h.basis());
  if (h.normal()) {
    j["normal"] = to_json(*h.normal());
  } else {
    j["complement"] = to_json(h.complement());
  }
  return j;
}

inline Json to_json(const ConvexBody& body) {
  Json j;
  j["dim"] = body.dim();
  Json rows = Json::array();
  for (const auto& f : body.facets()) {
    rows.push_back(Json::array({to_json(f.normal), to_json(f.offset)}));
  }
  j["hrep"] = rows;
  Json verts = Json::array();
  for (const auto& v : body.vertices()) {
    Json p = Json::array();
    for (const auto& c : v) {
      p.push_back(to_json(c));
    }
    verts.push_back(p);
  }
  j["vrep"] = verts;
  return j;
}

inline Json to_json(const Volume& v) {
  Json j;
  if (v.mode == VolumeMode::Exact) {
    j["mode"] = "exact";
    j["exact"] = to_json(v.exact);
  } else {
    j["mode"] = "mc";
    j["std_error"] = v.std_error;
  }
  j["value"] = v.value();
  return j;
}

/// Levels keyed by the coset label, e.g. {"normal":[1,1,1],"levels":{"-1":3,...}}.
inline Json to_json(const SliceProfile& p) {
  Json j;
  if (p.subspace.normal()) {
    j["normal"] = to_json(*p.subspace.normal());
  } else {
    j["complement"] = to_json(p.subspace.complement());
  }
  Json levels = Json::object();
  for (const auto& [label, count] : p.by_translate) {
    std::string key;
    for (std::size_t i = 0; i < label.size(); ++i) {
      key += (i ? "," : "") + std::to_string(label[i]);
    }
    levels[key] = count.convert_to<std::int64_t>();
  }
  j["levels"] = levels;
  return j;
}

inline Json to_json(const MaxSliceResult& r) {
  Json j;
  j["m"] = r.m;
  j["best_count"] = to_json(r.best_count);
  j["witness"] = r.witness ? to_json(*r.witness) : Json();
  j["candidates_searched"] = r.candidates_searched;
  j["exhaustive"] = r.exhaustive;
  return j;
}

inline Json to_json(const SuccessiveMinima& s) {
  Json j;
  Json l = Json::array();
  for (const auto& x : s.lambdas) {
    l.push_back(to_json(x));
  }
  j["lambdas"] = l;
  j["basis"] = to_json(s.basis);
  return j;
}

inline Json to_json(const BrunnReport& r) {
  Json j;
  j["min_ratio"] = to_json(r.min_ratio);
  j["bound"] = to_json(r.bound);
  j["holds"] = r.holds;
  j["witness_translate"] = to_json(r.witness_translate);
  return j;
}

inline Json to_json(const PickQuantities& q) {
  Json j;
  j["A"] = to_json(q.area);
  j["I"] = to_json(q.interior);
  j["B"] = to_json(q.boundary);
  j["identity_holds"] = q.identity_holds;
  return j;
}

inline const char* status_name(ReportStatus s) {
  switch (s) {
    case ReportStatus::Passed:
      return "passed";
    case ReportStatus::Failed:
      return "failed";
    case ReportStatus::HypothesisViolated:
      return "hypothesis_violated";
  }
  return "unknown";
}

inline Json to_json(const SlicingReport& r) {
  Json j;
  j["body"] = r.body;
  j["theorem"] = r.theorem;
  j["d"] = r.d;
  j["m"] = r.m;
  j["status"] = status_name(r.status);
  if (r.status == ReportStatus::HypothesisViolated) {
    j["hypothesis"] = r.hypothesis;
  }
  j["count_total"] = to_json(r.count_total);
  j["volume"] = to_json(r.volume);
  if (r.max_slice) {
    j["max_slice"] = to_json(*r.max_slice);
    j["observed_constant_power"] = to_json(r.observed_constant_power);
    j["observed_constant"] = r.observed_constant;
  }
  if (!r.lambdas.empty()) {
    Json l = Json::array();
    for (const auto& x : r.lambdas) {
      l.push_back(to_json(x));
    }
    j[r.theorem == "main" ? "polar_lambdas" : "lambdas"] = l;
    j["directional_basis"] = to_json(r.directional_basis);
  }
  if (r.polar_volume) {
    j["polar_volume"] = to_json(*r.polar_volume);
  }
  if (r.mahler_volume) {
    j["mahler_volume"] = to_json(*r.mahler_volume);
  }
  Json chain = Json::array();
  for (const auto& e : r.chain) {
    chain.push_back({{"name", e.name}, {"pass", e.pass}, {"detail", e.detail}});
  }
  j["chain"] = chain;
  if (r.seed) {
    j["seed"] = *r.seed;
  }
  return j;
}

inline Json to_json(const ProgressionBoundReport& r) {
  Json j;
  j["contained"] = r.contained;
  j["vol_lower_bound"] = to_json(r.vol_lb);
  j["volume"] = to_json(r.vol);
  j["holds"] = r.holds;
  return j;
}

inline Json to_json(const std::vector<ScalingRow>& rows) {
  Json j = Json::array();
  for (const auto& row : rows) {
    j.push_back({{"r", to_json(row.radius)},
                 {"count", to_json(row.count)},
                 {"expected", to_json(row.expected)},
                 {"abs_deviation", to_json(row.abs_deviation)},
                 {"rel_deviation", to_json(row.rel_deviation)},
                 {"rel_deviation_float", to_double(row.rel_deviation)}});
  }
  return j;
}

inline Json to_json(const GaussScalingReport& r) {
  Json j;
  j["volume"] = to_json(r.volume);
  j["rows"] = to_json(r.rows);
  j["relative_decreasing"] = r.relative_decreasing;
  if (r.section) {
    j["section"] = {{"normal", to_json(r.section->normal)},
                    {"gram_determinant", to_json(r.section->gram_determinant)},
                    {"normalized_volume", to_json(r.section->normalized_volume)},
                    {"rows", to_json(r.section->rows)},
                    {"relative_decreasing", r.section->relative_decreasing}};
  }
  return j;
}

/// Header and rows of the per-body CSV summary.
inline std::string csv_header() {
  return "seed,body,d,m,status,count,max_slice,exhaustive,volume,observed_constant,chain_bits";
}

inline std::string csv_row(const SlicingReport& r) {
  std::ostringstream out;
  out << (r.seed ? std::to_string(*r.seed) : "") << ',' << r.body << ',' << r.d << ',' << r.m
      << ',' << status_name(r.status) << ',' << r.count_total << ','
      << (r.max_slice ? r.max_slice->best_count.str() : "") << ','
      << (r.max_slice ? (r.max_slice->exhaustive ? "1" : "0") : "") << ','
      << to_string(r.volume) << ',';
  if (r.max_slice) {
    out.precision(10);
    out << r.observed_constant;
  }
  out << ',';
  for (const auto& e : r.chain) {
    out << (e.pass ? '1' : '0');
  }
  return out.str();
}

}  // namespace latslice::io

#endif  // LATSLICE_IO_HPP
