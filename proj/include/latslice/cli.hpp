#ifndef LATSLICE_CLI_HPP
#define LATSLICE_CLI_HPP

#include "latslice/io.hpp"
#include "latslice/minima.hpp"
#include "latslice/slicing.hpp"
#include "latslice/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace latslice::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kCheckFailed = 2 };

struct Options {
  std::string body;
  std::optional<std::size_t> m;
  std::string normal;
  std::optional<std::int64_t> normal_bound;
  std::string mode = "exact";
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::size_t trials = 10;
  std::string radii;
  std::size_t jobs = 1;
  std::string format = "text";
  std::string out;
  std::string kind;  // verify target
};

namespace detail {

inline CandidateStrategy strategy(const Options& o) {
  CandidateStrategy s;
  if (o.normal_bound) {
    if (*o.normal_bound < 1) {
      throw InvalidArgument("--normal-bound must be positive");
    }
    s.normal_bound = o.normal_bound;
  }
  return s;
}

inline std::size_t slice_dim(const Options& o, const ConvexBody& body) {
  const std::size_t m = o.m.value_or(body.dim() - 1);
  if (m < 1 || m + 1 > body.dim()) {
    throw InvalidArgument("--m must satisfy 1 <= m <= d-1");
  }
  return m;
}

inline void print_report_text(std::ostream& out, const SlicingReport& r) {
  out << r.theorem << " " << r.body << " d=" << r.d << " m=" << r.m << "\n";
  if (r.status == ReportStatus::HypothesisViolated) {
    out << "hypothesis violated: " << r.hypothesis << "\n";
    return;
  }
  for (const auto& e : r.chain) {
    out << (e.pass ? "[pass] " : "[FAIL] ") << e.name;
    if (!e.detail.empty()) {
      out << "  " << e.detail;
    }
    out << "\n";
  }
  out << "#K = " << r.count_total << "\n";
  out << "vol = " << to_string(r.volume) << "\n";
  if (r.max_slice) {
    out << "max slice = " << r.max_slice->best_count
        << (r.max_slice->exhaustive ? " (exact)" : " (lower bound)") << "\n";
    out << "observed constant = " << r.observed_constant << " (power "
        << to_string(r.observed_constant_power) << ")\n";
  }
  if (r.mahler_volume) {
    out << "mahler volume = " << to_string(*r.mahler_volume) << "\n";
  }
  out << (r.passed() ? "passed" : "FAILED") << "\n";
}

inline int report_exit(const SlicingReport& r, std::ostream& err) {
  if (r.status == ReportStatus::HypothesisViolated) {
    err << "hypothesis violated: " << r.hypothesis << "\n";
    return kInputError;
  }
  if (r.status == ReportStatus::Failed) {
    err << "check failed: " << r.first_failure()->name << "\n";
    return kCheckFailed;
  }
  return kOk;
}

inline SlicingReport run_verify(const std::string& kind, const ConvexBody& body,
                                const Options& o) {
  if (kind == "dim2") {
    return verify_dim2(body);
  }
  if (kind == "unconditional") {
    return verify_unconditional(body);
  }
  return verify_main(body, slice_dim(o, body), {}, strategy(o));
}

class Runner {
public:
  Runner(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  int count() {
    const ConvexBody body = load();
    if (!o_.normal.empty()) {
      const LatticeSubspace h = io::parse_subspace(o_.normal, body.dim());
      const SliceProfile p = slice_profile(body, h);
      if (json()) {
        io::Json j = io::to_json(p);
        j["body"] = body.label();
        j["count"] = BigInt(enumerate_points(body).size()).str();
        emit(j);
      } else {
        BigInt total = 0;
        for (const auto& [label, c] : p.by_translate) {
          total += c;
        }
        out_ << total << "\n";
        for (const auto& [label, c] : p.by_translate) {
          out_ << to_string(label) << " " << c << "\n";
        }
      }
      return kOk;
    }
    const PointCount c = count_points(body);
    if (json()) {
      emit({{"body", body.label()}, {"count", c.total.str()}});
    } else {
      out_ << c.total << "\n";
    }
    return kOk;
  }

  int volume_cmd() {
    const ConvexBody body = load();
    VolumeOptions opts;
    if (o_.mode == "mc") {
      opts.mode = VolumeMode::MonteCarlo;
      opts.samples = o_.samples;
      opts.seed = o_.seed;
    }
    const Volume v = volume(body, opts);
    if (json()) {
      io::Json j = io::to_json(v);
      j["body"] = body.label();
      emit(j);
    } else if (v.mode == VolumeMode::Exact) {
      out_ << to_string(v.exact) << "\n";
    } else {
      out_ << v.estimate << " +- " << v.std_error << "\n";
    }
    return kOk;
  }

  int minima() {
    const ConvexBody body = load();
    const SuccessiveMinima s = successive_minima(body);
    if (json()) {
      io::Json j = io::to_json(s);
      j["body"] = body.label();
      emit(j);
    } else {
      for (std::size_t i = 0; i < s.lambdas.size(); ++i) {
        out_ << "lambda_" << i + 1 << " = " << to_string(s.lambdas[i]) << "  "
             << to_string(s.basis[i]) << "\n";
      }
    }
    return kOk;
  }

  int slice() {
    const ConvexBody body = load();
    if (!o_.normal.empty()) {
      if (o_.m) {
        throw InvalidArgument("slice takes either --normal or --m, not both");
      }
      const LatticeSubspace h = io::parse_subspace(o_.normal, body.dim());
      const PointCount c = slice_count(body, h);
      if (json()) {
        io::Json j = io::to_json(h);
        j["body"] = body.label();
        j["count"] = c.total.str();
        emit(j);
      } else {
        out_ << c.total << "\n";
      }
      return kOk;
    }
    const MaxSliceResult r = max_slice(body, slice_dim(o_, body), strategy(o_));
    if (json()) {
      io::Json j = io::to_json(r);
      j["body"] = body.label();
      emit(j);
    } else {
      out_ << r.best_count << "\n";
      out_ << (r.exhaustive ? "exact" : "lower bound") << ", " << r.candidates_searched
           << " candidates\n";
      if (r.witness) {
        out_ << "witness basis";
        for (const auto& v : r.witness->basis()) {
          out_ << " " << to_string(v);
        }
        out_ << "\n";
      }
    }
    return kOk;
  }

  int brunn() {
    const ConvexBody body = load();
    if (o_.normal.empty()) {
      throw InvalidArgument("brunn needs --normal");
    }
    const SliceProfile p = slice_profile(body, io::parse_subspace(o_.normal, body.dim()));
    const BrunnReport r = brunn_check(p);
    if (json()) {
      io::Json j = io::to_json(p);
      j["body"] = body.label();
      j["brunn"] = io::to_json(r);
      emit(j);
    } else {
      for (const auto& [label, c] : p.by_translate) {
        out_ << to_string(label) << " " << c << "\n";
      }
      out_ << "central = " << p.central << ", max translate = " << p.max_count << "\n";
      out_ << "min ratio = " << to_string(r.min_ratio) << " >= " << to_string(r.bound) << ": "
           << (r.holds ? "holds" : "FAILS") << "\n";
    }
    if (!r.holds) {
      err_ << "check failed: brunn\n";
      return kCheckFailed;
    }
    return kOk;
  }

  int pick() {
    const ConvexBody body = load();
    if (body.dim() != 2) {
      throw InvalidArgument("pick needs a planar body");
    }
    // Use the vertices when they are integral, otherwise conv(K ∩ Z^2).
    std::vector<IntVector> polygon;
    for (const auto& v : body.vertices()) {
      if (denominator(v[0]) != 1 || denominator(v[1]) != 1) {
        polygon.clear();
        break;
      }
      polygon.push_back({to_int64(numerator(v[0])), to_int64(numerator(v[1]))});
    }
    if (polygon.empty()) {
      polygon = convex_hull_2d(enumerate_points(body));
    }
    const PickQuantities q = pick_quantities(polygon);
    if (json()) {
      io::Json j = io::to_json(q);
      j["body"] = body.label();
      emit(j);
    } else {
      out_ << "A = " << to_string(q.area) << ", I = " << q.interior << ", B = " << q.boundary
           << ": identity " << (q.identity_holds ? "holds" : "FAILS") << "\n";
    }
    if (!q.identity_holds) {
      err_ << "check failed: pick_identity\n";
      return kCheckFailed;
    }
    return kOk;
  }

  int verify() {
    const ConvexBody body = load();
    if (o_.kind == "progression") {
      const Progression p = heuristic_progression(body);
      const auto& n = p.bounds();
      const bool applies = p.proper() && std::all_of(n.begin(), n.end(), [](auto v) { return v >= 1; });
      ProgressionBoundReport r;
      if (applies) {
        r = progression_volume_bound(p, body);
      } else {
        r.contained = latslice::detail::progression_contained(p, body);
        r.holds = r.contained;
      }
      if (json()) {
        io::Json j = io::to_json(r);
        j["body"] = body.label();
        j["bounds"] = p.bounds();
        j["vectors"] = io::to_json(p.vectors());
        j["volume_bound_applies"] = applies;
        if (!applies) {
          j.erase("volume");
          j.erase("vol_lower_bound");
        }
        emit(j);
      } else {
        out_ << "progression N = " << to_string(IntVector(p.bounds())) << "\n";
        out_ << "contained: " << (r.contained ? "yes" : "no") << "\n";
        if (applies) {
          out_ << "vol = " << to_string(r.vol) << " >= " << to_string(r.vol_lb) << ": "
               << (r.holds ? "holds" : "FAILS") << "\n";
        } else {
          out_ << "volume bound not applicable (some N_k = 0)\n";
        }
      }
      if (!r.holds) {
        err_ << "check failed: " << (r.contained ? "progression_volume_bound" : "containment")
             << "\n";
        return kCheckFailed;
      }
      return kOk;
    }
    SlicingReport r = run_verify(o_.kind, body, o_);
    if (o_.body.rfind("random", 0) == 0) {
      r.seed = o_.seed;
    }
    if (json()) {
      emit(io::to_json(r));
    } else if (o_.format == "csv") {
      out_ << io::csv_header() << "\n" << io::csv_row(r) << "\n";
    } else {
      print_report_text(out_, r);
    }
    return report_exit(r, err_);
  }

  int scan() {
    if (o_.body.rfind("random:", 0) != 0) {
      throw InvalidArgument("scan needs a random body family, e.g. --body random:3");
    }
    if (o_.jobs < 1) {
      throw InvalidArgument("--jobs must be positive");
    }
    // Validate the family and m once before fanning out.
    const ConvexBody probe = io::parse_body(o_.body, o_.seed);
    const std::size_t m = slice_dim(o_, probe);
    const CandidateStrategy strat = strategy(o_);

    std::vector<std::optional<SlicingReport>> reports(o_.trials);
    std::vector<std::string> errors(o_.trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < o_.trials; i = next++) {
        const std::uint64_t seed = o_.seed + i;
        try {
          SlicingReport r = verify_main(io::parse_body(o_.body, seed), m, {}, strat);
          r.seed = seed;
          reports[i] = std::move(r);
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < std::min(o_.jobs, o_.trials); ++t) {
      pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
      t.join();
    }
    for (std::size_t i = 0; i < o_.trials; ++i) {
      if (!reports[i]) {
        throw Error("trial " + std::to_string(i) + ": " + errors[i]);
      }
    }
    int code = kOk;
    if (json()) {
      io::Json all = io::Json::array();
      for (const auto& r : reports) {
        all.push_back(io::to_json(*r));
      }
      emit(all);
    } else {
      out_ << io::csv_header() << "\n";
      for (const auto& r : reports) {
        out_ << io::csv_row(*r) << "\n";
      }
    }
    for (const auto& r : reports) {
      if (r->status == ReportStatus::Failed) {
        err_ << "check failed: seed " << *r->seed << " " << r->first_failure()->name << "\n";
        code = kCheckFailed;
      }
    }
    return code;
  }

  int gauss() {
    const ConvexBody body = load();
    if (o_.radii.empty()) {
      throw InvalidArgument("gauss needs --radii");
    }
    std::optional<IntVector> normal;
    if (!o_.normal.empty()) {
      normal = io::parse_int_list(o_.normal);
      if (normal->size() != body.dim()) {
        throw InvalidArgument("normal has the wrong dimension");
      }
    }
    const GaussScalingReport r = gauss_scaling(body, io::parse_rational_list(o_.radii), normal);
    if (json()) {
      io::Json j = io::to_json(r);
      j["body"] = body.label();
      emit(j);
      return kOk;
    }
    auto table = [&](const std::vector<ScalingRow>& rows) {
      for (const auto& row : rows) {
        out_ << "r=" << to_string(row.radius) << " count=" << row.count
             << " expected=" << to_string(row.expected)
             << " abs_dev=" << to_string(row.abs_deviation)
             << " rel_dev=" << to_double(row.rel_deviation) << "\n";
      }
    };
    out_ << "vol = " << to_string(r.volume) << "\n";
    table(r.rows);
    out_ << "relative deviation decreasing: " << (r.relative_decreasing ? "yes" : "no") << "\n";
    if (r.section) {
      out_ << "section normal " << to_string(r.section->normal)
           << ", det^2 = " << r.section->gram_determinant
           << ", normalized vol = " << to_string(r.section->normalized_volume) << "\n";
      table(r.section->rows);
      out_ << "relative deviation decreasing: "
           << (r.section->relative_decreasing ? "yes" : "no") << "\n";
    }
    return kOk;
  }

private:
  ConvexBody load() const { return io::parse_body(o_.body, o_.seed); }
  bool json() const { return o_.format == "json"; }
  void emit(const io::Json& j) { out_ << j.dump(2) << "\n"; }

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace detail

/// Runs one command; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Lattice point counting and discrete slicing checks", "latslice"};
  app.require_subcommand(1);

  auto body_opt = [&](CLI::App* sub) { sub->add_option("--body", o.body, "body")->required(); };
  auto format_opt = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", o.out, "write output to a file");
  };
  auto seed_opt = [&](CLI::App* sub) { sub->add_option("--seed", o.seed, "random seed"); };
  auto m_opt = [&](CLI::App* sub) { sub->add_option("--m", o.m, "slice dimension"); };
  auto nb_opt = [&](CLI::App* sub) {
    sub->add_option("--normal-bound", o.normal_bound, "sup-norm bound of candidate normals");
  };
  auto normal_opt = [&](CLI::App* sub) {
    sub->add_option("--normal", o.normal, "hyperplane normal u1,...,ud; several normals separated by ';'; or b:v1;v2 for a span");
  };

  auto* count = app.add_subcommand("count", "count lattice points");
  body_opt(count), seed_opt(count), normal_opt(count), format_opt(count);
  auto* vol = app.add_subcommand("volume", "volume of the body");
  body_opt(vol), seed_opt(vol), format_opt(vol);
  vol->add_option("--mode", o.mode, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
  vol->add_option("--samples", o.samples, "Monte Carlo samples");
  auto* minima = app.add_subcommand("minima", "successive minima");
  body_opt(minima), seed_opt(minima), format_opt(minima);
  auto* slice = app.add_subcommand("slice", "slice count or maximal slice");
  body_opt(slice), seed_opt(slice), normal_opt(slice), m_opt(slice), nb_opt(slice),
      format_opt(slice);
  auto* brunn = app.add_subcommand("brunn", "central versus parallel slices");
  body_opt(brunn), seed_opt(brunn), normal_opt(brunn), format_opt(brunn);
  auto* pick = app.add_subcommand("pick", "Pick quantities of a planar body");
  body_opt(pick), seed_opt(pick), format_opt(pick);
  auto* verify = app.add_subcommand("verify", "verify an inequality chain");
  verify->add_option("kind", o.kind, "dim2, unconditional, main or progression")
      ->required()
      ->check(CLI::IsMember({"dim2", "unconditional", "main", "progression"}));
  body_opt(verify), seed_opt(verify), m_opt(verify), nb_opt(verify), format_opt(verify);
  auto* scan = app.add_subcommand("scan", "verify the main chain on random bodies");
  body_opt(scan), seed_opt(scan), m_opt(scan), nb_opt(scan), format_opt(scan);
  scan->add_option("--trials", o.trials, "number of bodies");
  scan->add_option("--jobs", o.jobs, "worker threads");
  auto* gauss = app.add_subcommand("gauss", "lattice counts of dilates");
  body_opt(gauss), seed_opt(gauss), normal_opt(gauss), format_opt(gauss);
  gauss->add_option("--radii", o.radii, "r1,r2,...")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) {
      err << "error: cannot open " << o.out << "\n";
      return kInputError;
    }
  }
  std::ostream& sink = o.out.empty() ? out : file;
  detail::Runner runner(o, sink, err);
  try {
    if (count->parsed()) return runner.count();
    if (vol->parsed()) return runner.volume_cmd();
    if (minima->parsed()) return runner.minima();
    if (slice->parsed()) return runner.slice();
    if (brunn->parsed()) return runner.brunn();
    if (pick->parsed()) return runner.pick();
    if (verify->parsed()) return runner.verify();
    if (scan->parsed()) return runner.scan();
    if (gauss->parsed()) return runner.gauss();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace latslice::cli

#endif  // LATSLICE_CLI_HPP
