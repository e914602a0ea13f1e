#include "qcopy/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "qcopy/errors.hpp"
#include "qcopy/measure.hpp"

namespace qcopy {
namespace {

constexpr double kInputNormTol = 1e-9;

// "x" or "x,y" for x + i y.
Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {re, 0.0};
    }
    const std::string re_text = text.substr(0, comma), im_text = text.substr(comma + 1);
    const double re = std::stod(re_text, &used);
    if (used != re_text.size()) throw std::invalid_argument(text);
    const double im = std::stod(im_text, &used);
    if (used != im_text.size()) throw std::invalid_argument(text);
    return {re, im};
  } catch (const std::exception&) {
    throw UsageError("cannot parse complex number '" + text + "' (use x or x,y)");
  }
}

struct SweepArgs {
  std::string machine = "wz";
  std::string param = "alpha_sq";
  double from = 0.0;
  double to = 1.0;
  std::size_t steps = 11;
  double alpha_sq = 0.5;
};

struct OptimizeArgs {
  std::string target;
  double xi = 1.0 / 6.0;
  bool require_realizable = false;
  std::size_t seeds = 4;
  std::uint64_t rng_seed = 0;
  double weight = 10.0;
  std::string metric = "d_a";
  std::size_t max_sweeps = 400;
  bool one_sided = false;
};

struct MeasureArgs {
  std::string machine = "uqcm";
  std::string alpha = "1";
  std::string beta = "0";
  std::string u = "1";
  std::string v = "0";
  bool post_select = false;
};

SweepTable run_sweep(const SweepArgs& a) {
  if (a.steps < 1) throw UsageError("--steps must be >= 1");
  SweepTable table{a.machine, a.param, {}};
  auto param_at = [&](std::size_t i) {
    if (a.steps == 1) return a.from;
    return a.from + (a.to - a.from) * static_cast<double>(i) / static_cast<double>(a.steps - 1);
  };
  if (a.param == "alpha_sq") {
    if (a.from < 0.0 || a.to > 1.0 || a.from > a.to) throw UsageError("alpha_sq range must satisfy 0 <= from <= to <= 1");
    const CloningMachine machine = machine_by_name(a.machine);
    for (std::size_t i = 0; i < a.steps; ++i) {
      const double t = param_at(i);
      table.rows.push_back({t, distance_report(machine, PureInput::from_alpha_sq(t))});
    }
  } else if (a.param == "xi") {
    if (a.machine != "uqcm") throw UsageError("xi sweeps are defined for the uqcm family only");
    if (a.from < 0.0 || a.to > 0.5 || a.from > a.to) throw UsageError("xi range must satisfy 0 <= from <= to <= 1/2");
    if (a.alpha_sq < 0.0 || a.alpha_sq > 1.0) throw UsageError("--alpha-sq must lie in [0, 1]");
    const PureInput input = PureInput::from_alpha_sq(a.alpha_sq);
    for (std::size_t i = 0; i < a.steps; ++i) {
      const double xi = param_at(i);
      table.rows.push_back({xi, distance_report(uqcm_gram(UQCMParams::flat(xi)), input)});
    }
  } else {
    throw UsageError("--param must be alpha_sq or xi");
  }
  return table;
}

Json run_optimize(const OptimizeArgs& a) {
  const Realization realization = a.require_realizable ? Realization::physical : Realization::formal;
  if (a.target == "eta") return to_json(solve_eta(a.xi, realization));
  if (a.target == "xi") return to_json(solve_xi(realization));
  if (a.target == "general") {
    const auto metric = parse_metric(a.metric);
    if (!metric) throw UsageError("unknown metric '" + a.metric + "'");
    SearchOptions opts;
    opts.metric = *metric;
    opts.flatness_weight = a.weight;
    opts.seeds = a.seeds;
    opts.rng_seed = a.rng_seed;
    opts.max_sweeps = a.max_sweeps;
    opts.symmetric = !a.one_sided;
    if (a.weight < 0.0) throw UsageError("--weight must be >= 0");
    if (a.seeds < 1) throw UsageError("--seeds must be >= 1");
    SearchResult r = search_general(opts);
    Json j = to_json(r);
    j["uqcm_objective"] = round_sig(general_objective(uqcm_canonical(), opts.metric, opts.flatness_weight, opts.symmetric));
    return j;
  }
  throw UsageError("optimize target must be eta, xi or general");
}

Json run_measure(const MeasureArgs& a) {
  const Complex alpha = parse_complex(a.alpha), beta = parse_complex(a.beta);
  const Complex u = parse_complex(a.u), v = parse_complex(a.v);
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kInputNormTol) {
    throw UsageError("input is not normalized: |alpha|^2 + |beta|^2 != 1");
  }
  if (std::abs(std::norm(u) + std::norm(v) - 1.0) > kInputNormTol) {
    throw UsageError("projection is not normalized: |u|^2 + |v|^2 != 1");
  }
  const CloningMachine machine = machine_by_name(a.machine);
  const PureInput input(alpha, beta);
  // Renormalize within the CLI tolerance so the library's tighter check holds.
  const double pn = std::sqrt(std::norm(u) + std::norm(v));
  const ProjectionSpec proj(u / pn, v / pn);
  const CloneOutput out = clone(machine, input);

  Json j;
  j["machine"] = machine.label();
  j["outcome_probability"] = round_sig(outcome_probability(out.ab, proj));
  const MeasuredEnsemble meas = unconditioned_measure(out.ab, proj);
  j["rho_a_distance"] = round_sig(hs_distance(meas.a, out.a));
  if (a.machine == "uqcm") {
    j["closed_form_probability"] = round_sig(closed_form_outcome_probability(input, proj));
    j["recovered_sigma_x"] = round_sig(recover_expectation(sigma_x(), meas.a));
    j["recovered_sigma_z"] = round_sig(recover_expectation(sigma_z(), meas.a));
    const SigmaExpectations ideal = sigma_expectations(ideal_single(input));
    j["ideal_sigma_x"] = round_sig(ideal.x);
    j["ideal_sigma_z"] = round_sig(ideal.z);
  }
  if (a.post_select) {
    const PostSelection sel = selective_post_select(out.ab);
    Json ps;
    ps["success_probability"] = round_sig(sel.success_probability);
    ps["d_ab_2"] = round_sig(hs_distance(sel.ab, ideal_pair(input)));
    ps["d_a"] = round_sig(hs_distance(sel.a, ideal_single(input)));
    j["post_select"] = std::move(ps);
  }
  return j;
}

void emit(const std::string& text, const std::string& out_file, std::ostream& out) {
  if (out_file.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_file);
  if (!f) throw UsageError("cannot open --out file '" + out_file + "'");
  f << text;
}

std::string reproduce_text(const std::vector<ReproRow>& rows) {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& r : rows) {
    os << (r.pass ? "[PASS] " : "[FAIL] ") << std::left << std::setw(28) << r.name << " expected "
       << std::setw(16) << format_number(r.reference_value) << " computed " << std::setw(16)
       << format_number(r.computed) << " tol " << format_number(r.tolerance) << "  (" << r.source << ")\n";
    if (r.pass) ++passed;
  }
  os << passed << "/" << rows.size() << " rows pass\n";
  return os.str();
}

}  // namespace

int run_reproduce(std::ostream& out, const std::string& format, const Tamper& tamper) {
  const auto rows = reproduction_rows(tamper);
  if (format == "json") {
    Json j = Json::array();
    for (const auto& r : rows) j.push_back(to_json(r));
    out << j.dump(2) << '\n';
  } else if (format == "csv") {
    out << repro_csv(rows);
  } else {
    out << reproduce_text(rows);
  }
  return all_pass(rows) ? kExitOk : kExitVerification;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum copying machines: distances, solvers and measurements"};
  app.name("qcopy");
  app.require_subcommand(1);

  std::string format;
  std::string out_file;

  auto* reproduce = app.add_subcommand("reproduce", "Recompute the reference constants; exit 1 if any row fails");
  reproduce->add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  reproduce->add_option("--out", out_file, "write output to FILE");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Tabulate all distance metrics across a parameter range");
  sweep->add_option("--machine", sweep_args.machine, "wz, uqcm, m1 or m2");
  sweep->add_option("--param", sweep_args.param, "alpha_sq or xi");
  sweep->add_option("--from", sweep_args.from);
  sweep->add_option("--to", sweep_args.to);
  sweep->add_option("--steps", sweep_args.steps);
  sweep->add_option("--alpha-sq", sweep_args.alpha_sq, "fixed input for xi sweeps");
  sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"json", "csv"}));
  sweep->add_option("--out", out_file, "write output to FILE");

  OptimizeArgs opt_args;
  auto* optimize = app.add_subcommand("optimize", "Run a flatness solver or the general search");
  optimize->add_option("target", opt_args.target, "eta, xi or general")->required();
  optimize->add_option("--xi", opt_args.xi, "xi for the eta solver");
  optimize->add_flag("--require-realizable", opt_args.require_realizable, "restrict to realizable machines");
  optimize->add_option("--seeds", opt_args.seeds, "starting points for the general search");
  optimize->add_option("--rng-seed", opt_args.rng_seed, "random seed for the general search");
  optimize->add_option("--weight", opt_args.weight, "flatness penalty weight");
  optimize->add_option("--metric", opt_args.metric, "metric minimized by the general search");
  optimize->add_option("--max-sweeps", opt_args.max_sweeps, "coordinate-descent sweeps per start");
  optimize->add_flag("--one-sided", opt_args.one_sided, "score the metric on mode a only");
  optimize->add_option("--format", format, "json")->check(CLI::IsMember({"json"}));
  optimize->add_option("--out", out_file, "write output to FILE");

  MeasureArgs meas_args;
  auto* measure = app.add_subcommand("measure", "Measure the copy mode of a machine's output");
  measure->add_option("--machine", meas_args.machine, "wz, uqcm, m1 or m2");
  measure->add_option("--alpha", meas_args.alpha, "input amplitude of |0>, x or x,y");
  measure->add_option("--beta", meas_args.beta, "input amplitude of |1>, x or x,y");
  measure->add_option("--u", meas_args.u, "projection amplitude of |0>");
  measure->add_option("--v", meas_args.v, "projection amplitude of |1>");
  measure->add_flag("--post-select", meas_args.post_select, "also condition on the complement of |00>");
  measure->add_option("--format", format, "json")->check(CLI::IsMember({"json"}));
  measure->add_option("--out", out_file, "write output to FILE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*reproduce) {
      std::ostringstream os;
      const int code = run_reproduce(os, format.empty() ? "text" : format);
      emit(os.str(), out_file, out);
      return code;
    }
    if (*sweep) {
      const SweepTable table = run_sweep(sweep_args);
      emit(format == "json" ? to_json(table).dump(2) + "\n" : to_csv(table), out_file, out);
      return kExitOk;
    }
    if (*optimize) {
      emit(run_optimize(opt_args).dump(2) + "\n", out_file, out);
      return kExitOk;
    }
    if (*measure) {
      emit(run_measure(meas_args).dump(2) + "\n", out_file, out);
      return kExitOk;
    }
  } catch (const InfeasibleError& e) {
    err << "qcopy: infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const DegenerateConditioningError& e) {
    err << "qcopy: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const UsageError& e) {
    err << "qcopy: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "qcopy: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "qcopy: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qcopy
