#include "qcopy/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "qcopy/errors.hpp"

namespace qcopy {
namespace {

constexpr double kParamRangeTol = 1e-12;
constexpr double kGoldenTol = 1e-12;
constexpr std::size_t kScanPoints = 41;
constexpr std::size_t kMaxGoldenIterations = 200;
constexpr double kFlatTol = 1e-8;
constexpr std::size_t kRawParams = 32;
constexpr double kDegenerateNorm = 1e-8;

struct ScalarMinimum {
  double x;
  double fx;
  std::size_t iterations;
  std::vector<double> history;
};

// Coarse scan to locate the basin, then golden section inside the bracket
// around the best scan point.  Returns the best point evaluated.
ScalarMinimum minimize_scalar(const std::function<double(double)>& f, double lo, double hi) {
  std::vector<double> xs(kScanPoints), fs(kScanPoints);
  ScalarMinimum best{lo, std::numeric_limits<double>::infinity(), 0, {}};
  for (std::size_t i = 0; i < kScanPoints; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(kScanPoints - 1);
    fs[i] = f(xs[i]);
    if (fs[i] < best.fx) {
      best.x = xs[i];
      best.fx = fs[i];
    }
  }
  best.history.push_back(best.fx);

  const auto it = std::find(xs.begin(), xs.end(), best.x);
  const auto idx = static_cast<std::size_t>(it - xs.begin());
  double a = xs[idx == 0 ? 0 : idx - 1];
  double b = xs[std::min(idx + 1, kScanPoints - 1)];

  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  auto consider = [&](double x, double fx) {
    if (fx < best.fx) {
      best.x = x;
      best.fx = fx;
    }
  };
  consider(c, fc);
  consider(d, fd);
  while (b - a > kGoldenTol && best.iterations < kMaxGoldenIterations) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
      consider(d, fd);
    }
    ++best.iterations;
    best.history.push_back(best.fx);
  }
  return best;
}

double metric_at(const MachineGram& gram, double alpha_sq, Metric m) {
  return distance_report(gram, PureInput::from_alpha_sq(alpha_sq)).get(m);
}

std::optional<CloningMachine> machine_from_raw(const std::array<double, kRawParams>& p) {
  constexpr std::size_t n = kRawParams / 4;
  CVector r0(n), r1(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    r0(k) = Complex(p[2 * i], p[2 * i + 1]);
    r1(k) = Complex(p[2 * n + 2 * i], p[2 * n + 2 * i + 1]);
  }
  const double n0 = r0.norm();
  if (n0 < kDegenerateNorm) return std::nullopt;
  const CVector c0 = r0 / n0;
  CVector c1 = r1 - c0.dot(r1) * c0;
  const double n1 = c1.norm();
  if (n1 < kDegenerateNorm) return std::nullopt;
  c1 /= n1;
  try {
    return general_machine("general", Ket({2, 2, 2}, c0), Ket({2, 2, 2}, c1));
  } catch (const IsometryError&) {
    return std::nullopt;
  }
}

std::array<double, kRawParams> raw_from_machine(const CloningMachine& machine) {
  std::array<double, kRawParams> p{};
  constexpr std::size_t n = kRawParams / 4;
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      const Complex z = machine.column(s)[i];
      p[2 * n * s + 2 * i] = z.real();
      p[2 * n * s + 2 * i + 1] = z.imag();
    }
  }
  return p;
}

double grid_residual(const std::function<double(double)>& value) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double t : default_grid()) {
    const double v = value(t);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

}  // namespace

MachineFamily uqcm_eta_family(double xi) {
  std::ostringstream name;
  name << "uqcm(xi=" << xi << ")";
  return {name.str(), "eta", 0.0, 1.0, [xi](double eta) { return uqcm_gram(UQCMParams(xi, eta)); },
          [xi](double eta) { return UQCMParams(xi, eta).realizable(); }};
}

MachineFamily uqcm_xi_family() {
  return {"uqcm(eta=1-2xi)", "xi", 0.0, 0.5, [](double xi) { return uqcm_gram(UQCMParams::flat(xi)); },
          [](double xi) { return UQCMParams::flat(xi).realizable(); }};
}

std::vector<double> default_grid() {
  std::vector<double> g(11);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = static_cast<double>(i) / 10.0;
  return g;
}

FlatnessProblem::FlatnessProblem(MachineFamily family, std::vector<double> grid, Metric metric,
                                 Realization realization)
    : family_(std::move(family)), grid_(std::move(grid)), metric_(metric), realization_(realization) {
  std::vector<double> sorted = grid_;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() < 5) throw ArgumentError("flatness grid needs at least 5 distinct points");
  if (sorted.front() < 0.0 || sorted.back() > 1.0) throw ArgumentError("flatness grid must lie in [0, 1]");
  for (double required : {0.0, 0.5, 1.0}) {
    if (!std::binary_search(sorted.begin(), sorted.end(), required)) {
      throw ArgumentError("flatness grid must contain 0, 1/2 and 1");
    }
  }
}

double flatness_residual(const FlatnessProblem& problem, double param) {
  const MachineFamily& fam = problem.family();
  if (!(param >= fam.lower - kParamRangeTol && param <= fam.upper + kParamRangeTol)) {
    std::ostringstream os;
    os << fam.free_param << " = " << param << " is outside [" << fam.lower << ", " << fam.upper << "]";
    throw ParameterError(os.str());
  }
  param = std::clamp(param, fam.lower, fam.upper);
  if (problem.realization() == Realization::physical && !fam.realizable(param)) {
    std::ostringstream os;
    os << fam.free_param << " = " << param << " has no realizing machine in " << fam.name;
    throw ParameterError(os.str());
  }
  const MachineGram gram = fam.gram_at(param);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double t : problem.grid()) {
    const double v = metric_at(gram, t, problem.metric());
    if (std::isnan(v)) throw ParameterError("metric is undefined for a formal output that is not a state");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

SearchResult solve_eta(double xi, Realization realization) {
  if (!(xi > 0.0 && xi < 0.5)) throw InfeasibleError("solve_eta needs xi in (0, 1/2)");
  const FlatnessProblem problem(uqcm_eta_family(xi), default_grid(), Metric::d_a, realization);
  double hi = problem.family().upper;
  if (realization == Realization::physical) hi = std::min(hi, UQCMParams(xi, 0.0).schwarz_bound());

  ScalarMinimum m = minimize_scalar([&](double eta) { return flatness_residual(problem, eta); },
                                    problem.family().lower, hi);
  if (realization == Realization::physical && m.fx > kFlatTol) {
    std::ostringstream os;
    os << "no realizable eta makes d_a flat at xi = " << xi << " (best residual " << m.fx << ")";
    throw InfeasibleError(os.str());
  }
  const MachineGram gram = uqcm_gram(UQCMParams(xi, m.x));
  SearchResult r;
  r.target = "eta";
  r.best_param = m.x;
  r.gram = gram;
  r.objective = m.fx;
  r.flatness_residual = m.fx;
  r.iterations = m.iterations;
  r.realizable = UQCMParams(xi, m.x).realizable();
  r.value_metric = "d_a";
  r.value = metric_at(gram, 0.5, Metric::d_a);
  r.history = std::move(m.history);
  return r;
}

SearchResult solve_xi(Realization realization) {
  const FlatnessProblem problem(uqcm_xi_family(), default_grid(), Metric::d_ab_2, realization);
  double lo = problem.family().lower;
  // eta = 1 - 2 xi meets the Schwarz bound exactly at xi = 1/6.
  if (realization == Realization::physical) lo = 1.0 / 6.0;

  ScalarMinimum m = minimize_scalar([&](double xi) { return flatness_residual(problem, xi); }, lo,
                                    problem.family().upper);
  const MachineGram gram = uqcm_gram(UQCMParams::flat(m.x));
  SearchResult r;
  r.target = "xi";
  r.best_param = m.x;
  r.gram = gram;
  r.objective = m.fx;
  r.flatness_residual = m.fx;
  r.iterations = m.iterations;
  r.realizable = UQCMParams::flat(m.x).realizable();
  r.value_metric = "d_ab_2";
  r.value = metric_at(gram, 0.5, Metric::d_ab_2);
  r.history = std::move(m.history);
  return r;
}

double search_score(const CloningMachine& machine, const Input& input, Metric metric, bool symmetric) {
  if (symmetric) {
    if (metric == Metric::d_a || metric == Metric::d_b) {
      return std::max(metric_value(machine, input, Metric::d_a), metric_value(machine, input, Metric::d_b));
    }
    if (metric == Metric::s_a || metric == Metric::s_b) {
      const DistanceReport r = distance_report(machine, input);
      return std::max(r.s_a, r.s_b);
    }
  }
  return metric_value(machine, input, metric);
}

double general_objective(const CloningMachine& machine, Metric metric, double flatness_weight, bool symmetric) {
  auto score = [&](double t) { return search_score(machine, PureInput::from_alpha_sq(t), metric, symmetric); };
  const double average = average_over_alpha_sq(score);
  if (flatness_weight == 0.0) return average;
  return average + flatness_weight * grid_residual(score);
}

SearchResult search_general(const SearchOptions& options) {
  if (!(options.flatness_weight >= 0.0)) throw ArgumentError("flatness_weight must be >= 0");
  if (options.seeds < 1) throw ArgumentError("seeds must be >= 1");
  if (!(options.min_step > 0.0 && options.initial_step >= options.min_step)) {
    throw ArgumentError("need initial_step >= min_step > 0");
  }

  std::mt19937_64 rng(options.rng_seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  auto evaluate = [&](const std::array<double, kRawParams>& p) {
    const auto machine = machine_from_raw(p);
    if (!machine) return std::numeric_limits<double>::infinity();
    return general_objective(*machine, options.metric, options.flatness_weight, options.symmetric);
  };

  std::array<double, kRawParams> best_point{};
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<double> history;
  std::size_t iterations = 0;

  for (std::size_t seed = 0; seed < options.seeds; ++seed) {
    std::array<double, kRawParams> p{};
    if (seed == 0 && options.include_uqcm_seed) {
      p = raw_from_machine(uqcm_canonical());
    } else {
      for (double& x : p) x = normal(rng);
    }
    double value = evaluate(p);
    double step = options.initial_step;
    std::size_t sweeps = 0;
    while (step >= options.min_step && sweeps < options.max_sweeps) {
      bool improved = false;
      for (std::size_t k = 0; k < kRawParams; ++k) {
        for (double dir : {1.0, -1.0}) {
          std::array<double, kRawParams> trial = p;
          trial[k] += dir * step;
          const double v = evaluate(trial);
          if (v < value) {
            p = trial;
            value = v;
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
      ++sweeps;
      ++iterations;
      if (value < best_value) {
        best_value = value;
        best_point = p;
      }
      history.push_back(best_value);
    }
    if (value < best_value) {
      best_value = value;
      best_point = p;
    }
  }

  const auto machine = machine_from_raw(best_point);
  if (!machine) throw InfeasibleError("general search found no valid machine");
  SearchResult r;
  r.target = "general";
  r.gram = machine_gram(*machine);
  r.objective = best_value;
  auto score = [&](double t) {
    return search_score(*machine, PureInput::from_alpha_sq(t), options.metric, options.symmetric);
  };
  r.flatness_residual = grid_residual(score);
  r.iterations = iterations;
  r.realizable = true;
  r.value_metric = std::string(options.symmetric ? "max_ab_" : "") + std::string(metric_name(options.metric)) + "_average";
  r.value = average_over_alpha_sq(score);
  r.history = std::move(history);
  return r;
}

AverageComparison average_comparison() {
  const CloningMachine wz = wz_machine();
  const CloningMachine uqcm = uqcm_canonical();
  AverageComparison c;
  for (const auto* m : {&wz, &uqcm}) {
    for (Metric metric : {Metric::d_a, Metric::d_ab_1, Metric::d_ab_2, Metric::d_ab_3}) {
      c.rows.push_back({m->label(), std::string(metric_name(metric)), average_over_inputs(*m, metric)});
    }
  }
  auto find = [&](const std::string& machine, const std::string& metric) {
    for (const auto& row : c.rows) {
      if (row.machine == machine && row.metric == metric) return row.average;
    }
    return std::numeric_limits<double>::quiet_NaN();
  };
  c.ratio_d_a = find("wz", "d_a") / find("uqcm", "d_a");
  c.ratio_d_ab_2 = find("wz", "d_ab_2") / find("uqcm", "d_ab_2");
  return c;
}

}  // namespace qcopy
