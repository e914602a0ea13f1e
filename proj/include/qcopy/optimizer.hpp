#pragma once

// Flatness problems over one-parameter machine families and an exploratory
// search over general two-column machines.
//
// "Flat" means the chosen metric does not depend on the input: the residual
// is max - min of the metric over a grid of alpha^2 values.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcopy/machines.hpp"
#include "qcopy/metrics.hpp"

namespace qcopy {

// physical: only parameters whose Gram is positive semidefinite are allowed.
// formal:   any parameter in range; outputs come from the Gram contraction
//           even when no machine realizes them.
enum class Realization { physical, formal };

struct MachineFamily {
  std::string name;
  std::string free_param;
  double lower;
  double upper;
  std::function<MachineGram(double)> gram_at;
  std::function<bool(double)> realizable;
};

// Symmetric family at fixed xi with eta free in [0, 1].
MachineFamily uqcm_eta_family(double xi);
// Symmetric family with eta = 1 - 2 xi and xi free in [0, 1/2].
MachineFamily uqcm_xi_family();

// 11 evenly spaced alpha^2 values 0, 0.1, ..., 1.
std::vector<double> default_grid();

class FlatnessProblem {
 public:
  // The grid must hold at least 5 distinct values in [0, 1] including 0, 1/2
  // and 1.  Throws ArgumentError otherwise.
  FlatnessProblem(MachineFamily family, std::vector<double> grid, Metric metric,
                  Realization realization = Realization::formal);

  const MachineFamily& family() const { return family_; }
  const std::vector<double>& grid() const { return grid_; }
  Metric metric() const { return metric_; }
  Realization realization() const { return realization_; }

 private:
  MachineFamily family_;
  std::vector<double> grid_;
  Metric metric_;
  Realization realization_;
};

// max - min of the metric over the grid.  Throws ParameterError when param is
// outside the family's range, when the problem is physical and the parameter
// is not realizable, or when the metric is undefined for the formal output.
double flatness_residual(const FlatnessProblem& problem, double param);

struct SearchResult {
  std::string target;
  std::optional<double> best_param;
  std::optional<MachineGram> gram;
  double objective = 0.0;
  double flatness_residual = 0.0;
  std::size_t iterations = 0;
  bool realizable = false;
  // Metric that names the solution (d_a for eta, d_ab_2 for xi) and its
  // value at alpha^2 = 1/2.
  std::string value_metric;
  double value = 0.0;
  // Best objective so far, one entry per iteration; non-increasing.
  std::vector<double> history;
};

// Minimizes the d_a flatness residual over eta.  Throws InfeasibleError when
// xi is outside (0, 1/2), or in physical mode when no realizable eta makes
// d_a flat (xi < 1/6).
SearchResult solve_eta(double xi, Realization realization = Realization::formal);

// Minimizes the d_ab_2 flatness residual over xi with eta = 1 - 2 xi.
SearchResult solve_xi(Realization realization = Realization::formal);

struct SearchOptions {
  Metric metric = Metric::d_a;
  // Score max(metric on a, metric on b) for the one-mode metrics d_a, d_b,
  // s_a, s_b.  Without it d_a alone is minimized by leaving mode a untouched.
  bool symmetric = true;
  double flatness_weight = 10.0;
  std::size_t seeds = 4;
  std::uint64_t rng_seed = 0;
  bool include_uqcm_seed = true;
  double initial_step = 0.1;
  double min_step = 1e-6;
  std::size_t max_sweeps = 400;
};

// Multi-start coordinate descent over pairs of raw image vectors in
// C^2 (x) C^2 (x) C^2, orthonormalized before every evaluation.  Objective is
// the input average of the score plus flatness_weight times its residual on
// default_grid().  Deterministic for fixed options.  The result's gram is the
// 8x8 machine_gram() of the best machine; best_param is empty.
SearchResult search_general(const SearchOptions& options = {});

// Per-input score used by search_general().
double search_score(const CloningMachine& machine, const Input& input, Metric metric, bool symmetric);
// Objective of search_general() for one machine.
double general_objective(const CloningMachine& machine, Metric metric, double flatness_weight, bool symmetric = true);

struct ComparisonRow {
  std::string machine;
  std::string metric;
  double average;
};

struct AverageComparison {
  std::vector<ComparisonRow> rows;
  double ratio_d_a;     // WZ over UQCM
  double ratio_d_ab_2;  // WZ over UQCM
};

AverageComparison average_comparison();

}  // namespace qcopy
