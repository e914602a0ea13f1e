#include "qcopy/repro.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcopy/measure.hpp"

namespace qcopy {
namespace {

constexpr double kExact = 1e-10;
constexpr double kQuadrature = 1e-8;
constexpr double kSolver = 1e-6;

// alpha^2 used where a constant should hold for every input.
constexpr double kProbeAlphaSq = 0.3;

}  // namespace

std::vector<ReproRow> reproduction_rows(const Tamper& tamper) {
  std::vector<ReproRow> rows;
  auto add = [&](std::string name, double expected, double computed, double tol, std::string source) {
    if (tamper) computed = tamper(name, computed);
    const bool pass = std::abs(computed - expected) <= tol;
    rows.push_back({std::move(name), expected, computed, tol, std::move(source), pass});
  };

  const CloningMachine wz = wz_machine();
  const CloningMachine uqcm = uqcm_canonical();
  const PureInput probe = PureInput::from_alpha_sq(kProbeAlphaSq);

  add("D_a(WZ, alpha^2=1/2)", 0.5, metric_value(wz, PureInput::from_alpha_sq(0.5), Metric::d_a), 1e-12,
      "WZ machine, equal-weight input");
  add("mean D_a(WZ)", 1.0 / 3.0, average_over_inputs(wz, Metric::d_a), kQuadrature, "WZ machine, input average");
  add("mean D_ab_1(WZ)", 2.0 / 15.0, average_over_inputs(wz, Metric::d_ab_1), kQuadrature,
      "WZ machine, input average");
  add("mean D_ab_2(WZ)", 2.0 / 3.0, average_over_inputs(wz, Metric::d_ab_2), kQuadrature,
      "WZ machine, input average");
  add("mean D_ab_3(WZ)", 8.0 / 15.0, average_over_inputs(wz, Metric::d_ab_3), kQuadrature,
      "WZ machine, input average");

  const DistanceReport u = distance_report(uqcm, probe);
  add("D_a(UQCM)", 1.0 / 18.0, u.d_a, kExact, "universal machine, alpha^2 = 0.3");
  add("D_ab_2(UQCM)", 2.0 / 9.0, u.d_ab_2, kExact, "universal machine, alpha^2 = 0.3");
  add("F(UQCM)", std::sqrt(5.0 / 6.0), u.fidelity, kExact, "universal machine, alpha^2 = 0.3");
  add("S_ab(UQCM)", -(std::log(1.0 / 3.0) / 3.0 + 2.0 * std::log(2.0 / 3.0) / 3.0), u.s_ab, kExact,
      "universal machine, alpha^2 = 0.3");

  add("xi*", 1.0 / 6.0, *solve_xi().best_param, kSolver, "d_ab_2 flatness over xi with eta = 1 - 2 xi");
  add("eta*(xi=1/6)", 2.0 / 3.0, *solve_eta(1.0 / 6.0).best_param, kSolver, "d_a flatness over eta at xi = 1/6");

  const CloneOutput out = clone(uqcm, probe);
  const SigmaExpectations in_sigma = sigma_expectations(ideal_single(probe));
  const SigmaExpectations out_sigma = sigma_expectations(out.a);
  add("UQCM scaling factor", 2.0 / 3.0, out_sigma.z / in_sigma.z, kExact, "<sigma_z> out over in, alpha^2 = 0.3");

  // Probability of outcome s for input |0>: 1/6 + (2/3)|u|^2.
  const CloneOutput zero = clone(uqcm, PureInput(1.0, 0.0));
  const double p_orth = outcome_probability(zero.ab, ProjectionSpec(0.0, 1.0));
  const double p_par = outcome_probability(zero.ab, ProjectionSpec(1.0, 0.0));
  add("outcome probability offset", 1.0 / 6.0, p_orth, kExact, "universal machine, projection orthogonal to input");
  add("outcome probability slope", 2.0 / 3.0, p_par - p_orth, kExact,
      "universal machine, parallel minus orthogonal projection");

  const AverageComparison cmp = average_comparison();
  add("mean D_a ratio WZ/UQCM", 6.0, cmp.ratio_d_a, kSolver, "input averages");
  add("mean D_ab_2 ratio WZ/UQCM", 3.0, cmp.ratio_d_ab_2, kSolver, "input averages");
  return rows;
}

bool all_pass(const std::vector<ReproRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const ReproRow& r) { return r.pass; });
}

Json to_json(const ReproRow& row) {
  Json j;
  j["name"] = row.name;
  j["reference_value"] = round_sig(row.reference_value);
  j["computed"] = std::isfinite(row.computed) ? Json(round_sig(row.computed)) : Json(nullptr);
  j["tolerance"] = row.tolerance;
  j["source"] = row.source;
  j["pass"] = row.pass;
  return j;
}

std::string repro_csv(const std::vector<ReproRow>& rows) {
  std::ostringstream os;
  os << "name,reference_value,computed,tolerance,source,pass\n";
  for (const auto& r : rows) {
    os << '"' << r.name << "\"," << format_number(r.reference_value) << ',' << format_number(r.computed) << ','
       << format_number(r.tolerance) << ",\"" << r.source << "\"," << (r.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace qcopy
