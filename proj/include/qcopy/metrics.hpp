#pragma once

// Distances, fidelity, entropy and expectation values, plus closed-form
// expressions for the copying machines that serve as independent oracles.
//
// Distances are squared Hilbert-Schmidt norms Tr[(r1 - r2)^dagger (r1 - r2)].
// Entropies use the natural logarithm with k_B = 1.

#include <functional>
#include <optional>
#include <string_view>
#include <utility>

#include "qcopy/machines.hpp"
#include "qcopy/qmath.hpp"
#include "qcopy/states.hpp"

namespace qcopy {

enum class Metric { d_a, d_b, d_ab_1, d_ab_2, d_ab_3, fidelity, s_a, s_b, s_ab };

inline constexpr Metric kAllMetrics[] = {Metric::d_a,    Metric::d_b,      Metric::d_ab_1,
                                         Metric::d_ab_2, Metric::d_ab_3,   Metric::fidelity,
                                         Metric::s_a,    Metric::s_b,      Metric::s_ab};

std::string_view metric_name(Metric m);
std::optional<Metric> parse_metric(std::string_view name);

// One input/machine pair.
//   d_a, d_b  : output mode vs input state
//   d_ab_1    : rho_ab vs rho_a (x) rho_b
//   d_ab_2    : rho_ab vs ideal pair
//   d_ab_3    : ideal pair vs rho_a (x) rho_b
//   fidelity  : between input state and rho_a
// Fields that are undefined for a formal (non-PSD) output are NaN.
struct DistanceReport {
  double d_a = 0, d_b = 0, d_ab_1 = 0, d_ab_2 = 0, d_ab_3 = 0;
  double fidelity = 0;
  double s_a = 0, s_b = 0, s_ab = 0;

  double get(Metric m) const;
};

double hs_distance(const Operator& a, const Operator& b);
double hs_distance(const DensityOperator& a, const DensityOperator& b);

// Tr[(sqrt(r1) r2 sqrt(r1))^{1/2}]
double fidelity(const DensityOperator& rho1, const DensityOperator& rho2);

double von_neumann_entropy(const DensityOperator& rho);

// sigma_z = (|1><1| - |0><0|)/2, sigma_x = (|1><0| + |0><1|)/2
Operator sigma_x();
Operator sigma_z();

struct SigmaExpectations {
  double x;
  double z;
};
SigmaExpectations sigma_expectations(const DensityOperator& rho);

// lambda1 P1 + lambda2 P2 with P1, P2 orthogonal rank-one projectors that
// resolve the identity.
class ObservableSpec {
 public:
  ObservableSpec(double lambda1, double lambda2, Operator p1, Operator p2);
  // Spectral decomposition of a 2x2 Hermitian operator.
  static ObservableSpec from_hermitian(const Operator& a);

  double lambda1() const { return lambda1_; }
  double lambda2() const { return lambda2_; }
  const Operator& p1() const { return p1_; }
  const Operator& p2() const { return p2_; }
  Operator observable() const;

 private:
  double lambda1_, lambda2_;
  Operator p1_, p2_;
};

std::pair<double, double> observable_prob(const DensityOperator& rho, const ObservableSpec& obs);

DistanceReport distance_report(const CloningMachine& machine, const Input& input);
// Same quantities from the Gram contraction; fidelity and entropies are NaN
// where the contracted operator is not positive semidefinite.
DistanceReport distance_report(const MachineGram& gram, const Input& input);

// Fast path for one metric; avoids the work distance_report() does for the
// other eight fields where possible.
double metric_value(const CloningMachine& machine, const Input& input, Metric m);

// Integral over alpha^2 in [0, 1] with real amplitudes alpha = sqrt(t),
// beta = sqrt(1 - t).  Two-panel Gauss-Legendre, 64 nodes in total.
double average_over_alpha_sq(const std::function<double(double)>& f);
double average_over_inputs(const CloningMachine& machine, Metric m);

// ||psi - phi||^2 for state vectors (not density operators).
double state_vector_distance(const Ket& psi, const Ket& phi);

// ---- closed forms ----------------------------------------------------------

// d_a of the WZ machine, 2 t (1 - t).
double closed_form_d_a_wz(double alpha_sq);
// d_a of the symmetric family at arbitrary (xi, eta).
double closed_form_d_a_uqcm(double xi, double eta, double alpha_sq);
// d_ab_2 of the symmetric family with eta = 1 - 2 xi, as a sum of squared
// matrix elements of rho_id - rho_out in the {|00>, |+>, |11>} sector.
double closed_form_d_ab2_uqcm(double xi, double alpha_sq);
// d_a for a mixed input with eta = 1 - 2 xi: 2 xi^2 [(1-2A)^2 + 4|B|^2].
double closed_form_mixed(double xi, const MixedInput& input);
// d_ab_2 of the WZ machine for a diagonal mixture: 4 A^2 (1 - A)^2.
double closed_form_d_ab2_wz_mixed(double a);
// 2 - (beta + beta*)(|beta|^2 + sqrt2 |alpha|^2) for the m1 machine.  This is
// the squared distance between the output vector beta|11> + alpha|+> and the
// product vector |s>|s>, not a density-operator distance.
double closed_form_d_m1(const PureInput& input);

}  // namespace qcopy
