#include "qcopy/metrics.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <limits>
#include <memory>

#include "qcopy/errors.hpp"

namespace qcopy {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kProjectorTol = 1e-12;
constexpr std::size_t kNodesPerPanel = 32;

double hs_distance_matrix(const CMatrix& a, const CMatrix& b) { return (a - b).squaredNorm(); }

std::optional<DensityOperator> as_state(const Operator& op) {
  try {
    return DensityOperator(op);
  } catch (const ArgumentError&) {
    return std::nullopt;
  }
}

DistanceReport report_from_output(const DensityOperator& rho_in, const Operator& rho_ab) {
  const Operator rho_a = partial_trace(rho_ab, {0});
  const Operator rho_b = partial_trace(rho_ab, {1});
  const CMatrix pair = tensor(rho_in.op(), rho_in.op()).matrix();
  const CMatrix product = tensor(rho_a, rho_b).matrix();

  DistanceReport r;
  r.d_a = hs_distance_matrix(rho_in.matrix(), rho_a.matrix());
  r.d_b = hs_distance_matrix(rho_in.matrix(), rho_b.matrix());
  r.d_ab_1 = hs_distance_matrix(rho_ab.matrix(), product);
  r.d_ab_2 = hs_distance_matrix(rho_ab.matrix(), pair);
  r.d_ab_3 = hs_distance_matrix(pair, product);

  const auto state_a = as_state(rho_a);
  const auto state_b = as_state(rho_b);
  const auto state_ab = as_state(rho_ab);
  r.fidelity = state_a ? fidelity(rho_in, *state_a) : kNaN;
  r.s_a = state_a ? von_neumann_entropy(*state_a) : kNaN;
  r.s_b = state_b ? von_neumann_entropy(*state_b) : kNaN;
  r.s_ab = state_ab ? von_neumann_entropy(*state_ab) : kNaN;
  return r;
}

struct GlTableDeleter {
  void operator()(gsl_integration_glfixed_table* t) const { gsl_integration_glfixed_table_free(t); }
};

const gsl_integration_glfixed_table* gauss_legendre_table() {
  static const std::unique_ptr<gsl_integration_glfixed_table, GlTableDeleter> table(
      gsl_integration_glfixed_table_alloc(kNodesPerPanel));
  return table.get();
}

}  // namespace

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::d_a: return "d_a";
    case Metric::d_b: return "d_b";
    case Metric::d_ab_1: return "d_ab_1";
    case Metric::d_ab_2: return "d_ab_2";
    case Metric::d_ab_3: return "d_ab_3";
    case Metric::fidelity: return "fidelity";
    case Metric::s_a: return "s_a";
    case Metric::s_b: return "s_b";
    case Metric::s_ab: return "s_ab";
  }
  return "?";
}

std::optional<Metric> parse_metric(std::string_view name) {
  for (Metric m : kAllMetrics) {
    if (metric_name(m) == name) return m;
  }
  return std::nullopt;
}

double DistanceReport::get(Metric m) const {
  switch (m) {
    case Metric::d_a: return d_a;
    case Metric::d_b: return d_b;
    case Metric::d_ab_1: return d_ab_1;
    case Metric::d_ab_2: return d_ab_2;
    case Metric::d_ab_3: return d_ab_3;
    case Metric::fidelity: return fidelity;
    case Metric::s_a: return s_a;
    case Metric::s_b: return s_b;
    case Metric::s_ab: return s_ab;
  }
  return kNaN;
}

double hs_distance(const Operator& a, const Operator& b) {
  if (a.dims() != b.dims()) throw ArgumentError("hs_distance: dimension mismatch");
  return hs_distance_matrix(a.matrix(), b.matrix());
}

double hs_distance(const DensityOperator& a, const DensityOperator& b) { return hs_distance(a.op(), b.op()); }

double fidelity(const DensityOperator& rho1, const DensityOperator& rho2) {
  if (rho1.dims() != rho2.dims()) throw ArgumentError("fidelity: dimension mismatch");
  const Operator root = psd_sqrt(rho1);
  const Operator sandwich = root * rho2.op() * root;
  const Operator inner(sandwich.dims(), 0.5 * (sandwich.matrix() + sandwich.matrix().adjoint()));
  return psd_sqrt(inner).trace().real();
}

double von_neumann_entropy(const DensityOperator& rho) {
  const HermitianEigen e = jacobi_eigen(rho.matrix());
  double s = 0.0;
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    const double lambda = e.values(i);
    if (lambda > 0.0) s -= lambda * std::log(lambda);
  }
  return s;
}

Operator sigma_x() {
  CMatrix m(2, 2);
  m << 0.0, 0.5, 0.5, 0.0;
  return Operator(m);
}

Operator sigma_z() {
  CMatrix m(2, 2);
  m << -0.5, 0.0, 0.0, 0.5;
  return Operator(m);
}

SigmaExpectations sigma_expectations(const DensityOperator& rho) {
  if (rho.dim() != 2) throw ArgumentError("sigma_expectations expects a qubit state");
  return {rho.expectation(sigma_x()).real(), rho.expectation(sigma_z()).real()};
}

// ---- observables -----------------------------------------------------------

ObservableSpec::ObservableSpec(double lambda1, double lambda2, Operator p1, Operator p2)
    : lambda1_(lambda1), lambda2_(lambda2), p1_(std::move(p1)), p2_(std::move(p2)) {
  if (p1_.dims() != p2_.dims()) throw ArgumentError("observable projectors have different dimensions");
  const auto n = static_cast<Eigen::Index>(p1_.dim());
  for (const Operator* p : {&p1_, &p2_}) {
    if (!p->is_hermitian(kProjectorTol) || (p->matrix() * p->matrix() - p->matrix()).cwiseAbs().maxCoeff() > kProjectorTol ||
        std::abs(p->trace() - 1.0) > kProjectorTol) {
      throw ArgumentError("observable projector is not a rank-one orthogonal projection");
    }
  }
  if ((p1_.matrix() * p2_.matrix()).cwiseAbs().maxCoeff() > kProjectorTol) {
    throw ArgumentError("observable projectors are not orthogonal");
  }
  if ((p1_.matrix() + p2_.matrix() - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > kProjectorTol) {
    throw ArgumentError("observable projectors do not resolve the identity");
  }
}

ObservableSpec ObservableSpec::from_hermitian(const Operator& a) {
  if (a.dim() != 2) throw ArgumentError("observable must act on a qubit");
  const EigenSystem e = eig_hermitian(a);
  return ObservableSpec(e.values[0], e.values[1], Operator::projector(e.vectors[0]),
                        Operator::projector(e.vectors[1]));
}

Operator ObservableSpec::observable() const { return Complex(lambda1_) * p1_ + Complex(lambda2_) * p2_; }

std::pair<double, double> observable_prob(const DensityOperator& rho, const ObservableSpec& obs) {
  if (rho.dims() != obs.p1().dims()) throw ArgumentError("observable_prob: dimension mismatch");
  return {rho.expectation(obs.p1()).real(), rho.expectation(obs.p2()).real()};
}

// ---- reports ---------------------------------------------------------------

DistanceReport distance_report(const CloningMachine& machine, const Input& input) {
  const CloneOutput out = clone(machine, input);
  return report_from_output(ideal_single(input), out.ab.op());
}

DistanceReport distance_report(const MachineGram& gram, const Input& input) {
  const DensityOperator rho_in = ideal_single(input);
  return report_from_output(rho_in, contract_output(gram, rho_in));
}

double metric_value(const CloningMachine& machine, const Input& input, Metric m) {
  if (m == Metric::d_a) {
    const DensityOperator rho_in = ideal_single(input);
    return hs_distance_matrix(rho_in.matrix(), clone_reduced_a(machine, rho_in.matrix()));
  }
  if (m == Metric::d_b) {
    const DensityOperator rho_in = ideal_single(input);
    return hs_distance_matrix(rho_in.matrix(), clone_reduced_b(machine, rho_in.matrix()));
  }
  return distance_report(machine, input).get(m);
}

double average_over_alpha_sq(const std::function<double(double)>& f) {
  const gsl_integration_glfixed_table* table = gauss_legendre_table();
  double total = 0.0;
  for (const auto& [lo, hi] : {std::pair{0.0, 0.5}, std::pair{0.5, 1.0}}) {
    for (std::size_t i = 0; i < kNodesPerPanel; ++i) {
      double x = 0.0, w = 0.0;
      gsl_integration_glfixed_point(lo, hi, i, &x, &w, table);
      total += w * f(x);
    }
  }
  return total;
}

double average_over_inputs(const CloningMachine& machine, Metric m) {
  return average_over_alpha_sq([&](double t) { return metric_value(machine, PureInput::from_alpha_sq(t), m); });
}

double state_vector_distance(const Ket& psi, const Ket& phi) {
  if (psi.dim() != phi.dim()) throw ArgumentError("state_vector_distance: dimension mismatch");
  return (psi.amplitudes() - phi.amplitudes()).squaredNorm();
}

// ---- closed forms ----------------------------------------------------------

double closed_form_d_a_wz(double t) { return 2.0 * t * (1.0 - t); }

double closed_form_d_a_uqcm(double xi, double eta, double t) {
  return 2.0 * xi * xi * (4.0 * t * t - 4.0 * t + 1.0) + 2.0 * t * (1.0 - t) * (eta - 1.0) * (eta - 1.0);
}

double closed_form_d_ab2_uqcm(double xi, double t) {
  const double a = std::sqrt(t), b = std::sqrt(1.0 - t);
  const double a2 = t, b2 = 1.0 - t;
  const double k = 1.0 - 2.0 * xi;
  const double s2 = std::sqrt(2.0);
  const double u11 = a2 * a2 - a2 * k;
  const double u12 = s2 * a * b * (a2 - 0.5 * k);
  const double u13 = a2 * b2;
  const double u22 = 2.0 * a2 * b2 - 2.0 * xi;
  const double u23 = s2 * a * b * (b2 - 0.5 * k);
  const double u33 = b2 * b2 - b2 * k;
  return u11 * u11 + 2.0 * u12 * u12 + 2.0 * u13 * u13 + u22 * u22 + 2.0 * u23 * u23 + u33 * u33;
}

double closed_form_mixed(double xi, const MixedInput& input) { return 2.0 * xi * xi * input.bloch_length_sq(); }

double closed_form_d_ab2_wz_mixed(double a) { return 4.0 * a * a * (1.0 - a) * (1.0 - a); }

double closed_form_d_m1(const PureInput& input) {
  const Complex beta = input.beta();
  return 2.0 - 2.0 * beta.real() * (std::norm(beta) + std::norm(input.alpha()) * std::sqrt(2.0));
}

}  // namespace qcopy
