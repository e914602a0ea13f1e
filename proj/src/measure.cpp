#include "qcopy/measure.hpp"

#include <cmath>
#include <sstream>

#include "qcopy/errors.hpp"

namespace qcopy {
namespace {

constexpr double kProjectionNormTol = 1e-12;
constexpr double kMinSuccessProbability = 1e-12;

void require_two_qubits(const DensityOperator& rho) {
  if (rho.dims() != Dims{2, 2}) throw ArgumentError("expected a two-qubit (a, b) state");
}

}  // namespace

ProjectionSpec::ProjectionSpec(Complex u, Complex v) : u_(u), v_(v) {
  const double n2 = std::norm(u) + std::norm(v);
  if (std::abs(n2 - 1.0) > kProjectionNormTol) {
    std::ostringstream os;
    os << "projection vector is not normalized: |u|^2 + |v|^2 = " << n2;
    throw ArgumentError(os.str());
  }
}

Ket ProjectionSpec::ket() const {
  CVector k(2);
  k << u_, v_;
  return Ket(k);
}

Operator ProjectionSpec::projector_ab() const {
  return tensor(Operator::identity({2}), Operator::projector(ket()));
}

ProjectionSpec ProjectionSpec::complement() const { return ProjectionSpec(-std::conj(v_), std::conj(u_)); }

MeasuredEnsemble unconditioned_measure(const DensityOperator& rho_ab, const ProjectionSpec& proj) {
  require_two_qubits(rho_ab);
  const CMatrix p = proj.projector_ab().matrix();
  const CMatrix q = CMatrix::Identity(4, 4) - p;
  const CMatrix& rho = rho_ab.matrix();
  DensityOperator ab(rho_ab.dims(), p * rho * p + q * rho * q);
  DensityOperator a = partial_trace(ab, {0});
  return {std::move(ab), std::move(a)};
}

double outcome_probability(const DensityOperator& rho_ab, const ProjectionSpec& proj) {
  require_two_qubits(rho_ab);
  const CMatrix p = proj.projector_ab().matrix();
  return (p * rho_ab.matrix() * p).trace().real();
}

double closed_form_outcome_probability(const PureInput& input, const ProjectionSpec& proj) {
  const Complex overlap = input.alpha() * std::conj(proj.u()) + input.beta() * std::conj(proj.v());
  return 1.0 / 6.0 + (2.0 / 3.0) * std::norm(overlap);
}

double recover_expectation(const Operator& op_a, const DensityOperator& rho_a_out) {
  return recover_expectation_scaled(op_a, rho_a_out, 1.0 / 6.0);
}

double recover_expectation_scaled(const Operator& op_a, const DensityOperator& rho_a_out, double xi) {
  if (op_a.dim() != 2 || rho_a_out.dim() != 2) throw ArgumentError("recover_expectation acts on mode a only");
  if (!(xi >= 0.0 && xi < 0.5)) throw ArgumentError("recover_expectation: xi must lie in [0, 1/2)");
  const Complex measured = rho_a_out.expectation(op_a);
  return ((measured - xi * op_a.trace()) / (1.0 - 2.0 * xi)).real();
}

PostSelection selective_post_select(const DensityOperator& rho_ab) {
  require_two_qubits(rho_ab);
  const CMatrix& rho = rho_ab.matrix();
  const double p00 = rho(0, 0).real();
  const double success = 1.0 - p00;
  if (success < kMinSuccessProbability) {
    throw DegenerateConditioningError("post-selection outcome has vanishing probability");
  }
  CMatrix keep = CMatrix::Identity(4, 4);
  keep(0, 0) = 0.0;
  DensityOperator ab(rho_ab.dims(), keep * rho * keep / success);
  DensityOperator a = partial_trace(ab, {0});
  return {std::move(ab), std::move(a), success};
}

}  // namespace qcopy
