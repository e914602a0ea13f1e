#pragma once

// Projective measurements on the copy mode b of a two-qubit output state.

#include "qcopy/qmath.hpp"
#include "qcopy/states.hpp"

namespace qcopy {

// Projection onto u|0>_b + v|1>_b.
class ProjectionSpec {
 public:
  ProjectionSpec(Complex u, Complex v);

  Complex u() const { return u_; }
  Complex v() const { return v_; }
  Ket ket() const;
  // I_a (x) |s><s|_b
  Operator projector_ab() const;
  ProjectionSpec complement() const;  // the orthogonal projection

 private:
  Complex u_;
  Complex v_;
};

struct MeasuredEnsemble {
  DensityOperator ab;
  DensityOperator a;
};

// P rho P + Q rho Q with Q = I_b - P, keeping every outcome.
MeasuredEnsemble unconditioned_measure(const DensityOperator& rho_ab, const ProjectionSpec& proj);

// Tr(P rho P)
double outcome_probability(const DensityOperator& rho_ab, const ProjectionSpec& proj);

// 1/6 + (2/3)|alpha u* + beta v*|^2, the same probability for the universal
// machine's output written in closed form.
double closed_form_outcome_probability(const PureInput& input, const ProjectionSpec& proj);

// Recovers Tr(A rho_id) from the universal machine's output mode,
// rho_out = (2/3) rho_id + (1/6) I:
//   (3/2) [Tr(A rho_out) - (1/6) Tr A]
double recover_expectation(const Operator& op_a, const DensityOperator& rho_a_out);

// Extension to the symmetric family at any xi < 1/2 with eta = 1 - 2 xi,
// where rho_out = (1 - 2 xi) rho_id + xi I.
double recover_expectation_scaled(const Operator& op_a, const DensityOperator& rho_a_out, double xi);

struct PostSelection {
  DensityOperator ab;
  DensityOperator a;
  double success_probability;
};

// Measures |00><00| and keeps the runs with outcome 0.  Throws
// DegenerateConditioningError when that outcome has probability < 1e-12.
PostSelection selective_post_select(const DensityOperator& rho_ab);

}  // namespace qcopy
