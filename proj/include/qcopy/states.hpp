#pragma once

#include <utility>
#include <variant>

#include "qcopy/qmath.hpp"

namespace qcopy {

// alpha|0> + beta|1>.  Inputs within 1e-9 of unit norm are renormalized;
// anything further off is rejected with ArgumentError.
class PureInput {
 public:
  PureInput(Complex alpha, Complex beta);

  // alpha = cos(phi), beta = sin(phi)
  static PureInput from_angle(double phi);
  // alpha = sqrt(t), beta = sqrt(1 - t), both real
  static PureInput from_alpha_sq(double t);

  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }
  double alpha_sq() const { return std::norm(alpha_); }
  Ket ket() const;

  // Offset of beta from 1, written delta_beta = r e^{i theta}.
  Complex delta_beta() const { return 1.0 - beta_; }
  double r() const { return std::abs(delta_beta()); }
  double theta() const { return std::arg(delta_beta()); }

 private:
  Complex alpha_;
  Complex beta_;
};

// A |0><0| + B |0><1| + B* |1><0| + (1 - A) |1><1|
class MixedInput {
 public:
  MixedInput(double a, Complex b);

  double a() const { return a_; }
  Complex b() const { return b_; }
  // (1 - 2A)^2 + 4|B|^2, which is 1 for pure states and 0 for I/2.
  double bloch_length_sq() const;

 private:
  double a_;
  Complex b_;
};

using Input = std::variant<PureInput, MixedInput>;

struct TwoQubitBasis {
  Ket k00, k01, k10, k11;
  Ket plus;   // (|10> + |01>)/sqrt2
  Ket minus;  // (|10> - |01>)/sqrt2
};

const TwoQubitBasis& two_qubit_basis();

// Input density operator on mode a.
DensityOperator ideal_single(const Input& input);
// Tensor square of ideal_single: what a perfect copier would output.
DensityOperator ideal_pair(const Input& input);

// (|Phi1>, |Phi2>) with |Phi1> the input state and |Phi2> orthogonal to it:
// Phi2 = conj(beta)|0> - conj(alpha)|1>.
std::pair<Ket, Ket> rotated_basis(const PureInput& input);

}  // namespace qcopy
