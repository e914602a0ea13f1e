#include "qcopy/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <type_traits>

#include "qcopy/errors.hpp"

namespace qcopy {
namespace {

constexpr double kRenormalizeTol = 1e-9;
constexpr double kMixedBoundTol = 1e-12;

CVector pair_vector(Complex a, Complex b) {
  CVector v(2);
  v << a, b;
  return v;
}

}  // namespace

PureInput::PureInput(Complex alpha, Complex beta) {
  const double n2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(n2 - 1.0) > kRenormalizeTol) {
    std::ostringstream os;
    os << "pure input is not normalized: |alpha|^2 + |beta|^2 = " << n2;
    throw ArgumentError(os.str());
  }
  const double n = std::sqrt(n2);
  alpha_ = alpha / n;
  beta_ = beta / n;
}

PureInput PureInput::from_angle(double phi) { return PureInput(std::cos(phi), std::sin(phi)); }

PureInput PureInput::from_alpha_sq(double t) {
  if (t < -kRenormalizeTol || t > 1.0 + kRenormalizeTol) throw ArgumentError("alpha^2 must lie in [0, 1]");
  t = std::clamp(t, 0.0, 1.0);
  return PureInput(std::sqrt(t), std::sqrt(1.0 - t));
}

Ket PureInput::ket() const { return Ket(pair_vector(alpha_, beta_)); }

MixedInput::MixedInput(double a, Complex b) : a_(a), b_(b) {
  if (a < 0.0 || a > 1.0) throw ArgumentError("mixed input: A must lie in [0, 1]");
  if (bloch_length_sq() > 1.0 + kMixedBoundTol) {
    std::ostringstream os;
    os << "mixed input violates (1-2A)^2 + 4|B|^2 <= 1 (value " << bloch_length_sq() << ")";
    throw ArgumentError(os.str());
  }
}

double MixedInput::bloch_length_sq() const {
  return (1.0 - 2.0 * a_) * (1.0 - 2.0 * a_) + 4.0 * std::norm(b_);
}

const TwoQubitBasis& two_qubit_basis() {
  static const TwoQubitBasis basis = [] {
    const Dims d{2, 2};
    const double h = 1.0 / std::sqrt(2.0);
    Ket k00 = Ket::basis(d, 0), k01 = Ket::basis(d, 1), k10 = Ket::basis(d, 2), k11 = Ket::basis(d, 3);
    Ket plus = h * (k10 + k01);
    Ket minus = h * (k10 - k01);
    return TwoQubitBasis{k00, k01, k10, k11, plus, minus};
  }();
  return basis;
}

DensityOperator ideal_single(const Input& input) {
  return std::visit(
      [](const auto& in) -> DensityOperator {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, PureInput>) {
          return DensityOperator::from_ket(in.ket());
        } else {
          CMatrix m(2, 2);
          m << in.a(), in.b(), std::conj(in.b()), 1.0 - in.a();
          return DensityOperator({2}, m);
        }
      },
      input);
}

DensityOperator ideal_pair(const Input& input) {
  const DensityOperator single = ideal_single(input);
  return tensor(single, single);
}

std::pair<Ket, Ket> rotated_basis(const PureInput& input) {
  const Ket phi1(pair_vector(input.alpha(), input.beta()));
  const Ket phi2(pair_vector(std::conj(input.beta()), -std::conj(input.alpha())));
  return {phi1, phi2};
}

}  // namespace qcopy
