#pragma once

// Dense complex linear algebra on small tensor-product Hilbert spaces.
//
// Subsystems are ordered left to right and the left factor varies slowest,
// so for dims {2, 2} the basis index of |ij> is 2*i + j.  Every type here is
// an immutable value; every free function is pure.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace qcopy {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Dims = std::vector<std::size_t>;

inline constexpr std::size_t kMaxDim = 32;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
// Eigenvalues above -kPsdClamp are numerical noise and clamp to zero.
inline constexpr double kPsdClamp = 1e-10;

std::size_t total_dim(const Dims& dims);

class Ket {
 public:
  Ket(Dims dims, CVector amplitudes);
  explicit Ket(CVector amplitudes);

  static Ket basis(Dims dims, std::size_t index);

  const Dims& dims() const { return dims_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const CVector& amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

  double norm() const { return amps_.norm(); }
  bool is_normalized(double tol = 1e-12) const;
  Ket normalized() const;
  // <this|other>
  Complex inner(const Ket& other) const;
  Ket with_dims(Dims dims) const;

 private:
  Dims dims_;
  CVector amps_;
};

Ket operator+(const Ket& a, const Ket& b);
Ket operator-(const Ket& a, const Ket& b);
Ket operator*(Complex c, const Ket& k);

class Operator {
 public:
  Operator(Dims dims, CMatrix entries);
  explicit Operator(CMatrix entries);

  static Operator identity(Dims dims);
  // |k><k|
  static Operator projector(const Ket& k);
  // |a><b|
  static Operator outer(const Ket& a, const Ket& b);

  const Dims& dims() const { return dims_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  bool is_hermitian(double tol = kHermitianTol) const;
  Complex trace() const { return m_.trace(); }
  Operator adjoint() const { return Operator(dims_, m_.adjoint()); }
  // Tr(this * rho)
  Complex expectation(const Operator& rho) const;
  Ket apply(const Ket& k) const;

 private:
  Dims dims_;
  CMatrix m_;
};

Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(Complex c, const Operator& a);

// A positive, unit-trace Hermitian operator.  Construction validates the
// invariants and throws ArgumentError on violation; the stored matrix is
// exactly Hermitian.
class DensityOperator {
 public:
  DensityOperator(Dims dims, CMatrix entries);
  explicit DensityOperator(const Operator& op);

  static DensityOperator from_ket(const Ket& k);
  static DensityOperator maximally_mixed(Dims dims);

  const Dims& dims() const { return op_.dims(); }
  std::size_t dim() const { return op_.dim(); }
  const CMatrix& matrix() const { return op_.matrix(); }
  const Operator& op() const { return op_; }
  Complex operator()(std::size_t i, std::size_t j) const { return op_(i, j); }

  // Tr(rho A)
  Complex expectation(const Operator& a) const { return a.expectation(op_); }

 private:
  Operator op_;
};

Ket tensor(const Ket& a, const Ket& b);
Operator tensor(const Operator& a, const Operator& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

// Reduced operator on the subsystems listed in `keep` (indices into dims()).
// `keep` must be a nonempty proper subset; otherwise ArgumentError.
Operator partial_trace(const Operator& op, std::vector<std::size_t> keep);
DensityOperator partial_trace(const DensityOperator& rho, std::vector<std::size_t> keep);

struct EigenSystem {
  std::vector<double> values;  // descending
  std::vector<Ket> vectors;    // orthonormal, first significant component real positive
};

// Cyclic Jacobi diagonalization.  Throws ArgumentError for non-Hermitian input.
EigenSystem eig_hermitian(const Operator& h);

// Raw-matrix variant used internally by fidelity and entropy.
struct HermitianEigen {
  Eigen::VectorXd values;  // descending
  CMatrix vectors;         // columns
};
HermitianEigen jacobi_eigen(const CMatrix& h);

// Principal square root of a positive semidefinite operator.  Eigenvalues in
// (-1e-10, 1e-14 max(1, lambda_max)] are treated as zero; anything below
// -1e-10 raises DomainError.
Operator psd_sqrt(const Operator& h);
Operator psd_sqrt(const DensityOperator& rho);

double min_eigenvalue(const CMatrix& h);

// Tr(A^dagger B)
Complex hs_inner(const Operator& a, const Operator& b);
double hs_norm(const Operator& a);

}  // namespace qcopy
