#include "qcopy/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "qcopy/errors.hpp"

namespace qcopy {
namespace {

constexpr double kJacobiOffDiagonalTol = 1e-13;
constexpr int kJacobiMaxSweeps = 100;
constexpr double kPhaseFixTol = 1e-12;
constexpr double kSqrtRoundoff = 1e-14;

void check_dims(const Dims& dims, std::size_t size) {
  if (dims.empty()) throw ArgumentError("empty subsystem dimension list");
  for (auto d : dims) {
    if (d == 0) throw ArgumentError("subsystem dimension must be positive");
  }
  if (total_dim(dims) != size) {
    std::ostringstream os;
    os << "subsystem dimensions multiply to " << total_dim(dims) << " but data has size " << size;
    throw ArgumentError(os.str());
  }
  if (size > kMaxDim) throw ArgumentError("Hilbert space dimension exceeds 32");
}

Dims concat(const Dims& a, const Dims& b) {
  Dims out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Multiplies v by the phase that makes its first significant component real
// and positive.
void fix_phase(Eigen::Ref<CVector> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > kPhaseFixTol) {
      v *= std::conj(v(i)) / mag;
      return;
    }
  }
}

}  // namespace

std::size_t total_dim(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

// ---- Ket -------------------------------------------------------------------

Ket::Ket(Dims dims, CVector amplitudes) : dims_(std::move(dims)), amps_(std::move(amplitudes)) {
  check_dims(dims_, static_cast<std::size_t>(amps_.size()));
}

Ket::Ket(CVector amplitudes) : Ket(Dims{static_cast<std::size_t>(amplitudes.size())}, amplitudes) {}

Ket Ket::basis(Dims dims, std::size_t index) {
  const std::size_t n = total_dim(dims);
  if (index >= n) throw ArgumentError("basis index out of range");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(n));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return Ket(std::move(dims), std::move(v));
}

bool Ket::is_normalized(double tol) const { return std::abs(amps_.squaredNorm() - 1.0) <= tol; }

Ket Ket::normalized() const {
  const double n = norm();
  if (n == 0.0) throw ArgumentError("cannot normalize the zero vector");
  return Ket(dims_, amps_ / n);
}

Complex Ket::inner(const Ket& other) const {
  if (dim() != other.dim()) throw ArgumentError("inner product of kets with different dimensions");
  return amps_.dot(other.amps_);  // Eigen's dot conjugates the left operand
}

Ket Ket::with_dims(Dims dims) const { return Ket(std::move(dims), amps_); }

Ket operator+(const Ket& a, const Ket& b) {
  if (a.dims() != b.dims()) throw ArgumentError("ket dimension mismatch");
  return Ket(a.dims(), a.amplitudes() + b.amplitudes());
}

Ket operator-(const Ket& a, const Ket& b) {
  if (a.dims() != b.dims()) throw ArgumentError("ket dimension mismatch");
  return Ket(a.dims(), a.amplitudes() - b.amplitudes());
}

Ket operator*(Complex c, const Ket& k) { return Ket(k.dims(), c * k.amplitudes()); }

// ---- Operator --------------------------------------------------------------

Operator::Operator(Dims dims, CMatrix entries) : dims_(std::move(dims)), m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw ArgumentError("operator matrix must be square");
  check_dims(dims_, static_cast<std::size_t>(m_.rows()));
}

Operator::Operator(CMatrix entries) : Operator(Dims{static_cast<std::size_t>(entries.rows())}, entries) {}

Operator Operator::identity(Dims dims) {
  const auto n = static_cast<Eigen::Index>(total_dim(dims));
  return Operator(std::move(dims), CMatrix::Identity(n, n));
}

Operator Operator::projector(const Ket& k) { return outer(k, k); }

Operator Operator::outer(const Ket& a, const Ket& b) {
  if (a.dims() != b.dims()) throw ArgumentError("outer product of kets with different dims");
  return Operator(a.dims(), a.amplitudes() * b.amplitudes().adjoint());
}

bool Operator::is_hermitian(double tol) const {
  return max_abs(m_ - m_.adjoint()) <= tol * std::max(1.0, max_abs(m_));
}

Complex Operator::expectation(const Operator& rho) const {
  if (dim() != rho.dim()) throw ArgumentError("expectation with mismatched dimensions");
  // Tr(A rho) = sum_ij A_ij rho_ji
  return (m_.array() * rho.m_.transpose().array()).sum();
}

Ket Operator::apply(const Ket& k) const {
  if (dim() != k.dim()) throw ArgumentError("operator/ket dimension mismatch");
  return Ket(dims_, m_ * k.amplitudes());
}

Operator operator+(const Operator& a, const Operator& b) {
  if (a.dims() != b.dims()) throw ArgumentError("operator dimension mismatch");
  return Operator(a.dims(), a.matrix() + b.matrix());
}

Operator operator-(const Operator& a, const Operator& b) {
  if (a.dims() != b.dims()) throw ArgumentError("operator dimension mismatch");
  return Operator(a.dims(), a.matrix() - b.matrix());
}

Operator operator*(const Operator& a, const Operator& b) {
  if (a.dims() != b.dims()) throw ArgumentError("operator dimension mismatch");
  return Operator(a.dims(), a.matrix() * b.matrix());
}

Operator operator*(Complex c, const Operator& a) { return Operator(a.dims(), c * a.matrix()); }

// ---- DensityOperator -------------------------------------------------------

namespace {

Operator validated_density(Dims dims, CMatrix m) {
  Operator raw(std::move(dims), std::move(m));
  if (!raw.is_hermitian()) throw ArgumentError("density operator is not Hermitian");
  CMatrix h = 0.5 * (raw.matrix() + raw.matrix().adjoint());
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream os;
    os << "density operator trace is " << tr << ", expected 1";
    throw ArgumentError(os.str());
  }
  const double lo = min_eigenvalue(h);
  if (lo < -kPsdClamp) {
    std::ostringstream os;
    os << "density operator has negative eigenvalue " << lo;
    throw ArgumentError(os.str());
  }
  return Operator(raw.dims(), std::move(h));
}

}  // namespace

DensityOperator::DensityOperator(Dims dims, CMatrix entries)
    : op_(validated_density(std::move(dims), std::move(entries))) {}

DensityOperator::DensityOperator(const Operator& op) : DensityOperator(op.dims(), op.matrix()) {}

DensityOperator DensityOperator::from_ket(const Ket& k) {
  if (!k.is_normalized(1e-10)) throw ArgumentError("pure state ket is not normalized");
  return DensityOperator(k.dims(), k.amplitudes() * k.amplitudes().adjoint());
}

DensityOperator DensityOperator::maximally_mixed(Dims dims) {
  const auto n = static_cast<Eigen::Index>(total_dim(dims));
  return DensityOperator(std::move(dims), CMatrix::Identity(n, n) / static_cast<double>(n));
}

// ---- tensor / partial trace ------------------------------------------------

Ket tensor(const Ket& a, const Ket& b) {
  CVector out(a.amplitudes().size() * b.amplitudes().size());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
    out.segment(i * b.amplitudes().size(), b.amplitudes().size()) = a.amplitudes()(i) * b.amplitudes();
  }
  return Ket(concat(a.dims(), b.dims()), std::move(out));
}

Operator tensor(const Operator& a, const Operator& b) {
  return Operator(concat(a.dims(), b.dims()), kron(a.matrix(), b.matrix()));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator(tensor(a.op(), b.op()));
}

Operator partial_trace(const Operator& op, std::vector<std::size_t> keep) {
  const Dims& dims = op.dims();
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty() || keep.size() >= dims.size() || keep.back() >= dims.size()) {
    throw ArgumentError("partial_trace: keep must be a nonempty proper subset of subsystem indices");
  }

  std::vector<std::size_t> traced;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (!std::binary_search(keep.begin(), keep.end(), i)) traced.push_back(i);
  }
  Dims keep_dims, traced_dims;
  for (auto i : keep) keep_dims.push_back(dims[i]);
  for (auto i : traced) traced_dims.push_back(dims[i]);
  const std::size_t dk = total_dim(keep_dims);
  const std::size_t dt = total_dim(traced_dims);

  // full_index[k * dt + t] is the position of (kept multi-index k, traced multi-index t).
  std::vector<std::size_t> strides(dims.size());
  std::size_t s = 1;
  for (std::size_t i = dims.size(); i-- > 0;) {
    strides[i] = s;
    s *= dims[i];
  }
  auto spread = [&](std::size_t flat, const std::vector<std::size_t>& which, const Dims& wdims) {
    std::size_t pos = 0;
    for (std::size_t i = which.size(); i-- > 0;) {
      pos += (flat % wdims[i]) * strides[which[i]];
      flat /= wdims[i];
    }
    return pos;
  };
  std::vector<std::size_t> full_index(dk * dt);
  for (std::size_t k = 0; k < dk; ++k) {
    const std::size_t kp = spread(k, keep, keep_dims);
    for (std::size_t t = 0; t < dt; ++t) full_index[k * dt + t] = kp + spread(t, traced, traced_dims);
  }

  const CMatrix& m = op.matrix();
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t i = 0; i < dk; ++i) {
    for (std::size_t j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (std::size_t t = 0; t < dt; ++t) {
        acc += m(static_cast<Eigen::Index>(full_index[i * dt + t]),
                 static_cast<Eigen::Index>(full_index[j * dt + t]));
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  }
  return Operator(std::move(keep_dims), std::move(out));
}

DensityOperator partial_trace(const DensityOperator& rho, std::vector<std::size_t> keep) {
  return DensityOperator(partial_trace(rho.op(), std::move(keep)));
}

// ---- eigen decomposition ---------------------------------------------------

HermitianEigen jacobi_eigen(const CMatrix& h) {
  const Eigen::Index n = h.rows();
  CMatrix a = 0.5 * (h + h.adjoint());
  CMatrix v = CMatrix::Identity(n, n);
  const double scale = std::max(1.0, a.norm());

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    }
    if (std::sqrt(off) <= kJacobiOffDiagonalTol * scale) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        // Unitary J = diag(1, e^{-i phi}) * R(theta) annihilates a(p, q).
        const Complex phase = a(p, q) / mag;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex jpp = c, jpq = s, jqp = -s * std::conj(phase), jqq = c * std::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() > a(y, y).real(); });

  HermitianEigen out{Eigen::VectorXd(n), CMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index src = order[static_cast<std::size_t>(i)];
    out.values(i) = a(src, src).real();
    out.vectors.col(i) = v.col(src);
    fix_phase(out.vectors.col(i));
  }
  return out;
}

EigenSystem eig_hermitian(const Operator& h) {
  if (!h.is_hermitian()) throw ArgumentError("eig_hermitian: operator is not Hermitian");
  const HermitianEigen e = jacobi_eigen(h.matrix());
  EigenSystem out;
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    out.values.push_back(e.values(i));
    out.vectors.emplace_back(h.dims(), e.vectors.col(i));
  }
  return out;
}

double min_eigenvalue(const CMatrix& h) {
  const HermitianEigen e = jacobi_eigen(h);
  return e.values.size() == 0 ? 0.0 : e.values(e.values.size() - 1);
}

Operator psd_sqrt(const Operator& h) {
  if (!h.is_hermitian()) throw ArgumentError("psd_sqrt: operator is not Hermitian");
  const HermitianEigen e = jacobi_eigen(h.matrix());
  const double scale = e.values.size() > 0 ? std::max(1.0, std::abs(e.values(0))) : 1.0;
  Eigen::VectorXd roots(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    const double lambda = e.values(i);
    if (lambda < -kPsdClamp) {
      std::ostringstream os;
      os << "psd_sqrt: eigenvalue " << lambda << " is negative";
      throw DomainError(os.str());
    }
    // Roundoff-sized eigenvalues would otherwise contribute their square root.
    roots(i) = lambda <= kSqrtRoundoff * scale ? 0.0 : std::sqrt(lambda);
  }
  CMatrix root = e.vectors * roots.cast<Complex>().asDiagonal() * e.vectors.adjoint();
  return Operator(h.dims(), 0.5 * (root + root.adjoint()));
}

Operator psd_sqrt(const DensityOperator& rho) { return psd_sqrt(rho.op()); }

Complex hs_inner(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw ArgumentError("hs_inner: dimension mismatch");
  return (a.matrix().conjugate().array() * b.matrix().array()).sum();
}

double hs_norm(const Operator& a) { return a.matrix().norm(); }

}  // namespace qcopy
