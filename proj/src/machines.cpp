#include "qcopy/machines.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "qcopy/errors.hpp"

namespace qcopy {
namespace {

constexpr double kPhaseTol = 1e-12;

Dims column_dims(std::size_t machine_dim) { return Dims{2, 2, machine_dim}; }

// |ab> (x) |x_index> inside a (x) b (x) x with machine dimension dx.
Ket product_basis(std::size_t ab, std::size_t x_index, std::size_t dx) {
  return Ket::basis(column_dims(dx), ab * dx + x_index);
}

std::string format_params(const UQCMParams& p) {
  std::ostringstream os;
  os << "uqcm(xi=" << p.xi << ",eta=" << p.eta << ")";
  return os.str();
}

}  // namespace

// ---- CloningMachine --------------------------------------------------------

CloningMachine::CloningMachine(std::string label, std::size_t machine_dim, std::array<Ket, 2> columns)
    : label_(std::move(label)), machine_dim_(machine_dim), columns_(std::move(columns)) {}

CMatrix CloningMachine::isometry() const {
  CMatrix v(static_cast<Eigen::Index>(4 * machine_dim_), 2);
  v.col(0) = columns_[0].amplitudes();
  v.col(1) = columns_[1].amplitudes();
  return v;
}

CloningMachine general_machine(std::string label, const Ket& image0, const Ket& image1) {
  if (image0.dim() != image1.dim()) throw ArgumentError("machine images have different dimensions");
  if (image0.dim() % 4 != 0) throw ArgumentError("machine image dimension must be 4 * machine_dim");
  const std::size_t dx = image0.dim() / 4;
  if (dx == 0 || dx > kMaxMachineDim) throw ArgumentError("machine dimension must lie in [1, 8]");

  for (const Ket* c : {&image0, &image1}) {
    const double dev = std::abs(c->amplitudes().squaredNorm() - 1.0);
    if (dev > kIsometryTol) {
      std::ostringstream os;
      os << "machine image is not unit norm (|norm^2 - 1| = " << dev << ")";
      throw IsometryError(IsometryError::Kind::norm, dev, os.str());
    }
  }
  const double overlap = std::abs(image0.inner(image1));
  if (overlap > kIsometryTol) {
    std::ostringstream os;
    os << "machine images are not orthogonal (|<V0|V1>| = " << overlap << ")";
    throw IsometryError(IsometryError::Kind::orthogonality, overlap, os.str());
  }

  Complex phase = 1.0;
  for (std::size_t i = 0; i < image0.dim(); ++i) {
    const double mag = std::abs(image0[i]);
    if (mag > kPhaseTol) {
      phase = std::conj(image0[i]) / mag;
      break;
    }
  }
  std::array<Ket, 2> cols{(phase * image0).with_dims(column_dims(dx)), (phase * image1).with_dims(column_dims(dx))};
  return CloningMachine(std::move(label), dx, std::move(cols));
}

CloningMachine wz_machine() {
  return general_machine("wz", product_basis(0, 0, 2), product_basis(3, 1, 2));
}

CloningMachine uqcm_canonical() {
  // machine basis: 0 = up, 1 = down
  const double big = std::sqrt(2.0 / 3.0);
  const double small = std::sqrt(1.0 / 3.0) / std::sqrt(2.0);  // sqrt(1/3) |+> split over |10>, |01>
  const Ket c0 = big * product_basis(0, 0, 2) + small * (product_basis(2, 1, 2) + product_basis(1, 1, 2));
  const Ket c1 = big * product_basis(3, 1, 2) + small * (product_basis(2, 0, 2) + product_basis(1, 0, 2));
  return general_machine("uqcm", c0, c1);
}

CloningMachine neighborhood_m1() {
  const double h = 1.0 / std::sqrt(2.0);
  const Ket c0 = h * (product_basis(2, 0, 1) + product_basis(1, 0, 1));
  const Ket c1 = product_basis(3, 0, 1);
  return general_machine("m1", c0, c1);
}

CloningMachine neighborhood_m2() {
  // machine basis: 0 = Q0, 1 = Q1
  const double h = 1.0 / std::sqrt(2.0);
  const Ket c0 = h * (product_basis(2, 1, 2) + product_basis(1, 1, 2));
  const Ket c1 = h * (product_basis(3, 1, 2) + product_basis(0, 0, 2));
  return general_machine("m2", c0, c1);
}

CloningMachine machine_by_name(const std::string& name) {
  if (name == "wz") return wz_machine();
  if (name == "uqcm") return uqcm_canonical();
  if (name == "m1") return neighborhood_m1();
  if (name == "m2") return neighborhood_m2();
  throw UsageError("unknown machine '" + name + "' (expected wz, uqcm, m1 or m2)");
}

// ---- UQCM parameters and Gram matrices -------------------------------------

UQCMParams::UQCMParams(double xi_in, double eta_in) : xi(xi_in), eta(eta_in) {
  if (!(xi >= -1e-12 && xi <= 0.5 + 1e-12)) throw ParameterError("xi must lie in [0, 1/2]");
  if (!(eta >= -1e-12 && eta <= 1.0 + 1e-12)) throw ParameterError("eta must lie in [0, 1]");
  xi = std::clamp(xi, 0.0, 0.5);
  eta = std::clamp(eta, 0.0, 1.0);
}

UQCMParams UQCMParams::flat(double xi) { return UQCMParams(xi, 1.0 - 2.0 * xi); }

double UQCMParams::schwarz_bound() const { return 2.0 * std::sqrt(xi * (1.0 - 2.0 * xi)); }

MachineGram::MachineGram(std::vector<std::string> labels, CMatrix gram, std::array<CMatrix, 2> layout)
    : labels_(std::move(labels)), gram_(std::move(gram)), layout_(std::move(layout)) {
  const auto n = static_cast<Eigen::Index>(labels_.size());
  if (gram_.rows() != n || gram_.cols() != n) throw ArgumentError("Gram matrix size does not match labels");
  for (const auto& l : layout_) {
    if (l.rows() != 4 || l.cols() != n) throw ArgumentError("Gram layout must be 4 x (number of vectors)");
  }
  if (!Operator(gram_).is_hermitian()) throw ArgumentError("Gram matrix is not Hermitian");
  gram_ = 0.5 * (gram_ + gram_.adjoint());
}

bool MachineGram::is_psd(double tol) const { return min_eigenvalue(gram_) >= -tol; }

std::size_t MachineGram::rank(double cutoff) const {
  const HermitianEigen e = jacobi_eigen(gram_);
  return static_cast<std::size_t>((e.values.array() > cutoff).count());
}

MachineGram uqcm_gram(const UQCMParams& p) {
  enum { q0, q1, y0, y1 };
  CMatrix g = CMatrix::Zero(4, 4);
  g(q0, q0) = g(q1, q1) = 1.0 - 2.0 * p.xi;
  g(y0, y0) = g(y1, y1) = p.xi;
  g(y0, q1) = g(q1, y0) = p.eta / 2.0;
  g(y1, q0) = g(q0, y1) = p.eta / 2.0;

  std::array<CMatrix, 2> layout{CMatrix::Zero(4, 4), CMatrix::Zero(4, 4)};
  layout[0](0, q0) = 1.0;  // |00> Q0
  layout[0](1, y0) = 1.0;  // |01> Y0
  layout[0](2, y0) = 1.0;  // |10> Y0
  layout[1](3, q1) = 1.0;  // |11> Q1
  layout[1](1, y1) = 1.0;
  layout[1](2, y1) = 1.0;
  return MachineGram({"Q0", "Q1", "Y0", "Y1"}, std::move(g), std::move(layout));
}

MachineGram machine_gram(const CloningMachine& machine) {
  const auto dx = static_cast<Eigen::Index>(machine.machine_dim());
  CMatrix vectors(dx, 8);  // column 4s + kl is Q^s_kl
  std::vector<std::string> labels;
  std::array<CMatrix, 2> layout{CMatrix::Zero(4, 8), CMatrix::Zero(4, 8)};
  for (int s = 0; s < 2; ++s) {
    const CVector& c = machine.column(static_cast<std::size_t>(s)).amplitudes();
    for (int kl = 0; kl < 4; ++kl) {
      vectors.col(4 * s + kl) = c.segment(kl * dx, dx);
      layout[static_cast<std::size_t>(s)](kl, 4 * s + kl) = 1.0;
      labels.push_back("Q" + std::to_string(s) + "_" + std::to_string(kl / 2) + std::to_string(kl % 2));
    }
  }
  return MachineGram(std::move(labels), vectors.adjoint() * vectors, std::move(layout));
}

CloningMachine realize(const MachineGram& gram, std::string label) {
  const HermitianEigen e = jacobi_eigen(gram.gram());
  const double lowest = e.values.size() ? e.values(e.values.size() - 1) : 0.0;
  if (lowest < -kPsdClamp) {
    std::ostringstream os;
    os << "machine Gram matrix is not positive semidefinite (eigenvalue " << lowest << ")";
    throw ParameterError(os.str());
  }
  const auto rank = static_cast<Eigen::Index>((e.values.array() > kGramRankCutoff).count());
  if (rank == 0) throw ParameterError("machine Gram matrix is zero");
  if (static_cast<std::size_t>(rank) > kMaxMachineDim) throw ParameterError("machine Gram rank exceeds 8");

  // vectors.col(j) = v_j with v_j[i] = sqrt(lambda_i) conj(u_i[j])
  CMatrix vectors(rank, static_cast<Eigen::Index>(gram.size()));
  for (Eigen::Index i = 0; i < rank; ++i) {
    vectors.row(i) = std::sqrt(e.values(i)) * e.vectors.col(i).adjoint();
  }

  std::array<CVector, 2> cols{CVector::Zero(4 * rank), CVector::Zero(4 * rank)};
  for (std::size_t s = 0; s < 2; ++s) {
    const CMatrix& l = gram.layout()[s];
    for (Eigen::Index ab = 0; ab < 4; ++ab) {
      cols[s].segment(ab * rank, rank) = vectors * l.row(ab).transpose();
    }
  }
  const Dims d = column_dims(static_cast<std::size_t>(rank));
  return general_machine(std::move(label), Ket(d, cols[0]), Ket(d, cols[1]));
}

CloningMachine uqcm_from_gram(const UQCMParams& params) {
  if (!params.realizable(1e-12)) {
    std::ostringstream os;
    os << "eta = " << params.eta << " exceeds the Schwarz bound " << params.schwarz_bound() << " for xi = "
       << params.xi;
    throw ParameterError(os.str());
  }
  return realize(uqcm_gram(params), format_params(params));
}

Operator contract_output(const MachineGram& gram, const DensityOperator& rho_in) {
  if (rho_in.dim() != 2) throw ArgumentError("contract_output expects a qubit input state");
  const CMatrix gt = gram.gram().transpose();
  CMatrix out = CMatrix::Zero(4, 4);
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t t = 0; t < 2; ++t) {
      const Complex w = rho_in(s, t);
      if (w == Complex(0.0)) continue;
      out += w * gram.layout()[s] * gt * gram.layout()[t].adjoint();
    }
  }
  return Operator({2, 2}, 0.5 * (out + out.adjoint()));
}

// ---- clone -----------------------------------------------------------------

CloneOutput clone(const CloningMachine& machine, const Input& input) {
  const DensityOperator rho_in = ideal_single(input);
  const CMatrix v = machine.isometry();
  const DensityOperator abx(column_dims(machine.machine_dim()), v * rho_in.matrix() * v.adjoint());
  DensityOperator ab = partial_trace(abx, {0, 1});
  DensityOperator a = partial_trace(ab, {0});
  DensityOperator b = partial_trace(ab, {1});
  return CloneOutput{abx, std::move(ab), std::move(a), std::move(b)};
}

CMatrix clone_reduced_a(const CloningMachine& machine, const CMatrix& rho_in) {
  const CMatrix v = machine.isometry();
  const CMatrix abx = v * rho_in * v.adjoint();
  const auto block = static_cast<Eigen::Index>(2 * machine.machine_dim());
  CMatrix a(2, 2);
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) a(i, j) = abx.block(i * block, j * block, block, block).trace();
  }
  return a;
}

CMatrix clone_reduced_b(const CloningMachine& machine, const CMatrix& rho_in) {
  const CMatrix v = machine.isometry();
  const CMatrix abx = v * rho_in * v.adjoint();
  const auto dx = static_cast<Eigen::Index>(machine.machine_dim());
  CMatrix b = CMatrix::Zero(2, 2);
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) {
      for (Eigen::Index a = 0; a < 2; ++a) b(i, j) += abx.block((2 * a + i) * dx, (2 * a + j) * dx, dx, dx).trace();
    }
  }
  return b;
}

}  // namespace qcopy
