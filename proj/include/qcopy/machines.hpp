#pragma once

// Copying machines as isometries from the input qubit into a (x) b (x) x.
//
// A machine is stored as the two image columns V|0> and V|1>, each a ket of
// dims {2, 2, machine_dim}.  The machine's initial state never appears: every
// output depends only on these columns.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "qcopy/qmath.hpp"
#include "qcopy/states.hpp"

namespace qcopy {

inline constexpr std::size_t kMaxMachineDim = 8;
inline constexpr double kIsometryTol = 1e-10;
inline constexpr double kGramRankCutoff = 1e-10;

class CloningMachine {
 public:
  const std::string& label() const { return label_; }
  std::size_t machine_dim() const { return machine_dim_; }
  const Ket& column(std::size_t s) const { return columns_.at(s); }
  // (4 * machine_dim) x 2 matrix [V|0>, V|1>]
  CMatrix isometry() const;

 private:
  friend CloningMachine general_machine(std::string label, const Ket& image0, const Ket& image1);
  CloningMachine(std::string label, std::size_t machine_dim, std::array<Ket, 2> columns);

  std::string label_;
  std::size_t machine_dim_;
  std::array<Ket, 2> columns_;
};

// Validates the candidate images and returns the machine.  Image kets must
// have dimension 4 * d_x with d_x <= 8.  Throws IsometryError carrying the
// offending norm deviation or overlap magnitude.  Both columns are multiplied
// by one common phase so that the first significant amplitude of V|0> is real
// and positive.
CloningMachine general_machine(std::string label, const Ket& image0, const Ket& image1);

// |0> -> |00>|Q0>, |1> -> |11>|Q1>, <Q0|Q1> = 0.
CloningMachine wz_machine();
// The two-dimensional universal machine written out in the |up>, |down> basis.
CloningMachine uqcm_canonical();
// |1> -> |11>|Q1>, |0> -> |+>|Q1>; machine dimension 1.
CloningMachine neighborhood_m1();
// |1> -> (|11>|Q1> + |00>|Q0>)/sqrt2, |0> -> |+>|Q1>.
CloningMachine neighborhood_m2();

// Machine-vector parameters of the symmetric family
//   |0> -> |00>|Q0> + (|01> + |10>)|Y0>
//   |1> -> |11>|Q1> + (|01> + |10>)|Y1>
// with <Yi|Yi> = xi, <Qi|Qi> = 1 - 2 xi, <Y0|Q1> = <Y1|Q0> = eta/2 and all
// other cross overlaps zero.  Construction checks 0 <= xi <= 1/2 and
// 0 <= eta <= 1; whether a machine with these overlaps exists (the Schwarz
// bound) is a separate question answered by realizable().
struct UQCMParams {
  UQCMParams(double xi, double eta);
  // eta = 1 - 2 xi, the choice that makes d_a independent of the input.
  static UQCMParams flat(double xi);

  double schwarz_bound() const;  // 2 sqrt(xi (1 - 2 xi))
  bool realizable(double tol = 1e-12) const { return eta <= schwarz_bound() + tol; }

  double xi;
  double eta;
};

// Inner products of a family of machine vectors together with the layout
// that places them into the two image columns:
//   V|s> = sum_{ab, j} layout[s](ab, j) |ab> (x) |v_j>,   gram(j, k) = <v_j|v_k>.
// The matrix must be Hermitian.  It need not be PSD: an indefinite "Gram"
// still defines the formal output of contract_output() but cannot be realized.
class MachineGram {
 public:
  MachineGram(std::vector<std::string> labels, CMatrix gram, std::array<CMatrix, 2> layout);

  const std::vector<std::string>& labels() const { return labels_; }
  const CMatrix& gram() const { return gram_; }
  const std::array<CMatrix, 2>& layout() const { return layout_; }
  std::size_t size() const { return labels_.size(); }
  Complex entry(std::size_t j, std::size_t k) const {
    return gram_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
  }

  bool is_psd(double tol = kPsdClamp) const;
  // Number of eigenvalues above the rank cutoff.
  std::size_t rank(double cutoff = kGramRankCutoff) const;

 private:
  std::vector<std::string> labels_;
  CMatrix gram_;
  std::array<CMatrix, 2> layout_;
};

// Gram of (Q0, Q1, Y0, Y1) for the symmetric family.
MachineGram uqcm_gram(const UQCMParams& params);
// Gram of the eight vectors Q^s_kl = (<k|_a <l|_b (x) 1) V|s> of any machine.
MachineGram machine_gram(const CloningMachine& machine);

// Factorizes G = sum_i lambda_i u_i u_i^dagger into vectors with components
// sqrt(lambda_i) conj(u_i[j]); the machine dimension is the numerical rank.
// Throws ParameterError when the Gram is not PSD.
CloningMachine realize(const MachineGram& gram, std::string label);
CloningMachine uqcm_from_gram(const UQCMParams& params);

// Input state rho_in (2x2) -> rho_ab computed directly from the Gram entries:
//   rho_ab = sum_{s,t} rho_in(s,t) L_s G^T L_t^dagger.
// Agrees with clone() for any realizable Gram.
Operator contract_output(const MachineGram& gram, const DensityOperator& rho_in);

struct CloneOutput {
  DensityOperator abx;
  DensityOperator ab;
  DensityOperator a;
  DensityOperator b;
};

// rho_abx = V rho_in V^dagger and its reductions.  Mixed inputs propagate
// linearly.
CloneOutput clone(const CloningMachine& machine, const Input& input);

// Only the reduced state of mode a; cheaper than clone() in search loops.
CMatrix clone_reduced_a(const CloningMachine& machine, const CMatrix& rho_in);
CMatrix clone_reduced_b(const CloningMachine& machine, const CMatrix& rho_in);

// "wz", "uqcm", "m1", "m2"; throws UsageError for anything else.
CloningMachine machine_by_name(const std::string& name);

}  // namespace qcopy
