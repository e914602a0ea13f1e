#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "qcopy/errors.hpp"
#include "qcopy/machines.hpp"
#include "qcopy/metrics.hpp"
#include "support.hpp"

using namespace qcopy;
using namespace qcopy::testing;

namespace {

CMatrix proj(const Ket& k) { return Operator::projector(k).matrix(); }

std::vector<CloningMachine> builtins() {
  return {wz_machine(), uqcm_canonical(), neighborhood_m1(), neighborhood_m2(), uqcm_from_gram(UQCMParams::flat(0.25))};
}

// Slice of column s at two-qubit index ab: the machine vector attached to |ab>.
CVector machine_vector(const CloningMachine& m, std::size_t s, std::size_t ab) {
  const auto dx = static_cast<Eigen::Index>(m.machine_dim());
  return m.column(s).amplitudes().segment(static_cast<Eigen::Index>(ab) * dx, dx);
}

Ket kron(const Ket& ab, const CVector& x) { return tensor(ab, Ket({x.size() > 0 ? static_cast<std::size_t>(x.size()) : 1}, x)); }

}  // namespace

TEST(Isometry, BuiltinMachinesHaveOrthonormalColumns) {
  for (const auto& m : builtins()) {
    const CMatrix v = m.isometry();
    EXPECT_LT(max_abs(v.adjoint() * v - CMatrix::Identity(2, 2)), 1e-10) << m.label();
  }
}

TEST(Isometry, MachineDimensions) {
  EXPECT_EQ(wz_machine().machine_dim(), 2u);
  EXPECT_EQ(uqcm_canonical().machine_dim(), 2u);
  EXPECT_EQ(neighborhood_m1().machine_dim(), 1u);
  EXPECT_EQ(neighborhood_m2().machine_dim(), 2u);
}

TEST(GeneralMachine, AcceptsWzColumns) {
  const CloningMachine wz = wz_machine();
  EXPECT_NO_THROW(general_machine("copy", wz.column(0), wz.column(1)));
}

TEST(GeneralMachine, IdenticalColumnsReportOverlap) {
  const Ket q = Ket::basis({2, 2, 2}, 0);
  try {
    general_machine("bad", q, q);
    FAIL() << "expected IsometryError";
  } catch (const IsometryError& e) {
    EXPECT_EQ(e.kind(), IsometryError::Kind::orthogonality);
    EXPECT_NEAR(e.violation(), 1.0, 1e-12);
  }
}

TEST(GeneralMachine, MissingNormalizationReportsNorm) {
  const TwoQubitBasis& b = two_qubit_basis();
  const Ket unnormalized = Ket({2, 2, 1}, b.k10.amplitudes() + b.k01.amplitudes());
  try {
    general_machine("bad", unnormalized, b.k11.with_dims({2, 2, 1}));
    FAIL() << "expected IsometryError";
  } catch (const IsometryError& e) {
    EXPECT_EQ(e.kind(), IsometryError::Kind::norm);
    EXPECT_NEAR(e.violation(), 1.0, 1e-12);
  }
}

TEST(GeneralMachine, RejectsBadShapes) {
  EXPECT_THROW(general_machine("bad", Ket::basis({3}, 0), Ket::basis({3}, 1)), ArgumentError);
  EXPECT_THROW(general_machine("bad", Ket::basis({2, 2, 9}, 0), Ket::basis({2, 2, 9}, 1)), ArgumentError);
}

TEST(GeneralMachine, CommonPhaseMakesFirstAmplitudeRealPositive) {
  const Complex phase = std::polar(1.0, 0.7);
  const CloningMachine wz = wz_machine();
  const CloningMachine m = general_machine(
      "phased", Ket(wz.column(0).dims(), phase * wz.column(0).amplitudes()),
      Ket(wz.column(1).dims(), phase * wz.column(1).amplitudes()));
  EXPECT_NEAR(m.column(0)[0].imag(), 0.0, 1e-15);
  EXPECT_GT(m.column(0)[0].real(), 0.0);
  EXPECT_LT(max_abs(m.isometry() - wz.isometry()), 1e-15);
}

TEST(Wz, Examples) {
  const TwoQubitBasis& b = two_qubit_basis();
  const CloningMachine wz = wz_machine();
  EXPECT_LT(max_abs(clone(wz, PureInput(1.0, 0.0)).ab.matrix() - proj(b.k00)), 1e-15);

  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_LT(max_abs(clone(wz, PureInput(s, s)).ab.matrix() - 0.5 * (proj(b.k00) + proj(b.k11))), 1e-15);

  const CloneOutput quarter = clone(wz, PureInput::from_alpha_sq(0.25));
  const CMatrix expected = (CMatrix(2, 2) << 0.25, 0, 0, 0.75).finished();
  EXPECT_LT(max_abs(quarter.a.matrix() - expected), 1e-15);
}

TEST(Wz, DiagonalMixtureMatchesPureOutput) {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const double t = uniform(rng);
    const CloneOutput pure = clone(wz_machine(), PureInput::from_alpha_sq(t));
    const CloneOutput mixed = clone(wz_machine(), MixedInput(t, 0.0));
    EXPECT_LT(max_abs(pure.ab.matrix() - mixed.ab.matrix()), 1e-14);
  }
}

TEST(Wz, DestroysCoherenceOfRealInputs) {
  Rng rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const CloneOutput out = clone(wz_machine(), random_real_pure(rng));
    EXPECT_LT(std::abs(out.a(0, 1)), 1e-12);
    EXPECT_LT(std::abs(out.b(0, 1)), 1e-12);
  }
}

TEST(UqcmGramTest, EntriesAtOneSixth) {
  const MachineGram g = uqcm_gram(UQCMParams(1.0 / 6.0, 2.0 / 3.0));
  EXPECT_EQ(g.labels(), (std::vector<std::string>{"Q0", "Q1", "Y0", "Y1"}));
  EXPECT_NEAR(g.entry(0, 0).real(), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(g.entry(1, 1).real(), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(g.entry(2, 2).real(), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(g.entry(3, 3).real(), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(g.entry(2, 1).real(), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(g.entry(3, 0).real(), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(std::abs(g.entry(0, 1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g.entry(2, 3)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g.entry(0, 2)), 0.0, 1e-15);
  EXPECT_EQ(g.rank(), 2u);
}

TEST(UqcmGramTest, NormalizationHoldsAcrossFamily) {
  for (double xi : {0.0, 0.1, 1.0 / 6.0, 0.3, 0.5}) {
    const MachineGram g = uqcm_gram(UQCMParams::flat(xi));
    EXPECT_NEAR(g.entry(0, 0).real() + 2.0 * g.entry(2, 2).real(), 1.0, 1e-12);
    EXPECT_NEAR(g.entry(1, 1).real() + 2.0 * g.entry(3, 3).real(), 1.0, 1e-12);
  }
}

TEST(UqcmParamsTest, SchwarzBound) {
  EXPECT_NEAR(UQCMParams(0.25, 0.0).schwarz_bound(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_TRUE(UQCMParams::flat(1.0 / 6.0).realizable());
  EXPECT_TRUE(UQCMParams::flat(0.3).realizable());
  EXPECT_FALSE(UQCMParams::flat(0.1).realizable());
  EXPECT_THROW(UQCMParams(0.6, 0.0), ParameterError);
  EXPECT_THROW(UQCMParams(0.2, -0.1), ParameterError);
  // Beyond the bound the Gram is indefinite and cannot be realized.
  EXPECT_FALSE(uqcm_gram(UQCMParams(0.1, 0.8)).is_psd());
  EXPECT_THROW(uqcm_from_gram(UQCMParams(0.1, 0.8)), ParameterError);
}

TEST(UqcmFromGram, RealizedVectorsReproduceGram) {
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const double xi = uniform(rng, 0.0, 0.5);
    const double eta = uniform(rng, 0.0, UQCMParams(xi, 0.0).schwarz_bound());
    const UQCMParams p(xi, eta);
    const CloningMachine m = uqcm_from_gram(p);
    const CVector q0 = machine_vector(m, 0, 0), y0 = machine_vector(m, 0, 1);
    const CVector q1 = machine_vector(m, 1, 3), y1 = machine_vector(m, 1, 1);
    EXPECT_LT(max_abs(machine_vector(m, 0, 2) - y0), 1e-14);
    EXPECT_LT(max_abs(machine_vector(m, 1, 2) - y1), 1e-14);
    const CVector vs[] = {q0, q1, y0, y1};
    const MachineGram g = uqcm_gram(p);
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(vs[j].dot(vs[k]) - g.entry(j, k)), 0.0, 1e-10);
  }
}

TEST(UqcmFromGram, DegenerateVectorsAtOneSixth) {
  const CloningMachine m = uqcm_from_gram(UQCMParams::flat(1.0 / 6.0));
  EXPECT_EQ(m.machine_dim(), 2u);
  const CVector q0 = machine_vector(m, 0, 0), y0 = machine_vector(m, 0, 1);
  const CVector q1 = machine_vector(m, 1, 3), y1 = machine_vector(m, 1, 1);
  EXPECT_LT(max_abs(y0 - 0.5 * q1), 1e-10);
  EXPECT_LT(max_abs(y1 - 0.5 * q0), 1e-10);
}

TEST(UqcmFromGram, ZeroXiActsLikeWz) {
  // eta = 0 keeps the Gram PSD; with Y = 0 the overlap term never appears.
  const CloningMachine m = uqcm_from_gram(UQCMParams(0.0, 0.0));
  Rng rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const PureInput p = random_pure(rng);
    EXPECT_LT(max_abs(clone(m, p).ab.matrix() - clone(wz_machine(), p).ab.matrix()), 1e-12);
  }
}

TEST(UqcmCanonical, MatchesGramRealization) {
  const CloningMachine canon = uqcm_canonical();
  const CloningMachine gram = uqcm_from_gram(UQCMParams::flat(1.0 / 6.0));
  Rng rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    const Input in = trial % 2 ? Input(random_pure(rng)) : Input(random_mixed(rng));
    EXPECT_LT(max_abs(clone(canon, in).ab.matrix() - clone(gram, in).ab.matrix()), 1e-12);
  }
}

TEST(UqcmCanonical, ZeroInputOutput) {
  const TwoQubitBasis& b = two_qubit_basis();
  const CMatrix expected = (2.0 / 3.0) * proj(b.k00) + (1.0 / 3.0) * proj(b.plus);
  EXPECT_LT(max_abs(clone(uqcm_canonical(), PureInput(1.0, 0.0)).ab.matrix() - expected), 1e-15);
}

TEST(UqcmCanonical, ReducedStateIsShrunkInput) {
  Rng rng(36);
  for (int trial = 0; trial < 50; ++trial) {
    const PureInput p = random_pure(rng);
    const CloneOutput out = clone(uqcm_canonical(), p);
    const CMatrix expected = (2.0 / 3.0) * ideal_single(p).matrix() + CMatrix::Identity(2, 2) / 6.0;
    EXPECT_LT(max_abs(out.a.matrix() - expected), 1e-12);
    const HermitianEigen e = jacobi_eigen(out.a.matrix());
    EXPECT_NEAR(e.values(0), 5.0 / 6.0, 1e-12);
    EXPECT_NEAR(e.values(1), 1.0 / 6.0, 1e-12);
  }
}

TEST(UqcmFamily, ReducedStateEntriesAtGenericXi) {
  // rho_a = (1 - 2 xi) rho_id + xi I when eta = 1 - 2 xi, computed through the
  // formal contraction so that unrealizable xi < 1/6 is covered too.
  Rng rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const double xi = uniform(rng, 0.0, 0.5);
    const PureInput p = random_pure(rng);
    const DensityOperator rho = ideal_single(p);
    const Operator ab = contract_output(uqcm_gram(UQCMParams::flat(xi)), rho);
    const CMatrix expected = (1.0 - 2.0 * xi) * rho.matrix() + xi * CMatrix::Identity(2, 2);
    EXPECT_LT(max_abs(partial_trace(ab, {0}).matrix() - expected), 1e-12);
    EXPECT_LT(max_abs(partial_trace(ab, {1}).matrix() - expected), 1e-12);
  }
}

TEST(Neighborhood, M1Examples) {
  const TwoQubitBasis& b = two_qubit_basis();
  const CloningMachine m1 = neighborhood_m1();
  const CloneOutput one = clone(m1, PureInput(0.0, 1.0));
  EXPECT_LT(max_abs(one.ab.matrix() - proj(b.k11)), 1e-15);
  EXPECT_NEAR(hs_distance(one.ab, ideal_pair(PureInput(0.0, 1.0))), 0.0, 1e-15);

  Rng rng(38);
  for (int trial = 0; trial < 20; ++trial) {
    const PureInput p = random_pure(rng);
    const Ket expected({2, 2}, p.beta() * b.k11.amplitudes() + p.alpha() * b.plus.amplitudes());
    EXPECT_LT(max_abs(clone(m1, p).ab.matrix() - DensityOperator::from_ket(expected).matrix()), 1e-12);
  }
}

TEST(Neighborhood, M2Examples) {
  const TwoQubitBasis& b = two_qubit_basis();
  const CloningMachine m2 = neighborhood_m2();
  EXPECT_LT(max_abs(clone(m2, PureInput(0.0, 1.0)).ab.matrix() - 0.5 * (proj(b.k00) + proj(b.k11))), 1e-15);

  Rng rng(39);
  for (int trial = 0; trial < 20; ++trial) {
    const PureInput p = random_pure(rng);
    const CloneOutput out = clone(m2, p);
    EXPECT_NEAR(out.ab(0, 0).real(), std::norm(p.beta()) / 2.0, 1e-12);

    // (alpha|+> + beta/sqrt2 |11>)|Q1> + beta/sqrt2 |00>|Q0> with |Q0> = |0>, |Q1> = |1>.
    const double s = 1.0 / std::sqrt(2.0);
    CVector q0 = CVector::Zero(2), q1 = CVector::Zero(2);
    q0(0) = 1.0;
    q1(1) = 1.0;
    const CVector psi = kron(Ket({2, 2}, p.alpha() * b.plus.amplitudes() + p.beta() * s * b.k11.amplitudes()), q1)
                            .amplitudes() +
                        kron(Ket({2, 2}, p.beta() * s * b.k00.amplitudes()), q0).amplitudes();
    EXPECT_LT(max_abs(out.abx.matrix() - psi * psi.adjoint()), 1e-12);
  }
}

TEST(Clone, OutputsAreStatesAndSymmetricWhereExpected) {
  Rng rng(40);
  for (const auto& m : builtins()) {
    for (int trial = 0; trial < 20; ++trial) {
      const Input in = trial % 2 ? Input(random_pure(rng)) : Input(random_mixed(rng));
      const CloneOutput out = clone(m, in);
      EXPECT_NEAR(out.ab.op().trace().real(), 1.0, 1e-10);
      EXPECT_GE(min_eigenvalue(out.ab.matrix()), -1e-10);
      if (m.label() == "wz" || m.label() == "uqcm") {
        EXPECT_LT(hs_distance(out.a, out.b), 1e-10) << m.label();
      }
      const CMatrix rho_in = ideal_single(in).matrix();
      EXPECT_LT(max_abs(clone_reduced_a(m, rho_in) - out.a.matrix()), 1e-13);
      EXPECT_LT(max_abs(clone_reduced_b(m, rho_in) - out.b.matrix()), 1e-13);
    }
  }
}

TEST(Clone, MixedInputIsConvexCombinationOfPureOutputs) {
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const PureInput p = random_pure(rng), q = random_pure(rng);
    const double w = uniform(rng);
    const CMatrix mix = w * ideal_single(p).matrix() + (1 - w) * ideal_single(q).matrix();
    const MixedInput m(mix(0, 0).real(), mix(0, 1));
    for (const auto& machine : builtins()) {
      const CMatrix expected = w * clone(machine, p).ab.matrix() + (1 - w) * clone(machine, q).ab.matrix();
      EXPECT_LT(max_abs(clone(machine, m).ab.matrix() - expected), 1e-12);
    }
  }
}

TEST(Clone, AnyFactorizationGivesSameOutput) {
  // Rotating the machine space by a unitary leaves rho_ab unchanged.
  Rng rng(42);
  const CloningMachine base = uqcm_canonical();
  const CMatrix h = random_hermitian(rng, 2);
  const CMatrix u = Eigen::SelfAdjointEigenSolver<CMatrix>(h).eigenvectors();
  const CMatrix big = tensor(Operator::identity({2, 2}), Operator(u)).matrix();
  const CloningMachine rotated = general_machine("rotated", Ket(base.column(0).dims(), big * base.column(0).amplitudes()),
                                                 Ket(base.column(1).dims(), big * base.column(1).amplitudes()));
  for (int trial = 0; trial < 10; ++trial) {
    const PureInput p = random_pure(rng);
    EXPECT_LT(max_abs(clone(rotated, p).ab.matrix() - clone(base, p).ab.matrix()), 1e-12);
  }
}

TEST(Clone, ContractionAgreesWithIsometryForRealizableGrams) {
  Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const double xi = uniform(rng, 0.0, 0.5);
    const double eta = uniform(rng, 0.0, UQCMParams(xi, 0.0).schwarz_bound());
    const UQCMParams params(xi, eta);
    const Input in = trial % 2 ? Input(random_pure(rng)) : Input(random_mixed(rng));
    const DensityOperator rho_in = ideal_single(in);
    const CMatrix formal = contract_output(uqcm_gram(params), rho_in).matrix();
    const CMatrix direct = clone(uqcm_from_gram(params), in).ab.matrix();
    EXPECT_LT(max_abs(formal - direct), 1e-12);
  }
  // Eight-vector Gram of a machine reproduces its own output.
  for (const auto& m : builtins()) {
    const PureInput p = random_pure(rng);
    const CMatrix formal = contract_output(machine_gram(m), ideal_single(p)).matrix();
    EXPECT_LT(max_abs(formal - clone(m, p).ab.matrix()), 1e-12) << m.label();
    const CloningMachine back = realize(machine_gram(m), "back");
    EXPECT_LT(max_abs(clone(back, p).ab.matrix() - clone(m, p).ab.matrix()), 1e-12) << m.label();
  }
}

TEST(MachineByName, KnownAndUnknown) {
  for (const char* name : {"wz", "uqcm", "m1", "m2"}) EXPECT_EQ(machine_by_name(name).label(), name);
  EXPECT_THROW(machine_by_name("nope"), UsageError);
}
