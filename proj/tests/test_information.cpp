// Copyright 2026 The qcap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "qcap/channels.hpp"
#include "qcap/constructions.hpp"
#include "qcap/information.hpp"
#include "qcap/random.hpp"
#include "test_support.hpp"

namespace {

using namespace qcap;
using qcap::test_util::diag;
using qcap::test_util::h2;
using qcap::test_util::horodecki_q;

// Independent high-precision values.
constexpr double kH2OfQ = 0.9786600843501595;
constexpr double kHalfKeyRate = 0.0106699578249203;

std::vector<KrausChannel> sample_channels() {
  SplitMix64 rng(99);
  return {identity_channel(2), completely_depolarizing_channel(3), erasure_channel(2, 0.3), erasure_channel(4, 0.5),
          horodecki_channel_4(), random_channel(rng, 2, 3, 2), random_channel(rng, 4, 2, 8)};
}

// Entropy from the diagonal after checking the matrix is diagonal.
double diagonal_entropy(const ComplexMatrix& m) {
  std::vector<double> d;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j) EXPECT_LT(std::abs(m(i, j)), 1e-15);
    }
    d.push_back(m(i, i).real());
  }
  double h = 0.0;
  for (double v : d) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

Ensemble computational_basis_ensemble() {
  return Ensemble({0.5, 0.5}, {QuantumState::on(mat::ket_bra(2, 0, 0)), QuantumState::on(mat::ket_bra(2, 1, 1))});
}

TEST(EntropyOfSpectrum, BasicValues) {
  const std::vector<double> fair{0.5, 0.5};
  EXPECT_DOUBLE_EQ(entropy_of_spectrum(fair), 1.0);
  const std::vector<double> quarter{0.25, 0.25, 0.25, 0.25};
  EXPECT_DOUBLE_EQ(shannon_entropy(quarter), 2.0);
}

TEST(EntropyOfSpectrum, FloorsTinyAndRejectsNegative) {
  const std::vector<double> tiny{1.0, 1e-13};
  EXPECT_DOUBLE_EQ(entropy_of_spectrum(tiny), 0.0);
  const std::vector<double> roundoff{1.0, -1e-11};
  EXPECT_DOUBLE_EQ(entropy_of_spectrum(roundoff), 0.0);
  const std::vector<double> negative{1.0, -1e-9};
  EXPECT_THROW(entropy_of_spectrum(negative), ValidationError);
}

TEST(VonNeumann, PureStateIsZero) {
  SplitMix64 rng(1);
  for (int t = 0; t < 10; ++t) {
    EXPECT_NEAR(von_neumann_entropy(random_pure_state(rng, SubsystemShape::single(5, "A")).density()), 0.0, 1e-10);
  }
}

TEST(VonNeumann, MaximallyMixed) {
  EXPECT_NEAR(von_neumann_entropy(QuantumState::on(mat::maximally_mixed(2))), 1.0, 1e-15);
  EXPECT_NEAR(von_neumann_entropy(QuantumState::on(mat::maximally_mixed(8))), 3.0, 1e-14);
}

TEST(VonNeumann, BinaryEntropyOfHorodeckiWeights) {
  const double q = horodecki_q();
  const double h = von_neumann_entropy(QuantumState::on(diag({q, 1.0 - q})));
  EXPECT_NEAR(h, h2(q), 1e-15);
  EXPECT_NEAR(h, kH2OfQ, 1e-13);
}

TEST(VonNeumann, UnitaryInvariance) {
  SplitMix64 rng(2);
  for (int t = 0; t < 10; ++t) {
    const auto rho = random_state(rng, SubsystemShape::single(4, "A"), 2);
    const ComplexMatrix u = random_unitary(rng, 4);
    const ComplexMatrix rotated = u * rho.matrix() * u.adjoint();
    EXPECT_NEAR(von_neumann_entropy(QuantumState::on(0.5 * (rotated + rotated.adjoint()))), von_neumann_entropy(rho), 1e-12);
  }
}

TEST(VonNeumann, BlockSplitMatchesDenseEigensolve) {
  SplitMix64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const auto a = random_density_matrix(rng, 3, 2);
    const auto b = random_density_matrix(rng, 2, 2);
    ComplexMatrix m = ComplexMatrix::Zero(6, 6);
    m.block(0, 0, 3, 3) = 0.7 * a;
    m.block(3, 3, 2, 2) = 0.3 * b;
    m(5, 5) = 0.0;
    const auto ev = hermitian_eigenvalues(m);
    EXPECT_EQ(detail::nonzero_blocks(m).size(), 3u);
    EXPECT_NEAR(detail::matrix_entropy(m), entropy_of_spectrum(ev), 1e-13);
  }
}

TEST(VonNeumann, BoundsAndAdditivity) {
  SplitMix64 rng(4);
  for (int t = 0; t < 10; ++t) {
    const auto a = random_state(rng, SubsystemShape::single(3, "A"));
    const auto b = random_state(rng, SubsystemShape::single(2, "B"));
    const double ha = von_neumann_entropy(a);
    EXPECT_GE(ha, 0.0);
    EXPECT_LE(ha, std::log2(3.0) + 1e-12);
    EXPECT_NEAR(von_neumann_entropy(tensor_product(a, b)), ha + von_neumann_entropy(b), 1e-12);
  }
}

TEST(EntropyOf, LabelSubsets) {
  const PureStateVector phi(mat::phi_plus(), SubsystemShape({2, 2}, {"A", "B"}));
  EXPECT_DOUBLE_EQ(entropy_of(phi, {}), 0.0);
  EXPECT_NEAR(entropy_of(phi, {"A", "B"}), 0.0, 1e-15);
  EXPECT_NEAR(entropy_of(phi, {"B"}), 1.0, 1e-14);
  EXPECT_NEAR(entropy_of(phi.density(), {"A"}), 1.0, 1e-14);
  EXPECT_NEAR(entropy_of(phi.density(), {"B", "A"}), 0.0, 1e-10);
  EXPECT_THROW(entropy_of(phi.density(), {"Q"}), LabelError);
  EXPECT_THROW(entropy_of(phi, {"Q", "A"}), LabelError);
}

TEST(CoherentInformation, PureInputIsZero) {
  SplitMix64 rng(5);
  for (const auto& c : sample_channels()) {
    for (int t = 0; t < 5; ++t) {
      EXPECT_NEAR(coherent_information(c, random_pure_state(rng, SubsystemShape::single(c.din(), "A")).density()), 0.0, 1e-10);
    }
  }
}

TEST(CoherentInformation, IdentityQubitOnMaximallyMixed) {
  EXPECT_NEAR(coherent_information(identity_channel(2), QuantumState::on(mat::maximally_mixed(2))), 1.0, 1e-14);
}

TEST(CoherentInformation, SymmetricErasureVanishes) {
  SplitMix64 rng(6);
  const auto c = erasure_channel(4, 0.5);
  for (int t = 0; t < 50; ++t) {
    const auto rho = random_state(rng, SubsystemShape::single(4, "A"), 1 + static_cast<std::size_t>(t) % 4);
    EXPECT_NEAR(coherent_information(c, rho), 0.0, 1e-9);
  }
}

TEST(CoherentInformation, ErasureClosedForm) {
  SplitMix64 rng(7);
  for (double p : {0.0, 0.1, 0.25, 0.7, 1.0}) {
    const auto rho = random_state(rng, SubsystemShape::single(3, "A"));
    EXPECT_NEAR(coherent_information(erasure_channel(3, p), rho), (1.0 - 2.0 * p) * von_neumann_entropy(rho), 1e-12);
  }
}

TEST(CoherentInformation, MatchesDilationEntropies) {
  SplitMix64 rng(8);
  for (const auto& c : sample_channels()) {
    const auto rho = random_state(rng, SubsystemShape::single(c.din(), "A"));
    const auto joint = extend_and_apply(c, rho, "A");
    EXPECT_NEAR(coherent_information(c, rho), entropy_of(joint, {"B"}) - entropy_of(joint, {"E"}), 1e-11);
  }
}

TEST(CoherentInformation, SuperactivationPair) {
  const double ic = coherent_information(tensor(horodecki_channel_4(), erasure_channel(4, 0.5)), rho_ac_symmetric());
  EXPECT_NEAR(ic, kHalfKeyRate, 1e-12);
  EXPECT_NEAR(ic, 0.5 * (1.0 - h2(horodecki_q())), 1e-12);
  EXPECT_GT(ic, 0.01);
}

TEST(CoherentInformation, RejectsDimensionMismatch) {
  EXPECT_THROW(coherent_information(identity_channel(3), QuantumState::on(mat::maximally_mixed(2))), DimensionError);
}

TEST(Ensemble, Validation) {
  const auto s = QuantumState::on(mat::maximally_mixed(2));
  EXPECT_THROW(Ensemble({0.5}, {s, s}), ValidationError);
  EXPECT_THROW(Ensemble({}, {}), ValidationError);
  EXPECT_THROW(Ensemble({0.7, 0.7}, {s, s}), ValidationError);
  EXPECT_THROW(Ensemble({1.5, -0.5}, {s, s}), ValidationError);
  EXPECT_THROW(Ensemble({0.5, 0.5}, {s, QuantumState::on(mat::maximally_mixed(2), "B")}), ValidationError);
  EXPECT_TRUE(test_util::MatrixNear(computational_basis_ensemble().average().matrix(), mat::maximally_mixed(2), 1e-15));
}

TEST(Holevo, IdenticalStatesGiveZero) {
  SplitMix64 rng(9);
  const auto s = random_state(rng, SubsystemShape::single(3, "A"));
  const Ensemble e({0.2, 0.3, 0.5}, {s, s, s});
  EXPECT_NEAR(holevo_information(e, [](const QuantumState& x) { return x; }), 0.0, 1e-12);
}

TEST(Holevo, OrthogonalPureStatesGiveOneBit) {
  EXPECT_NEAR(holevo_information(computational_basis_ensemble(), [](const QuantumState& x) { return x; }), 1.0, 1e-14);
}

TEST(Holevo, HorodeckiOutputMatchesDiagonalOracle) {
  const auto nh = horodecki_channel_4();
  const auto e = paper_ensemble_h4();
  std::vector<ComplexMatrix> outs;
  for (const auto& s : e.states()) outs.push_back(output_state(nh, s).matrix());
  const double oracle = diagonal_entropy(0.5 * (outs[0] + outs[1])) - 0.5 * diagonal_entropy(outs[0]) - 0.5 * diagonal_entropy(outs[1]);
  const double value = holevo_information(e, [&](const QuantumState& s) { return output_state(nh, s); });
  EXPECT_NEAR(value, oracle, 1e-12);
}

TEST(Holevo, BoundedByLogDimensionAndEntropy) {
  SplitMix64 rng(10);
  for (int t = 0; t < 10; ++t) {
    const Ensemble e({0.3, 0.7}, {random_state(rng, SubsystemShape::single(3, "A")), random_state(rng, SubsystemShape::single(3, "A"))});
    const double chi = holevo_information(e, [](const QuantumState& x) { return x; });
    EXPECT_GE(chi, -1e-12);
    EXPECT_LE(chi, h2(0.3) + 1e-12);
  }
}

TEST(PrivateInformation, IdentityWithBasisEnsemble) {
  EXPECT_NEAR(private_information_value(identity_channel(2), computational_basis_ensemble()), 1.0, 1e-14);
}

TEST(PrivateInformation, SingleStateEnsembleIsZero) {
  SplitMix64 rng(11);
  const Ensemble e({1.0}, {random_state(rng, SubsystemShape::single(4, "A"))});
  EXPECT_NEAR(private_information_value(horodecki_channel_4(), e), 0.0, 1e-12);
}

TEST(PrivateInformation, HorodeckiKeyRate) {
  const double v = private_information_value(horodecki_channel_4(), paper_ensemble_h4());
  EXPECT_NEAR(v, 1.0 - h2(horodecki_q()), 1e-12);
  EXPECT_NEAR(v, 1.0 - kH2OfQ, 1e-12);
  EXPECT_GT(v, 0.02);
}

TEST(PrivateInformation, EnvironmentLearnsNothingAboutKey) {
  const auto nh = horodecki_channel_4();
  const double ixe = holevo_information(paper_ensemble_h4(), [&](const QuantumState& s) { return environment_state(nh, s); });
  EXPECT_NEAR(ixe, 0.0, 1e-12);
}

TEST(CqState, MutualInformationEqualsHolevo) {
  SplitMix64 rng(12);
  const Ensemble e({0.25, 0.75}, {random_state(rng, SubsystemShape::single(2, "A")), random_state(rng, SubsystemShape::single(2, "A"))});
  const auto cq = cq_state(e);
  EXPECT_EQ(cq.shape(), SubsystemShape({2, 2}, {"X", "A"}));
  EXPECT_NEAR(mutual_information(cq, {"X"}, {"A"}), holevo_information(e, [](const QuantumState& x) { return x; }), 1e-12);
}

TEST(ConditionalMutualInformation, TrivialConditionIsMutualInformation) {
  SplitMix64 rng(13);
  const auto s = random_state(rng, SubsystemShape({2, 3, 1}, {"X", "B", "C"}));
  const double mi = entropy_of(s, {"X"}) + entropy_of(s, {"B"}) - entropy_of(s, {"X", "B"});
  EXPECT_NEAR(conditional_mutual_information(s, {"X"}, {"B"}, {"C"}), mi, 1e-12);
  EXPECT_NEAR(mutual_information(s, {"X"}, {"B"}), mi, 1e-12);
}

TEST(ConditionalMutualInformation, ProductAcrossCutIsZero) {
  SplitMix64 rng(14);
  const auto s = tensor_product(random_state(rng, SubsystemShape::single(2, "X")), random_state(rng, SubsystemShape({2, 2}, {"B", "C"})));
  EXPECT_NEAR(conditional_mutual_information(s, {"X"}, {"B"}, {"C"}), 0.0, 1e-12);
}

TEST(ConditionalMutualInformation, PhiPlusHasTwoBits) {
  const PureStateVector phi(mat::phi_plus(), SubsystemShape({2, 2}, {"A", "B"}));
  EXPECT_NEAR(mutual_information(phi, {"A"}, {"B"}), 2.0, 1e-12);
}

TEST(ConditionalMutualInformation, StrongSubadditivityOnRandomStates) {
  SplitMix64 rng(15);
  for (int t = 0; t < 100; ++t) {
    const auto v = random_pure_state(rng, SubsystemShape({2, 2, 2}, {"X", "B", "C"}));
    EXPECT_GE(conditional_mutual_information(v, {"X"}, {"B"}, {"C"}), -1e-9);
  }
  for (int t = 0; t < 30; ++t) {
    const auto s = random_state(rng, SubsystemShape({2, 2, 2}, {"X", "B", "C"}), 3);
    EXPECT_GE(conditional_mutual_information(s, {"X"}, {"B"}, {"C"}), -1e-9);
  }
}

TEST(ConditionalMutualInformation, RejectsBadLabelSets) {
  const auto s = QuantumState(mat::maximally_mixed(8), SubsystemShape({2, 2, 2}, {"X", "B", "C"}));
  EXPECT_THROW(conditional_mutual_information(s, {"X"}, {"X"}, {"C"}), LabelError);
  EXPECT_THROW(conditional_mutual_information(s, {"X"}, {"B"}, {"B"}), LabelError);
  EXPECT_THROW(conditional_mutual_information(s, {}, {"B"}, {"C"}), LabelError);
  EXPECT_THROW(conditional_mutual_information(s, {"X"}, {"Q"}, {"C"}), LabelError);
}

TEST(AssistedRate, TrivialConditionGivesHalfPrivateInformation) {
  SplitMix64 rng(16);
  const auto c = random_channel(rng, 2, 2, 2);
  const Ensemble e({0.4, 0.6}, {random_state(rng, SubsystemShape::single(2, "A")), random_state(rng, SubsystemShape::single(2, "A"))});
  const auto s = tensor_product(cq_state(e), QuantumState::on(mat::identity(1), "C"));
  EXPECT_NEAR(assisted_rate_lower_bound(c, s), 0.5 * private_information_value(c, e), 1e-12);
}

TEST(AssistedRate, ProductInputIsZero) {
  SplitMix64 rng(17);
  const auto s = tensor_product(random_state(rng, SubsystemShape::single(2, "X")), random_state(rng, SubsystemShape({4, 2}, {"A", "C"})));
  EXPECT_NEAR(assisted_rate_lower_bound(horodecki_channel_4(), s), 0.0, 1e-12);
}

TEST(AssistedRate, SuperactivationInput) {
  const auto input = superactivation_input(paper_ensemble_h4());
  const double v = assisted_rate_lower_bound(horodecki_channel_4(), input.pure);
  EXPECT_NEAR(v, kHalfKeyRate, 1e-12);
  EXPECT_NEAR(assisted_rate_lower_bound(horodecki_channel_4(), input.pure.density()), v, 1e-11);
}

}  // namespace
