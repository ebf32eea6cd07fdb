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

#include "qcap/constructions.hpp"
#include "qcap/random.hpp"
#include "test_support.hpp"

namespace {

using namespace qcap;
using qcap::test_util::h2;
using qcap::test_util::horodecki_q;
using qcap::test_util::MatrixNear;

// Independent high-precision values.
constexpr double kHalfKeyRate = 0.0106699578249203;
constexpr double kPairNhNh = -0.463166824087;
constexpr double kPStar = 0.0041107352;
constexpr double kDecompositionAt0002 = 4.0741804341e-05;

Ensemble orthogonal_pure_ensemble() {
  return Ensemble({0.5, 0.5}, {QuantumState::on(mat::ket_bra(2, 0, 0)), QuantumState::on(mat::ket_bra(2, 1, 1))});
}

Ensemble random_ensemble(SplitMix64& rng, std::size_t d, std::size_t max_rank) {
  const double p = 0.2 + 0.6 * rng.uniform();
  const std::size_t r1 = 1 + static_cast<std::size_t>(rng.next() % max_rank);
  const std::size_t r2 = 1 + static_cast<std::size_t>(rng.next() % max_rank);
  return Ensemble({p, 1.0 - p}, {random_state(rng, SubsystemShape::single(d, "A"), r1), random_state(rng, SubsystemShape::single(d, "A"), r2)});
}

TEST(PaperEnsemble, EquiprobableKeyStates) {
  const auto e = paper_ensemble_h4();
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e.probabilities(), (std::vector<double>{0.5, 0.5}));
  for (std::size_t x = 0; x < 2; ++x) {
    EXPECT_EQ(numerical_rank(e.states()[x]), 2u);
    EXPECT_TRUE(MatrixNear(e.states()[x].matrix(), tensor_product(mat::ket_bra(2, x, x), mat::maximally_mixed(2)), 0.0));
  }
  EXPECT_TRUE(MatrixNear(e.average().matrix(), mat::maximally_mixed(4), 1e-15));
}

TEST(SuperactivationInput, SinglePureStateEnsemble) {
  SplitMix64 rng(1);
  const auto v = random_pure_state(rng, SubsystemShape::single(3, "A"));
  const auto input = superactivation_input(Ensemble({1.0}, {v.density()}));
  EXPECT_EQ(input.pure.shape(), SubsystemShape({1, 3, 1}, {"X", "A", "C"}));
  EXPECT_TRUE(MatrixNear(partial_trace(input.pure, {"A"}).matrix(), v.density().matrix(), 1e-14));
}

TEST(SuperactivationInput, PaperEnsembleMatchesSymmetricForm) {
  const auto input = superactivation_input(paper_ensemble_h4());
  EXPECT_EQ(input.pure.shape(), SubsystemShape({2, 4, 4}, {"X", "A", "C"}));
  EXPECT_TRUE(MatrixNear(input.rho_ac.matrix(), rho_ac_symmetric().matrix(), 1e-12));
}

TEST(SuperactivationInput, ConditionalStatesAreEnsembleMembers) {
  SplitMix64 rng(2);
  const auto e = random_ensemble(rng, 3, 3);
  const auto input = superactivation_input(e);
  const auto xa = partial_trace(input.pure, {"X", "A"});
  for (Eigen::Index x = 0; x < 2; ++x) {
    const ComplexMatrix block = xa.matrix().block(x * 3, x * 3, 3, 3);
    EXPECT_TRUE(MatrixNear(block, e.probabilities()[static_cast<std::size_t>(x)] * e.states()[static_cast<std::size_t>(x)].matrix(), 1e-13));
  }
  EXPECT_TRUE(MatrixNear(xa.matrix().block(0, 3, 3, 3), ComplexMatrix::Zero(3, 3), 1e-13));
}

TEST(RhoAcSymmetric, TraceRankAndSwapInvariance) {
  const auto rho = rho_ac_symmetric();
  EXPECT_EQ(rho.shape(), SubsystemShape({4, 4}, {"A", "C"}));
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-15);
  // Mixture of two orthogonal pure states.
  EXPECT_EQ(numerical_rank(rho), 2u);
  const auto swapped = permute_subsystems(rho, {"C", "A"});
  EXPECT_TRUE(MatrixNear(swapped.matrix(), rho.matrix(), 1e-12));
}

TEST(RhoAcSymmetric, MarginalIsMaximallyMixed) {
  const auto rho = rho_ac_symmetric();
  EXPECT_TRUE(MatrixNear(partial_trace(rho, {"A"}).matrix(), mat::maximally_mixed(4), 1e-15));
  EXPECT_TRUE(MatrixNear(partial_trace(rho, {"C"}).matrix(), mat::maximally_mixed(4), 1e-15));
  EXPECT_EQ(numerical_rank(partial_trace(rho, {"A"})), 4u);
}

TEST(HalvingIdentity, PaperInstance) {
  const auto r = verify_halving_identity(horodecki_channel_4(), paper_ensemble_h4());
  EXPECT_LE(r.abs_diff, 1e-9);
  EXPECT_EQ(r.erasure_input_dim, 4u);
  EXPECT_NEAR(r.lhs, kHalfKeyRate, 1e-12);
  EXPECT_NEAR(r.rhs, 0.5 * (1.0 - h2(horodecki_q())), 1e-12);
  EXPECT_GT(r.lhs, 0.01);
}

TEST(HalvingIdentity, IdentityWithOrthogonalPureEnsemble) {
  const auto r = verify_halving_identity(identity_channel(2), orthogonal_pure_ensemble());
  EXPECT_NEAR(r.lhs, 0.5, 1e-12);
  EXPECT_NEAR(r.rhs, 0.5, 1e-12);
  EXPECT_EQ(r.erasure_input_dim, 2u);
}

TEST(HalvingIdentity, SingleStateEnsembleIsZero) {
  SplitMix64 rng(3);
  const auto c = random_channel(rng, 2, 3, 2);
  const auto r = verify_halving_identity(c, Ensemble({1.0}, {random_state(rng, SubsystemShape::single(2, "A"))}));
  EXPECT_NEAR(r.lhs, 0.0, 1e-10);
  EXPECT_NEAR(r.rhs, 0.0, 1e-12);
}

TEST(HalvingIdentity, RandomSmallInstances) {
  SplitMix64 rng(4);
  for (int t = 0; t < 5; ++t) {
    const auto c = random_channel(rng, 2, 2, 1 + static_cast<std::size_t>(t) % 3);
    const auto e = random_ensemble(rng, 2, 2);
    const auto r = verify_halving_identity(c, e);
    EXPECT_NEAR(r.rhs, 0.5 * private_information_value(c, e), 1e-15);
    EXPECT_LE(r.abs_diff, 1e-9) << "instance " << t;
  }
}

TEST(HalvingIdentity, RejectsDimensionMismatch) {
  EXPECT_THROW(verify_halving_identity(identity_channel(3), orthogonal_pure_ensemble()), DimensionError);
}

TEST(Nonconvexity, ThresholdAndBound) {
  const auto r = nonconvexity_analysis({});
  EXPECT_NEAR(r.c_bound, std::log2(6.0), 1e-15);
  EXPECT_NEAR(r.c_bound, 2.5849625, 1e-7);
  EXPECT_NEAR(r.i1, kHalfKeyRate, 1e-12);
  EXPECT_NEAR(r.p_star, r.i1 / (r.c_bound + r.i1), 1e-18);
  EXPECT_NEAR(r.p_star, kPStar, 1e-10);
  EXPECT_NEAR(r.p_star, 0.0041, 5e-5);
}

TEST(Nonconvexity, PairTerms) {
  const auto r = nonconvexity_analysis({});
  EXPECT_NEAR(r.ic_nh_nh, kPairNhNh, 1e-10);
  EXPECT_LE(r.ic_nh_nh, 1e-9);
  EXPECT_GE(r.ic_nh_nh, -2.0 * std::log2(6.0));
  EXPECT_NEAR(r.ic_ae_ae, 0.0, 1e-9);
  EXPECT_NEAR(r.ic_ae_nh, r.ic_nh_ae, 1e-12);
}

TEST(Nonconvexity, DirectAndDecompositionAgree) {
  const std::vector<double> ps{0.0, 0.001, 0.002, 0.004, 0.0041, 0.008, 0.5, 1.0};
  const auto r = nonconvexity_analysis(ps);
  ASSERT_EQ(r.samples.size(), ps.size());
  for (const auto& s : r.samples) EXPECT_NEAR(s.direct, s.decomposition, 1e-8) << "p = " << s.p;
}

TEST(Nonconvexity, SampleValues) {
  const auto r = nonconvexity_analysis({0.0, 0.002, 0.008, 1.0});
  EXPECT_NEAR(r.samples[0].direct, 0.0, 1e-9);
  EXPECT_GT(r.samples[1].direct, 0.0);
  EXPECT_NEAR(r.samples[1].direct, kDecompositionAt0002, 1e-14);
  for (const auto& s : r.samples) {
    const double p = s.p;
    EXPECT_NEAR(s.direct, 2.0 * p * (1.0 - p) * kHalfKeyRate + p * p * kPairNhNh, 1e-10) << "p = " << p;
  }
}

TEST(Nonconvexity, RejectsBadProbability) {
  EXPECT_THROW(nonconvexity_analysis({0.5, 1.5}), std::invalid_argument);
  EXPECT_THROW(nonconvexity_analysis({-0.1}), std::invalid_argument);
}

TEST(Gap, RoutedInputShapeAndFlags) {
  const auto sigma = gap_routed_input();
  EXPECT_EQ(sigma.shape(), SubsystemShape({8, 8}, {"A", "A'"}));
  const auto split = sigma.relabeled(SubsystemShape({2, 4, 2, 4}, {"A1", "A2", "A1'", "A2'"}));
  EXPECT_TRUE(MatrixNear(partial_trace(split, {"A1"}).matrix(), mat::ket_bra(2, 0, 0), 1e-15));
  EXPECT_TRUE(MatrixNear(partial_trace(split, {"A1'"}).matrix(), mat::ket_bra(2, 1, 1), 1e-15));
  EXPECT_TRUE(MatrixNear(partial_trace(split, {"A2", "A2'"}).matrix(), rho_ac_symmetric().matrix(), 1e-15));
}

TEST(Gap, PairValueReducesToSuperactivation) {
  const auto m = switch_channel(horodecki_channel_4(), erasure_channel(4, 0.5));
  const double v = coherent_information(tensor(m, m), gap_routed_input());
  EXPECT_NEAR(v, kHalfKeyRate, 1e-12);
  EXPECT_GT(v, 0.0);
}

TEST(Gap, PureInputsGiveZero) {
  SplitMix64 rng(5);
  const auto m = switch_channel(horodecki_channel_4(), erasure_channel(4, 0.5));
  for (int t = 0; t < 5; ++t) {
    EXPECT_NEAR(coherent_information(m, random_pure_state(rng, SubsystemShape::single(8, "A")).density()), 0.0, 1e-10);
  }
}

TEST(Gap, AnalysisReportsDimensions) {
  OptimizerConfig cfg;
  cfg.restarts = 1;
  cfg.max_iters = 3;
  const auto g = gap_analysis(cfg);
  EXPECT_EQ(g.din, 8u);
  EXPECT_EQ(g.dout, 10u);
  EXPECT_EQ(g.denv, 11u);
  EXPECT_NEAR(g.q1_pair_value, kHalfKeyRate, 1e-12);
  EXPECT_EQ(g.q1_single_bound, g.optimization.best_value);
}

}  // namespace
