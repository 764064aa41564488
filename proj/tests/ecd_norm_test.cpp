// Copyright 2026 The ecdn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include "gtest/gtest.h"

#include "ecdn/ecd_norm.hpp"
#include "ecdn/random.hpp"
#include "ecdn/zoo.hpp"
#include "oracles.hpp"

namespace ecdn {
namespace {

std::vector<double> levels_of(const Hamiltonian& h) {
  return {h.eigenvalues().data(), h.eigenvalues().data() + h.eigenvalues().size()};
}

Channel full_dephasing(std::size_t d) {
  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = 0; k < d; ++k) kraus.push_back(DensityOperator::basis(d, k).matrix());
  return Channel(kraus);
}

EstimatorOptions restarts(std::size_t n, std::uint64_t seed = 0) {
  EstimatorOptions o;
  o.restarts = n;
  o.seed = seed;
  return o;
}

ComplexVector feasible_vector(const Hamiltonian& h, std::size_t r, double e, std::mt19937_64& rng) {
  for (;;) {
    ComplexVector psi = oracle::gaussian_vector(static_cast<int>(h.dim() * r), rng);
    if (oracle::scale_into_budget(psi, levels_of(h), static_cast<int>(r), e)) return psi;
  }
}

TEST(ChoiCongruence, MatchesTensorApplication) {
  std::mt19937_64 rng(21);
  for (std::size_t d : {2, 3, 4}) {
    for (int trial = 0; trial < 100; ++trial) {
      const Channel a = random_channel(d, d, 2, rng);
      const Channel b = random_channel(d, d, 3, rng);
      const auto map = HermitianPreservingMap::difference(a, b);
      const std::size_t r = 1 + trial % d;
      const ComplexVector psi = random_pure_vector(d * r, rng);
      const double via_choi = trace_norm(choi_congruence(map, detail::as_matrix(psi, d, r)));
      EXPECT_NEAR(via_choi, oracle::tensor_objective(oracle::pair_ops(a, b), psi, static_cast<int>(r)), 1e-9);
      EXPECT_NEAR(via_choi, ecd_objective_direct(map, psi, r), 1e-9);
    }
  }
}

TEST(ChoiCongruence, GeneralMapFromChoi) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const HermitianPreservingMap map(2, 3, random_hermitian(6, rng));
    const ComplexVector psi = random_pure_vector(4, rng);
    EXPECT_NEAR(trace_norm(choi_congruence(map, detail::as_matrix(psi, 2, 2))), ecd_objective_direct(map, psi, 2),
                1e-9);
  }
}

TEST(EcdObjective, ZeroMapAndSingleChannel) {
  std::mt19937_64 rng(23);
  const Hamiltonian h = Hamiltonian::diagonal({0, 1, 2});
  const Channel phi = random_channel(3, 3, 2, rng);
  const EcdProblem zero{HermitianPreservingMap::difference(phi, phi), h, 1.0, 0};
  const EcdProblem single{HermitianPreservingMap::from_channel(phi), h, 1.0, 0};
  for (int i = 0; i < 20; ++i) {
    const ComplexVector psi = feasible_vector(h, 3, 1.0, rng);
    EXPECT_NEAR(ecd_objective(zero, psi), 0.0, 1e-12);
    EXPECT_NEAR(ecd_objective(single, psi), 1.0, 1e-10);
  }
}

TEST(EcdObjective, IdentityMinusDephasing) {
  const auto map = HermitianPreservingMap::difference(identity_channel(2), full_dephasing(2));
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  // (id - dephasing)(Phi+) has entries 1/2 at (00,11) and (11,00).
  ComplexMatrix out = ComplexMatrix::Zero(4, 4);
  out(0, 3) = out(3, 0) = 0.5;
  const double expect = oracle::abs_eigen_sum(out);
  EXPECT_NEAR(expect, 1.0, 1e-14);
  EXPECT_NEAR(ecd_objective({map, Hamiltonian::diagonal({0, 1}), 1.0, 0}, psi), expect, 1e-12);
}

TEST(EcdObjective, RejectsBadInputs) {
  const auto map = HermitianPreservingMap::difference(identity_channel(2), full_dephasing(2));
  const EcdProblem p{map, Hamiltonian::diagonal({0, 1}), 0.2, 0};
  ComplexVector excited = ComplexVector::Zero(4);
  excited(2) = 1.0;
  EXPECT_THROW(ecd_objective(p, excited), InfeasibleError);
  EXPECT_THROW(ecd_objective(p, ComplexVector::Ones(4)), ValidationError);
  EXPECT_THROW(ecd_objective({map, Hamiltonian::diagonal({0.5, 1}), 0.5, 0}, excited), InfeasibleError);
}

TEST(EcdEstimate, ZeroMap) {
  const Channel phi = attenuator(4, 0.5);
  const EcdEstimate est =
      ecd_norm_estimate({HermitianPreservingMap::difference(phi, phi), TruncatedOscillator(4, 1.0).hamiltonian(), 1.0, 0});
  EXPECT_EQ(est.lower, 0.0);
  EXPECT_EQ(est.upper, 0.0);
}

TEST(EcdEstimate, InactiveConstraintEqualsDiamond) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 5; ++trial) {
    const auto map = HermitianPreservingMap::difference(random_channel(3, 3, 2, rng), random_channel(3, 3, 2, rng));
    const Hamiltonian h = Hamiltonian::diagonal({0.0, 0.4, 1.7});
    const EcdEstimate constrained = ecd_norm_estimate({map, h, 1.7, 0}, restarts(16));
    const EcdEstimate free = diamond_norm_estimate(map, restarts(16));
    EXPECT_NEAR(constrained.lower, free.lower, 1e-6);
  }
}

TEST(EcdEstimate, BracketInvariants) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const auto map = HermitianPreservingMap::difference(random_channel(3, 3, 2, rng), random_channel(3, 3, 1, rng));
    const Hamiltonian h = Hamiltonian::diagonal({0.0, 1.0, 2.0});
    const EcdProblem p{map, h, 0.1 + 0.09 * trial, 0};
    const EcdEstimate est = ecd_norm_estimate(p, restarts(8, trial));
    EXPECT_GE(est.lower, 0.0);
    EXPECT_LE(est.lower, est.upper);
    EXPECT_LE(est.witness_energy, p.energy + 1e-9);
    EXPECT_NEAR(ecd_objective(p, est.witness), est.lower, 1e-8);
    const EcdEstimate free = diamond_norm_estimate(map, restarts(8, trial));
    EXPECT_LE(est.lower, std::min(est.upper, free.lower) + 1e-6);
  }
}

TEST(EcdEstimate, Deterministic) {
  std::mt19937_64 rng(26);
  const auto map = HermitianPreservingMap::difference(random_channel(3, 3, 2, rng), random_channel(3, 3, 2, rng));
  const EcdProblem p{map, Hamiltonian::diagonal({0, 1, 2}), 0.7, 0};
  EstimatorOptions serial = restarts(6, 99);
  EstimatorOptions threaded = serial;
  threaded.threads = 3;
  const EcdEstimate a = ecd_norm_estimate(p, serial);
  const EcdEstimate b = ecd_norm_estimate(p, threaded);
  EXPECT_EQ(a.lower, b.lower);
  EXPECT_EQ(a.upper, b.upper);
  EXPECT_TRUE(a.witness == b.witness);
}

TEST(EcdEstimate, MatchesBruteForceOracle) {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 4; ++trial) {
    const Channel a = random_channel(3, 3, 2, rng);
    const Channel b = random_channel(3, 3, 2, rng);
    const Hamiltonian h = Hamiltonian::diagonal({0.0, 1.0, 2.5});
    const double e = 0.3 + 0.4 * trial;
    const EcdEstimate est = ecd_norm_estimate({HermitianPreservingMap::difference(a, b), h, e, 0});
    const double brute = oracle::brute_force_ecd(oracle::pair_ops(a, b), levels_of(h), 3, e, rng, 20000);
    EXPECT_NEAR(est.lower, brute, 1e-3) << "trial " << trial;
  }
}

TEST(EcdEstimate, PhaseRotationMatchesConvexHullOracle) {
  const std::size_t d = 6;
  const Hamiltonian h = TruncatedOscillator(d, 1.0).hamiltonian();
  for (double theta : {0.3, 0.8, 2.0})
    for (double e : {0.7, 1.2, 2.0}) {
      const auto map = HermitianPreservingMap::difference(phase_rotation(d, theta), identity_channel(d));
      const EcdEstimate est = ecd_norm_estimate({map, h, e, 0}, restarts(8));
      const double expect = oracle::phase_rotation_ecd(levels_of(h), theta, e);
      EXPECT_NEAR(est.lower, expect, 1e-6) << theta << " " << e;
      EXPECT_GE(est.upper, expect - 1e-9);
    }
}

TEST(EcdEstimate, MonotoneInEnergy) {
  std::mt19937_64 rng(28);
  const auto map = HermitianPreservingMap::difference(random_channel(4, 4, 2, rng), random_channel(4, 4, 2, rng));
  const Hamiltonian h = TruncatedOscillator(4, 1.0).hamiltonian();
  double prev = 0.0;
  for (double e : {0.55, 0.7, 1.0, 1.5, 2.0, 3.0, 3.5}) {
    const double v = ecd_norm_estimate({map, h, e, 0}, restarts(8)).lower;
    EXPECT_GE(v, prev - 1e-6) << e;
    prev = v;
  }
}

TEST(EcdEstimate, NormAxioms) {
  std::mt19937_64 rng(29);
  const Hamiltonian h = Hamiltonian::diagonal({0, 1, 2});
  const double e = 0.8;
  const Channel a = random_channel(3, 3, 2, rng);
  const Channel b = random_channel(3, 3, 2, rng);
  const Channel c = random_channel(3, 3, 2, rng);
  const auto ab = HermitianPreservingMap::difference(a, b);
  const auto bc = HermitianPreservingMap::difference(b, c);
  const auto ac = HermitianPreservingMap::difference(a, c);
  for (int i = 0; i < 50; ++i) {
    const ComplexVector psi = feasible_vector(h, 3, e, rng);
    const double base = ecd_objective({ab, h, e, 0}, psi);
    for (double k : {-2.0, 0.5, 3.0}) EXPECT_NEAR(ecd_objective({ab.scaled(k), h, e, 0}, psi), std::abs(k) * base, 1e-12);
    EXPECT_LE(ecd_objective({ac, h, e, 0}, psi), base + ecd_objective({bc, h, e, 0}, psi) + 1e-12);
  }
  const double nab = ecd_norm_estimate({ab, h, e, 0}).lower;
  const double nbc = ecd_norm_estimate({bc, h, e, 0}).lower;
  const double nac = ecd_norm_estimate({ac, h, e, 0}).lower;
  EXPECT_LE(nac, nab + nbc + 2e-3);
  EXPECT_NEAR(ecd_norm_estimate({ab.scaled(-2.0), h, e, 0}).lower, 2.0 * nab, 2e-3);
}

TEST(Qn, FullDimensionIsDiamond) {
  std::mt19937_64 rng(30);
  const auto map = HermitianPreservingMap::difference(random_channel(3, 3, 2, rng), random_channel(3, 3, 2, rng));
  const Hamiltonian h = Hamiltonian::diagonal({0, 1, 2});
  EXPECT_NEAR(q_n(map, h, 3, restarts(16)), diamond_norm_estimate(map, restarts(16)).lower, 1e-6);
}

TEST(Qn, SingleLevel) {
  std::mt19937_64 rng(31);
  const auto map = HermitianPreservingMap::difference(random_channel(3, 3, 2, rng), random_channel(3, 3, 2, rng));
  const Hamiltonian h({0.0, 1.0, 2.0}, random_unitary(3, rng));
  const ComplexVector tau = h.eigenbasis().col(0);
  EXPECT_NEAR(q_n(map, h, 1), trace_norm(map.apply(tau * tau.adjoint())), 1e-9);
}

TEST(Qn, MatchesBruteForceOnSubspace) {
  std::mt19937_64 rng(32);
  const Channel a = random_channel(4, 4, 2, rng);
  const Channel b = random_channel(4, 4, 2, rng);
  const Hamiltonian h = Hamiltonian::diagonal({0, 1, 2, 3});
  const double qn = q_n(HermitianPreservingMap::difference(a, b), h, 2);
  // Inputs on span{|0>,|1>} (x) C^2 with no energy cap.
  oracle::SignedOps s = oracle::pair_ops(a, b);
  for (auto& op : s.ops) op = ComplexMatrix(op.leftCols(2));
  const double brute = oracle::brute_force_ecd(s, {0.0, 0.0}, 2, 1.0, rng, 20000);
  EXPECT_NEAR(qn, brute, 1e-3);
  EXPECT_THROW(q_n(HermitianPreservingMap::difference(a, b), h, 5), ValidationError);
}

TEST(StateTruncation, SupportedState) {
  std::mt19937_64 rng(33);
  const Hamiltonian h = Hamiltonian::diagonal({0, 1, 2});
  ComplexVector psi = ComplexVector::Zero(6);
  psi.head(4) = random_pure_vector(4, rng);
  const StateTruncation t = state_truncation_bound(DensityOperator::pure(psi), h, 2);
  EXPECT_NEAR(t.tail_weight, 0.0, 1e-14);
  EXPECT_NEAR(t.bound, 0.0, 1e-6);
  EXPECT_NEAR(t.distance, 0.0, 1e-12);
}

TEST(StateTruncation, QutritExample) {
  ComplexVector psi(3);
  psi << std::sqrt(0.5), std::sqrt(0.46), std::sqrt(0.04);
  const StateTruncation t = state_truncation_bound(DensityOperator::pure(psi), Hamiltonian::diagonal({0, 1, 2}), 2);
  EXPECT_NEAR(t.tail_weight, 0.04, 1e-14);
  EXPECT_NEAR(t.bound, 0.8, 1e-13);
  // rho - rho_n for pure states has trace norm 2 sqrt(1 - |<psi|psi_n>|^2) = 2 sqrt(r_n).
  EXPECT_NEAR(t.distance, 2.0 * std::sqrt(0.04), 1e-12);
  EXPECT_LE(t.distance, t.bound);
}

TEST(StateTruncation, TailWeightBelowEnergyRatio) {
  std::mt19937_64 rng(34);
  const Hamiltonian h = TruncatedOscillator(6, 1.0).hamiltonian();
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexVector psi = feasible_vector(h, 2, 1.5, rng);
    const DensityOperator rho = DensityOperator::pure(psi);
    const double e = input_energy(psi, h, 2);
    for (std::size_t n = 1; n < 6; ++n) {
      const StateTruncation t = state_truncation_bound(rho, h, n);
      EXPECT_LE(t.tail_weight, e / h.eigenvalues()(static_cast<Eigen::Index>(n)) + 1e-12);
    }
  }
  ComplexVector top = ComplexVector::Zero(3);
  top(2) = 1.0;
  EXPECT_THROW(state_truncation_bound(DensityOperator::pure(top), Hamiltonian::diagonal({0, 1, 2}), 2), ValidationError);
}

TEST(TruncationNormBound, ZeroMap) {
  const Channel phi = attenuator(4, 0.5);
  const Hamiltonian h = TruncatedOscillator(4, 1.0).hamiltonian();
  EXPECT_NEAR(truncation_norm_bound(HermitianPreservingMap::difference(phi, phi), h, 1.0, 2), 8.0 * std::sqrt(1.0 / 2.5),
              1e-15);
}

TEST(TruncationNormBound, FullDimension) {
  std::mt19937_64 rng(35);
  const auto map = HermitianPreservingMap::difference(random_channel(3, 3, 2, rng), random_channel(3, 3, 2, rng));
  const Hamiltonian h = Hamiltonian::diagonal({0.5, 1.5, 2.5});
  const double expect = diamond_norm_estimate(map, restarts(16)).lower + 8.0 * std::sqrt(1.0 / 2.5);
  EXPECT_NEAR(truncation_norm_bound(map, h, 1.0, 3, restarts(16)), expect, 1e-6);
}

TEST(TruncationNormBound, DominatesEstimate) {
  std::mt19937_64 rng(36);
  const Hamiltonian h = TruncatedOscillator(6, 1.0).hamiltonian();
  for (int seed = 0; seed < 20; ++seed) {
    const auto map = HermitianPreservingMap::difference(random_channel(6, 6, 2, rng), random_channel(6, 6, 2, rng));
    const double lower = ecd_norm_estimate({map, h, 1.0, 0}, restarts(2, seed)).lower;
    EXPECT_GE(truncation_norm_bound(map, h, 1.0, 4, restarts(2, seed)), lower);
  }
}

TEST(DiamondUpperBound, Examples) {
  const Channel phi = attenuator(3, 0.4);
  EXPECT_EQ(diamond_upper_bound(HermitianPreservingMap::difference(phi, phi)), 0.0);
  const auto map = HermitianPreservingMap::difference(identity_channel(2), full_dephasing(2));
  std::mt19937_64 rng(37);
  const double brute = oracle::brute_force_ecd(oracle::pair_ops(identity_channel(2), full_dephasing(2)), {0.0, 0.0}, 2,
                                               1.0, rng, 20000);
  EXPECT_NEAR(brute, 1.0, 1e-3);
  EXPECT_GE(diamond_upper_bound(map), brute - 1e-12);
}

TEST(UpperCertificates, AllDominateEstimate) {
  std::mt19937_64 rng(38);
  for (int trial = 0; trial < 10; ++trial) {
    const auto map = HermitianPreservingMap::difference(random_channel(4, 4, 2, rng), random_channel(4, 4, 2, rng));
    const EcdProblem p{map, TruncatedOscillator(4, 1.0).hamiltonian(), 0.6 + 0.2 * trial, 0};
    const UpperBounds ub = ecd_upper_bounds(p);
    const double lower = ecd_norm_estimate(p, restarts(8)).lower;
    for (double u : {ub.choi, ub.channel_pair, ub.energy_choi, ub.truncation}) EXPECT_GE(u, lower - 1e-9);
    EXPECT_EQ(ub.channel_pair, 2.0);
  }
}

}  // namespace
}  // namespace ecdn
