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

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "ecdn/bounds.hpp"
#include "ecdn/ecd_norm.hpp"
#include "ecdn/info.hpp"
#include "ecdn/random.hpp"

namespace ecdn {
namespace {

// Independent scalar helpers.
double ref_h2(double x) { return x <= 0.0 ? 0.0 : -x * std::log(x) - (1 - x) * std::log(1 - x); }
double ref_g(double x) { return x <= 0.0 ? 0.0 : (x + 1) * std::log(x + 1) - x * std::log(x); }
double ref_osc(double e) { return std::log(e + 0.5) + 1.0; }

BoundInputs inputs(double eps, double e, double t, std::size_t n = 1) {
  BoundInputs in;
  in.epsilon = eps;
  in.energy = e;
  in.t = t;
  in.n = n;
  return in;
}

const BoundKind kAllKinds[] = {BoundKind::Chi,          BoundKind::Qmi,        BoundKind::HolevoCap,
                               BoundKind::ClassicalCap, BoundKind::EaCapInput, BoundKind::EaCapOutput};

TEST(REps, Examples) {
  EXPECT_NEAR(r_eps(0.3, 1e-13), 1.0, 1e-12);
  EXPECT_NEAR(r_eps(0.1, 1.0), 5.0 / 3.0, 1e-15);
  EXPECT_NEAR(r_eps(0.2, 2.5), (1.0 + 1.0 / 0.8) / 0.5, 1e-14);
  EXPECT_THROW(r_eps(0.5, 2.0), ValidationError);
  EXPECT_THROW(r_eps(0.5, 3.0), ValidationError);
}

TEST(BoundChi, TermByTerm) {
  const BoundValue v = bound_chi(inputs(0.1, 1.0, 1.0));
  EXPECT_NEAR(v.main_term, 0.1 * (2.0 + 5.0 / 3.0) * ref_osc(10.0), 1e-12);
  EXPECT_NEAR(v.g_term, 2.0 * ref_g(1.0 / 6.0), 1e-12);
  EXPECT_NEAR(v.h2_term, 2.0 * ref_h2(0.1), 1e-12);
  EXPECT_NEAR(v.total, v.main_term + v.g_term + v.h2_term, 1e-12);
  EXPECT_EQ(v.t_used, 1.0);
  EXPECT_EQ(v.fhat_argument, 10.0);
}

TEST(BoundQmi, ShiftedQubit) {
  BoundInputs in = inputs(0.05, 0.4, 2.0);
  in.fhat = ShiftedFhat{Hamiltonian::diagonal({0.0, 1.0})};
  const double r = 2.0 / 0.9;
  // Argument 4 lies above the uniform mean 1/2, where the qubit F saturates at ln 2.
  const BoundValue v = bound_qmi_n(in);
  EXPECT_NEAR(v.main_term, 2.0 * 0.05 * (4.0 + r) * std::log(2.0), 1e-12);
  EXPECT_NEAR(v.g_term, 2.0 * ref_g(0.05 * r), 1e-12);
  EXPECT_NEAR(v.h2_term, 4.0 * ref_h2(0.1), 1e-12);
  EXPECT_EQ(v.fhat_valid_limit, 0.5);
}

TEST(BoundQmi, ShiftedQubitInsideValidRange) {
  BoundInputs in = inputs(0.5, 0.1, 1.0);
  in.fhat = ShiftedFhat{Hamiltonian::diagonal({0.0, 1.0})};
  // Argument 0.2: Gibbs qubit with excited population 0.2.
  const double r = 1.5 / 0.5;
  const BoundValue v = bound_qmi_n(in);
  EXPECT_NEAR(v.main_term, 2.0 * 0.5 * (2.0 + r) * ref_h2(0.2), 1e-10);
}

TEST(BoundHolevoCap, ScaledEnergy) {
  const BoundValue v = bound_holevo_cap(inputs(0.1, 2.0, 1.0));
  EXPECT_NEAR(v.main_term, 0.1 * (2.0 + 5.0 / 3.0) * ref_osc(20.0), 1e-12);
  EXPECT_NEAR(v.g_term, 2.0 * ref_g(1.0 / 6.0), 1e-12);
  EXPECT_NEAR(v.h2_term, 2.0 * ref_h2(0.1), 1e-12);
}

TEST(BoundCapacities, TermByTerm) {
  const double main = 2.0 * 0.1 * (2.0 + 5.0 / 3.0) * ref_osc(10.0);
  for (auto f : {bound_classical_cap, bound_ea_cap_input_side, bound_ea_cap_output_side}) {
    const BoundValue v = f(inputs(0.1, 1.0, 1.0));
    EXPECT_NEAR(v.main_term, main, 1e-12);
    EXPECT_NEAR(v.g_term, 2.0 * ref_g(1.0 / 6.0), 1e-12);
    EXPECT_NEAR(v.h2_term, 4.0 * ref_h2(0.1), 1e-12);
  }
  BoundInputs in = inputs(0.2, 0.3, 0.5);
  in.fhat = ShiftedFhat{Hamiltonian::diagonal({0.5, 1.5, 2.5})};
  const double r = 1.25 / 0.9;
  const double f = max_entropy(Hamiltonian::diagonal({0.5, 1.5, 2.5}), 3.0 + 0.5);
  EXPECT_NEAR(bound_ea_cap_input_side(in).main_term, 2.0 * 0.2 * (1.0 + r) * f, 1e-12);
  EXPECT_NEAR(f, std::log(3.0), 1e-15);
}

TEST(BoundStructure, CoefficientIdentities) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double eps = std::pow(10.0, -3.0 * u(rng));
    const double t = (0.01 + 0.99 * u(rng)) * 0.5 / eps;
    const double e = std::pow(10.0, 4.0 * u(rng) - 1.0);
    const std::size_t n = 1 + i % 4;
    const BoundValue chi = bound_chi(inputs(eps, e, t));
    const BoundValue q1 = bound_qmi_n(inputs(eps, e, t, 1));
    const BoundValue qn = bound_qmi_n(inputs(eps, e, t, n));
    const BoundValue hc = bound_holevo_cap(inputs(eps, e, t));
    const BoundValue cc = bound_classical_cap(inputs(eps, e, t));
    const BoundValue ein = bound_ea_cap_input_side(inputs(eps, e, t));
    const BoundValue eout = bound_ea_cap_output_side(inputs(eps, e, t));
    const double tol = 1e-12;
    EXPECT_NEAR(q1.main_term, 2.0 * chi.main_term, tol * q1.main_term);
    EXPECT_NEAR(q1.h2_term, 2.0 * chi.h2_term, tol * q1.h2_term);
    EXPECT_NEAR(q1.g_term, chi.g_term, tol * q1.g_term);
    EXPECT_NEAR(qn.total, static_cast<double>(n) * q1.total, tol * qn.total);
    EXPECT_EQ(hc.total, chi.total);
    EXPECT_NEAR(cc.main_term, 2.0 * hc.main_term, tol * cc.main_term);
    EXPECT_NEAR(cc.h2_term, 2.0 * hc.h2_term, tol * cc.h2_term);
    EXPECT_EQ(cc.g_term, hc.g_term);
    EXPECT_GE(cc.total, hc.total);
    EXPECT_EQ(ein.total, cc.total);
    EXPECT_EQ(eout.total, cc.total);
    EXPECT_NEAR(chi.total, chi.main_term + chi.g_term + chi.h2_term, tol * chi.total);
  }
}

TEST(BoundStructure, LogShiftDominatesGeneric) {
  for (double eps : {0.5, 0.1, 1e-3})
    for (double frac : {1e-6, 1e-3, 0.1, 0.5, 1.0})
      for (double e : {0.1, 1.0, 10.0, 1e4})
        for (std::size_t modes : {1, 3}) {
          BoundInputs in = inputs(eps, e, frac * 0.5 / eps);
          in.fhat = FhatOscillator::uniform(modes, 0.7);
          const double generic = bound_chi(in).total;
          in.log_shift = true;
          EXPECT_GE(bound_chi(in).total, generic - 1e-12);
        }
}

TEST(BoundStructure, PositiveAndIncreasingInEpsilon) {
  for (auto kind : kAllKinds)
    for (double t : {1e-4, 0.01, 0.3, 1.0})
      for (double e : {0.2, 1.0, 50.0}) {
        double prev = 0.0;
        for (double eps = 1e-4; eps * t <= 0.5 && eps <= 1.0; eps *= 1.5) {
          const double v = evaluate_bound(kind, inputs(eps, e, t, 2)).total;
          EXPECT_GT(v, 0.0);
          EXPECT_GT(v, prev);
          prev = v;
        }
      }
}

TEST(BoundInputsValidation, Rejects) {
  EXPECT_THROW(bound_chi(inputs(0.1, 1.0, 5.1)), ValidationError);
  EXPECT_THROW(bound_chi(inputs(0.1, 1.0, 0.0)), ValidationError);
  EXPECT_THROW(bound_chi(inputs(0.0, 1.0, 1.0)), ValidationError);
  EXPECT_THROW(bound_chi(inputs(0.1, 0.0, 1.0)), ValidationError);
  EXPECT_THROW(bound_qmi_n(inputs(0.1, 1.0, 1.0, 0)), ValidationError);
  EXPECT_NO_THROW(bound_chi(inputs(0.1, 1.0, 5.0)));
  BoundInputs in = inputs(0.1, 1.0, 1.0);
  in.fhat = ShiftedFhat{Hamiltonian::diagonal({0.0, 1.0})};
  in.log_shift = true;
  EXPECT_THROW(bound_chi(in), ValidationError);
}

TEST(FhatTable, InterpolatesAndRejects) {
  const FhatTable table({1.0, 2.0, 4.0}, {1.0, 1.5, 2.0});
  EXPECT_NEAR(evaluate_fhat(table, 1.5), 1.25, 1e-15);
  EXPECT_NEAR(evaluate_fhat(table, 3.0), 1.75, 1e-15);
  EXPECT_EQ(evaluate_fhat(table, 4.0), 2.0);
  EXPECT_THROW(evaluate_fhat(table, 4.5), ValidationError);
  EXPECT_THROW(FhatTable({1.0, 1.0}, {0.0, 1.0}), ValidationError);
  EXPECT_EQ(fhat_valid_limit(table), 4.0);
}

TEST(OptimizeT, BelowEveryGridPointAndEndpoints) {
  for (auto kind : kAllKinds)
    for (double eps : {0.3, 0.05, 1e-3})
      for (double e : {0.5, 5.0, 1e3}) {
        const BoundInputs in = inputs(eps, e, 1.0, 2);
        const BoundValue best = optimize_t(kind, in);
        const double lo = std::log(1e-9 / eps);
        const double hi = std::log(0.5 / eps);
        for (int i = 0; i < 200; ++i) {
          BoundInputs at = in;
          at.t = i == 199 ? 0.5 / eps : std::exp(lo + (hi - lo) * i / 199.0);
          EXPECT_LE(best.total, evaluate_bound(kind, at).total);
        }
        for (double t : {0.25 / eps, 1e-6 / eps}) {
          BoundInputs at = in;
          at.t = t;
          EXPECT_LE(best.total, evaluate_bound(kind, at).total);
        }
        EXPECT_GT(best.t_used, 0.0);
        EXPECT_LE(best.t_used, 0.5 / eps);
      }
}

TEST(OptimizeT, InteriorMinimum) {
  for (double eps : {0.1, 0.01, 1e-4}) {
    const BoundInputs in = inputs(eps, 1.0, 1.0);
    const BoundValue best = optimize_t(BoundKind::Chi, in);
    BoundInputs small = in;
    small.t = 1e-8 / eps;
    BoundInputs large = in;
    large.t = 0.5 / eps;
    EXPECT_GT(bound_chi(small).total, best.total);
    EXPECT_GT(bound_chi(large).total, best.total);
  }
}

TEST(OptimizeT, VanishesWithEpsilon) {
  double prev = INFINITY;
  for (int k = 1; k <= 6; ++k) {
    const double v = optimize_t(BoundKind::Chi, inputs(std::pow(10.0, -k), 1.0, 1.0)).total;
    EXPECT_LT(v, prev);
    prev = v;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(OptimizeT, MainTermApproachesEpsilonF) {
  const FhatOscillator f = FhatOscillator::uniform(1, 1.0);
  double prev = INFINITY;
  for (double e : {1e6, 1e10, 1e20, 1e30}) {
    BoundInputs in = inputs(1.0, e, 0.5);
    const double ratio = optimize_t(BoundKind::HolevoCap, in).main_term / f(e);
    EXPECT_GT(ratio, 1.0);
    EXPECT_LT(ratio, prev);
    prev = ratio;
  }
  EXPECT_LT(prev, 1.15);
}

TEST(OptimizeT, RejectsEpsilonAboveOne) {
  EXPECT_THROW(optimize_t(BoundKind::Chi, inputs(1.5, 1.0, 0.1)), ValidationError);
}

TEST(BoundDomination, HolevoDifferenceBelowBound) {
  std::mt19937_64 rng(62);
  const Hamiltonian h = Hamiltonian::diagonal({0.5, 1.5, 2.5});
  for (int trial = 0; trial < 20; ++trial) {
    const Channel phi = random_channel(3, 3, 2, rng);
    const Channel psi = random_channel(3, 3, 2, rng);
    std::vector<DensityOperator> states;
    for (int i = 0; i < 3; ++i) states.push_back(random_state(3, rng, 1 + i));
    const Ensemble mu({0.2, 0.3, 0.5}, states);
    const DensityOperator avg = mu.average();
    const double e_in = energy(avg, h);
    const double e_out = std::max(energy(apply_channel(phi, avg.matrix()), h), energy(apply_channel(psi, avg.matrix()), h));
    const double eps = 0.5 * ecd_upper_bound({HermitianPreservingMap::difference(phi, psi), h, e_in, 0});
    const double diff = std::abs(holevo_chi(mu.through(phi)) - holevo_chi(mu.through(psi)));
    BoundInputs in = inputs(eps, e_out, 1.0);
    in.fhat = ShiftedFhat{h};
    for (double frac : {1e-3, 0.05, 0.3, 1.0}) {
      in.t = frac * 0.5 / eps;
      EXPECT_LE(diff, bound_chi(in).total);
    }
    EXPECT_LE(diff, optimize_t(BoundKind::Chi, in).total);
  }
}

}  // namespace
}  // namespace ecdn
