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

#pragma once

// Named experiment recipes. Each returns plain rows; formatting is left to
// the caller.

#include <cstdint>
#include <random>
#include <vector>

#include "ecdn/bounds.hpp"
#include "ecdn/ecd_norm.hpp"
#include "ecdn/info.hpp"
#include "ecdn/random.hpp"
#include "ecdn/zoo.hpp"

namespace ecdn::experiments {

inline const std::vector<double> kThetaLadder{0.5, 0.25, 0.1, 0.05, 0.01, 0.005, 0.001};
inline const std::vector<double> kEnergyLadder{0.6, 0.8, 1.0, 1.5, 2.0};

struct PhaseRow {
  double theta = 0.0;
  double energy = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// ECD distance between a phase rotation and the identity on a truncated
/// oscillator (omega = 1), one row per (theta, E) pair.
inline PhaseRow phase_rotation_distance(std::size_t d, double theta, double e, const EstimatorOptions& opt) {
  const Hamiltonian h = TruncatedOscillator(d, 1.0).hamiltonian();
  const EcdProblem p{HermitianPreservingMap::difference(phase_rotation(d, theta), identity_channel(d)), h, e, 0};
  const EcdEstimate est = ecd_norm_estimate(p, opt);
  return {theta, e, est.lower, est.upper};
}

inline std::vector<PhaseRow> strong_convergence(std::size_t d, double e, const std::vector<double>& thetas,
                                                const EstimatorOptions& opt) {
  std::vector<PhaseRow> rows;
  for (double theta : thetas) rows.push_back(phase_rotation_distance(d, theta, e, opt));
  return rows;
}

inline std::vector<PhaseRow> strong_convergence_energy(std::size_t d, double theta, const std::vector<double>& energies,
                                                       const EstimatorOptions& opt) {
  std::vector<PhaseRow> rows;
  for (double e : energies) rows.push_back(phase_rotation_distance(d, theta, e, opt));
  return rows;
}

struct AttenuatorRow {
  std::size_t d = 0;
  double ecd_lower = 0.0;
  double ecd_upper = 0.0;
  double diamond_lower = 0.0;
  double diamond_upper = 0.0;
};

inline std::vector<AttenuatorRow> attenuator_pair(double eta1, double eta2, double e, const std::vector<std::size_t>& dims,
                                                  const EstimatorOptions& opt) {
  std::vector<AttenuatorRow> rows;
  for (std::size_t d : dims) {
    const auto map = HermitianPreservingMap::difference(attenuator(d, eta1), attenuator(d, eta2));
    const EcdEstimate ecd = ecd_norm_estimate({map, TruncatedOscillator(d, 1.0).hamiltonian(), e, 0}, opt);
    const EcdEstimate dia = diamond_norm_estimate(map, opt);
    rows.push_back({d, ecd.lower, ecd.upper, dia.lower, dia.upper});
  }
  return rows;
}

struct TightnessChiRow {
  double energy = 0.0;
  double cchi_identity = 0.0;
  double cchi_depolarizer = 0.0;
  double difference = 0.0;
  double max_entropy = 0.0;
  double gain = 0.0;         // energy amplification factor k of the pair
  double bound_total = 0.0;  // Holevo-capacity bound at eps = 1, optimized t
  double t_star = 0.0;
};

/// Identity against the vacuum depolarizer on d oscillator levels.
inline std::vector<TightnessChiRow> tightness_cchi(std::size_t d, const std::vector<double>& energies,
                                                   const CapacityOptions& opt) {
  const Hamiltonian h = TruncatedOscillator(d, 1.0).hamiltonian();
  const Channel id = identity_channel(d);
  const Channel dep = depolarize_to(DensityOperator::basis(d, 0), 1.0);
  std::vector<TightnessChiRow> rows;
  for (double e : energies) {
    TightnessChiRow r;
    r.energy = e;
    r.cchi_identity = holevo_capacity_estimate(id, h, e, opt).value;
    r.cchi_depolarizer = holevo_capacity_estimate(dep, h, e, opt).value;
    r.difference = std::abs(r.cchi_identity - r.cchi_depolarizer);
    r.max_entropy = max_entropy(h, e);
    r.gain = std::max(energy_gain(id, h, h, e), energy_gain(dep, h, h, e));
    BoundInputs in;
    in.epsilon = 1.0;
    in.energy = r.gain * e;
    in.fhat = FhatOscillator::uniform(1, 1.0);
    const BoundValue b = optimize_t(BoundKind::HolevoCap, in);
    r.bound_total = b.total;
    r.t_star = b.t_used;
    rows.push_back(r);
  }
  return rows;
}

struct TightnessEaRow {
  double energy = 0.0;
  double cea_identity = 0.0;
  double twice_max_entropy = 0.0;
  double cea_depolarizer = 0.0;
  double bound_total = 0.0;  // input-side EA bound at eps = 1, optimized t
  double t_star = 0.0;
};

/// Channel mutual information of the same pair at the Gibbs input state.
inline std::vector<TightnessEaRow> tightness_ea(std::size_t d, const std::vector<double>& energies) {
  const Hamiltonian h = TruncatedOscillator(d, 1.0).hamiltonian();
  const Channel id = identity_channel(d);
  const Channel dep = depolarize_to(DensityOperator::basis(d, 0), 1.0);
  std::vector<TightnessEaRow> rows;
  for (double e : energies) {
    const GibbsSolution gs = gibbs_lambda(h, e);
    TightnessEaRow r;
    r.energy = e;
    r.cea_identity = channel_mi(id, gs.state);
    r.twice_max_entropy = 2.0 * max_entropy(h, e);
    r.cea_depolarizer = channel_mi(dep, gs.state);
    BoundInputs in;
    in.epsilon = 1.0;
    in.energy = e;
    in.fhat = FhatOscillator::uniform(1, 1.0);
    const BoundValue b = optimize_t(BoundKind::EaCapInput, in);
    r.bound_total = b.total;
    r.t_star = b.t_used;
    rows.push_back(r);
  }
  return rows;
}

struct TruncationRow {
  std::size_t n = 0;
  double level_energy = 0.0;  // E_n
  double qn = 0.0;
  double bound = 0.0;  // q_n + 8 sqrt(E / E_n)
  double ecd_lower = 0.0;
  double ecd_upper = 0.0;
};

/// q_n ladder for a random channel pair on d oscillator levels.
inline std::vector<TruncationRow> truncation_ladder(std::size_t d, double e, std::uint64_t seed,
                                                    const EstimatorOptions& opt) {
  std::mt19937_64 rng(mix_seed(seed, 0x7472756eULL));
  const Channel a = random_channel(d, d, 2, rng);
  const Channel b = random_channel(d, d, 2, rng);
  const auto map = HermitianPreservingMap::difference(a, b);
  const Hamiltonian h = TruncatedOscillator(d, 1.0).hamiltonian();
  const EcdEstimate est = ecd_norm_estimate({map, h, e, 0}, opt);
  std::vector<TruncationRow> rows;
  for (std::size_t n = 1; n <= d; ++n) {
    TruncationRow r;
    r.n = n;
    r.level_energy = h.eigenvalues()(static_cast<Eigen::Index>(std::min(n, d - 1)));
    r.qn = q_n(map, h, n, opt);
    r.bound = r.qn + 8.0 * std::sqrt(e / r.level_energy);
    r.ecd_lower = est.lower;
    r.ecd_upper = est.upper;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace ecdn::experiments
