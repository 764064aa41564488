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

// Channels and Hamiltonians on truncated Fock spaces.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ecdn/channel.hpp"
#include "ecdn/states.hpp"

namespace ecdn {

/// Single mode with levels h-bar omega (k + 1/2), k = 0..d-1.
class TruncatedOscillator {
 public:
  TruncatedOscillator(std::size_t levels, double omega) : levels_(levels), omega_(omega) {
    if (levels == 0) throw ValidationError("TruncatedOscillator: at least one level required");
    if (!(omega > 0.0)) throw ValidationError("TruncatedOscillator: frequency must be positive");
  }

  std::size_t levels() const { return levels_; }
  double omega() const { return omega_; }

  Hamiltonian hamiltonian() const {
    std::vector<double> e(levels_);
    for (std::size_t k = 0; k < levels_; ++k) e[k] = omega_ * (static_cast<double>(k) + 0.5);
    return Hamiltonian::diagonal(std::move(e));
  }

 private:
  std::size_t levels_;
  double omega_;
};

/// H = sum_i omega_i (n_i + 1/2) on the tensor product of truncated modes.
inline Hamiltonian multimode_oscillator(const std::vector<std::size_t>& levels, const std::vector<double>& omegas) {
  if (levels.empty() || levels.size() != omegas.size()) {
    throw ValidationError("multimode_oscillator: need one frequency per mode");
  }
  std::vector<double> e{0.0};
  for (std::size_t m = 0; m < levels.size(); ++m) {
    if (levels[m] == 0 || !(omegas[m] > 0.0)) throw ValidationError("multimode_oscillator: invalid mode");
    std::vector<double> next;
    next.reserve(e.size() * levels[m]);
    for (double a : e)
      for (std::size_t k = 0; k < levels[m]; ++k) next.push_back(a + omegas[m] * (static_cast<double>(k) + 0.5));
    e = std::move(next);
  }
  return Hamiltonian::diagonal(std::move(e));
}

inline Channel identity_channel(std::size_t d) { return Channel({identity(d)}); }

/// rho -> (1 - p) rho + p sigma Tr(rho).
inline Channel depolarize_to(const DensityOperator& sigma, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("depolarize_to: p = " + std::to_string(p) + " outside [0,1]");
  const std::size_t d = sigma.dim();
  const ComplexMatrix root = spectral_map(hermitian_eigen(sigma.matrix()),
                                          [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
  std::vector<ComplexMatrix> kraus;
  const double sp = std::sqrt(p);
  if (p > 0.0) {
    for (std::size_t j = 0; j < d; ++j) {
      const ComplexVector col = root.col(static_cast<Eigen::Index>(j));
      if (col.norm() < 1e-15) continue;
      for (std::size_t k = 0; k < d; ++k) {
        ComplexMatrix op = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        op.col(static_cast<Eigen::Index>(k)) = sp * col;
        kraus.push_back(std::move(op));
      }
    }
  }
  if (p < 1.0) kraus.push_back(std::sqrt(1.0 - p) * identity(d));
  return Channel(std::move(kraus));
}

/// Unitary channel U = diag(e^{i theta k}).
inline Channel phase_rotation(std::size_t d, double theta) {
  ComplexMatrix u = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < d; ++k) u(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = std::polar(1.0, theta * static_cast<double>(k));
  return Channel({u});
}

/// Pure-loss channel of transmissivity eta on d Fock levels:
/// K_j[m, n] = sqrt(C(n, j)) eta^{(n-j)/2} (1-eta)^{j/2} delta_{m, n-j}.
/// Exactly trace preserving on the truncation by the binomial identity.
inline Channel attenuator(std::size_t d, double eta) {
  if (d == 0) throw ValidationError("attenuator: at least one level required");
  if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("attenuator: eta = " + std::to_string(eta) + " outside [0,1]");
  std::vector<ComplexMatrix> kraus;
  for (std::size_t j = 0; j < d; ++j) {
    ComplexMatrix k = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t n = j; n < d; ++n) {
      const double log_binom = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
      const double amp = std::exp(0.5 * log_binom) * std::pow(eta, 0.5 * static_cast<double>(n - j)) *
                         std::pow(1.0 - eta, 0.5 * static_cast<double>(j));
      k(static_cast<Eigen::Index>(n - j), static_cast<Eigen::Index>(n)) = amp;
    }
    if (k.cwiseAbs().maxCoeff() > 0.0) kraus.push_back(std::move(k));
  }
  return Channel(std::move(kraus));
}

}  // namespace ecdn
