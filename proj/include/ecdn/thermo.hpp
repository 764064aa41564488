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

// Entropy maximization under a mean-energy constraint. Natural logarithms
// throughout.

#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "ecdn/states.hpp"

namespace ecdn {

/// Binary entropy -x ln x - (1-x) ln(1-x), with 0 ln 0 = 0.
inline double h2(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("h2: argument " + std::to_string(x) + " outside [0,1]");
  auto eta = [](double p) { return p > 0.0 ? -p * std::log(p) : 0.0; };
  return eta(x) + eta(1.0 - x);
}

/// g(x) = (x+1) ln(x+1) - x ln x.
inline double g(double x) {
  if (!(x >= 0.0)) throw ValidationError("g: negative argument " + std::to_string(x));
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;
  return (x + 1.0) * std::log1p(x) - x * std::log(x);
}

struct GibbsSolution {
  double lambda = 0.0;
  DensityOperator state;
  double mean_energy = 0.0;
  double entropy = 0.0;
};

namespace detail {

// Occupation probabilities of e^{-lambda H} in the eigenbasis, shifted by the
// extreme level so that the largest exponent is zero.
inline RealVector gibbs_weights(const Hamiltonian& h, double lambda) {
  const RealVector& e = h.eigenvalues();
  const double ref = lambda >= 0.0 ? h.ground_energy() : h.max_energy();
  RealVector w(e.size());
  for (Eigen::Index k = 0; k < e.size(); ++k) w(k) = std::exp(-lambda * (e(k) - ref));
  return w / w.sum();
}

inline double gibbs_mean(const Hamiltonian& h, double lambda) {
  return gibbs_weights(h, lambda).dot(h.eigenvalues());
}

inline double log_partition(const Hamiltonian& h, double lambda) {
  const RealVector& e = h.eigenvalues();
  const double ref = lambda >= 0.0 ? h.ground_energy() : h.max_energy();
  double s = 0.0;
  for (Eigen::Index k = 0; k < e.size(); ++k) s += std::exp(-lambda * (e(k) - ref));
  return -lambda * ref + std::log(s);
}

inline double shannon(const RealVector& p) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k)
    if (p(k) > 0.0) s -= p(k) * std::log(p(k));
  return s;
}

}  // namespace detail

/// e^{-lambda H} / Tr e^{-lambda H}.
inline DensityOperator gibbs_state(const Hamiltonian& h, double lambda) {
  const RealVector p = detail::gibbs_weights(h, lambda);
  ComplexMatrix scaled = h.eigenbasis();
  for (Eigen::Index k = 0; k < p.size(); ++k) scaled.col(k) *= p(k);
  return DensityOperator(hermitian_part(scaled * h.eigenbasis().adjoint()));
}

/// Inverse temperature lambda(E) with mean energy E, by bisection on the
/// monotone map lambda -> <H>_lambda carried to machine resolution.
inline GibbsSolution gibbs_lambda(const Hamiltonian& h, double target) {
  const double e0 = h.ground_energy();
  const double emax = h.max_energy();
  if (!(target > e0 && target < emax)) {
    throw InfeasibleError("gibbs_lambda: energy " + std::to_string(target) + " outside the open interval (" +
                          std::to_string(e0) + ", " + std::to_string(emax) + ")");
  }
  const double spread = emax - e0;
  double lo = -50.0 / spread;  // mean above target
  double hi = 50.0 / spread;   // mean below target
  while (detail::gibbs_mean(h, lo) < target) lo *= 2.0;
  while (detail::gibbs_mean(h, hi) > target) hi *= 2.0;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (detail::gibbs_mean(h, mid) > target) lo = mid; else hi = mid;
  }
  const double m_lo = detail::gibbs_mean(h, lo);
  const double m_hi = detail::gibbs_mean(h, hi);
  const double lambda = std::abs(m_lo - target) <= std::abs(m_hi - target) ? lo : hi;
  const RealVector p = detail::gibbs_weights(h, lambda);
  const double mean = p.dot(h.eigenvalues());
  if (std::abs(mean - target) > 1e-9 * std::max(1.0, target)) {
    throw InfeasibleError("gibbs_lambda: bisection stalled at mean energy " + std::to_string(mean));
  }
  return {lambda, gibbs_state(h, lambda), mean, detail::shannon(p)};
}

/// Maximal entropy over states with Tr(H rho) <= E. In finite dimension the
/// constraint is inactive once E reaches Tr H / d, where the value is ln d.
inline double max_entropy(const Hamiltonian& h, double e) {
  const double e0 = h.ground_energy();
  if (e < e0) {
    throw InfeasibleError("F_H: energy " + std::to_string(e) + " below ground energy " + std::to_string(e0));
  }
  const double d = static_cast<double>(h.dim());
  if (e >= h.uniform_mean()) return std::log(d);
  const std::size_t mult = h.ground_multiplicity();
  if (e - e0 <= 1e-14 * std::max(1.0, e0)) return std::log(static_cast<double>(mult));
  return gibbs_lambda(h, e).entropy;
}

/// Upper bound on the entropy of an l-mode oscillator at mean energy E:
/// l ln((E + E0) / (l E_*)) + l.
class FhatOscillator {
 public:
  explicit FhatOscillator(std::vector<double> frequencies) : freqs_(std::move(frequencies)) {
    if (freqs_.empty()) throw ValidationError("FhatOscillator: at least one mode required");
    double log_prod = 0.0;
    for (double w : freqs_) {
      if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("FhatOscillator: frequencies must be positive");
      e0_ += 0.5 * w;
      log_prod += std::log(w);
    }
    estar_ = std::exp(log_prod / static_cast<double>(freqs_.size()));
  }

  /// l identical modes of quantum h-bar omega.
  static FhatOscillator uniform(std::size_t modes, double omega) {
    return FhatOscillator(std::vector<double>(modes, omega));
  }

  std::size_t modes() const { return freqs_.size(); }
  const std::vector<double>& frequencies() const { return freqs_; }
  double ground_energy() const { return e0_; }
  double geometric_frequency() const { return estar_; }

  double operator()(double e) const {
    if (!(e > 0.0)) throw ValidationError("fhat_oscillator: energy must be positive, got " + std::to_string(e));
    const double l = static_cast<double>(modes());
    return l * std::log((e + e0_) / (l * estar_)) + l;
  }

 private:
  std::vector<double> freqs_;
  double e0_ = 0.0;
  double estar_ = 1.0;
};

inline double fhat_oscillator(const FhatOscillator& p, double e) { return p(e); }

/// F_H(E + E0), the shifted maximal entropy used as an upper bound.
inline double fhat_shifted(const Hamiltonian& h, double e) {
  if (!(e > 0.0)) throw ValidationError("fhat_shifted: energy must be positive, got " + std::to_string(e));
  return max_entropy(h, e + h.ground_energy());
}

/// Largest E for which fhat_shifted is still strictly increasing; above it
/// the truncated spectrum saturates at ln d.
inline double fhat_shifted_valid_limit(const Hamiltonian& h) {
  return h.uniform_mean() - h.ground_energy();
}

}  // namespace ecdn
