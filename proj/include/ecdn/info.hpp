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

// Entropic functionals of states, ensembles and channels.

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ecdn/channel.hpp"
#include "ecdn/energy_dual.hpp"
#include "ecdn/sphere_ascent.hpp"
#include "ecdn/states.hpp"

namespace ecdn {

/// Eigenvalues at or below this are treated as zero for supports and logs.
inline constexpr double kSupportTol = 1e-12;

namespace detail {

inline double entropy_of_spectrum(const RealVector& p) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k)
    if (p(k) > kSupportTol) s -= p(k) * std::log(p(k));
  return s;
}

}  // namespace detail

/// von Neumann entropy -Tr rho ln rho of a positive matrix.
inline double entropy(const ComplexMatrix& rho) { return detail::entropy_of_spectrum(hermitian_eigenvalues(rho)); }

inline double entropy(const DensityOperator& rho) { return entropy(rho.matrix()); }

/// H(rho || sigma), +infinity when supp rho is not inside supp sigma.
inline double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw ValidationError("relative_entropy: dimension mismatch");
  const HermitianEigen se = hermitian_eigen(sigma.matrix());
  const ComplexMatrix r_in = se.vectors.adjoint() * rho.matrix() * se.vectors;
  double cross = 0.0;
  double leak = 0.0;
  for (Eigen::Index j = 0; j < se.values.size(); ++j) {
    const double w = r_in(j, j).real();
    if (se.values(j) > kSupportTol) {
      cross += w * std::log(se.values(j));
    } else {
      leak += w;
    }
  }
  if (leak > kSupportTol) return std::numeric_limits<double>::infinity();
  return std::max(0.0, -entropy(rho) - cross);
}

/// Finite ensemble {p_i, rho_i} on a common space.
class Ensemble {
 public:
  Ensemble(std::vector<double> probs, std::vector<DensityOperator> states)
      : probs_(std::move(probs)), states_(std::move(states)) {
    if (probs_.empty() || probs_.size() != states_.size()) {
      throw ValidationError("Ensemble: need one probability per state");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      if (!(probs_[i] > 0.0)) throw ValidationError("Ensemble: probabilities must be positive");
      if (states_[i].dim() != states_.front().dim()) throw ValidationError("Ensemble: states differ in dimension");
      sum += probs_[i];
    }
    if (std::abs(sum - 1.0) > kTraceTol) {
      throw ValidationError("Ensemble: probabilities sum to " + std::to_string(sum));
    }
  }

  std::size_t size() const { return probs_.size(); }
  std::size_t dim() const { return states_.front().dim(); }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<DensityOperator>& states() const { return states_; }

  DensityOperator average() const {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(dim()));
    for (std::size_t i = 0; i < size(); ++i) m += probs_[i] * states_[i].matrix();
    return DensityOperator(hermitian_part(m / m.trace().real()));
  }

  /// {p_i, Phi(rho_i)}.
  Ensemble through(const Channel& phi) const {
    std::vector<DensityOperator> out;
    out.reserve(size());
    for (const auto& s : states_) out.emplace_back(hermitian_part(apply_channel(phi, s.matrix())));
    return Ensemble(probs_, std::move(out));
  }

 private:
  std::vector<double> probs_;
  std::vector<DensityOperator> states_;
};

/// chi = H(avg) - sum p_i H(rho_i).
inline double holevo_chi(const Ensemble& mu) {
  double s = entropy(mu.average());
  for (std::size_t i = 0; i < mu.size(); ++i) s -= mu.probs()[i] * entropy(mu.states()[i]);
  return std::max(0.0, s);
}

/// chi = sum p_i H(rho_i || avg).
inline double holevo_chi_relative(const Ensemble& mu) {
  const DensityOperator avg = mu.average();
  double s = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) s += mu.probs()[i] * relative_entropy(mu.states()[i], avg);
  return s;
}

/// I(A:B) = H(rho_A) + H(rho_B) - H(rho_AB).
inline double qmi(const ComplexMatrix& rho_ab, BipartiteDims dims) {
  const double v = entropy(partial_trace(rho_ab, dims, Factor::First)) +
                   entropy(partial_trace(rho_ab, dims, Factor::Second)) - entropy(rho_ab);
  return std::max(0.0, v);
}

inline double qmi(const DensityOperator& rho_ab, BipartiteDims dims) { return qmi(rho_ab.matrix(), dims); }

/// H(rho_AB || rho_A (x) rho_B).
inline double qmi_relative(const DensityOperator& rho_ab, BipartiteDims dims) {
  const ComplexMatrix a = partial_trace(rho_ab.matrix(), dims, Factor::First);
  const ComplexMatrix b = partial_trace(rho_ab.matrix(), dims, Factor::Second);
  return relative_entropy(rho_ab, DensityOperator(hermitian_part(tensor(a, b))));
}

struct Purification {
  ComplexVector vector;  // on A (x) R, index a * r_dim + r
  std::size_t r_dim = 0;
};

/// sum_k sqrt(p_k) |v_k>|k> over the support of rho; R has dimension rank(rho).
inline Purification purify(const DensityOperator& rho) {
  const HermitianEigen eig = hermitian_eigen(rho.matrix());
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    if (eig.values(k) > kSupportTol) kept.push_back(k);
  const auto d = static_cast<Eigen::Index>(rho.dim());
  const auto r = static_cast<Eigen::Index>(kept.size());
  ComplexVector psi = ComplexVector::Zero(d * r);
  for (Eigen::Index j = 0; j < r; ++j) {
    const double w = std::sqrt(eig.values(kept[static_cast<std::size_t>(j)]));
    for (Eigen::Index a = 0; a < d; ++a) psi(a * r + j) = w * eig.vectors(a, kept[static_cast<std::size_t>(j)]);
  }
  return {psi / psi.norm(), static_cast<std::size_t>(r)};
}

/// I(B:R) of (Phi (x) id_R)(|psi><psi|).
inline double channel_mi(const Channel& phi, const Purification& p) {
  const ComplexMatrix out = apply_channel_extended(phi, p.vector * p.vector.adjoint(), p.r_dim);
  return qmi(out, {phi.out_dim(), p.r_dim});
}

inline double channel_mi(const Channel& phi, const DensityOperator& rho) {
  if (rho.dim() != phi.in_dim()) throw ValidationError("channel_mi: state dimension differs from channel input");
  return channel_mi(phi, purify(rho));
}

namespace detail {

// Holevo quantity of {p_i, Phi(psi_i)} for an ensemble written as the
// columns y_i = sqrt(p_i) psi_i of a unit matrix Y (rows in the basis the
// Kraus operators act on). With sigma_i = Phi(y_i y_i^dagger):
//   chi = S(sum sigma_i) + sum Tr sigma_i ln sigma_i - sum p_i ln p_i,
// and the Euclidean gradient in column i is
//   2 [Phi^*(ln sigma_i - ln sigma) - (ln p_i + 1)] y_i.
class HolevoObjective {
 public:
  explicit HolevoObjective(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {}

  double operator()(const ComplexMatrix& y, ComplexMatrix* grad) const {
    const Eigen::Index out = kraus_.front().rows();
    const Eigen::Index m = y.cols();
    std::vector<ComplexMatrix> sig(static_cast<std::size_t>(m));
    ComplexMatrix avg = ComplexMatrix::Zero(out, out);
    RealVector p(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      p(i) = y.col(i).squaredNorm();
      ComplexMatrix s = ComplexMatrix::Zero(out, out);
      for (const auto& k : kraus_) {
        const ComplexVector v = k * y.col(i);
        s.noalias() += v * v.adjoint();
      }
      avg += s;
      sig[static_cast<std::size_t>(i)] = std::move(s);
    }
    const HermitianEigen ae = hermitian_eigen(avg);
    std::vector<HermitianEigen> se(static_cast<std::size_t>(m));
    double chi = entropy_of_spectrum(ae.values);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (!(p(i) > 0.0)) continue;
      auto& e = se[static_cast<std::size_t>(i)];
      e = hermitian_eigen(sig[static_cast<std::size_t>(i)]);
      chi -= entropy_of_spectrum(e.values);
      chi -= p(i) * std::log(p(i));
    }
    if (!grad) return chi;

    auto safe_log = [](double x) { return std::log(std::max(x, 1e-300)); };
    const ComplexMatrix log_avg = spectral_map(ae, safe_log);
    *grad = ComplexMatrix::Zero(y.rows(), y.cols());
    for (Eigen::Index i = 0; i < m; ++i) {
      if (!(p(i) > 0.0)) continue;
      const ComplexMatrix diff = spectral_map(se[static_cast<std::size_t>(i)], safe_log) - log_avg;
      ComplexVector col = ComplexVector::Zero(y.rows());
      for (const auto& k : kraus_) col.noalias() += k.adjoint() * (diff * (k * y.col(i)));
      grad->col(i) = 2.0 * (col - (std::log(p(i)) + 1.0) * y.col(i));
    }
    return chi;
  }

 private:
  std::vector<ComplexMatrix> kraus_;
};

}  // namespace detail

struct CapacityOptions {
  std::size_t ensemble_size = 0;  // 0 selects 2 * in_dim
  MultiStartOptions search{8, 0, 1, {}};
};

struct CapacityEstimate {
  double value = 0.0;
  Ensemble ensemble;
  double average_energy = 0.0;
};

/// Lower estimate of the constrained Holevo capacity
///   C_chi(Phi, H, E) = sup { chi(Phi(mu)) : Tr H avg(mu) <= E }
/// by multi-start ascent over ensembles of pure states.
inline CapacityEstimate holevo_capacity_estimate(const Channel& phi, const Hamiltonian& h, double e,
                                                 const CapacityOptions& opt = {}) {
  if (h.dim() != phi.in_dim()) throw ValidationError("holevo_capacity_estimate: Hamiltonian dimension mismatch");
  if (!(e > h.ground_energy())) {
    throw InfeasibleError("holevo_capacity_estimate: energy " + std::to_string(e) + " must exceed ground energy");
  }
  const std::size_t m = opt.ensemble_size == 0 ? 2 * phi.in_dim() : opt.ensemble_size;
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : phi.kraus()) kraus.push_back(k * h.eigenbasis());
  const detail::HolevoObjective objective(std::move(kraus));
  const EnergySphere sphere(h.eigenvalues(), m, e, h.ground_multiplicity());
  const AscentResult best = multi_start_ascent(objective, sphere, opt.search);

  const ComplexMatrix y = h.eigenbasis() * best.point;
  std::vector<double> probs;
  std::vector<DensityOperator> states;
  for (Eigen::Index i = 0; i < y.cols(); ++i) {
    const double p = y.col(i).squaredNorm();
    if (p <= 1e-15) continue;
    probs.push_back(p);
    states.push_back(DensityOperator::pure(y.col(i)));
  }
  double total = 0.0;
  for (double p : probs) total += p;
  for (double& p : probs) p /= total;
  Ensemble mu(std::move(probs), std::move(states));
  const double en = energy(mu.average(), h);
  const double value = holevo_chi(mu.through(phi));
  return {value, std::move(mu), en};
}

/// Energy amplification factor k with sup_{Tr H_in rho <= E} Tr H_out Phi(rho) = k E.
inline double energy_gain(const Channel& phi, const Hamiltonian& h_in, const Hamiltonian& h_out, double e) {
  if (h_in.dim() != phi.in_dim() || h_out.dim() != phi.out_dim()) {
    throw ValidationError("energy_gain: Hamiltonian dimensions differ from the channel");
  }
  if (!(e > h_in.ground_energy())) {
    throw InfeasibleError("energy_gain: energy " + std::to_string(e) + " must exceed input ground energy");
  }
  return max_linear_under_energy(apply_adjoint(phi, h_out.matrix()), h_in, e).value / e;
}

}  // namespace ecdn
