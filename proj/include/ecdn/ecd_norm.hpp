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

// Energy-constrained diamond norm
//
//   ||Theta||^E = sup { ||(Theta (x) id_R)(rho)||_1 : Tr(H_A rho_A) <= E }
//
// of a Hermitian-preserving map Theta. The supremum is approached from below
// by multi-start projected gradient ascent over pure inputs on A (x) R and
// bounded from above by Choi-matrix certificates, so every estimate is a
// bracket [lower, upper].

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecdn/channel.hpp"
#include "ecdn/energy_dual.hpp"
#include "ecdn/sphere_ascent.hpp"
#include "ecdn/states.hpp"

namespace ecdn {

struct EcdProblem {
  HermitianPreservingMap map;
  Hamiltonian h_in;
  double energy = 0.0;
  std::size_t r_dim = 0;  // 0 selects in_dim

  std::size_t reference_dim() const { return r_dim == 0 ? map.in_dim() : r_dim; }

  void validate() const {
    if (h_in.dim() != map.in_dim()) {
      throw ValidationError("EcdProblem: Hamiltonian dimension " + std::to_string(h_in.dim()) +
                            " differs from map input dimension " + std::to_string(map.in_dim()));
    }
    if (!(energy > h_in.ground_energy())) {
      throw InfeasibleError("EcdProblem: energy " + std::to_string(energy) + " must exceed ground energy " +
                            std::to_string(h_in.ground_energy()));
    }
  }
};

struct EcdEstimate {
  double lower = 0.0;
  double upper = 0.0;
  ComplexVector witness;  // unit vector on A (x) R, index a * r_dim + r
  double witness_energy = 0.0;
};

struct UpperBounds {
  double choi = INFINITY;           // ||Tr_B |J| ||_op
  double channel_pair = INFINITY;   // 2 for a difference of channels
  double energy_choi = INFINITY;    // sup of Tr(Tr_B|J|^T rho) under the energy cap
  double truncation = INFINITY;     // best q_n certificate plus tail term
  double best() const { return std::min(std::min(choi, channel_pair), std::min(energy_choi, truncation)); }
};

using EstimatorOptions = MultiStartOptions;

namespace detail {

// Trace norm of Y = sum_i s_i (A_i y)(A_i y)^dagger through the r x r Gram
// matrix of the columns w_i = vec(A_i y). With G = W^dagger W = U L U^dagger
// the nonzero spectrum of Y is that of Z = L^1/2 U^dagger S U L^1/2, and
// sign(Y) W = W U L^-1/2 sign(Z) L^1/2 U^dagger gives the gradient
// 2 sum_i s_i A_i^dagger sign(Y) w_i. Zero eigenvalues of Z count as +.
class TraceNormObjective {
 public:
  explicit TraceNormObjective(std::vector<SignedKraus> terms) : terms_(std::move(terms)) {}

  double operator()(const ComplexMatrix& y, ComplexMatrix* grad) const {
    const auto r = static_cast<Eigen::Index>(terms_.size());
    if (r == 0) {
      if (grad) *grad = ComplexMatrix::Zero(y.rows(), y.cols());
      return 0.0;
    }
    const Eigen::Index out = terms_.front().op.rows();
    const Eigen::Index n = out * y.cols();
    Eigen::MatrixXcd w(n, r);
    for (Eigen::Index i = 0; i < r; ++i) {
      const ComplexMatrix p = terms_[i].op * y;
      w.col(i) = Eigen::Map<const ComplexVector>(p.data(), n);
    }
    const Eigen::MatrixXcd gram = w.adjoint() * w;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ge(gram);
    const RealVector& lam = ge.eigenvalues();
    const double top = lam.maxCoeff();
    if (!(top > 1e-300)) {
      if (grad) *grad = ComplexMatrix::Zero(y.rows(), y.cols());
      return 0.0;
    }
    Eigen::Index first = 0;
    while (lam(first) <= 1e-13 * top) ++first;
    const Eigen::Index k = r - first;
    const Eigen::MatrixXcd u = ge.eigenvectors().rightCols(k);
    const RealVector root = lam.tail(k).cwiseSqrt();
    const Eigen::MatrixXcd f = u * root.cast<Complex>().asDiagonal();
    Eigen::MatrixXcd z = f.adjoint() * signs().asDiagonal() * f;
    z = (z + z.adjoint()).eval() * 0.5;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ze(z);
    const RealVector& d = ze.eigenvalues();
    const double value = d.cwiseAbs().sum();
    if (!grad) return value;

    RealVector sgn(k);
    for (Eigen::Index j = 0; j < k; ++j) sgn(j) = d(j) < 0.0 ? -1.0 : 1.0;
    const Eigen::MatrixXcd& q = ze.eigenvectors();
    const Eigen::MatrixXcd c = u * root.cwiseInverse().cast<Complex>().asDiagonal() * q *
                               sgn.cast<Complex>().asDiagonal() * q.adjoint() *
                               root.cast<Complex>().asDiagonal() * u.adjoint();
    const Eigen::MatrixXcd t = w * c;
    *grad = ComplexMatrix::Zero(y.rows(), y.cols());
    for (Eigen::Index i = 0; i < r; ++i) {
      const Eigen::Map<const ComplexMatrix> ui(t.col(i).data(), out, y.cols());
      grad->noalias() += (2.0 * terms_[i].sign) * (terms_[i].op.adjoint() * ui);
    }
    return value;
  }

 private:
  Eigen::VectorXcd signs() const {
    Eigen::VectorXcd s(static_cast<Eigen::Index>(terms_.size()));
    for (std::size_t i = 0; i < terms_.size(); ++i) s(static_cast<Eigen::Index>(i)) = terms_[i].sign;
    return s;
  }

  std::vector<SignedKraus> terms_;
};

// Signed Kraus terms composed with an input isometry (columns = new basis).
inline std::vector<SignedKraus> restrict_terms(const HermitianPreservingMap& map, const ComplexMatrix& basis) {
  std::vector<SignedKraus> out;
  out.reserve(map.signed_kraus().size());
  for (const auto& t : map.signed_kraus()) out.push_back({t.op * basis, t.sign});
  return out;
}

// Reference marginal Tr_B |J| of the Choi matrix built from signed terms.
inline ComplexMatrix abs_choi_marginal(const std::vector<SignedKraus>& terms, std::size_t in, std::size_t out) {
  const auto n = static_cast<Eigen::Index>(in * out);
  ComplexMatrix choi = ComplexMatrix::Zero(n, n);
  for (const auto& t : terms) {
    const Eigen::Map<const ComplexVector> v(t.op.data(), n);
    choi.noalias() += t.sign * (v * v.adjoint());
  }
  return partial_trace(hermitian_abs(choi), {out, in}, Factor::Second);
}

inline ComplexMatrix as_matrix(const ComplexVector& psi, std::size_t in, std::size_t r) {
  if (static_cast<std::size_t>(psi.size()) != in * r) throw ValidationError("ecd: vector has wrong length");
  return Eigen::Map<const ComplexMatrix>(psi.data(), static_cast<Eigen::Index>(in), static_cast<Eigen::Index>(r));
}

inline ComplexVector as_vector(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

}  // namespace detail

/// (I_B (x) M) J (I_B (x) M)^dagger with M = X^T, which equals
/// (Theta (x) id_R)(|psi><psi|) for psi = sum_{a,r} X[a,r] |a>|r>.
inline ComplexMatrix choi_congruence(const HermitianPreservingMap& map, const ComplexMatrix& x) {
  const ComplexMatrix lift = tensor(identity(map.out_dim()), ComplexMatrix(x.transpose()));
  return lift * map.choi() * lift.adjoint();
}

/// Mean energy <psi|H (x) I|psi> of a vector on A (x) R.
inline double input_energy(const ComplexVector& psi, const Hamiltonian& h, std::size_t r_dim) {
  const ComplexMatrix x = detail::as_matrix(psi, h.dim(), r_dim);
  return energy(ComplexMatrix(x * x.adjoint()), h);
}

/// ||(Theta (x) id_R)(|psi><psi|)||_1 through the Choi congruence.
inline double ecd_objective(const EcdProblem& problem, const ComplexVector& psi) {
  problem.validate();
  const std::size_t r = problem.reference_dim();
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw ValidationError("ecd_objective: input vector is not normalized");
  const double en = input_energy(psi, problem.h_in, r);
  if (en > problem.energy + 1e-9) {
    throw InfeasibleError("ecd_objective: input energy " + std::to_string(en) + " exceeds budget " +
                          std::to_string(problem.energy));
  }
  return trace_norm(choi_congruence(problem.map, detail::as_matrix(psi, problem.map.in_dim(), r)));
}

/// Same value by applying the signed Kraus terms tensored with id_R.
inline double ecd_objective_direct(const HermitianPreservingMap& map, const ComplexVector& psi, std::size_t r_dim) {
  return trace_norm(map.apply_extended(psi * psi.adjoint(), r_dim));
}

/// ||Tr_B |J| ||_op, an upper bound on the diamond norm (the pair
/// Y0 = Y1 = |J| is feasible for the dual of the diamond-norm program).
inline double diamond_upper_bound(const HermitianPreservingMap& map) {
  if (map.is_zero()) return 0.0;
  return hermitian_eigenvalues(detail::abs_choi_marginal(map.signed_kraus(), map.in_dim(), map.out_dim())).maxCoeff();
}

/// For pure psi, ||(Theta (x) id)(psi)||_1 <= Tr(T rho_A^T) with
/// T = Tr_B |J|; maximizing the right side over rho_A with
/// Tr(H rho_A) <= E gives an energy-dependent certificate.
inline double energy_constrained_choi_bound(const HermitianPreservingMap& map, const Hamiltonian& h, double e) {
  if (map.is_zero()) return 0.0;
  const ComplexMatrix t = detail::abs_choi_marginal(map.signed_kraus(), map.in_dim(), map.out_dim());
  return max_linear_under_energy(ComplexMatrix(t.transpose()), h, e).value;
}

/// Upper certificate for q_n: the Choi bound of the map restricted to the n
/// lowest eigenvectors of h.
inline double qn_upper_bound(const HermitianPreservingMap& map, const Hamiltonian& h, std::size_t n) {
  if (n == 0 || n > h.dim()) throw ValidationError("qn_upper_bound: n must be in [1, dim]");
  if (map.is_zero()) return 0.0;
  const ComplexMatrix basis = h.eigenbasis().leftCols(static_cast<Eigen::Index>(n));
  const auto terms = detail::restrict_terms(map, basis);
  return hermitian_eigenvalues(detail::abs_choi_marginal(terms, n, map.out_dim())).maxCoeff();
}

/// All upper certificates for the problem. The truncation certificate is
/// q_n^upper + 4 D sqrt(E / E_n) with D the best unconstrained bound; it is
/// only evaluated for n where the tail term alone can still improve.
inline UpperBounds ecd_upper_bounds(const EcdProblem& problem) {
  problem.validate();
  UpperBounds ub;
  const auto& map = problem.map;
  if (map.is_zero()) {
    ub.choi = ub.channel_pair = ub.energy_choi = ub.truncation = 0.0;
    return ub;
  }
  const ComplexMatrix t = detail::abs_choi_marginal(map.signed_kraus(), map.in_dim(), map.out_dim());
  ub.choi = hermitian_eigenvalues(t).maxCoeff();
  if (map.kind() == HermitianPreservingMap::Kind::ChannelDifference) ub.channel_pair = 2.0;
  if (map.kind() == HermitianPreservingMap::Kind::Channel) ub.channel_pair = 1.0;
  ub.energy_choi = max_linear_under_energy(ComplexMatrix(t.transpose()), problem.h_in, problem.energy).value;
  const double d_norm = std::min(ub.choi, ub.channel_pair);
  const RealVector& levels = problem.h_in.eigenvalues();
  for (std::size_t n = 1; n < problem.h_in.dim(); ++n) {
    const double en = levels(static_cast<Eigen::Index>(n));
    if (!(en > 0.0)) continue;
    const double tail = 4.0 * d_norm * std::sqrt(problem.energy / en);
    if (tail >= ub.best()) continue;
    ub.truncation = std::min(ub.truncation, qn_upper_bound(map, problem.h_in, n) + tail);
  }
  return ub;
}

inline double ecd_upper_bound(const EcdProblem& problem) { return ecd_upper_bounds(problem).best(); }

namespace detail {

inline EcdEstimate finish_estimate(const AscentResult& best, const ComplexMatrix& basis, const EcdProblem& problem,
                                   double upper) {
  EcdEstimate est;
  ComplexMatrix x = basis * best.point;
  x /= x.norm();
  est.witness = as_vector(x);
  est.witness_energy = input_energy(est.witness, problem.h_in, problem.reference_dim());
  if (est.witness_energy > problem.energy + 1e-9) throw std::logic_error("ecd_norm_estimate: infeasible witness");
  est.lower = trace_norm(choi_congruence(problem.map, x));
  est.upper = upper;
  if (est.lower > est.upper) {
    if (est.lower - est.upper > 1e-9) throw std::logic_error("ecd_norm_estimate: lower exceeds rigorous upper bound");
    est.upper = est.lower;
  }
  return est;
}

inline EcdEstimate zero_estimate(const EcdProblem& problem) {
  const std::size_t r = problem.reference_dim();
  ComplexMatrix x = ComplexMatrix::Zero(static_cast<Eigen::Index>(problem.map.in_dim()), static_cast<Eigen::Index>(r));
  x.col(0) = problem.h_in.eigenbasis().col(0);
  EcdEstimate est;
  est.witness = as_vector(x);
  est.witness_energy = problem.h_in.ground_energy();
  return est;
}

}  // namespace detail

/// Bracket for ||Theta||^E. Deterministic for a fixed seed.
inline EcdEstimate ecd_norm_estimate(const EcdProblem& problem, const EstimatorOptions& opt = {}) {
  problem.validate();
  if (problem.map.is_zero()) return detail::zero_estimate(problem);
  const std::size_t r = problem.reference_dim();
  const Hamiltonian& h = problem.h_in;
  const detail::TraceNormObjective objective(detail::restrict_terms(problem.map, h.eigenbasis()));
  const EnergySphere sphere(h.eigenvalues(), r, problem.energy, h.ground_multiplicity());
  const AscentResult best = multi_start_ascent(objective, sphere, opt);
  return detail::finish_estimate(best, h.eigenbasis(), problem, ecd_upper_bound(problem));
}

/// Unconstrained diamond-norm bracket with an r_dim-dimensional reference.
inline EcdEstimate diamond_norm_estimate(const HermitianPreservingMap& map, const EstimatorOptions& opt = {},
                                         std::size_t r_dim = 0) {
  const std::size_t d = map.in_dim();
  // A flat Hamiltonian with the budget at the top level: the cap never binds.
  std::vector<double> levels(d, 0.0);
  if (d > 1) levels.back() = 1.0;
  const EcdProblem problem{map, Hamiltonian::diagonal(levels), 1.0, r_dim};
  if (map.is_zero()) return detail::zero_estimate(problem);
  const std::size_t r = problem.reference_dim();
  const detail::TraceNormObjective objective(map.signed_kraus());
  const EnergySphere sphere(RealVector::Zero(static_cast<Eigen::Index>(d)), r, INFINITY, 1);
  const AscentResult best = multi_start_ascent(objective, sphere, opt);
  const double upper = std::min(diamond_upper_bound(map),
                                map.is_channel_difference() ? 2.0 : INFINITY);
  return detail::finish_estimate(best, identity(d), problem, upper);
}

/// Multi-start estimate of the seminorm q_n: the diamond-type supremum over
/// inputs supported on span{tau_0..tau_{n-1}} (x) R with an n-dimensional
/// reference.
inline double q_n(const HermitianPreservingMap& map, const Hamiltonian& h, std::size_t n,
                  const EstimatorOptions& opt = {}) {
  if (h.dim() != map.in_dim()) throw ValidationError("q_n: Hamiltonian dimension differs from map input");
  if (n == 0 || n > h.dim()) {
    throw ValidationError("q_n: n = " + std::to_string(n) + " outside [1, " + std::to_string(h.dim()) + "]");
  }
  if (map.is_zero()) return 0.0;
  const ComplexMatrix basis = h.eigenbasis().leftCols(static_cast<Eigen::Index>(n));
  const detail::TraceNormObjective objective(detail::restrict_terms(map, basis));
  const EnergySphere sphere(RealVector::Zero(static_cast<Eigen::Index>(n)), n, INFINITY, 1);
  const AscentResult best = multi_start_ascent(objective, sphere, opt);
  ComplexMatrix x = basis * best.point;
  x /= x.norm();
  return trace_norm(choi_congruence(map, x));
}

struct StateTruncation {
  double tail_weight = 0.0;  // r_n = Tr (I - P_n) rho_A
  double bound = 0.0;        // 4 sqrt(r_n)
  double distance = 0.0;     // ||rho - rho_n||_1
};

/// Compresses rho on A (x) R to span{tau_0..tau_{n-1}} (x) R, renormalizes,
/// and reports the trace distance next to the 4 sqrt(r_n) estimate.
inline StateTruncation state_truncation_bound(const DensityOperator& rho, const Hamiltonian& h, std::size_t n) {
  const std::size_t da = h.dim();
  if (rho.dim() % da != 0) throw ValidationError("state_truncation_bound: state dimension not a multiple of dim A");
  if (n == 0 || n > da) throw ValidationError("state_truncation_bound: n outside [1, dim A]");
  const std::size_t r = rho.dim() / da;
  const ComplexMatrix proj = tensor(h.low_projector(n), identity(r));
  const ComplexMatrix kept = proj * rho.matrix() * proj;
  StateTruncation out;
  out.tail_weight = std::max(0.0, 1.0 - kept.trace().real());
  if (out.tail_weight >= 1.0 - 1e-12) {
    throw ValidationError("state_truncation_bound: state has no weight in the low-energy subspace");
  }
  out.bound = 4.0 * std::sqrt(out.tail_weight);
  out.distance = trace_norm(hermitian_part(rho.matrix() - kept / (1.0 - out.tail_weight)));
  if (out.distance > out.bound + 1e-9) throw std::logic_error("state_truncation_bound: distance exceeds 4 sqrt(r_n)");
  return out;
}

/// q_n(Theta) + 8 sqrt(E / E_n), an upper estimate of ||Theta||^E for a
/// difference of channels. E_n is the n-th eigenvalue (0-based), the top
/// level when n equals the dimension.
inline double truncation_norm_bound(const HermitianPreservingMap& map, const Hamiltonian& h, double e, std::size_t n,
                                    const EstimatorOptions& opt = {}) {
  if (n == 0 || n > h.dim()) throw ValidationError("truncation_norm_bound: n outside [1, dim]");
  const double en = h.eigenvalues()(static_cast<Eigen::Index>(std::min(n, h.dim() - 1)));
  if (!(en > 0.0)) throw ValidationError("truncation_norm_bound: E_n must be positive");
  return q_n(map, h, n, opt) + 8.0 * std::sqrt(e / en);
}

}  // namespace ecdn
