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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ecdn/matrix.hpp"

namespace ecdn {

/// Positive unit-trace operator. Construction validates Hermiticity
/// (1e-10), the eigenvalue floor (-1e-9) and the trace (1e-10).
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix m) : m_(std::move(m)) {
    require_square(m_, "DensityOperator");
    require_finite(m_, "DensityOperator");
    if (m_.rows() == 0) throw ValidationError("DensityOperator: empty matrix");
    const double herm = hermiticity_defect(m_);
    if (herm > kHermitianTol) {
      throw ValidationError("DensityOperator: not Hermitian (defect " + std::to_string(herm) + ")");
    }
    m_ = hermitian_part(m_);
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol) {
      throw ValidationError("DensityOperator: trace " + std::to_string(tr) + " differs from 1");
    }
    const double lo = hermitian_eigenvalues(m_).minCoeff();
    if (lo < kPsdFloor) {
      throw ValidationError("DensityOperator: negative eigenvalue " + std::to_string(lo));
    }
  }

  static DensityOperator pure(const ComplexVector& v) {
    const double n = v.norm();
    if (!(n > 0.0)) throw ValidationError("DensityOperator::pure: zero vector");
    const ComplexVector u = v / n;
    return DensityOperator(u * u.adjoint());
  }

  static DensityOperator maximally_mixed(std::size_t d) {
    return DensityOperator(identity(d) / static_cast<double>(d));
  }

  /// Computational basis projector |k><k|.
  static DensityOperator basis(std::size_t d, std::size_t k) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0;
    return DensityOperator(std::move(m));
  }

  const ComplexMatrix& matrix() const { return m_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  RealVector spectrum() const { return hermitian_eigenvalues(m_); }

 private:
  ComplexMatrix m_;
};

/// Positive Hamiltonian held in spectral form. Eigenvalues are sorted
/// nondecreasing and the eigenbasis columns follow the same order.
class Hamiltonian {
 public:
  Hamiltonian(std::vector<double> eigenvalues, ComplexMatrix eigenbasis) {
    const auto n = static_cast<Eigen::Index>(eigenvalues.size());
    if (n == 0) throw ValidationError("Hamiltonian: empty spectrum");
    if (eigenbasis.rows() != n || eigenbasis.cols() != n) {
      throw ValidationError("Hamiltonian: eigenbasis must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    require_finite(eigenbasis, "Hamiltonian eigenbasis");
    for (double e : eigenvalues) {
      if (!std::isfinite(e)) throw ValidationError("Hamiltonian: non-finite eigenvalue");
    }
    const double unitarity = (eigenbasis.adjoint() * eigenbasis - identity(eigenvalues.size())).cwiseAbs().maxCoeff();
    if (unitarity > kHermitianTol) {
      throw ValidationError("Hamiltonian: eigenbasis not unitary (defect " + std::to_string(unitarity) + ")");
    }
    std::vector<Eigen::Index> order(eigenvalues.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return eigenvalues[a] < eigenvalues[b]; });
    levels_.resize(n);
    basis_.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      levels_(k) = eigenvalues[order[k]];
      basis_.col(k) = eigenbasis.col(order[k]);
    }
    if (levels_(0) < -1e-12) {
      throw ValidationError("Hamiltonian: negative ground energy " + std::to_string(levels_(0)));
    }
    levels_(0) = std::max(levels_(0), 0.0);
  }

  static Hamiltonian diagonal(std::vector<double> levels) {
    const std::size_t n = levels.size();
    return Hamiltonian(std::move(levels), identity(n));
  }

  static Hamiltonian from_matrix(const ComplexMatrix& h) {
    require_square(h, "Hamiltonian::from_matrix");
    const double herm = hermiticity_defect(h);
    if (herm > kHermitianTol) throw ValidationError("Hamiltonian::from_matrix: not Hermitian");
    HermitianEigen eig = hermitian_eigen(h);
    return Hamiltonian(std::vector<double>(eig.values.data(), eig.values.data() + eig.values.size()),
                       std::move(eig.vectors));
  }

  std::size_t dim() const { return static_cast<std::size_t>(levels_.size()); }
  const RealVector& eigenvalues() const { return levels_; }
  const ComplexMatrix& eigenbasis() const { return basis_; }
  double ground_energy() const { return levels_(0); }
  double max_energy() const { return levels_(levels_.size() - 1); }
  /// Mean energy of the maximally mixed state, Tr H / d.
  double uniform_mean() const { return levels_.mean(); }

  /// Size of the lowest eigenvalue cluster (consecutive gaps <= gap).
  std::size_t ground_multiplicity(double gap = 1e-9) const {
    std::size_t m = 1;
    while (m < dim() && levels_(static_cast<Eigen::Index>(m)) - levels_(static_cast<Eigen::Index>(m) - 1) <= gap) ++m;
    return m;
  }

  ComplexMatrix matrix() const {
    return basis_ * levels_.cast<Complex>().asDiagonal() * basis_.adjoint();
  }

  /// Projector onto the span of the n lowest eigenvectors.
  ComplexMatrix low_projector(std::size_t n) const {
    if (n > dim()) throw ValidationError("low_projector: n exceeds dimension");
    const auto k = static_cast<Eigen::Index>(n);
    return basis_.leftCols(k) * basis_.leftCols(k).adjoint();
  }

 private:
  RealVector levels_;
  ComplexMatrix basis_;
};

/// Mean energy Tr(H rho).
inline double energy(const ComplexMatrix& rho, const Hamiltonian& h) {
  if (static_cast<std::size_t>(rho.rows()) != h.dim() || rho.rows() != rho.cols()) {
    throw ValidationError("energy: state is " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
                          ", Hamiltonian has dimension " + std::to_string(h.dim()));
  }
  const ComplexMatrix in_basis = h.eigenbasis().adjoint() * rho * h.eigenbasis();
  double e = 0.0;
  for (Eigen::Index k = 0; k < in_basis.rows(); ++k) e += h.eigenvalues()(k) * in_basis(k, k).real();
  return e;
}

inline double energy(const DensityOperator& rho, const Hamiltonian& h) { return energy(rho.matrix(), h); }

}  // namespace ecdn
