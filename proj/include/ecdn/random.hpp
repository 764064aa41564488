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

// Random operators for experiments and property tests.

#include <random>
#include <vector>

#include "ecdn/channel.hpp"
#include "ecdn/states.hpp"

namespace ecdn {

inline ComplexMatrix ginibre(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Complex(normal(rng), normal(rng));
  return m;
}

/// Haar-distributed isometry (rows >= cols) from the QR decomposition of a
/// Ginibre matrix with the phases of R's diagonal removed.
inline ComplexMatrix random_isometry(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  const Eigen::MatrixXcd a = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  const Eigen::MatrixXcd r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

inline ComplexMatrix random_unitary(std::size_t d, std::mt19937_64& rng) { return random_isometry(d, d, rng); }

inline ComplexVector random_pure_vector(std::size_t d, std::mt19937_64& rng) {
  ComplexMatrix g = ginibre(d, 1, rng);
  return ComplexVector(g.col(0)) / g.norm();
}

/// Induced (Hilbert-Schmidt for rank = d) random density operator.
inline DensityOperator random_state(std::size_t d, std::mt19937_64& rng, std::size_t rank = 0) {
  if (rank == 0) rank = d;
  const ComplexMatrix g = ginibre(d, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(hermitian_part(rho));
}

inline ComplexMatrix random_hermitian(std::size_t d, std::mt19937_64& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  return hermitian_part(g);
}

/// Channel with `kraus_count` Kraus operators cut from a Haar isometry
/// C^in -> C^out (x) C^kraus_count.
inline Channel random_channel(std::size_t in, std::size_t out, std::size_t kraus_count, std::mt19937_64& rng) {
  const ComplexMatrix v = random_isometry(out * kraus_count, in, rng);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(kraus_count);
  for (std::size_t j = 0; j < kraus_count; ++j) {
    ComplexMatrix k(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in));
    for (std::size_t b = 0; b < out; ++b) k.row(static_cast<Eigen::Index>(b)) = v.row(static_cast<Eigen::Index>(b * kraus_count + j));
    kraus.push_back(std::move(k));
  }
  return Channel(std::move(kraus));
}

}  // namespace ecdn
