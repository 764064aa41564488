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

// Dense complex operator algebra. Every operator in the library is a
// row-major double precision complex matrix; the Hermitian eigensolver is
// the only spectral kernel.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include "ecdn/errors.hpp"

namespace ecdn {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdFloor = -1e-9;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kTpTol = 1e-8;

/// Eigenvalues in ascending order with the matching unitary of column eigenvectors.
struct HermitianEigen {
  RealVector values;
  ComplexMatrix vectors;
};

inline ComplexMatrix identity(std::size_t d) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

inline bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

inline void require_finite(const ComplexMatrix& m, const char* what) {
  if (!all_finite(m)) throw ValidationError(std::string(what) + ": non-finite entry");
}

inline void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw ValidationError(std::string(what) + ": expected a square matrix, got " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

/// Largest entrywise |M - M^dagger|.
inline double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return (m + m.adjoint()) * 0.5;
}

/// Diagonalizes the Hermitian part of m.
inline HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
  require_square(m, "hermitian_eigen");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(hermitian_part(m)));
  if (solver.info() != Eigen::Success) throw ValidationError("hermitian_eigen: solver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  require_square(m, "hermitian_eigenvalues");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(hermitian_part(m)),
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ValidationError("hermitian_eigenvalues: solver did not converge");
  return solver.eigenvalues();
}

/// Reassembles V diag(f(lambda)) V^dagger.
template <class F>
ComplexMatrix spectral_map(const HermitianEigen& eig, F&& f) {
  const Eigen::Index n = eig.values.size();
  ComplexMatrix scaled = eig.vectors;
  for (Eigen::Index j = 0; j < n; ++j) scaled.col(j) *= f(eig.values(j));
  return scaled * eig.vectors.adjoint();
}

/// Operator absolute value |M| of a Hermitian matrix.
inline ComplexMatrix hermitian_abs(const ComplexMatrix& m) {
  return spectral_map(hermitian_eigen(m), [](double x) { return std::abs(x); });
}

/// Singular values, obtained from the spectrum of M^dagger M with eigenvalues
/// below 1e-14 clamped to zero.
inline RealVector singular_values(const ComplexMatrix& m) {
  const ComplexMatrix gram = m.adjoint() * m;
  RealVector ev = hermitian_eigenvalues(gram);
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = ev(i) < 1e-14 ? 0.0 : std::sqrt(ev(i));
  return ev;
}

/// Kronecker product; index (i_a, i_b) maps to i_a * dim_b + i_b.
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline ComplexVector tensor(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

enum class Factor { First = 0, Second = 1 };

struct BipartiteDims {
  std::size_t first = 1;
  std::size_t second = 1;
  std::size_t total() const { return first * second; }
};

/// Traces out one factor of a (d1 d2) x (d1 d2) operator, returning the
/// operator on the kept factor.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Factor keep) {
  const auto d1 = static_cast<Eigen::Index>(dims.first);
  const auto d2 = static_cast<Eigen::Index>(dims.second);
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw ValidationError("partial_trace: matrix is " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + " but dims are " + std::to_string(d1) + "x" +
                          std::to_string(d2));
  }
  if (keep == Factor::First) {
    ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
    for (Eigen::Index i = 0; i < d1; ++i)
      for (Eigen::Index j = 0; j < d1; ++j) out(i, j) = m.block(i * d2, j * d2, d2, d2).trace();
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (Eigen::Index i = 0; i < d1; ++i) out += m.block(i * d2, i * d2, d2, d2);
  return out;
}

/// Sum of singular values. Hermitian input (defect below 1e-12 relative to
/// the largest entry) goes through the eigenvalues directly.
inline double trace_norm(const ComplexMatrix& m) {
  require_square(m, "trace_norm");
  if (m.size() == 0) return 0.0;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (hermiticity_defect(m) <= 1e-12 * scale) return hermitian_eigenvalues(m).cwiseAbs().sum();
  return singular_values(m).sum();
}

/// Largest singular value.
inline double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m).maxCoeff();
}

}  // namespace ecdn
