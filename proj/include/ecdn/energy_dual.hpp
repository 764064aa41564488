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

#include <cmath>
#include <limits>
#include <string>

#include "ecdn/states.hpp"

namespace ecdn {

struct EnergyDualValue {
  double value = 0.0;       // sup of Tr(A rho) over Tr(H rho) <= E
  double multiplier = 0.0;  // optimal mu
};

/// sup { Tr(A rho) : rho a state, Tr(H rho) <= E } for Hermitian A, through
/// the dual min_{mu >= 0} lambda_max(A - mu H) + mu E. The dual function is
/// convex in mu; its subgradient E - <v|H|v> (v a top eigenvector) is
/// bisected to a sign change. Every mu gives an upper bound, so the returned
/// value is never below the true supremum by more than rounding.
inline EnergyDualValue max_linear_under_energy(const ComplexMatrix& a, const Hamiltonian& h, double e) {
  if (static_cast<std::size_t>(a.rows()) != h.dim()) throw ValidationError("max_linear_under_energy: dimension mismatch");
  if (e < h.ground_energy()) {
    throw InfeasibleError("max_linear_under_energy: energy " + std::to_string(e) + " below ground energy");
  }
  const ComplexMatrix a_eig = h.eigenbasis().adjoint() * hermitian_part(a) * h.eigenbasis();
  const RealVector& levels = h.eigenvalues();
  struct Eval {
    double value;
    double slope;
  };
  auto dual = [&](double mu) -> Eval {
    ComplexMatrix m = a_eig;
    for (Eigen::Index k = 0; k < m.rows(); ++k) m(k, k) -= mu * levels(k);
    const HermitianEigen eig = hermitian_eigen(m);
    const Eigen::Index top = eig.values.size() - 1;
    double en = 0.0;
    for (Eigen::Index k = 0; k < m.rows(); ++k) en += levels(k) * std::norm(eig.vectors(k, top));
    return {eig.values(top) + mu * e, e - en};
  };
  const Eval at0 = dual(0.0);
  if (at0.slope >= 0.0 || e >= h.max_energy()) return {at0.value, 0.0};
  double lo = 0.0;
  double hi = 1.0;
  double scale = std::max(1.0, a_eig.cwiseAbs().maxCoeff()) / std::max(e - h.ground_energy(), 1e-300);
  hi = scale;
  Eval at_hi = dual(hi);
  for (int it = 0; it < 200 && at_hi.slope < 0.0; ++it) {
    lo = hi;
    hi *= 2.0;
    at_hi = dual(hi);
  }
  double best_mu = 0.0;
  double best = at0.value;
  if (at_hi.value < best) {
    best = at_hi.value;
    best_mu = hi;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const Eval v = dual(mid);
    if (v.value < best) {
      best = v.value;
      best_mu = mid;
    }
    if (v.slope < 0.0) lo = mid; else hi = mid;
  }
  return {best, best_mu};
}

}  // namespace ecdn
