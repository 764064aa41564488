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

// Brute-force reference computations used by the tests. They share only the
// matrix type and Eigen's Hermitian eigensolver with the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ecdn/channel.hpp"

namespace oracle {

using ecdn::Complex;
using ecdn::ComplexMatrix;
using ecdn::ComplexVector;

inline double abs_eigen_sum(const ComplexMatrix& m) {
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

/// Tr over one factor by explicit index sums.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, int d1, int d2, bool keep_first) {
  const int d = keep_first ? d1 : d2;
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Complex s = 0.0;
      const int other = keep_first ? d2 : d1;
      for (int k = 0; k < other; ++k) {
        const int r = keep_first ? i * d2 + k : k * d2 + i;
        const int c = keep_first ? j * d2 + k : k * d2 + j;
        s += m(r, c);
      }
      out(i, j) = s;
    }
  return out;
}

/// Choi matrix J[(b,a),(b',a')] = sum_k K[b,a] conj(K[b',a']) by loops, and
/// Phi(rho)[b,b'] = sum_{a,a'} J[(b,a),(b',a')] rho[a,a'].
inline ComplexMatrix choi_contraction(const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& rho) {
  const int out = static_cast<int>(kraus.front().rows());
  const int in = static_cast<int>(kraus.front().cols());
  ComplexMatrix res = ComplexMatrix::Zero(out, out);
  for (int b = 0; b < out; ++b)
    for (int bp = 0; bp < out; ++bp)
      for (int a = 0; a < in; ++a)
        for (int ap = 0; ap < in; ++ap) {
          Complex j = 0.0;
          for (const auto& k : kraus) j += k(b, a) * std::conj(k(bp, ap));
          res(b, bp) += j * rho(a, ap);
        }
  return res;
}

struct SignedOps {
  std::vector<ComplexMatrix> ops;
  std::vector<double> signs;
};

inline SignedOps pair_ops(const ecdn::Channel& phi, const ecdn::Channel& psi) {
  SignedOps s;
  for (const auto& k : phi.kraus()) {
    s.ops.push_back(k);
    s.signs.push_back(1.0);
  }
  for (const auto& k : psi.kraus()) {
    s.ops.push_back(k);
    s.signs.push_back(-1.0);
  }
  return s;
}

/// || sum_i s_i (K_i (x) I_R)|psi><psi|(K_i (x) I_R)^dagger ||_1 with the
/// tensor action written out per component; psi index a * r + j.
inline double tensor_objective(const SignedOps& s, const ComplexVector& psi, int r) {
  const int out = static_cast<int>(s.ops.front().rows());
  const int in = static_cast<int>(s.ops.front().cols());
  ComplexMatrix y = ComplexMatrix::Zero(out * r, out * r);
  ComplexVector v(out * r);
  for (std::size_t i = 0; i < s.ops.size(); ++i) {
    v.setZero();
    for (int b = 0; b < out; ++b)
      for (int j = 0; j < r; ++j)
        for (int a = 0; a < in; ++a) v(b * r + j) += s.ops[i](b, a) * psi(a * r + j);
    y += s.signs[i] * (v * v.adjoint());
  }
  return abs_eigen_sum(y);
}

/// Feasible pure states for a diagonal Hamiltonian: excited amplitudes are
/// scaled by the closed-form factor that puts the energy exactly at E.
inline bool scale_into_budget(ComplexVector& psi, const std::vector<double>& levels, int r, double e) {
  const int d = static_cast<int>(levels.size());
  double n0 = 0.0, x0 = 0.0, n1 = 0.0, x1 = 0.0;
  const double e0 = levels.front();
  for (int a = 0; a < d; ++a)
    for (int j = 0; j < r; ++j) {
      const double w = std::norm(psi(a * r + j));
      if (levels[a] <= e0) {
        n0 += w;
        x0 += w * levels[a];
      } else {
        n1 += w;
        x1 += w * levels[a];
      }
    }
  const double tot = n0 + n1;
  if (!(tot > 0.0)) return false;
  if ((x0 + x1) / tot <= e) {
    psi /= std::sqrt(tot);
    return true;
  }
  if (n0 <= 1e-300) return false;
  // (x0 + s x1) / (n0 + s n1) = e
  const double s = (e * n0 - x0) / (x1 - e * n1);
  if (!(s >= 0.0)) return false;
  const double f = std::sqrt(s);
  for (int a = 0; a < d; ++a)
    if (levels[a] > e0)
      for (int j = 0; j < r; ++j) psi(a * r + j) *= f;
  psi /= psi.norm();
  return true;
}

inline ComplexVector gaussian_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(nd(rng), nd(rng));
  return v;
}

/// Best objective over `samples` random feasible pure states, then a
/// (1+1) evolution strategy from the best `polish` of them.
inline double brute_force_ecd(const SignedOps& s, const std::vector<double>& levels, int r, double e,
                              std::mt19937_64& rng, int samples = 100000, int polish = 10, int steps = 3000) {
  const int n = static_cast<int>(levels.size()) * r;
  std::vector<std::pair<double, ComplexVector>> best;
  for (int i = 0; i < samples; ++i) {
    ComplexVector psi = gaussian_vector(n, rng);
    if (!scale_into_budget(psi, levels, r, e)) continue;
    const double v = tensor_objective(s, psi, r);
    if (static_cast<int>(best.size()) < polish) {
      best.emplace_back(v, psi);
      std::sort(best.begin(), best.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    } else if (v > best.back().first) {
      best.back() = {v, psi};
      std::sort(best.begin(), best.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    }
  }
  double top = best.empty() ? 0.0 : best.front().first;
  for (auto& [v, psi] : best) {
    double sigma = 0.1;
    double cur = v;
    for (int it = 0; it < steps && sigma > 1e-9; ++it) {
      ComplexVector cand = psi + sigma * gaussian_vector(n, rng);
      if (!scale_into_budget(cand, levels, r, e)) {
        sigma *= 0.8;
        continue;
      }
      const double cv = tensor_objective(s, cand, r);
      if (cv > cur) {
        cur = cv;
        psi = cand;
        sigma *= 1.5;
      } else {
        sigma *= 0.9;
      }
    }
    top = std::max(top, cur);
  }
  return top;
}

/// ECD distance between U = diag(e^{i theta k}) and the identity: with
/// p the level distribution of the input, the output trace distance of a
/// pure input is 2 sqrt(1 - |sum_k p_k e^{i theta k}|^2). The feasible p form
/// a polytope whose vertices are single levels with E_k <= E and two-level
/// mixtures at energy exactly E, so the minimal modulus is the distance from
/// the origin to the convex hull of the vertex images.
inline double phase_rotation_ecd(const std::vector<double>& levels, double theta, double e) {
  std::vector<std::complex<double>> pts;
  const int d = static_cast<int>(levels.size());
  for (int k = 0; k < d; ++k)
    if (levels[k] <= e) pts.push_back(std::polar(1.0, theta * k));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (levels[i] < e && levels[j] > e) {
        const double w = (levels[j] - e) / (levels[j] - levels[i]);
        pts.push_back(w * std::polar(1.0, theta * i) + (1.0 - w) * std::polar(1.0, theta * j));
      }
  auto cross = [](std::complex<double> a, std::complex<double> b) { return a.real() * b.imag() - a.imag() * b.real(); };
  const int m = static_cast<int>(pts.size());
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int c = b + 1; c < m; ++c) {
        const double s1 = cross(pts[b] - pts[a], -pts[a]);
        const double s2 = cross(pts[c] - pts[b], -pts[b]);
        const double s3 = cross(pts[a] - pts[c], -pts[c]);
        if ((s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0)) return 2.0;
      }
  double dist = 1e300;
  for (int a = 0; a < m; ++a) {
    dist = std::min(dist, std::abs(pts[a]));
    for (int b = a + 1; b < m; ++b) {
      const std::complex<double> u = pts[b] - pts[a];
      const double len2 = std::norm(u);
      if (len2 == 0.0) continue;
      const double t = std::clamp(-(pts[a].real() * u.real() + pts[a].imag() * u.imag()) / len2, 0.0, 1.0);
      dist = std::min(dist, std::abs(pts[a] + t * u));
    }
  }
  return 2.0 * std::sqrt(std::max(0.0, 1.0 - dist * dist));
}

/// Maximal Shannon entropy of a distribution on three levels with mean
/// energy <= E: a 2-D grid over the simplex plus a fine 1-D grid along the
/// face where the constraint is active.
inline double grid_max_entropy3(const std::array<double, 3>& lv, double e) {
  auto ent = [](double a, double b, double c) {
    double s = 0.0;
    for (double p : {a, b, c})
      if (p > 0.0) s -= p * std::log(p);
    return s;
  };
  double best = 0.0;
  const int n = 500;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) {
      const double p1 = static_cast<double>(i) / n, p2 = static_cast<double>(j) / n, p0 = 1.0 - p1 - p2;
      if (p0 * lv[0] + p1 * lv[1] + p2 * lv[2] <= e) best = std::max(best, ent(p0, p1, p2));
    }
  const int m = 200000;
  for (int j = 0; j <= m; ++j) {
    const double p2 = static_cast<double>(j) / m;
    // p0 + p1 = 1 - p2, p0 lv0 + p1 lv1 = e - p2 lv2
    const double p1 = (e - p2 * lv[2] - (1.0 - p2) * lv[0]) / (lv[1] - lv[0]);
    const double p0 = 1.0 - p2 - p1;
    if (p1 < 0.0 || p0 < 0.0) continue;
    best = std::max(best, ent(p0, p1, p2));
  }
  return best;
}

}  // namespace oracle
