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

// Projected gradient ascent on the unit sphere of C^{levels x cols} under a
// mean-energy cap. Rows are indexed by Hamiltonian eigenlevels, so the
// energy of a unit vector y is sum_k E_k ||row_k(y)||^2. The same machinery
// serves pure states on A (x) R and ensembles written as cq-vectors.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "ecdn/matrix.hpp"
#include "ecdn/parallel.hpp"

namespace ecdn {

class EnergySphere {
 public:
  EnergySphere(RealVector levels, std::size_t cols, double cap, std::size_t ground_rows)
      : levels_(std::move(levels)), cols_(cols), cap_(cap), ground_rows_(std::max<std::size_t>(1, ground_rows)) {
    if (levels_.size() == 0 || cols_ == 0) throw ValidationError("EnergySphere: empty shape");
  }

  Eigen::Index rows() const { return levels_.size(); }
  Eigen::Index cols() const { return static_cast<Eigen::Index>(cols_); }
  double cap() const { return cap_; }
  bool constrained() const { return cap_ < levels_.maxCoeff(); }
  const RealVector& levels() const { return levels_; }

  /// Mean energy of y / ||y||.
  double energy(const ComplexMatrix& y) const {
    const double n2 = y.squaredNorm();
    if (!(n2 > 0.0)) return 0.0;
    return levels_.dot(y.rowwise().squaredNorm()) / n2;
  }

  /// Normalizes y, then if the cap is violated rotates it toward its own
  /// ground-level component (or the first ground basis vector) by the
  /// smallest angle found by bisection that restores feasibility.
  void project(ComplexMatrix& y) const {
    const double n = y.norm();
    if (!(n > 0.0)) throw ValidationError("EnergySphere::project: zero vector");
    y /= n;
    if (!constrained() || energy(y) <= cap_) return;
    ComplexMatrix ground = ComplexMatrix::Zero(y.rows(), y.cols());
    const auto gr = static_cast<Eigen::Index>(ground_rows_);
    ground.topRows(gr) = y.topRows(gr);
    const double gn = ground.norm();
    if (gn < 1e-12) {
      ground.setZero();
      ground(0, 0) = 1.0;
    } else {
      ground /= gn;
    }
    auto rotated = [&](double a) {
      ComplexMatrix z = std::cos(a) * y + std::sin(a) * ground;
      return ComplexMatrix(z / z.norm());
    };
    double lo = 0.0;                        // infeasible
    double hi = std::numbers::pi / 2.0;    // energy at the ground level
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if (energy(rotated(mid)) > cap_) lo = mid; else hi = mid;
    }
    y = rotated(hi);
  }

  ComplexMatrix random_point(std::mt19937_64& rng) const {
    std::normal_distribution<double> normal;
    ComplexMatrix y(rows(), cols());
    for (Eigen::Index i = 0; i < y.size(); ++i) y.data()[i] = Complex(normal(rng), normal(rng));
    project(y);
    return y;
  }

  /// Removes the radial part of a Euclidean gradient and, when the energy cap
  /// is active and the gradient points outward, the component normal to the
  /// energy level set.
  ComplexMatrix tangent(const ComplexMatrix& y, const ComplexMatrix& grad) const {
    ComplexMatrix d = grad - inner(y, grad) * y;
    if (!constrained() || energy(y) < cap_ - 1e-9 * std::max(1.0, std::abs(cap_))) return d;
    ComplexMatrix hy = levels_.cast<Complex>().asDiagonal() * y;
    hy -= inner(y, hy) * y;
    const double nn = hy.squaredNorm();
    const double outward = inner(hy, d);
    if (nn > 1e-24 && outward > 0.0) d -= (outward / nn) * hy;
    return d;
  }

  static double inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a.conjugate().cwiseProduct(b)).sum().real();
  }

 private:
  RealVector levels_;
  std::size_t cols_;
  double cap_;
  std::size_t ground_rows_;
};

struct AscentOptions {
  int max_iterations = 5000;
  int window = 20;
  double rel_tol = 1e-9;
  double initial_step = 0.25;
};

struct AscentResult {
  ComplexMatrix point;
  double value = 0.0;
  int iterations = 0;
};

/// Objective: double operator()(const ComplexMatrix& y, ComplexMatrix* grad)
/// returning the value and, when grad is non-null, the Euclidean gradient.
/// Steps have adaptive length along Polak-Ribiere conjugate directions built
/// from tangent gradients; a step is kept only if it strictly improves the
/// objective, and a rejected step resets the direction to the gradient.
/// Stops when the improvement over the last `window` iterations is below
/// rel_tol relative.
template <class Objective>
AscentResult projected_ascent(const Objective& f, const EnergySphere& sphere, ComplexMatrix start,
                              const AscentOptions& opt = {}) {
  AscentResult res;
  res.point = std::move(start);
  sphere.project(res.point);
  ComplexMatrix grad;
  res.value = f(res.point, &grad);
  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(opt.max_iterations) + 1);
  history.push_back(res.value);
  double step = opt.initial_step;
  ComplexMatrix tg = sphere.tangent(res.point, grad);
  ComplexMatrix dir = tg;
  for (int it = 1; it <= opt.max_iterations; ++it) {
    res.iterations = it;
    const double dn = dir.norm();
    if (!(dn > 1e-14)) break;
    ComplexMatrix cand = res.point + (step / dn) * dir;
    sphere.project(cand);
    const double cval = f(cand, nullptr);
    if (cval > res.value) {
      res.point = std::move(cand);
      res.value = f(res.point, &grad);
      ComplexMatrix next = sphere.tangent(res.point, grad);
      const double beta =
          std::max(0.0, EnergySphere::inner(next, next - tg) / std::max(tg.squaredNorm(), 1e-300));
      dir = next + beta * sphere.tangent(res.point, dir);
      if (EnergySphere::inner(dir, next) <= 0.0) dir = next;
      tg = std::move(next);
      step = std::min(step * 1.5, 1.0);
    } else {
      step *= 0.5;
      dir = tg;
    }
    history.push_back(res.value);
    if (it >= opt.window) {
      const double gain = res.value - history[static_cast<std::size_t>(it - opt.window)];
      if (gain <= opt.rel_tol * std::max(std::abs(res.value), 1e-12)) break;
    }
    if (step < 1e-15) break;
  }
  return res;
}

struct MultiStartOptions {
  std::size_t restarts = 32;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  AscentOptions ascent{};
};

/// Independent restarts from random feasible points; restart r draws from
/// mix_seed(seed, r). Returns the best result, ties to the lowest index.
template <class Objective>
AscentResult multi_start_ascent(const Objective& f, const EnergySphere& sphere, const MultiStartOptions& opt) {
  const std::size_t n = std::max<std::size_t>(1, opt.restarts);
  std::vector<AscentResult> runs(n);
  parallel_for(n, opt.threads, [&](std::size_t r) {
    std::mt19937_64 rng(mix_seed(opt.seed, r));
    runs[r] = projected_ascent(f, sphere, sphere.random_point(rng), opt.ascent);
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r)
    if (runs[r].value > runs[best].value) best = r;
  return std::move(runs[best]);
}

}  // namespace ecdn
