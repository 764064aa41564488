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

// Continuity bounds for information characteristics of channels that are
// eps-close in the energy-constrained diamond norm. Every bound has the form
//
//   a eps (2t + r(t)) F(x / (eps t)) + b g(eps r(t)) + c h2(eps t),
//   r(t) = (1 + t/2) / (1 - eps t),  t in (0, 1/(2 eps)],
//
// with coefficients (a, b, c) fixed by the quantity being bounded and F an
// upper bound on the constrained maximal entropy.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "ecdn/thermo.hpp"

namespace ecdn {

/// F(E) = F_H(E + E0) for a finite Hamiltonian.
struct ShiftedFhat {
  Hamiltonian hamiltonian;
};

/// Piecewise-linear F through tabulated points with increasing abscissae.
class FhatTable {
 public:
  FhatTable(std::vector<double> energies, std::vector<double> values)
      : x_(std::move(energies)), y_(std::move(values)) {
    if (x_.size() < 2 || x_.size() != y_.size()) throw ValidationError("FhatTable: need at least two points");
    for (std::size_t i = 0; i < x_.size(); ++i) {
      if (!std::isfinite(x_[i]) || !std::isfinite(y_[i])) throw ValidationError("FhatTable: non-finite entry");
      if (i > 0 && !(x_[i] > x_[i - 1])) throw ValidationError("FhatTable: energies must increase");
    }
    if (!(x_.front() > 0.0)) throw ValidationError("FhatTable: energies must be positive");
  }

  double operator()(double e) const {
    if (!(e >= x_.front() && e <= x_.back())) {
      throw ValidationError("FhatTable: energy " + std::to_string(e) + " outside tabulated range [" +
                            std::to_string(x_.front()) + ", " + std::to_string(x_.back()) + "]");
    }
    const auto it = std::upper_bound(x_.begin(), x_.end(), e);
    const std::size_t j = it == x_.end() ? x_.size() - 1 : static_cast<std::size_t>(it - x_.begin());
    const double w = (e - x_[j - 1]) / (x_[j] - x_[j - 1]);
    return (1.0 - w) * y_[j - 1] + w * y_[j];
  }

  const std::vector<double>& energies() const { return x_; }
  const std::vector<double>& values() const { return y_; }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

using Fhat = std::variant<FhatOscillator, ShiftedFhat, FhatTable>;

inline double evaluate_fhat(const Fhat& f, double e) {
  return std::visit(
      [e](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ShiftedFhat>) {
          return fhat_shifted(s.hamiltonian, e);
        } else {
          return s(e);
        }
      },
      f);
}

/// Largest argument at which the selected F is still strictly increasing;
/// infinite for the oscillator form.
inline double fhat_valid_limit(const Fhat& f) {
  if (const auto* s = std::get_if<ShiftedFhat>(&f)) return fhat_shifted_valid_limit(s->hamiltonian);
  if (const auto* t = std::get_if<FhatTable>(&f)) return t->energies().back();
  return std::numeric_limits<double>::infinity();
}

enum class BoundKind {
  Chi,           // Holevo quantity of an output ensemble
  Qmi,           // output QMI of n copies
  HolevoCap,     // constrained Holevo capacity
  ClassicalCap,  // constrained classical capacity
  EaCapInput,    // entanglement-assisted capacity, input-side F
  EaCapOutput,   // entanglement-assisted capacity, output-side F
};

struct BoundCoefficients {
  double main = 1.0;
  double g = 2.0;
  double h2 = 2.0;
};

inline BoundCoefficients bound_coefficients(BoundKind kind, std::size_t n = 1) {
  switch (kind) {
    case BoundKind::Chi:
    case BoundKind::HolevoCap:
      return {1.0, 2.0, 2.0};
    case BoundKind::Qmi: {
      const double m = static_cast<double>(n);
      return {2.0 * m, 2.0 * m, 4.0 * m};
    }
    case BoundKind::ClassicalCap:
    case BoundKind::EaCapInput:
    case BoundKind::EaCapOutput:
      return {2.0, 2.0, 4.0};
  }
  throw ValidationError("bound_coefficients: unknown kind");
}

struct BoundInputs {
  double epsilon = 0.0;
  double energy = 0.0;  // E, or k E for the capacity bounds on the output side
  double t = 0.0;
  std::size_t n = 1;
  Fhat fhat = FhatOscillator::uniform(1, 1.0);
  bool log_shift = false;  // oscillator only: F(x) - l ln(eps t) in place of F(x / (eps t))

  void validate() const {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ValidationError("bound: epsilon must be positive");
    if (!(energy > 0.0) || !std::isfinite(energy)) throw ValidationError("bound: energy argument must be positive");
    if (n == 0) throw ValidationError("bound: n must be at least 1");
    if (!(t > 0.0) || t > 0.5 / epsilon * (1.0 + 1e-12)) {
      throw ValidationError("bound: t = " + std::to_string(t) + " outside (0, 1/(2 eps)]");
    }
    if (log_shift && !std::holds_alternative<FhatOscillator>(fhat)) {
      throw ValidationError("bound: the log-shifted form needs the oscillator F");
    }
  }
};

struct BoundValue {
  double total = 0.0;
  double main_term = 0.0;
  double g_term = 0.0;
  double h2_term = 0.0;
  double t_used = 0.0;
  double fhat_argument = 0.0;  // argument passed to F
  double fhat_valid_limit = std::numeric_limits<double>::infinity();
};

/// (1 + t/2) / (1 - eps t).
inline double r_eps(double epsilon, double t) {
  if (!(epsilon * t < 1.0)) throw ValidationError("r_eps: requires eps t < 1");
  return (1.0 + 0.5 * t) / (1.0 - epsilon * t);
}

inline BoundValue evaluate_bound(BoundKind kind, const BoundInputs& in) {
  in.validate();
  const BoundCoefficients c = bound_coefficients(kind, in.n);
  const double eps = in.epsilon;
  const double t = in.t;
  const double r = r_eps(eps, t);
  BoundValue v;
  v.t_used = t;
  v.fhat_valid_limit = fhat_valid_limit(in.fhat);
  double f = 0.0;
  if (in.log_shift) {
    const auto& osc = std::get<FhatOscillator>(in.fhat);
    v.fhat_argument = in.energy;
    f = osc(in.energy) - static_cast<double>(osc.modes()) * std::log(eps * t);
  } else {
    v.fhat_argument = in.energy / (eps * t);
    f = evaluate_fhat(in.fhat, v.fhat_argument);
  }
  v.main_term = c.main * eps * (2.0 * t + r) * f;
  v.g_term = c.g * g(eps * r);
  v.h2_term = c.h2 * h2(eps * t);
  v.total = v.main_term + v.g_term + v.h2_term;
  return v;
}

inline BoundValue bound_chi(const BoundInputs& in) { return evaluate_bound(BoundKind::Chi, in); }
inline BoundValue bound_qmi_n(const BoundInputs& in) { return evaluate_bound(BoundKind::Qmi, in); }
inline BoundValue bound_holevo_cap(const BoundInputs& in) { return evaluate_bound(BoundKind::HolevoCap, in); }
inline BoundValue bound_classical_cap(const BoundInputs& in) { return evaluate_bound(BoundKind::ClassicalCap, in); }
inline BoundValue bound_ea_cap_input_side(const BoundInputs& in) { return evaluate_bound(BoundKind::EaCapInput, in); }
inline BoundValue bound_ea_cap_output_side(const BoundInputs& in) {
  return evaluate_bound(BoundKind::EaCapOutput, in);
}

struct TSearch {
  std::size_t grid_points = 200;
  double lower_factor = 1e-9;  // grid starts at lower_factor / eps
  double rel_width = 1e-6;
};

/// Minimizes the bound over t in (0, 1/(2 eps)]: a log-spaced grid followed
/// by golden-section refinement in ln t around the best grid point. The
/// returned value is never above any grid value.
inline BoundValue optimize_t(BoundKind kind, BoundInputs in, const TSearch& search = {}) {
  if (!(in.epsilon > 0.0 && in.epsilon <= 1.0)) throw ValidationError("optimize_t: epsilon must be in (0, 1]");
  const double t_hi = 0.5 / in.epsilon;
  const double u_lo = std::log(search.lower_factor / in.epsilon);
  const double u_hi = std::log(t_hi);
  const std::size_t n = std::max<std::size_t>(search.grid_points, 3);
  auto at = [&](double u) {
    in.t = std::min(std::exp(u), t_hi);
    return evaluate_bound(kind, in);
  };
  std::vector<double> us(n);
  BoundValue best;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < n; ++i) {
    us[i] = i + 1 == n ? u_hi : u_lo + (u_hi - u_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    const BoundValue v = at(us[i]);
    if (i == 0 || v.total < best.total) {
      best = v;
      best_i = i;
    }
  }
  double a = us[best_i == 0 ? 0 : best_i - 1];
  double b = us[std::min(best_i + 1, n - 1)];
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  BoundValue vc = at(c);
  BoundValue vd = at(d);
  while (std::exp(b) - std::exp(a) > search.rel_width * std::exp(0.5 * (a + b))) {
    if (vc.total <= vd.total) {
      b = d;
      d = c;
      vd = vc;
      c = b - phi * (b - a);
      vc = at(c);
    } else {
      a = c;
      c = d;
      vc = vd;
      d = a + phi * (b - a);
      vd = at(d);
    }
  }
  if (vc.total < best.total) best = vc;
  if (vd.total < best.total) best = vd;
  return best;
}

}  // namespace ecdn
