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
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ecdn/matrix.hpp"

namespace ecdn {

/// Choi matrix (Phi (x) id)(|Omega><Omega|) with the unnormalized
/// Omega = sum_i |i>|i>. Index order is (output, reference):
/// row (b, a) -> b * in_dim + a.
inline ComplexMatrix choi_of(const std::vector<ComplexMatrix>& kraus) {
  if (kraus.empty()) throw ValidationError("choi_of: empty Kraus list");
  const Eigen::Index out = kraus.front().rows();
  const Eigen::Index in = kraus.front().cols();
  ComplexMatrix choi = ComplexMatrix::Zero(out * in, out * in);
  for (const auto& k : kraus) {
    if (k.rows() != out || k.cols() != in) throw ValidationError("choi_of: inconsistent Kraus dimensions");
    // (K (x) I)|Omega> is vec(K) in row-major order.
    const Eigen::Map<const ComplexVector> v(k.data(), out * in);
    choi.noalias() += v * v.adjoint();
  }
  return choi;
}

/// Phi(rho) = Tr_R[J (I (x) rho^T)], the Choi contraction.
inline ComplexMatrix apply_via_choi(const ComplexMatrix& choi, std::size_t in_dim, std::size_t out_dim,
                                    const ComplexMatrix& rho) {
  const auto in = static_cast<Eigen::Index>(in_dim);
  const auto out = static_cast<Eigen::Index>(out_dim);
  if (rho.rows() != in || rho.cols() != in) throw ValidationError("apply_via_choi: dimension mismatch");
  if (choi.rows() != in * out) throw ValidationError("apply_via_choi: Choi has wrong size");
  ComplexMatrix res = ComplexMatrix::Zero(out, out);
  for (Eigen::Index b = 0; b < out; ++b)
    for (Eigen::Index bp = 0; bp < out; ++bp) {
      Complex acc = 0.0;
      for (Eigen::Index a = 0; a < in; ++a)
        for (Eigen::Index ap = 0; ap < in; ++ap) acc += choi(b * in + a, bp * in + ap) * rho(a, ap);
      res(b, bp) = acc;
    }
  return res;
}

/// Completely positive trace-preserving map in Kraus form.
class Channel {
 public:
  explicit Channel(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw ValidationError("Channel: empty Kraus list");
    out_ = static_cast<std::size_t>(kraus_.front().rows());
    in_ = static_cast<std::size_t>(kraus_.front().cols());
    if (in_ == 0 || out_ == 0) throw ValidationError("Channel: zero dimension");
    ComplexMatrix sum = ComplexMatrix::Zero(static_cast<Eigen::Index>(in_), static_cast<Eigen::Index>(in_));
    for (const auto& k : kraus_) {
      if (static_cast<std::size_t>(k.rows()) != out_ || static_cast<std::size_t>(k.cols()) != in_) {
        throw ValidationError("Channel: inconsistent Kraus dimensions");
      }
      require_finite(k, "Channel Kraus operator");
      sum.noalias() += k.adjoint() * k;
    }
    const double defect = (sum - identity(in_)).cwiseAbs().maxCoeff();
    if (defect > kTpTol) {
      throw ValidationError("Channel: not trace preserving, max |sum K^dagger K - I| = " + std::to_string(defect));
    }
    choi_ = choi_of(kraus_);
  }

  static Channel unitary(const ComplexMatrix& u) { return Channel({u}); }

  std::size_t in_dim() const { return in_; }
  std::size_t out_dim() const { return out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  const ComplexMatrix& choi() const { return choi_; }

  double tp_defect() const {
    ComplexMatrix sum = ComplexMatrix::Zero(static_cast<Eigen::Index>(in_), static_cast<Eigen::Index>(in_));
    for (const auto& k : kraus_) sum.noalias() += k.adjoint() * k;
    return (sum - identity(in_)).cwiseAbs().maxCoeff();
  }

  /// Full Choi check: Hermitian PSD and reference marginal equal to I, each
  /// within 1e-8. Not run on construction since it diagonalizes the Choi.
  void check_invariants() const {
    if (tp_defect() > kTpTol) throw ValidationError("Channel: trace preservation defect");
    if (hermiticity_defect(choi_) > kTpTol) throw ValidationError("Channel: Choi matrix not Hermitian");
    const double lo = hermitian_eigenvalues(choi_).minCoeff();
    if (lo < -kTpTol) throw ValidationError("Channel: Choi matrix not PSD (" + std::to_string(lo) + ")");
    const ComplexMatrix ref = partial_trace(choi_, {out_, in_}, Factor::Second);
    if ((ref - identity(in_)).cwiseAbs().maxCoeff() > kTpTol) {
      throw ValidationError("Channel: Choi reference marginal differs from identity");
    }
  }

 private:
  std::vector<ComplexMatrix> kraus_;
  std::size_t in_ = 0;
  std::size_t out_ = 0;
  ComplexMatrix choi_;
};

/// sum K rho K^dagger.
inline ComplexMatrix apply_channel(const Channel& phi, const ComplexMatrix& rho) {
  const auto in = static_cast<Eigen::Index>(phi.in_dim());
  if (rho.rows() != in || rho.cols() != in) {
    throw ValidationError("apply_channel: state is " + std::to_string(rho.rows()) + "x" +
                          std::to_string(rho.cols()) + ", channel input dimension is " + std::to_string(in));
  }
  const auto out = static_cast<Eigen::Index>(phi.out_dim());
  ComplexMatrix res = ComplexMatrix::Zero(out, out);
  for (const auto& k : phi.kraus()) res.noalias() += k * rho * k.adjoint();
  return res;
}

/// Heisenberg picture: sum K^dagger X K.
inline ComplexMatrix apply_adjoint(const Channel& phi, const ComplexMatrix& x) {
  const auto in = static_cast<Eigen::Index>(phi.in_dim());
  ComplexMatrix res = ComplexMatrix::Zero(in, in);
  for (const auto& k : phi.kraus()) res.noalias() += k.adjoint() * x * k;
  return res;
}

/// (Phi (x) id_R)(rho) for rho on A (x) R.
inline ComplexMatrix apply_channel_extended(const Channel& phi, const ComplexMatrix& rho, std::size_t r_dim) {
  const auto in = static_cast<Eigen::Index>(phi.in_dim() * r_dim);
  if (rho.rows() != in || rho.cols() != in) throw ValidationError("apply_channel_extended: dimension mismatch");
  const ComplexMatrix id_r = identity(r_dim);
  const auto out = static_cast<Eigen::Index>(phi.out_dim() * r_dim);
  ComplexMatrix res = ComplexMatrix::Zero(out, out);
  for (const auto& k : phi.kraus()) {
    const ComplexMatrix kk = tensor(k, id_r);
    res.noalias() += kk * rho * kk.adjoint();
  }
  return res;
}

/// One term of Theta(X) = sum_i sign_i * op_i X op_i^dagger.
struct SignedKraus {
  ComplexMatrix op;
  double sign = 1.0;
};

/// Hermitian-preserving map T(H_A) -> T(H_B), stored by its Hermitian Choi
/// matrix together with a signed Kraus factorization of it.
class HermitianPreservingMap {
 public:
  enum class Kind { General, Channel, ChannelDifference };

  /// Factors an arbitrary Hermitian Choi matrix through its eigendecomposition.
  HermitianPreservingMap(std::size_t in_dim, std::size_t out_dim, ComplexMatrix choi)
      : in_(in_dim), out_(out_dim), choi_(std::move(choi)) {
    const auto n = static_cast<Eigen::Index>(in_ * out_);
    if (choi_.rows() != n || choi_.cols() != n) throw ValidationError("HermitianPreservingMap: Choi has wrong size");
    require_finite(choi_, "HermitianPreservingMap Choi");
    if (hermiticity_defect(choi_) > kHermitianTol) throw ValidationError("HermitianPreservingMap: Choi not Hermitian");
    choi_ = hermitian_part(choi_);
    if (is_zero()) return;
    const HermitianEigen eig = hermitian_eigen(choi_);
    const double cut = 1e-14 * std::max(1.0, eig.values.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
      const double lam = eig.values(i);
      if (std::abs(lam) <= cut) continue;
      ComplexMatrix op(static_cast<Eigen::Index>(out_), static_cast<Eigen::Index>(in_));
      for (Eigen::Index b = 0; b < op.rows(); ++b)
        for (Eigen::Index a = 0; a < op.cols(); ++a) op(b, a) = eig.vectors(b * op.cols() + a, i);
      terms_.push_back({op * std::sqrt(std::abs(lam)), lam > 0 ? 1.0 : -1.0});
    }
  }

  static HermitianPreservingMap from_channel(const Channel& phi) {
    HermitianPreservingMap m(phi.in_dim(), phi.out_dim(), Kind::Channel);
    m.choi_ = phi.choi();
    for (const auto& k : phi.kraus()) m.terms_.push_back({k, 1.0});
    return m;
  }

  /// Phi - Psi, keeping both Kraus sets as the factorization.
  static HermitianPreservingMap difference(const Channel& phi, const Channel& psi) {
    if (phi.in_dim() != psi.in_dim() || phi.out_dim() != psi.out_dim()) {
      throw ValidationError("HermitianPreservingMap::difference: channel dimensions differ");
    }
    HermitianPreservingMap m(phi.in_dim(), phi.out_dim(), Kind::ChannelDifference);
    m.choi_ = phi.choi() - psi.choi();
    if (m.is_zero()) return m;
    for (const auto& k : phi.kraus()) m.terms_.push_back({k, 1.0});
    for (const auto& k : psi.kraus()) m.terms_.push_back({k, -1.0});
    return m;
  }

  HermitianPreservingMap scaled(double c) const {
    HermitianPreservingMap m(in_, out_, c == 1.0 ? kind_ : Kind::General);
    m.choi_ = choi_ * c;
    if (c == 0.0 || m.is_zero()) return m;
    const double root = std::sqrt(std::abs(c));
    for (const auto& t : terms_) m.terms_.push_back({t.op * root, c > 0 ? t.sign : -t.sign});
    return m;
  }

  friend HermitianPreservingMap operator+(const HermitianPreservingMap& a, const HermitianPreservingMap& b) {
    if (a.in_ != b.in_ || a.out_ != b.out_) throw ValidationError("HermitianPreservingMap: dimension mismatch in sum");
    HermitianPreservingMap m(a.in_, a.out_, Kind::General);
    m.choi_ = a.choi_ + b.choi_;
    if (m.is_zero()) return m;
    m.terms_ = a.terms_;
    m.terms_.insert(m.terms_.end(), b.terms_.begin(), b.terms_.end());
    return m;
  }

  std::size_t in_dim() const { return in_; }
  std::size_t out_dim() const { return out_; }
  const ComplexMatrix& choi() const { return choi_; }
  Kind kind() const { return kind_; }
  bool is_channel_difference() const { return kind_ == Kind::ChannelDifference; }
  bool is_zero() const { return choi_.size() == 0 || choi_.cwiseAbs().maxCoeff() <= 1e-14; }
  const std::vector<SignedKraus>& signed_kraus() const { return terms_; }

  ComplexMatrix apply(const ComplexMatrix& x) const { return apply_via_choi(choi_, in_, out_, x); }

  /// (Theta (x) id_R)(rho) evaluated term by term.
  ComplexMatrix apply_extended(const ComplexMatrix& rho, std::size_t r_dim) const {
    const auto in = static_cast<Eigen::Index>(in_ * r_dim);
    if (rho.rows() != in || rho.cols() != in) throw ValidationError("apply_extended: dimension mismatch");
    const auto out = static_cast<Eigen::Index>(out_ * r_dim);
    ComplexMatrix res = ComplexMatrix::Zero(out, out);
    const ComplexMatrix id_r = identity(r_dim);
    for (const auto& t : terms_) {
      const ComplexMatrix kk = tensor(t.op, id_r);
      res.noalias() += t.sign * (kk * rho * kk.adjoint());
    }
    return res;
  }

 private:
  HermitianPreservingMap(std::size_t in_dim, std::size_t out_dim, Kind kind)
      : in_(in_dim), out_(out_dim), kind_(kind) {}

  std::size_t in_ = 0;
  std::size_t out_ = 0;
  Kind kind_ = Kind::General;
  ComplexMatrix choi_;
  std::vector<SignedKraus> terms_;
};

}  // namespace ecdn
