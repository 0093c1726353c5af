// Copyright 2026 the q2dlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace q2d {

/// Periodic anisotropic box [0,len_h)^2 x [0,len_v) sampled on an
/// (n_h, n_h, n_v) collocation lattice.  Axis sizes must be 1 (degenerate,
/// used for 2D/1D fields) or even 3-smooth integers >= 8 so the FFT
/// factorizations stay exact and cheap.  Wavenumbers are physical:
/// k_i = 2*pi*m_i / len_i with m_i in [-n_i/2, n_i/2).
class Grid {
 public:
  Grid() = default;
  Grid(int n_h, int n_v, double len_h, double len_v)
      : nh_(n_h), nv_(n_v), lh_(len_h), lv_(len_v) {
    validate_axis(n_h, "n_h");
    validate_axis(n_v, "n_v");
    if (!(len_h > 0.0) || !(len_v > 0.0))
      throw std::invalid_argument("Grid: box lengths must be positive");
  }

  int n_h() const { return nh_; }
  int n_v() const { return nv_; }
  double len_h() const { return lh_; }
  double len_v() const { return lv_; }

  std::int64_t size() const {
    return static_cast<std::int64_t>(nh_) * nh_ * nv_;
  }
  double volume() const { return lh_ * lh_ * lv_; }
  double cell_volume() const { return volume() / static_cast<double>(size()); }

  // signed integer mode for FFT bin i on an axis of n points
  static int mode_of(int i, int n) { return (i <= n / 2) ? i : i - n; }

  double kx(int i) const { return 2.0 * M_PI * mode_of(i, nh_) / lh_; }
  double ky(int j) const { return 2.0 * M_PI * mode_of(j, nh_) / lh_; }
  double kz(int l) const { return 2.0 * M_PI * mode_of(l, nv_) / lv_; }

  double x(int i) const { return lh_ * i / nh_; }
  double y(int j) const { return lh_ * j / nh_; }
  double z(int l) const { return lv_ * l / nv_; }

  /// Vertical coordinate folded to the box-centered branch (-len_v/2, len_v/2].
  double z_centered(int l) const {
    double c = z(l);
    return (c > 0.5 * lv_) ? c - lv_ : c;
  }

  std::int64_t index(int i, int j, int l) const {
    return (static_cast<std::int64_t>(i) * nh_ + j) * nv_ + l;
  }

  // dealias cut: modes with |m| > K on any axis are discarded, with
  // 3K < n strictly so a quadratic product of retained modes can never wrap
  // back into the retained band (K = n/3 would let +K +K alias onto -K).
  // Degenerate axes (n == 1) carry only m = 0 and are never cut.
  int cut_h() const { return nh_ == 1 ? 0 : (nh_ - 1) / 3; }
  int cut_v() const { return nv_ == 1 ? 0 : (nv_ - 1) / 3; }

  /// Smallest nonzero |k| representable on the grid.
  double k_min() const {
    double best = 0.0;
    if (nh_ > 1) best = 2.0 * M_PI / lh_;
    if (nv_ > 1) {
      double kv = 2.0 * M_PI / lv_;
      best = (best == 0.0 || kv < best) ? kv : best;
    }
    if (best == 0.0)
      throw std::logic_error("Grid: no nonzero modes on a 1x1x1 grid");
    return best;
  }

  /// Largest |k| surviving the dealias cut.
  double k_cut() const {
    double kh = nh_ > 1 ? 2.0 * M_PI * cut_h() / lh_ : 0.0;
    double kv = nv_ > 1 ? 2.0 * M_PI * cut_v() / lv_ : 0.0;
    return std::sqrt(2.0 * kh * kh + kv * kv);
  }

  // Half-spacing floors used by the homogeneous norms for modes whose
  // horizontal (resp. vertical) wavevector vanishes identically; see
  // norms.hpp for the policy.
  double q_h() const { return M_PI / lh_; }
  double q_v() const { return M_PI / lv_; }

  int dim() const { return (nh_ > 1 ? 2 : 0) + (nv_ > 1 ? 1 : 0); }

  bool operator==(const Grid& o) const {
    return nh_ == o.nh_ && nv_ == o.nv_ && lh_ == o.lh_ && lv_ == o.lv_;
  }
  bool operator!=(const Grid& o) const { return !(*this == o); }

  std::string describe() const {
    return std::to_string(nh_) + "x" + std::to_string(nh_) + "x" +
           std::to_string(nv_) + " box " + std::to_string(lh_) + "x" +
           std::to_string(lv_);
  }

 private:
  static void validate_axis(int n, const char* name) {
    if (n == 1) return;
    if (n < 8 || n % 2 != 0)
      throw std::invalid_argument(std::string("Grid: ") + name +
                                  " must be 1 or an even 3-smooth integer >= 8");
    int m = n;
    while (m % 2 == 0) m /= 2;
    while (m % 3 == 0) m /= 3;
    if (m != 1)
      throw std::invalid_argument(std::string("Grid: ") + name +
                                  " must factor as 2^a * 3^b");
  }

  int nh_ = 1;
  int nv_ = 1;
  double lh_ = 2.0 * M_PI;
  double lv_ = 2.0 * M_PI;
};

}  // namespace q2d
