// Copyright 2026 the q2dlab authors
// SPDX-License-Identifier: Apache-2.0

#include "q2d/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "q2d/fft.hpp"
#include "q2d/spectral.hpp"

namespace q2d {
namespace {

// |k|^2 with the degenerate-mode floor; returns <0 for the excluded k=0 mode.
double keff2(const Grid& g, int i, int j, int l) {
  const double k1 = g.kx(i), k2 = g.ky(j), k3 = g.kz(l);
  const double kh2 = k1 * k1 + k2 * k2;
  if (kh2 == 0.0 && k3 == 0.0) return -1.0;
  if (g.n_h() > 1 && kh2 == 0.0) return g.q_h() * g.q_h() + k3 * k3;
  return kh2 + k3 * k3;
}

void check_dim_range(const Field& f, double s, int dim) {
  if (dim != f.grid().dim())
    throw std::invalid_argument("hs_norm: dim does not match the field's grid");
  if (!(std::abs(s) < 0.5 * dim))
    throw std::invalid_argument("hs_norm: s outside (-dim/2, dim/2)");
}

}  // namespace

double hs_norm(const Field& f, double s, int dim) {
  check_dim_range(f, s, dim);
  const Grid& g = f.grid();
  const auto& c = f.coeffs();
  double acc = 0.0;
  for (int i = 0; i < g.n_h(); ++i)
    for (int j = 0; j < g.n_h(); ++j)
      for (int l = 0; l < g.n_v(); ++l) {
        const double w2 = keff2(g, i, j, l);
        if (w2 < 0.0) continue;
        acc += std::pow(w2, s) * std::norm(c[g.index(i, j, l)]);
      }
  return std::sqrt(g.volume() * acc);
}

double hs_norm(const VectorField& v, double s, int dim) {
  double acc = 0.0;
  for (int c = 0; c < 3; ++c) {
    const double n = hs_norm(v[c], s, dim);
    acc += n * n;
  }
  return std::sqrt(acc);
}

double hs_norm_scaled(const Field& f, double s, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("hs_norm_scaled: eps must be > 0");
  if (!(std::abs(s) < 1.5))
    throw std::invalid_argument("hs_norm_scaled: s outside (-3/2, 3/2)");
  const Grid& g = f.grid();
  const auto& c = f.coeffs();
  const double qh2 = g.q_h() * g.q_h();
  double acc = 0.0;
  for (int i = 0; i < g.n_h(); ++i) {
    const double k1 = g.kx(i);
    for (int j = 0; j < g.n_h(); ++j) {
      const double k2 = g.ky(j);
      const double kh2 = k1 * k1 + k2 * k2;
      for (int l = 0; l < g.n_v(); ++l) {
        const double k3 = eps * g.kz(l);
        if (kh2 == 0.0 && k3 == 0.0) continue;
        const double w2 = (kh2 == 0.0) ? qh2 + k3 * k3 : kh2 + k3 * k3;
        acc += std::pow(w2, s) * std::norm(c[g.index(i, j, l)]);
      }
    }
  }
  return std::sqrt((g.volume() / eps) * acc);
}

double hs_norm_scaled(const VectorField& v, double s, double eps) {
  double acc = 0.0;
  for (int c = 0; c < 3; ++c) {
    const double n = hs_norm_scaled(v[c], s, eps);
    acc += n * n;
  }
  return std::sqrt(acc);
}

double lp_norm(const Field& f, double p) {
  if (p <= 0.0) return linf_norm(f);
  const auto samples = to_physical(f);
  const double w = f.grid().cell_volume();
  double acc = 0.0;
  for (double v : samples) acc += w * std::pow(std::abs(v), p);
  return std::pow(acc, 1.0 / p);
}

double l2v_hsh_norm(const Field& f, double s) {
  const Grid& g = f.grid();
  if (g.n_h() == 1) throw std::invalid_argument("l2v_hsh_norm: no horizontal axes");
  const auto& c = f.coeffs();
  const double qh2 = g.q_h() * g.q_h();
  double acc = 0.0;
  for (int i = 0; i < g.n_h(); ++i) {
    const double k1 = g.kx(i);
    for (int j = 0; j < g.n_h(); ++j) {
      const double k2 = g.ky(j);
      const double kh2 = k1 * k1 + k2 * k2;
      const double w = std::pow(kh2 == 0.0 ? qh2 : kh2, s);
      for (int l = 0; l < g.n_v(); ++l) {
        if (kh2 == 0.0 && g.kz(l) == 0.0) continue;  // full mean
        acc += w * std::norm(c[g.index(i, j, l)]);
      }
    }
  }
  return std::sqrt(g.volume() * acc);
}

double l2v_hsh_norm(const VectorField& v, double s) {
  double acc = 0.0;
  for (int c = 0; c < 3; ++c) {
    const double n = l2v_hsh_norm(v[c], s);
    acc += n * n;
  }
  return std::sqrt(acc);
}

double l2h_hsv_norm(const Field& f, double s) {
  const Grid& g = f.grid();
  if (g.n_v() == 1) throw std::invalid_argument("l2h_hsv_norm: no vertical axis");
  const auto& c = f.coeffs();
  const double qv2 = g.q_v() * g.q_v();
  double acc = 0.0;
  for (int i = 0; i < g.n_h(); ++i)
    for (int j = 0; j < g.n_h(); ++j) {
      const double kh2 = g.kx(i) * g.kx(i) + g.ky(j) * g.ky(j);
      for (int l = 0; l < g.n_v(); ++l) {
        const double k3 = g.kz(l);
        if (kh2 == 0.0 && k3 == 0.0) continue;
        const double w = std::pow(k3 == 0.0 ? qv2 : k3 * k3, s);
        acc += w * std::norm(c[g.index(i, j, l)]);
      }
    }
  return std::sqrt(g.volume() * acc);
}

namespace {

// per-slice |f~(k_h, x3)|^2 sums on a vertically 2x refined slice family
std::vector<double> slice_l2h_squares(const std::vector<const Field*>& comps) {
  if (comps.empty()) throw std::invalid_argument("slice norms: no components");
  const Grid& g = comps[0]->grid();
  const int nh = g.n_h();
  const int nv = g.n_v();
  const int nv_fine = nv == 1 ? 1 : 2 * nv;
  std::vector<double> acc(static_cast<std::size_t>(nv_fine), 0.0);
  std::vector<cplx> padded(static_cast<std::size_t>(nh) * nh * nv_fine);
  std::vector<cplx> sliced(padded.size());
  for (const Field* fc : comps) {
    if (fc->grid() != g) throw std::invalid_argument("slice norms: grid mismatch");
    std::fill(padded.begin(), padded.end(), cplx(0.0, 0.0));
    const auto& c = fc->coeffs();
    for (int i = 0; i < nh; ++i)
      for (int j = 0; j < nh; ++j)
        for (int l = 0; l < nv; ++l) {
          const int ml = Grid::mode_of(l, nv);
          const int fl = (ml + nv_fine) % nv_fine;
          padded[(static_cast<std::size_t>(i) * nh + j) * nv_fine + fl] =
              c[g.index(i, j, l)];
        }
    fft::transform_last_axis(nh, nh, nv_fine, padded.data(), sliced.data(), +1);
    for (int i = 0; i < nh; ++i)
      for (int j = 0; j < nh; ++j)
        for (int l = 0; l < nv_fine; ++l)
          acc[l] += std::norm(sliced[(static_cast<std::size_t>(i) * nh + j) * nv_fine + l]);
  }
  const double area = g.len_h() * g.len_h();
  for (auto& a : acc) a *= area;
  return acc;
}

}  // namespace

double linfv_l2h_norm(const std::vector<const Field*>& comps) {
  const auto squares = slice_l2h_squares(comps);
  double best = 0.0;
  for (double s : squares) best = std::max(best, s);
  return std::sqrt(best);
}

double linfv_l2h_norm(const Field& f) { return linfv_l2h_norm({&f}); }

double linfv_hsh_norm(const Field& f, double s) {
  const Grid& g = f.grid();
  if (g.n_h() == 1)
    throw std::invalid_argument("linfv_hsh_norm: field has no horizontal axes");
  if (!(std::abs(s) < 1.0))
    throw std::invalid_argument("linfv_hsh_norm: s outside (-1, 1)");
  // scale each horizontal mode by |k_h|^s up front, then reuse the slice
  // machinery; the slice-mean column keeps the half-spacing weight
  Field scaled = f;
  for (int i = 0; i < g.n_h(); ++i)
    for (int j = 0; j < g.n_h(); ++j) {
      const double k1 = g.kx(i), k2 = g.ky(j);
      const double kh2 = k1 * k1 + k2 * k2;
      const double w = std::pow(kh2 == 0.0 ? g.q_h() * g.q_h() : kh2, 0.5 * s);
      for (int l = 0; l < g.n_v(); ++l) scaled.at(i, j, l) *= w;
    }
  return linfv_l2h_norm(scaled);
}

double linf_norm(const Field& f) {
  return max_abs(to_physical_upsampled(f, 2));
}

double linf_norm(const VectorField& v) {
  // sup |u| with |.| the Euclidean norm of the three components
  Grid fine;
  const auto a = to_physical_upsampled(v[0], 2, &fine);
  const auto b = to_physical_upsampled(v[1], 2);
  const auto c = to_physical_upsampled(v[2], 2);
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    best = std::max(best, a[i] * a[i] + b[i] * b[i] + c[i] * c[i]);
  return std::sqrt(best);
}

WeightedX3 weighted_x3_l2(const Field& f) {
  const Grid& g = f.grid();
  const auto samples = to_physical(f);
  const double w = g.cell_volume();
  double acc = 0.0, far = 0.0, total = 0.0;
  for (int i = 0; i < g.n_h(); ++i)
    for (int j = 0; j < g.n_h(); ++j)
      for (int l = 0; l < g.n_v(); ++l) {
        const double z = g.z_centered(l);
        const double v2 = samples[g.index(i, j, l)] * samples[g.index(i, j, l)];
        acc += w * z * z * v2;
        total += w * v2;
        if (std::abs(z) > 0.25 * g.len_v()) far += w * v2;
      }
  WeightedX3 out;
  out.value = std::sqrt(acc);
  out.far_mass_fraction = total > 0.0 ? far / total : 0.0;
  return out;
}

double embedding_margin(const Field& f, double s) {
  const double aniso = l2v_hsh_norm(f, s);
  const double iso = hs_norm(f, s, f.grid().dim());
  return s <= 0.0 ? aniso - iso : iso - aniso;
}

double h_half_splitting_margin(const Field& f) {
  return l2h_hsv_norm(f, 0.5) + l2v_hsh_norm(f, 0.5) - hs_norm(f, 0.5, f.grid().dim());
}

Field slice_to_2d(const Field& f, int l) {
  const Grid& g = f.grid();
  if (l < 0 || l >= g.n_v()) throw std::invalid_argument("slice_to_2d: slice index");
  Grid flat(g.n_h(), 1, g.len_h(), 1.0);
  Field out(flat);
  // f(x_h, z_l) has horizontal coefficients sum_{k3} f_hat(k_h, k3) e^{i k3 z_l}
  const double z = g.z(l);
  for (int i = 0; i < g.n_h(); ++i)
    for (int j = 0; j < g.n_h(); ++j) {
      cplx acc(0.0, 0.0);
      for (int m = 0; m < g.n_v(); ++m)
        acc += f.at(i, j, m) * std::exp(cplx(0.0, g.kz(m) * z));
      out.at(i, j, 0) = acc;
    }
  return out;
}

double hs_inner(const Field& a, const Field& b, double s) {
  if (a.grid() != b.grid()) throw std::invalid_argument("hs_inner: grid mismatch");
  const int dim = a.grid().dim();
  check_dim_range(a, s, dim);
  const Grid& g = a.grid();
  double acc = 0.0;
  for (int i = 0; i < g.n_h(); ++i)
    for (int j = 0; j < g.n_h(); ++j)
      for (int l = 0; l < g.n_v(); ++l) {
        const double w2 = keff2(g, i, j, l);
        if (w2 < 0.0) continue;
        acc += std::pow(w2, s) *
               (a.at(i, j, l) * std::conj(b.at(i, j, l))).real();
      }
  return g.volume() * acc;
}

double hs_inner(const VectorField& a, const VectorField& b, double s) {
  double acc = 0.0;
  for (int c = 0; c < 3; ++c) acc += hs_inner(a[c], b[c], s);
  return acc;
}

void TimeSeriesNorm::push(double t, double value) {
  if (!t_.empty() && !(t > t_.back()))
    throw std::invalid_argument("TimeSeriesNorm: times must be strictly increasing");
  t_.push_back(t);
  v_.push_back(value);
}

double TimeSeriesNorm::aggregate(double rho) const {
  if (t_.empty()) return 0.0;
  if (rho <= 0.0) return *std::max_element(v_.begin(), v_.end());
  if (t_.size() == 1) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 1; i < t_.size(); ++i) {
    const double dt = t_[i] - t_[i - 1];
    acc += 0.5 * dt * (std::pow(v_[i - 1], rho) + std::pow(v_[i], rho));
  }
  return std::pow(acc, 1.0 / rho);
}

TimeSeriesNorm::Tail TimeSeriesNorm::tail_estimate() const {
  Tail out;
  if (t_.size() < 6) return out;
  const double t_lo = t_.back() - 0.25 * (t_.back() - t_.front());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (t_[i] < t_lo || v_[i] <= 0.0) continue;
    const double x = t_[i], y = std::log(v_[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 3) return out;
  const double det = n * sxx - sx * sx;
  if (det == 0.0) return out;
  const double slope = (n * sxy - sx * sy) / det;
  out.decay_rate = -slope;
  out.decaying = slope < 0.0;
  if (out.decaying) {
    const double vT = v_.back();
    out.tail_l2 = vT * vT / (2.0 * out.decay_rate);  // int_T^inf v(T)^2 e^{-2l(t-T)}
  }
  return out;
}

}  // namespace q2d
