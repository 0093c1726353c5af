// Copyright 2026 the q2dlab authors
// SPDX-License-Identifier: Apache-2.0

#include "q2d/profiles.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "q2d/littlewood_paley.hpp"
#include "q2d/norms.hpp"
#include "q2d/spectral.hpp"

namespace q2d {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

[[noreturn]] void invariant_failure(const std::string& name) {
  throw std::runtime_error("quasi2d datum invariant violated: " + name);
}

double vec_coeff_l2(const VectorField& v) {
  double s = 0.0;
  for (int c = 0; c < 3; ++c) {
    const double a = coeff_l2(v[c]);
    s += a * a;
  }
  return std::sqrt(s);
}

}  // namespace

Field horizontal_bump(const Grid& g, const BumpSpec& spec) {
  if (g.n_h() < 2) {
    throw std::invalid_argument("horizontal_bump: grid has no horizontal axes");
  }
  const double lh = g.len_h();
  const double w = spec.width > 0.0 ? spec.width : lh / 14.0;
  const double cx = spec.cx * lh;
  const double cy = spec.cy * lh;
  // Periodized Gaussian, written directly in coefficients: the Fourier
  // transform of exp(-|x - c|^2 / (2 w^2)) is 2 pi w^2 exp(-w^2 |k|^2 / 2)
  // times a center phase, and periodization only relabels wavenumbers.
  const double base = spec.amplitude * kTau * w * w / (lh * lh);
  Field f(g);
  const int n = g.n_h();
  const int cut = g.cut_h();
  for (int i = 0; i < n; ++i) {
    const int mi = (i <= n / 2) ? i : i - n;
    for (int j = 0; j < n; ++j) {
      const int mj = (j <= n / 2) ? j : j - n;
      if (std::abs(mi) > cut || std::abs(mj) > cut) continue;
      if (mi == 0 && mj == 0) continue;  // mean-free
      const double kx = g.kx(i);
      const double ky = g.ky(j);
      const double mag = base * std::exp(-0.5 * w * w * (kx * kx + ky * ky));
      const double ph = -(kx * cx + ky * cy);
      f.at(i, j, 0) = mag * std::complex<double>(std::cos(ph), std::sin(ph));
    }
  }
  return f;
}

Field vertical_odd_profile(const Grid& g, const VerticalSpec& spec) {
  if (g.n_v() < 2) {
    throw std::invalid_argument("vertical_odd_profile: grid has no vertical axis");
  }
  const double lv = g.len_v();
  const double w = spec.width > 0.0 ? spec.width : lv / 9.0;
  // z exp(-z^2 / (2 w^2)) transforms to -i sqrt(2 pi) w^3 k exp(-w^2 k^2 / 2);
  // dividing by the shape's peak w e^{-1/2} makes `amplitude` the sup norm.
  const double base =
      spec.amplitude * std::sqrt(kTau) * w * w * std::exp(0.5) / lv;
  Field f(g);
  const int n = g.n_v();
  const int cut = g.cut_v();
  for (int l = 0; l < n; ++l) {
    const int m = (l <= n / 2) ? l : l - n;
    if (m == 0 || std::abs(m) > cut) continue;
    const double k = g.kz(l);
    const double mag = base * k * std::exp(-0.5 * w * w * k * k);
    f.at(0, 0, l) = std::complex<double>(0.0, -mag);
  }
  return f;
}

Field vertical_even_profile(const Grid& g, const VerticalSpec& spec) {
  if (g.n_v() < 2) {
    throw std::invalid_argument("vertical_even_profile: grid has no vertical axis");
  }
  const double lv = g.len_v();
  const double w = spec.width > 0.0 ? spec.width : lv / 9.0;
  const double base = spec.amplitude * std::sqrt(kTau) * w / lv;
  Field f(g);
  const int n = g.n_v();
  const int cut = g.cut_v();
  for (int l = 0; l < n; ++l) {
    const int m = (l <= n / 2) ? l : l - n;
    if (m == 0 || std::abs(m) > cut) continue;  // mean removed
    const double k = g.kz(l);
    f.at(0, 0, l) = base * std::exp(-0.5 * w * w * k * k);
  }
  return f;
}

Field tensor_field(const Field& f, const Field& gv, const Grid& out) {
  const Grid& gf = f.grid();
  const Grid& gg = gv.grid();
  if (gf.n_v() != 1 || gf.n_h() != out.n_h() || gf.len_h() != out.len_h()) {
    throw std::invalid_argument("tensor_field: horizontal factor grid mismatch");
  }
  if (gg.n_h() != 1 || gg.n_v() != out.n_v() || gg.len_v() != out.len_v()) {
    throw std::invalid_argument("tensor_field: vertical factor grid mismatch");
  }
  Field h(out);
  const int nh = out.n_h();
  const int nv = out.n_v();
  for (int i = 0; i < nh; ++i) {
    for (int j = 0; j < nh; ++j) {
      const std::complex<double> fij = f.coeffs()[(static_cast<std::size_t>(i) * nh + j) * 1];
      if (fij == std::complex<double>(0.0, 0.0)) continue;
      for (int l = 0; l < nv; ++l) {
        h.at(i, j, l) = fij * gv.coeffs()[static_cast<std::size_t>(l)];
      }
    }
  }
  return h;
}

VectorField stream_to_velocity(const Field& psi) {
  return VectorField(-1.0 * derivative(psi, {0, 1, 0}),
                     derivative(psi, {1, 0, 0}), Field(psi.grid()));
}

VectorField potential_to_velocity(const VectorField& a) {
  Field u1 = derivative(a[2], {0, 1, 0});
  u1 -= derivative(a[1], {0, 0, 1});
  Field u2 = derivative(a[0], {0, 0, 1});
  u2 -= derivative(a[2], {1, 0, 0});
  Field u3 = derivative(a[1], {1, 0, 0});
  u3 -= derivative(a[0], {0, 1, 0});
  return VectorField(std::move(u1), std::move(u2), std::move(u3));
}

bool is_dyadic_scale(double eps) {
  if (!(eps > 0.0) || eps > 1.0) return false;
  int e = 0;
  const double m = std::frexp(eps, &e);
  return m == 0.5 && e <= 1;
}

Field slow_scale(const Field& f, double eps) {
  if (!is_dyadic_scale(eps)) {
    throw std::invalid_argument("slow_scale: eps must be 2^-m with m >= 0");
  }
  const Grid& g = f.grid();
  const Grid tall(g.n_h(), g.n_v(), g.len_h(), g.len_v() / eps);
  return Field(tall, f.coeffs());
}

VectorField slow_scale(const VectorField& v, double eps) {
  return VectorField(slow_scale(v[0], eps), slow_scale(v[1], eps),
                     slow_scale(v[2], eps));
}

Field slow_scale_to(const Field& f, double eps, const Grid& tall) {
  if (!is_dyadic_scale(eps)) {
    throw std::invalid_argument("slow_scale_to: eps must be 2^-m with m >= 0");
  }
  const Grid& g = f.grid();
  if (tall.n_h() != g.n_h() || tall.len_h() != g.len_h()) {
    throw std::invalid_argument("slow_scale_to: horizontal axes must match");
  }
  // The rescaled field has vertical period len_v / eps; it fits the target
  // box exactly when that period divides tall.len_v, and vertical mode m
  // then lands on mode m * stride.
  const double ratio = eps * tall.len_v() / g.len_v();
  const int stride = static_cast<int>(std::lround(ratio));
  if (stride < 1 || std::abs(ratio - stride) > 1e-9) {
    throw std::invalid_argument(
        "slow_scale_to: len_v / eps must divide the target box period");
  }
  const int nh = g.n_h();
  const int nv = g.n_v();
  const int nvt = tall.n_v();
  const bool identity = (stride == 1 && nvt == nv);
  Field out(tall);
  for (int i = 0; i < nh; ++i) {
    for (int j = 0; j < nh; ++j) {
      for (int l = 0; l < nv; ++l) {
        const std::complex<double> c =
            f.coeffs()[(static_cast<std::size_t>(i) * nh + j) * nv + l];
        if (c == std::complex<double>(0.0, 0.0)) continue;
        if (identity) {
          out.at(i, j, l) = c;
          continue;
        }
        const int m = (l <= nv / 2) ? l : l - nv;
        const int mt = m * stride;
        if (2 * std::abs(mt) >= nvt) {
          throw std::invalid_argument(
              "slow_scale_to: rescaled vertical band exceeds the target grid");
        }
        out.at(i, j, mt >= 0 ? mt : nvt + mt) = c;
      }
    }
  }
  return out;
}

VectorField slow_scale_to(const VectorField& v, double eps, const Grid& tall) {
  return VectorField(slow_scale_to(v[0], eps, tall),
                     slow_scale_to(v[1], eps, tall),
                     slow_scale_to(v[2], eps, tall));
}

VectorField cellular_field(const Grid& g, double amp, int mh, int mv) {
  if (mh <= 0 || mh > g.cut_h() || mv < 0 || mv > g.cut_v()) {
    throw std::invalid_argument("cellular_field: mode outside the dealias band");
  }
  const double a = kTau * mh / g.len_h();
  const double b = g.n_v() > 1 ? kTau * mv / g.len_v() : 0.0;
  const int nh = g.n_h();
  const int nv = g.n_v();
  std::vector<double> s1(g.size()), s2(g.size());
  for (int i = 0; i < nh; ++i) {
    for (int j = 0; j < nh; ++j) {
      for (int l = 0; l < nv; ++l) {
        const std::size_t idx = (static_cast<std::size_t>(i) * nh + j) * nv + l;
        const double cz = std::cos(b * g.z(l));
        s1[idx] = amp * std::sin(a * g.x(i)) * std::cos(a * g.y(j)) * cz;
        s2[idx] = -amp * std::cos(a * g.x(i)) * std::sin(a * g.y(j)) * cz;
      }
    }
  }
  VectorField u(to_spectral(g, s1), to_spectral(g, s2), Field(g));
  dealias_inplace(u[0]);
  dealias_inplace(u[1]);
  return u;
}

QuasiTwoDData default_quasi2d_data(const Grid& base, double eps, double amp_v,
                                   double amp_w) {
  const Grid flat(base.n_h(), 1, base.len_h(), 1.0);
  const Grid column(1, base.n_v(), 1.0, base.len_v());
  const Field odd = vertical_odd_profile(column);
  const Field even = vertical_even_profile(column);

  const Field psi =
      tensor_field(horizontal_bump(flat, {1.0, 0.0, 0.42, 0.58}), odd, base);
  VectorField v0h = stream_to_velocity(psi);
  const double sv = linf_norm(v0h);
  if (sv > 0.0) {
    for (int c = 0; c < 2; ++c) v0h[c] *= amp_v / sv;
  }

  VectorField a(tensor_field(horizontal_bump(flat, {1.0, 0.0, 0.35, 0.62}), odd, base),
                tensor_field(horizontal_bump(flat, {1.0, 0.0, 0.63, 0.40}), odd, base),
                tensor_field(horizontal_bump(flat, {1.0, 0.0, 0.50, 0.50}), even, base));
  VectorField w0 = potential_to_velocity(a);
  const double sw = linf_norm(w0);
  if (sw > 0.0) {
    for (int c = 0; c < 3; ++c) w0[c] *= amp_w / sw;
  }
  return QuasiTwoDData{std::move(v0h), std::move(w0), eps};
}

VectorField build_quasi2d_datum(const VectorField& u0,
                                const std::vector<QuasiTwoDData>& parts) {
  const Grid& tall = u0.grid();
  const double u0_scale = 1.0 + vec_coeff_l2(u0);
  if (coeff_l2(divergence(u0)) > 1e-10 * u0_scale) {
    invariant_failure("u0-divergence");
  }
  VectorField out = u0;
  for (const QuasiTwoDData& part : parts) {
    if (part.v0h.grid() != part.w0.grid()) {
      throw std::invalid_argument("build_quasi2d_datum: profile grids differ");
    }
    const Grid& base = part.v0h.grid();
    const double scale = 1.0 + vec_coeff_l2(part.v0h) + vec_coeff_l2(part.w0);

    if (coeff_l2(part.v0h[2]) > 1e-13 * scale) {
      invariant_failure("v0h-third-component-zero");
    }
    if (coeff_l2(divergence_h(part.v0h)) > 1e-10 * scale) {
      invariant_failure("v0h-horizontal-divergence");
    }
    if (trace_plane_max(part.v0h) > 1e-10 * scale) {
      invariant_failure("v0h-zero-slice-trace");
    }
    if (coeff_l2(divergence(part.w0)) > 1e-10 * scale) {
      invariant_failure("w0-divergence");
    }
    if (trace_plane_max(part.w0[2]) > 1e-10 * scale) {
      invariant_failure("w0-vertical-trace");
    }
    double mean_mass = 0.0;
    for (int c = 0; c < 3; ++c) {
      for (int l = 0; l < base.n_v(); ++l) {
        mean_mass += std::abs(part.v0h[c].coeffs()[static_cast<std::size_t>(l)]) +
                     std::abs(part.w0[c].coeffs()[static_cast<std::size_t>(l)]);
      }
    }
    if (mean_mass > 1e-12 * scale) {
      invariant_failure("horizontal-mean-freeness");
    }

    Field t0 = part.w0[0];
    t0 *= part.eps;
    t0 += part.v0h[0];
    Field t1 = part.w0[1];
    t1 *= part.eps;
    t1 += part.v0h[1];
    out[0] += slow_scale_to(t0, part.eps, tall);
    out[1] += slow_scale_to(t1, part.eps, tall);
    out[2] += slow_scale_to(part.w0[2], part.eps, tall);
  }
  if (coeff_l2(divergence(out)) > 1e-10 * (1.0 + vec_coeff_l2(out))) {
    invariant_failure("assembled-divergence");
  }
  return out;
}

double trace_plane_max(const Field& f) {
  return linf_norm(slice_to_2d(f, 0));
}

double trace_plane_max(const VectorField& v) {
  double m = 0.0;
  for (int c = 0; c < 3; ++c) m = std::max(m, trace_plane_max(v[c]));
  return m;
}

double sizedata_ratio(const TensorProfile& tp, const Grid& base) {
  if (!(tp.eps > 0.0) || tp.eps > 1.0) {
    throw std::invalid_argument("sizedata_ratio: eps must lie in (0, 1]");
  }
  const Field h = tensor_field(tp.f, tp.g, base);
  // The heat flow of f(x_h) g(eps x3) on the tall box is the relabeling of
  // the (Delta_h + eps^2 d33) flow of f(x_h) g(x3) on the base box, and
  // relabeling preserves sup norms, so the tall-box value never needs a tall
  // grid.
  const double num =
      heatflow_besov_norm(h, 1.0, 0, 0, HeatMode::anisotropic(tp.eps));
  const double den_f =
      heatflow_besov_norm(tp.f, 1.0, 0, 0, HeatMode::full_laplacian());
  const double den_g = max_abs(to_physical_upsampled(tp.g, 4));
  if (den_f * den_g <= 0.0) {
    throw std::invalid_argument("sizedata_ratio: degenerate tensor factors");
  }
  return num / (den_f * den_g);
}

}  // namespace q2d
