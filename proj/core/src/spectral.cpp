// Copyright 2026 the q2dlab authors
// SPDX-License-Identifier: Apache-2.0

#include "q2d/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "q2d/fft.hpp"

namespace q2d {
namespace {

cplx ipow(cplx b, int e) {
  cplx r(1.0, 0.0);
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// û(-k) <- conj(û(k)), averaged, so the represented function is exactly real.
void hermitian_symmetrize(Field& f) {
  const Grid& g = f.grid();
  const int nh = g.n_h(), nv = g.n_v();
  auto& c = f.coeffs();
  for (int i = 0; i < nh; ++i) {
    const int im = (nh - i) % nh;
    for (int j = 0; j < nh; ++j) {
      const int jm = (nh - j) % nh;
      for (int l = 0; l < nv; ++l) {
        const int lm = (nv - l) % nv;
        const auto a = g.index(i, j, l);
        const auto b = g.index(im, jm, lm);
        if (b < a) continue;
        const cplx va = c[a], vb = c[b];
        const cplx avg = 0.5 * (va + std::conj(vb));
        c[a] = avg;
        c[b] = std::conj(avg);
      }
    }
  }
}

}  // namespace

std::vector<double> to_physical(const Field& f) {
  const Grid& g = f.grid();
  std::vector<cplx> buf(f.coeffs().size());
  fft::transform(g.n_h(), g.n_h(), g.n_v(), f.coeffs(), buf, +1);
  std::vector<double> out(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real();
  return out;
}

Field to_spectral(const Grid& g, const std::vector<double>& samples) {
  if (static_cast<std::int64_t>(samples.size()) != g.size())
    throw std::invalid_argument("to_spectral: sample count does not match grid");
  std::vector<cplx> in(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) in[i] = cplx(samples[i], 0.0);
  std::vector<cplx> out;
  fft::transform(g.n_h(), g.n_h(), g.n_v(), in, out, -1);
  const double inv_n = 1.0 / static_cast<double>(g.size());
  for (auto& v : out) v *= inv_n;
  Field f(g, std::move(out));
  hermitian_symmetrize(f);
  return f;
}

Field derivative(const Field& f, const std::array<int, 3>& orders) {
  for (int a : orders)
    if (a < 0) throw std::invalid_argument("derivative: negative order");
  const Grid& g = f.grid();
  Field out = f;
  auto& c = out.coeffs();
  for (int i = 0; i < g.n_h(); ++i) {
    const cplx mx = ipow(cplx(0.0, g.kx(i)), orders[0]);
    for (int j = 0; j < g.n_h(); ++j) {
      const cplx mxy = mx * ipow(cplx(0.0, g.ky(j)), orders[1]);
      for (int l = 0; l < g.n_v(); ++l) {
        c[g.index(i, j, l)] *= mxy * ipow(cplx(0.0, g.kz(l)), orders[2]);
      }
    }
  }
  return out;
}

double heat_symbol(const Grid& g, const HeatMode& mode, int i, int j, int l) {
  const double kh2 = g.kx(i) * g.kx(i) + g.ky(j) * g.ky(j);
  const double kz = g.kz(l);
  switch (mode.kind) {
    case HeatMode::Kind::full:
      return kh2 + kz * kz;
    case HeatMode::Kind::horizontal:
      return kh2;
    case HeatMode::Kind::anisotropic:
      return kh2 + mode.eps * mode.eps * kz * kz;
  }
  return 0.0;
}

Field heat_propagate(const Field& f, double t, const HeatMode& mode) {
  if (!(t >= 0.0)) throw std::invalid_argument("heat_propagate: t must be >= 0");
  const Grid& g = f.grid();
  Field out = f;
  auto& c = out.coeffs();
  for (int i = 0; i < g.n_h(); ++i)
    for (int j = 0; j < g.n_h(); ++j)
      for (int l = 0; l < g.n_v(); ++l)
        c[g.index(i, j, l)] *= std::exp(-t * heat_symbol(g, mode, i, j, l));
  return out;
}

VectorField leray_project(const VectorField& v) {
  const Grid& g = v.grid();
  VectorField out = v;
  for (int i = 0; i < g.n_h(); ++i) {
    const double k1 = g.kx(i);
    for (int j = 0; j < g.n_h(); ++j) {
      const double k2 = g.ky(j);
      for (int l = 0; l < g.n_v(); ++l) {
        const double k3 = g.kz(l);
        const double k2sum = k1 * k1 + k2 * k2 + k3 * k3;
        if (k2sum == 0.0) continue;
        const auto idx = g.index(i, j, l);
        const cplx kdotu = k1 * out[0].coeffs()[idx] + k2 * out[1].coeffs()[idx] +
                           k3 * out[2].coeffs()[idx];
        const cplx s = kdotu / k2sum;
        out[0].coeffs()[idx] -= k1 * s;
        out[1].coeffs()[idx] -= k2 * s;
        out[2].coeffs()[idx] -= k3 * s;
      }
    }
  }
  return out;
}

std::pair<VectorField, Field> aniso_pressure_project(const VectorField& v, double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("aniso_pressure_project: eps must be >= 0");
  const Grid& g = v.grid();
  VectorField out = v;
  Field p(g);
  for (int i = 0; i < g.n_h(); ++i) {
    const double k1 = g.kx(i);
    for (int j = 0; j < g.n_h(); ++j) {
      const double k2 = g.ky(j);
      for (int l = 0; l < g.n_v(); ++l) {
        const double k3 = g.kz(l);
        const double sym = k1 * k1 + k2 * k2 + eps * eps * k3 * k3;
        if (sym == 0.0) continue;
        const auto idx = g.index(i, j, l);
        const cplx div = cplx(0.0, 1.0) * (k1 * out[0].coeffs()[idx] +
                                           k2 * out[1].coeffs()[idx] +
                                           k3 * out[2].coeffs()[idx]);
        // (Lap_h + eps^2 d33) p = div v  =>  -sym * p = div
        const cplx ph = -div / sym;
        p.coeffs()[idx] = ph;
        out[0].coeffs()[idx] -= cplx(0.0, k1) * ph;
        out[1].coeffs()[idx] -= cplx(0.0, k2) * ph;
        out[2].coeffs()[idx] -= eps * eps * cplx(0.0, k3) * ph;
      }
    }
  }
  return {std::move(out), std::move(p)};
}

void dealias_inplace(Field& f) {
  const Grid& g = f.grid();
  const int ch = g.cut_h(), cv = g.cut_v();
  auto& c = f.coeffs();
  for (int i = 0; i < g.n_h(); ++i) {
    const bool kill_i = std::abs(Grid::mode_of(i, g.n_h())) > ch && g.n_h() > 1;
    for (int j = 0; j < g.n_h(); ++j) {
      const bool kill_j = kill_i || (g.n_h() > 1 && std::abs(Grid::mode_of(j, g.n_h())) > ch);
      for (int l = 0; l < g.n_v(); ++l) {
        if (kill_j || (g.n_v() > 1 && std::abs(Grid::mode_of(l, g.n_v())) > cv))
          c[g.index(i, j, l)] = cplx(0.0, 0.0);
      }
    }
  }
}

Field dealias(Field f) {
  dealias_inplace(f);
  return f;
}

bool is_dealiased(const Field& f, double tol) {
  const Grid& g = f.grid();
  const int ch = g.cut_h(), cv = g.cut_v();
  const auto& c = f.coeffs();
  for (int i = 0; i < g.n_h(); ++i)
    for (int j = 0; j < g.n_h(); ++j)
      for (int l = 0; l < g.n_v(); ++l) {
        const bool outside =
            (g.n_h() > 1 && (std::abs(Grid::mode_of(i, g.n_h())) > ch ||
                             std::abs(Grid::mode_of(j, g.n_h())) > ch)) ||
            (g.n_v() > 1 && std::abs(Grid::mode_of(l, g.n_v())) > cv);
        if (outside && std::abs(c[g.index(i, j, l)]) > tol) return false;
      }
  return true;
}

Field product(const Field& a, const Field& b) {
  if (a.grid() != b.grid()) throw std::invalid_argument("product: grid mismatch");
  const auto pa = to_physical(a);
  const auto pb = to_physical(b);
  std::vector<double> prod(pa.size());
  for (std::size_t i = 0; i < pa.size(); ++i) prod[i] = pa[i] * pb[i];
  Field f = to_spectral(a.grid(), prod);
  dealias_inplace(f);
  return f;
}

Field divergence(const VectorField& v) {
  Field out = derivative(v[0], {1, 0, 0});
  out += derivative(v[1], {0, 1, 0});
  out += derivative(v[2], {0, 0, 1});
  return out;
}

Field divergence_h(const VectorField& v) {
  Field out = derivative(v[0], {1, 0, 0});
  out += derivative(v[1], {0, 1, 0});
  return out;
}

VectorField gradient(const Field& f) {
  return VectorField(derivative(f, {1, 0, 0}), derivative(f, {0, 1, 0}),
                     derivative(f, {0, 0, 1}));
}

double coeff_l2(const Field& f) {
  double s = 0.0;
  for (const auto& v : f.coeffs()) s += std::norm(v);
  return std::sqrt(s);
}

double divergence_residual(const VectorField& v) {
  const Grid& g = v.grid();
  double num = 0.0, den = 0.0;
  for (int i = 0; i < g.n_h(); ++i) {
    const double k1 = g.kx(i);
    for (int j = 0; j < g.n_h(); ++j) {
      const double k2 = g.ky(j);
      for (int l = 0; l < g.n_v(); ++l) {
        const double k3 = g.kz(l);
        const auto idx = g.index(i, j, l);
        const cplx d = k1 * v[0].coeffs()[idx] + k2 * v[1].coeffs()[idx] +
                       k3 * v[2].coeffs()[idx];
        num += std::norm(d);
        const double k2sum = k1 * k1 + k2 * k2 + k3 * k3;
        den += k2sum * (std::norm(v[0].coeffs()[idx]) + std::norm(v[1].coeffs()[idx]) +
                        std::norm(v[2].coeffs()[idx]));
      }
    }
  }
  if (den == 0.0) return 0.0;
  return std::sqrt(num / den);
}

std::vector<double> to_physical_upsampled(const Field& f, int factor, Grid* fine_grid) {
  if (factor < 1) throw std::invalid_argument("to_physical_upsampled: factor >= 1");
  const Grid& g = f.grid();
  if (factor == 1) {
    if (fine_grid) *fine_grid = g;
    return to_physical(f);
  }
  const int nh = g.n_h() == 1 ? 1 : g.n_h() * factor;
  const int nv = g.n_v() == 1 ? 1 : g.n_v() * factor;
  Grid fine(nh, nv, g.len_h(), g.len_v());
  Field padded(fine);
  for (int i = 0; i < g.n_h(); ++i) {
    const int mi = Grid::mode_of(i, g.n_h());
    const int fi = (mi + nh) % nh;
    for (int j = 0; j < g.n_h(); ++j) {
      const int mj = Grid::mode_of(j, g.n_h());
      const int fj = (mj + nh) % nh;
      for (int l = 0; l < g.n_v(); ++l) {
        const int ml = Grid::mode_of(l, g.n_v());
        const int fl = (ml + nv) % nv;
        padded.coeffs()[fine.index(fi, fj, fl)] = f.coeffs()[g.index(i, j, l)];
      }
    }
  }
  if (fine_grid) *fine_grid = fine;
  return to_physical(padded);
}

void drop_horizontal_means(Field& f) {
  const Grid& g = f.grid();
  if (g.n_h() == 1) {  // degenerate horizontal axes: only the full mean exists
    f.drop_mean();
    return;
  }
  for (int l = 0; l < g.n_v(); ++l) f.coeffs()[g.index(0, 0, l)] = cplx(0.0, 0.0);
}

void drop_horizontal_means(VectorField& v) {
  for (int c = 0; c < 3; ++c) drop_horizontal_means(v[c]);
}

double max_abs(const std::vector<double>& samples) {
  double m = 0.0;
  for (double s : samples) m = std::max(m, std::abs(s));
  return m;
}

}  // namespace q2d
