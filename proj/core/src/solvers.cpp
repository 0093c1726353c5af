// Copyright 2026 the q2dlab authors
// SPDX-License-Identifier: Apache-2.0

#include "q2d/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "q2d/fft.hpp"
#include "q2d/norms.hpp"
#include "q2d/profiles.hpp"

namespace q2d {
namespace {

using cvec = std::vector<cplx>;

// ---------------------------------------------------------------------------
// Shared spectral helpers on raw coefficient arrays.
// ---------------------------------------------------------------------------

void backward(const Grid& g, const cvec& in, cvec& out) {
  out.resize(in.size());
  fft::transform(g.n_h(), g.n_h(), g.n_v(), in.data(), out.data(), +1);
}

void forward_normalized(const Grid& g, cvec& buf) {
  cvec out(buf.size());
  fft::transform(g.n_h(), g.n_h(), g.n_v(), buf.data(), out.data(), -1);
  const double inv = 1.0 / static_cast<double>(g.size());
  for (std::size_t i = 0; i < out.size(); ++i) buf[i] = out[i] * inv;
}

void dealias_raw(const Grid& g, cvec& c) {
  const int nh = g.n_h(), nv = g.n_v();
  const int ch = g.cut_h(), cv = g.cut_v();
  std::size_t idx = 0;
  for (int i = 0; i < nh; ++i) {
    const int mi = Grid::mode_of(i, nh);
    for (int j = 0; j < nh; ++j) {
      const int mj = Grid::mode_of(j, nh);
      const bool kill_h = std::abs(mi) > ch || std::abs(mj) > ch;
      for (int l = 0; l < nv; ++l, ++idx) {
        const int ml = Grid::mode_of(l, nv);
        if (kill_h || std::abs(ml) > cv) c[idx] = cplx(0.0, 0.0);
      }
    }
  }
}

double vec_energy(const VectorField& u) {
  double s = 0.0;
  for (int c = 0; c < 3; ++c)
    for (const cplx& v : u[c].coeffs()) s += std::norm(v);
  return u.grid().volume() * s;
}

double vec_dissipation(const VectorField& u, const HeatMode& mode) {
  const Grid& g = u.grid();
  double s = 0.0;
  for (int c = 0; c < 3; ++c) {
    std::size_t idx = 0;
    for (int i = 0; i < g.n_h(); ++i)
      for (int j = 0; j < g.n_h(); ++j)
        for (int l = 0; l < g.n_v(); ++l, ++idx)
          s += heat_symbol(g, mode, i, j, l) * std::norm(u[c].coeffs()[idx]);
  }
  return g.volume() * s;
}

// Collocation |u| maxima: Euclidean and per-component (for the CFL rate).
struct CollocationMax {
  double euclid = 0.0;
  std::array<double, 3> comp{0.0, 0.0, 0.0};
};

CollocationMax collocation_max(const VectorField& u) {
  const Grid& g = u.grid();
  std::array<cvec, 3> phys;
  for (int c = 0; c < 3; ++c) backward(g, u[c].coeffs(), phys[c]);
  CollocationMax m;
  for (std::size_t i = 0; i < phys[0].size(); ++i) {
    double e = 0.0;
    for (int c = 0; c < 3; ++c) {
      const double a = std::abs(phys[c][i].real());
      m.comp[c] = std::max(m.comp[c], a);
      e += a * a;
    }
    m.euclid = std::max(m.euclid, std::sqrt(e));
  }
  return m;
}

double cfl_rate(const CollocationMax& m, const Grid& g, bool horizontal_only) {
  const double dxh = g.len_h() / g.n_h();
  double r = std::max(m.comp[0], m.comp[1]) / dxh;
  if (!horizontal_only && g.n_v() > 1) {
    r = std::max(r, m.comp[2] / (g.len_v() / g.n_v()));
  }
  return r;
}

// Cached e^{-tau sigma(k)} multipliers for tau = dt/2 and dt.
struct Propagator {
  std::vector<double> half, full;

  void prepare(const Grid& g, const HeatMode& mode, double dt) {
    half.resize(static_cast<std::size_t>(g.size()));
    full.resize(half.size());
    std::size_t idx = 0;
    for (int i = 0; i < g.n_h(); ++i)
      for (int j = 0; j < g.n_h(); ++j)
        for (int l = 0; l < g.n_v(); ++l, ++idx) {
          const double s = heat_symbol(g, mode, i, j, l);
          half[idx] = std::exp(-0.5 * dt * s);
          full[idx] = half[idx] * half[idx];
        }
  }
  static void apply(const std::vector<double>& mult, VectorField& u) {
    for (int c = 0; c < 3; ++c) {
      cvec& v = u[c].coeffs();
      for (std::size_t i = 0; i < v.size(); ++i) v[i] *= mult[i];
    }
  }
};

// ---------------------------------------------------------------------------
// 3D conservative advection.
// ---------------------------------------------------------------------------

// F_a = -i k_b (u_a u_b)^, dealiased, unprojected.
VectorField ns_rhs_raw(const VectorField& u) {
  const Grid& g = u.grid();
  std::array<cvec, 3> phys;
  for (int c = 0; c < 3; ++c) backward(g, u[c].coeffs(), phys[c]);

  VectorField f(g);
  cvec work(phys[0].size());
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      for (std::size_t i = 0; i < work.size(); ++i)
        work[i] = cplx(phys[a][i].real() * phys[b][i].real(), 0.0);
      forward_normalized(g, work);
      dealias_raw(g, work);
      std::size_t idx = 0;
      for (int i = 0; i < g.n_h(); ++i)
        for (int j = 0; j < g.n_h(); ++j)
          for (int l = 0; l < g.n_v(); ++l, ++idx) {
            const cplx q = work[idx];
            if (q == cplx(0.0, 0.0)) continue;
            const double kk[3] = {g.kx(i), g.ky(j), g.kz(l)};
            f[a].coeffs()[idx] -= cplx(0.0, kk[b]) * q;
            if (a != b) f[b].coeffs()[idx] -= cplx(0.0, kk[a]) * q;
          }
    }
  }
  return f;
}

Field pressure_from_rhs(const VectorField& f) {
  const Grid& g = f.grid();
  Field p(g);
  std::size_t idx = 0;
  for (int i = 0; i < g.n_h(); ++i)
    for (int j = 0; j < g.n_h(); ++j)
      for (int l = 0; l < g.n_v(); ++l, ++idx) {
        const double kx = g.kx(i), ky = g.ky(j), kz = g.kz(l);
        const double k2 = kx * kx + ky * ky + kz * kz;
        if (k2 == 0.0) continue;
        const cplx kf = kx * f[0].coeffs()[idx] + ky * f[1].coeffs()[idx] +
                        kz * f[2].coeffs()[idx];
        p.coeffs()[idx] = cplx(0.0, -1.0) * kf / k2;
      }
  return p;
}

// ---------------------------------------------------------------------------
// Integrating-factor RK4 over one step for a generic projected RHS.
// rhs(t, u) must be the projected advection term N; the diffusion of `prop`
// is applied exactly.
// ---------------------------------------------------------------------------

template <class RhsFn>
void if_rk4_step(VectorField& u, double t, double dt, const Propagator& prop,
                 RhsFn&& rhs) {
  VectorField k1 = rhs(t, u);

  VectorField s2 = k1;
  s2 *= 0.5 * dt;
  s2 += u;
  Propagator::apply(prop.half, s2);
  VectorField k2 = rhs(t + 0.5 * dt, s2);

  VectorField uh = u;
  Propagator::apply(prop.half, uh);
  VectorField s3 = k2;
  s3 *= 0.5 * dt;
  s3 += uh;
  VectorField k3 = rhs(t + 0.5 * dt, s3);

  VectorField s4 = k3;
  s4 *= dt;
  Propagator::apply(prop.half, s4);
  VectorField uf = u;
  Propagator::apply(prop.full, uf);
  s4 += uf;
  VectorField k4 = rhs(t + dt, s4);

  Propagator::apply(prop.full, k1);
  Propagator::apply(prop.half, k2);
  Propagator::apply(prop.half, k3);
  k2 += k3;
  k2 *= 2.0;
  k1 += k2;
  k1 += k4;
  k1 *= dt / 6.0;
  uf += k1;
  u = std::move(uf);
}

// ---------------------------------------------------------------------------
// Generic sampling driver: fixed sample times, block retries on blow-up,
// dt halvings capped by the config.
// ---------------------------------------------------------------------------

struct SampleOut {
  VectorField u;
  Field p;
  double linf = 0.0;
  double div_residual = 0.0;
  double rate = 0.0;  // advective CFL rate at the sample
};

template <class State, class Ops>
Trajectory drive(State s, Ops& ops, const Grid& g, const SolverConfig& cfg,
                 const SampleObserver& obs, bool track_balance) {
  if (!(cfg.t_end >= 0.0) || !(cfg.cfl > 0.0) || cfg.sample_every < 1) {
    throw std::invalid_argument("solver: invalid config");
  }
  Trajectory tr;
  tr.grid = g;

  const bool want_fields = cfg.store_fields || static_cast<bool>(obs);
  auto emit = [&](int index, double t, const State& st) {
    SampleOut so = ops.sample(st, want_fields);
    SampleDiagnostics d;
    d.t = t;
    d.energy = ops.energy(st);
    d.grad_sq = ops.dissipation(st);
    d.linf = so.linf;
    d.div_residual = so.div_residual;
    const int dim = so.u.grid().dim();
    d.hhalf = dim >= 2 ? hs_norm(so.u, 0.5, dim) : 0.0;
    tr.times.push_back(t);
    tr.diagnostics.push_back(d);
    if (obs) obs(index, t, so.u, so.p);
    if (cfg.store_fields) {
      tr.states.push_back(std::move(so.u));
      tr.pressures.push_back(std::move(so.p));
    }
    return so.rate;
  };

  double rate0 = ops.advective_rate(s);
  double dt0 = cfg.dt > 0.0 ? cfg.dt
                            : (rate0 > 0.0 ? cfg.cfl / rate0 : cfg.t_end);
  if (cfg.t_end == 0.0 || dt0 <= 0.0) {
    emit(0, 0.0, s);
    tr.dt = 0.0;
    return tr;
  }
  const int n_blocks = std::max(
      1, static_cast<int>(std::ceil(cfg.t_end / (dt0 * cfg.sample_every) *
                                    (1.0 - 1e-12))));
  const double ds = cfg.t_end / n_blocks;
  int steps_per_block = cfg.sample_every;
  double dt = ds / steps_per_block;

  emit(0, 0.0, s);
  const double e0 = ops.energy(s);
  double diss_integral = 0.0;
  double g_prev = ops.dissipation(s);
  double prepared_dt = -1.0;

  for (int block = 1; block <= n_blocks; ++block) {
    const double t_start = (block - 1) * ds;
    for (;;) {
      State trial = s;
      if (dt != prepared_dt) {
        ops.prepare_dt(dt);
        prepared_dt = dt;
      }
      double local_int = 0.0;
      double gp = g_prev;
      bool blew_up = false;
      for (int k = 0; k < steps_per_block; ++k) {
        ops.step(trial, t_start + k * dt, dt);
        const double gn = ops.dissipation(trial);
        if (!std::isfinite(gn)) {
          blew_up = true;
          break;
        }
        local_int += 0.5 * dt * (gp + gn);
        gp = gn;
      }
      if (!blew_up) {
        s = std::move(trial);
        g_prev = gp;
        diss_integral += local_int;
        tr.steps += steps_per_block;
        break;
      }
      if (tr.halvings >= cfg.max_dt_halvings) {
        throw std::runtime_error("solver: dt halving limit exceeded (blow-up)");
      }
      ++tr.halvings;
      steps_per_block *= 2;
      dt = ds / steps_per_block;
    }
    const double rate = emit(block, block * ds, s);
    if (rate * dt > cfg.cfl && block < n_blocks) {
      if (tr.halvings >= cfg.max_dt_halvings) {
        throw std::runtime_error("solver: dt halving limit exceeded (CFL)");
      }
      ++tr.halvings;
      steps_per_block *= 2;
      dt = ds / steps_per_block;
    }
  }

  tr.dt = dt;
  if (track_balance && e0 > 0.0) {
    tr.energy_defect =
        std::abs(ops.energy(s) + 2.0 * diss_integral - e0) / e0;
  }
  return tr;
}

// ---------------------------------------------------------------------------
// 3D system ops.
// ---------------------------------------------------------------------------

struct Ns3dOps {
  Grid g;
  Propagator prop;

  explicit Ns3dOps(const Grid& gg) : g(gg) {}

  double advective_rate(const VectorField& u) const {
    return cfl_rate(collocation_max(u), g, false);
  }
  void prepare_dt(double dt) { prop.prepare(g, HeatMode::full_laplacian(), dt); }
  void step(VectorField& u, double t, double dt) const {
    if_rk4_step(u, t, dt, prop,
                [](double, const VectorField& v) { return leray_project(ns_rhs_raw(v)); });
  }
  double energy(const VectorField& u) const { return vec_energy(u); }
  double dissipation(const VectorField& u) const {
    return vec_dissipation(u, HeatMode::full_laplacian());
  }
  SampleOut sample(const VectorField& u, bool want_fields) const {
    SampleOut so;
    const CollocationMax m = collocation_max(u);
    so.linf = m.euclid;
    so.rate = cfl_rate(m, g, false);
    so.div_residual = divergence_residual(u);
    so.u = u;
    if (want_fields) so.p = pressure_from_rhs(ns_rhs_raw(u));
    else so.p = Field(g);
    return so;
  }
};

// ---------------------------------------------------------------------------
// Slice-family ops: horizontal-spectral x vertical-collocation layout.  The
// vertical index never enters a transform, so slices evolve independently
// and equal slices stay bitwise equal.
// ---------------------------------------------------------------------------

struct Family {
  Grid g;
  cvec v1, v2;
};

struct FamilyOps {
  Grid g;
  int nh, nv;
  std::vector<double> half, full;  // horizontal heat multipliers per (i, j)

  explicit FamilyOps(const Grid& gg) : g(gg), nh(gg.n_h()), nv(gg.n_v()) {}

  void hybrid_from_spectral(const cvec& in, cvec& out) const {
    out.resize(in.size());
    fft::transform_last_axis(nh, nh, nv, in.data(), out.data(), +1);
  }
  void spectral_from_hybrid(const cvec& in, cvec& out) const {
    out.resize(in.size());
    fft::transform_last_axis(nh, nh, nv, in.data(), out.data(), -1);
    const double inv = 1.0 / nv;
    for (cplx& c : out) c *= inv;
  }

  void phys(const cvec& in, cvec& out) const {
    out.resize(in.size());
    fft::transform_horizontal(nh, nh, nv, in.data(), out.data(), +1);
  }
  void spec_normalized(cvec& buf) const {
    cvec out(buf.size());
    fft::transform_horizontal(nh, nh, nv, buf.data(), out.data(), -1);
    const double inv = 1.0 / (static_cast<double>(nh) * nh);
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = out[i] * inv;
  }
  void dealias_h(cvec& c) const {
    const int cut = g.cut_h();
    std::size_t idx = 0;
    for (int i = 0; i < nh; ++i) {
      const int mi = Grid::mode_of(i, nh);
      for (int j = 0; j < nh; ++j) {
        const int mj = Grid::mode_of(j, nh);
        const bool kill = std::abs(mi) > cut || std::abs(mj) > cut;
        for (int l = 0; l < nv; ++l, ++idx)
          if (kill) c[idx] = cplx(0.0, 0.0);
      }
    }
  }

  // F = - P_h div_h (v (x) v) in hybrid layout; optionally the slice
  // pressure with (Lap_h) p = - div_h div_h (v (x) v).
  void rhs(const Family& f, cvec& f1, cvec& f2, cvec* pressure) const {
    cvec p1, p2;
    phys(f.v1, p1);
    phys(f.v2, p2);
    cvec q11(p1.size()), q12(p1.size()), q22(p1.size());
    for (std::size_t i = 0; i < p1.size(); ++i) {
      const double a = p1[i].real(), b = p2[i].real();
      q11[i] = cplx(a * a, 0.0);
      q12[i] = cplx(a * b, 0.0);
      q22[i] = cplx(b * b, 0.0);
    }
    spec_normalized(q11);
    spec_normalized(q12);
    spec_normalized(q22);
    dealias_h(q11);
    dealias_h(q12);
    dealias_h(q22);

    f1.assign(p1.size(), cplx(0.0, 0.0));
    f2.assign(p1.size(), cplx(0.0, 0.0));
    if (pressure) pressure->assign(p1.size(), cplx(0.0, 0.0));
    std::size_t idx = 0;
    for (int i = 0; i < nh; ++i) {
      const double kx = g.kx(i);
      for (int j = 0; j < nh; ++j) {
        const double ky = g.ky(j);
        const double k2 = kx * kx + ky * ky;
        for (int l = 0; l < nv; ++l, ++idx) {
          const cplx a = -(cplx(0.0, kx) * q11[idx] + cplx(0.0, ky) * q12[idx]);
          const cplx b = -(cplx(0.0, kx) * q12[idx] + cplx(0.0, ky) * q22[idx]);
          if (k2 == 0.0) {
            f1[idx] = a;
            f2[idx] = b;
            continue;
          }
          const cplx kdot = (kx * a + ky * b) / k2;
          f1[idx] = a - kx * kdot;
          f2[idx] = b - ky * kdot;
          if (pressure) (*pressure)[idx] = cplx(0.0, -1.0) * (kx * a + ky * b) / k2;
        }
      }
    }
  }

  double advective_rate(const Family& f) const {
    cvec p1, p2;
    phys(f.v1, p1);
    phys(f.v2, p2);
    double m = 0.0;
    for (std::size_t i = 0; i < p1.size(); ++i) {
      m = std::max(m, std::abs(p1[i].real()));
      m = std::max(m, std::abs(p2[i].real()));
    }
    return m / (g.len_h() / nh);
  }

  void prepare_dt(double dt) {
    half.resize(static_cast<std::size_t>(nh) * nh);
    full.resize(half.size());
    std::size_t ij = 0;
    for (int i = 0; i < nh; ++i)
      for (int j = 0; j < nh; ++j, ++ij) {
        const double kx = g.kx(i), ky = g.ky(j);
        half[ij] = std::exp(-0.5 * dt * (kx * kx + ky * ky));
        full[ij] = half[ij] * half[ij];
      }
  }
  void apply_heat(const std::vector<double>& mult, cvec& a, cvec& b) const {
    std::size_t idx = 0;
    for (std::size_t ij = 0; ij < mult.size(); ++ij) {
      const double m = mult[ij];
      for (int l = 0; l < nv; ++l, ++idx) {
        a[idx] *= m;
        b[idx] *= m;
      }
    }
  }

  void step(Family& f, double /*t*/, double dt) const {
    auto axpy = [](cvec& y, double alpha, const cvec& x) {
      for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
    };
    cvec k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
    rhs(f, k1a, k1b, nullptr);

    Family s2{g, f.v1, f.v2};
    axpy(s2.v1, 0.5 * dt, k1a);
    axpy(s2.v2, 0.5 * dt, k1b);
    apply_heat(half, s2.v1, s2.v2);
    rhs(s2, k2a, k2b, nullptr);

    Family s3{g, f.v1, f.v2};
    apply_heat(half, s3.v1, s3.v2);
    axpy(s3.v1, 0.5 * dt, k2a);
    axpy(s3.v2, 0.5 * dt, k2b);
    rhs(s3, k3a, k3b, nullptr);

    Family s4{g, k3a, k3b};
    for (cplx& c : s4.v1) c *= dt;
    for (cplx& c : s4.v2) c *= dt;
    apply_heat(half, s4.v1, s4.v2);
    Family uf{g, f.v1, f.v2};
    apply_heat(full, uf.v1, uf.v2);
    axpy(s4.v1, 1.0, uf.v1);
    axpy(s4.v2, 1.0, uf.v2);
    rhs(s4, k4a, k4b, nullptr);

    apply_heat(full, k1a, k1b);
    apply_heat(half, k2a, k2b);
    apply_heat(half, k3a, k3b);
    for (std::size_t i = 0; i < k1a.size(); ++i) {
      uf.v1[i] += (dt / 6.0) * (k1a[i] + 2.0 * (k2a[i] + k3a[i]) + k4a[i]);
      uf.v2[i] += (dt / 6.0) * (k1b[i] + 2.0 * (k2b[i] + k3b[i]) + k4b[i]);
    }
    f.v1 = std::move(uf.v1);
    f.v2 = std::move(uf.v2);
  }

  double energy(const Family& f) const {
    double s = 0.0;
    for (const cplx& c : f.v1) s += std::norm(c);
    for (const cplx& c : f.v2) s += std::norm(c);
    return g.volume() * s / nv;
  }
  double dissipation(const Family& f) const {
    double s = 0.0;
    std::size_t idx = 0;
    for (int i = 0; i < nh; ++i) {
      const double kx = g.kx(i);
      for (int j = 0; j < nh; ++j) {
        const double k2 = kx * kx + g.ky(j) * g.ky(j);
        for (int l = 0; l < nv; ++l, ++idx)
          s += k2 * (std::norm(f.v1[idx]) + std::norm(f.v2[idx]));
      }
    }
    return g.volume() * s / nv;
  }

  SampleOut sample(const Family& f, bool want_fields) const {
    SampleOut so;
    cvec c1, c2;
    spectral_from_hybrid(f.v1, c1);
    spectral_from_hybrid(f.v2, c2);
    VectorField u(Field(g, std::move(c1)), Field(g, std::move(c2)), Field(g));

    cvec p1, p2;
    phys(f.v1, p1);
    phys(f.v2, p2);
    double m = 0.0, rate = 0.0;
    for (std::size_t i = 0; i < p1.size(); ++i) {
      const double a = p1[i].real(), b = p2[i].real();
      m = std::max(m, std::sqrt(a * a + b * b));
      rate = std::max(rate, std::max(std::abs(a), std::abs(b)));
    }
    so.linf = m;
    so.rate = rate / (g.len_h() / nh);

    // Horizontal divergence residual in the hybrid layout.
    double div2 = 0.0, grad2 = 0.0;
    std::size_t idx = 0;
    for (int i = 0; i < nh; ++i) {
      const double kx = g.kx(i);
      for (int j = 0; j < nh; ++j) {
        const double ky = g.ky(j);
        for (int l = 0; l < nv; ++l, ++idx) {
          div2 += std::norm(kx * f.v1[idx] + ky * f.v2[idx]);
          grad2 += (kx * kx + ky * ky) * (std::norm(f.v1[idx]) + std::norm(f.v2[idx]));
        }
      }
    }
    so.div_residual = grad2 > 0.0 ? std::sqrt(div2 / grad2) : 0.0;

    if (want_fields) {
      cvec fa, fb, ph;
      rhs(f, fa, fb, &ph);
      cvec pc;
      spectral_from_hybrid(ph, pc);
      so.p = Field(g, std::move(pc));
    } else {
      so.p = Field(g);
    }
    so.u = std::move(u);
    return so;
  }
};

// ---------------------------------------------------------------------------
// Linear anisotropic system ops.
// ---------------------------------------------------------------------------

struct TepsOps {
  Grid g;
  double eps;
  const Trajectory* vh;
  Propagator prop;

  TepsOps(const Grid& gg, double e, const Trajectory* coeff)
      : g(gg), eps(e), vh(coeff) {}

  // Physical horizontal coefficient components at time t.
  void coeff_phys(double t, cvec& p1, cvec& p2) const {
    const VectorField v = vh->at_time(t);
    backward(g, v[0].coeffs(), p1);
    backward(g, v[1].coeffs(), p2);
  }

  // P_eps [ -(v . grad_h) w ]; pressure optionally returned.
  VectorField projected_advection(double t, const VectorField& w, Field* pressure) const {
    cvec v1p, v2p;
    coeff_phys(t, v1p, v2p);
    VectorField adv(g);
    cvec d1, d2, work(v1p.size());
    for (int c = 0; c < 3; ++c) {
      Field dx = derivative(w[c], {1, 0, 0});
      Field dy = derivative(w[c], {0, 1, 0});
      backward(g, dx.coeffs(), d1);
      backward(g, dy.coeffs(), d2);
      for (std::size_t i = 0; i < work.size(); ++i) {
        work[i] = cplx(-(v1p[i].real() * d1[i].real() + v2p[i].real() * d2[i].real()), 0.0);
      }
      forward_normalized(g, work);
      dealias_raw(g, work);
      adv[c] = Field(g, work);
    }
    auto [proj, p] = aniso_pressure_project(adv, eps);
    if (pressure) *pressure = std::move(p);
    return proj;
  }

  double advective_rate_at(double t) const {
    cvec p1, p2;
    coeff_phys(t, p1, p2);
    double m = 0.0;
    for (std::size_t i = 0; i < p1.size(); ++i)
      m = std::max(m, std::max(std::abs(p1[i].real()), std::abs(p2[i].real())));
    return m / (g.len_h() / g.n_h());
  }
  double advective_rate(const VectorField&) const { return advective_rate_at(now); }

  void prepare_dt(double dt) { prop.prepare(g, HeatMode::anisotropic(eps), dt); }
  void step(VectorField& w, double t, double dt) {
    if_rk4_step(w, t, dt, prop, [this](double tau, const VectorField& x) {
      return projected_advection(tau, x, nullptr);
    });
    now = t + dt;
  }
  double energy(const VectorField& w) const { return vec_energy(w); }
  double dissipation(const VectorField& w) const {
    return vec_dissipation(w, HeatMode::anisotropic(eps));
  }
  SampleOut sample(const VectorField& w, bool want_fields) {
    SampleOut so;
    const CollocationMax m = collocation_max(w);
    so.linf = m.euclid;
    so.rate = advective_rate_at(now);
    so.div_residual = divergence_residual(w);
    so.u = w;
    if (want_fields) {
      Field p;
      projected_advection(now, w, &p);
      so.p = std::move(p);
    } else {
      so.p = Field(g);
    }
    return so;
  }

  double now = 0.0;
};

void require_dealiased_divfree(const VectorField& u, const char* who,
                               bool horizontal_only) {
  for (int c = 0; c < 3; ++c)
    if (!is_dealiased(u[c]))
      throw std::invalid_argument(std::string(who) + ": initial data must be dealiased");
  Field d = horizontal_only ? divergence_h(u) : divergence(u);
  double scale = 0.0;
  for (int c = 0; c < 3; ++c) scale += coeff_l2(u[c]);
  if (coeff_l2(d) > 1e-8 * (1.0 + scale))
    throw std::invalid_argument(std::string(who) + ": initial data must be solenoidal");
}

}  // namespace

// ---------------------------------------------------------------------------
// Public API.
// ---------------------------------------------------------------------------

VectorField ns_rhs(const VectorField& u) { return leray_project(ns_rhs_raw(u)); }

Field ns_pressure(const VectorField& u) { return pressure_from_rhs(ns_rhs_raw(u)); }

void ns_step(VectorField& u, double dt) {
  Propagator prop;
  prop.prepare(u.grid(), HeatMode::full_laplacian(), dt);
  if_rk4_step(u, 0.0, dt, prop,
              [](double, const VectorField& v) { return leray_project(ns_rhs_raw(v)); });
}

VectorField Trajectory::at_time(double t) const {
  if (states.empty()) throw std::logic_error("Trajectory: no stored states");
  if (t <= times.front()) return states.front();
  if (t >= times.back()) return states.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - times.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - times[lo]) / (times[hi] - times[lo]);
  VectorField out = states[lo];
  out *= 1.0 - w;
  VectorField b = states[hi];
  b *= w;
  out += b;
  return out;
}

Field Trajectory::pressure_at_time(double t) const {
  if (pressures.empty()) throw std::logic_error("Trajectory: no stored pressures");
  if (t <= times.front()) return pressures.front();
  if (t >= times.back()) return pressures.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - times.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - times[lo]) / (times[hi] - times[lo]);
  Field out = pressures[lo];
  out *= 1.0 - w;
  Field b = pressures[hi];
  b *= w;
  out += b;
  return out;
}

Trajectory solve_ns3d(const VectorField& u0, const SolverConfig& cfg,
                      const SampleObserver& obs) {
  require_dealiased_divfree(u0, "solve_ns3d", false);
  Ns3dOps ops(u0.grid());
  return drive(u0, ops, u0.grid(), cfg, obs, true);
}

Trajectory solve_ns2d_family(const VectorField& v0, const SolverConfig& cfg,
                             const SampleObserver& obs) {
  require_dealiased_divfree(v0, "solve_ns2d_family", true);
  double scale = coeff_l2(v0[0]) + coeff_l2(v0[1]);
  if (coeff_l2(v0[2]) > 1e-13 * (1.0 + scale))
    throw std::invalid_argument("solve_ns2d_family: third component must vanish");
  FamilyOps ops(v0.grid());
  Family f;
  f.g = v0.grid();
  ops.hybrid_from_spectral(v0[0].coeffs(), f.v1);
  ops.hybrid_from_spectral(v0[1].coeffs(), f.v2);
  return drive(std::move(f), ops, v0.grid(), cfg, obs, true);
}

Trajectory solve_linear_teps(const VectorField& w0, const Trajectory& vh,
                             double eps, const SolverConfig& cfg,
                             const SampleObserver& obs) {
  require_dealiased_divfree(w0, "solve_linear_teps", false);
  if (!(eps > 0.0) || eps > 1.0)
    throw std::invalid_argument("solve_linear_teps: eps must lie in (0, 1]");
  if (vh.states.empty())
    throw std::invalid_argument("solve_linear_teps: coefficient trajectory has no stored states");
  if (vh.grid != w0.grid())
    throw std::invalid_argument("solve_linear_teps: coefficient grid mismatch");
  if (vh.times.back() < cfg.t_end - 1e-12)
    throw std::invalid_argument("solve_linear_teps: coefficient trajectory too short");
  TepsOps ops(w0.grid(), eps, &vh);
  return drive(w0, ops, w0.grid(), cfg, obs, false);
}

VectorField assemble_uapp(const VectorField& u, const VectorField& v,
                          const VectorField& w, double eps) {
  if (v.grid() != w.grid())
    throw std::invalid_argument("assemble_uapp: profile grids differ");
  Field t0 = w[0];
  t0 *= eps;
  t0 += v[0];
  Field t1 = w[1];
  t1 *= eps;
  t1 += v[1];
  Field t2 = w[2];
  t2 += v[2];
  VectorField out = u;
  out[0] += slow_scale_to(t0, eps, u.grid());
  out[1] += slow_scale_to(t1, eps, u.grid());
  out[2] += slow_scale_to(t2, eps, u.grid());
  if (divergence_residual(out) > 1e-8)
    throw std::runtime_error("assemble_uapp: assembled field is not solenoidal");
  return out;
}

Field assemble_papp(const Field& p, const Field& p0, const Field& p1, double eps) {
  Field t = p1;
  t *= eps;
  t += p0;
  Field out = p;
  out += slow_scale_to(t, eps, p.grid());
  return out;
}

VectorField remainder(const VectorField& u_eps, const VectorField& u_app) {
  VectorField r = u_eps;
  r -= u_app;
  return r;
}

}  // namespace q2d
