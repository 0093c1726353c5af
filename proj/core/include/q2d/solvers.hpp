// Copyright 2026 the q2dlab authors
// SPDX-License-Identifier: Apache-2.0
//
// Time integration: an integrating-factor RK4 scheme (the viscous semigroup
// is applied exactly between stages) for three coupled systems sharing one
// spatial discretization:
//   * the 3D equations with full diffusion,
//   * an independent family of 2D equations, one per vertical slice, and
//   * a linear advection system with weak vertical diffusion eps^2 d33 and
//     an anisotropic pressure gradient (grad_h p, eps^2 d3 p).
// Nonlinear terms use the conservative (divergence) form with dealiased
// products; sample times are exact multiples of a fixed cadence, preserved
// across any dt halvings.
#pragma once

#include <functional>
#include <vector>

#include "q2d/field.hpp"
#include "q2d/spectral.hpp"

namespace q2d {

struct SolverConfig {
  double dt = 0.0;      // upper bound on the step; 0 picks one from the CFL
  double t_end = 1.0;
  double cfl = 0.4;     // advective CFL number, per-axis max |u_i| / dx_i
  int sample_every = 4; // steps per stored sample (at the starting dt)
  bool store_fields = true;
  int max_dt_halvings = 10;
};

struct SampleDiagnostics {
  double t = 0.0;
  double energy = 0.0;     // ||u||_{L2}^2
  double grad_sq = 0.0;    // dissipation functional of the system's generator
  double linf = 0.0;       // collocation max of |u| (Euclidean)
  double hhalf = 0.0;      // homogeneous H^{1/2} norm
  double div_residual = 0.0;
};

class Trajectory {
 public:
  Grid grid;
  std::vector<double> times;
  std::vector<VectorField> states;     // empty when store_fields == false
  std::vector<Field> pressures;        // matching states
  std::vector<SampleDiagnostics> diagnostics;
  double dt = 0.0;       // final step size
  long steps = 0;        // total steps taken
  int halvings = 0;
  // |E(T) + 2 int ||grad u||^2 - E(0)| / E(0); meaningful for the nonlinear
  // systems, whose advection term does no work.
  double energy_defect = 0.0;

  int sample_count() const { return static_cast<int>(times.size()); }
  /// Linear interpolation between stored samples; t clamped to the covered
  /// range.  Requires stored states.
  VectorField at_time(double t) const;
  Field pressure_at_time(double t) const;
};

/// Called at every sample (including t = 0) with the sampled state and
/// pressure, before they are (optionally) stored.
using SampleObserver =
    std::function<void(int index, double t, const VectorField& u, const Field& p)>;

/// -P div(u (x) u): the projected conservative advection term.
VectorField ns_rhs(const VectorField& u);

/// Pressure of the 3D system: -Lap p = div div (u (x) u).
Field ns_pressure(const VectorField& u);

/// One integrating-factor RK4 step of the 3D system (exposed for benchmarks
/// and composite pipelines that advance several systems in lockstep).
void ns_step(VectorField& u, double dt);

/// 3D equations with full diffusion on the grid of u0.  u0 must be
/// divergence-free, mean-free, and dealiased.  Throws after
/// max_dt_halvings failed attempts to stabilize the step.
Trajectory solve_ns3d(const VectorField& u0, const SolverConfig& cfg,
                      const SampleObserver& obs = {});

/// Slice family: every vertical collocation plane of v0 = (v01, v02, 0)
/// evolves under the 2D equations independently; the vertical index is a
/// passive parameter (no vertical transform ever touches the state, so equal
/// slices stay bitwise equal).  Sampled states are returned in the usual
/// full-spectral representation; `pressures` holds the per-slice 2D pressure.
Trajectory solve_ns2d_family(const VectorField& v0, const SolverConfig& cfg,
                             const SampleObserver& obs = {});

/// Linear system dw/dt + (v.grad_h) w = (Lap_h + eps^2 d33) w - (grad_h p,
/// eps^2 d3 p), div w = 0, with the coefficient v taken from the stored
/// samples of `vh` by linear interpolation in time.  vh must cover
/// [0, t_end] with stored states on the same grid.
Trajectory solve_linear_teps(const VectorField& w0, const Trajectory& vh,
                             double eps, const SolverConfig& cfg,
                             const SampleObserver& obs = {});

/// u + [v + (eps w_h, w_3)](x_h, eps x3): the approximate solution sample.
/// u lives on the tall grid, v (slice family sample, third component zero)
/// and w on the base grid; the bracket is relabeled onto the grid of u.
/// Throws if the assembled field is not solenoidal to 1e-8 (relative).
VectorField assemble_uapp(const VectorField& u, const VectorField& v,
                          const VectorField& w, double eps);

/// p + [p0 + eps p1](x_h, eps x3) on the grid of p.
Field assemble_papp(const Field& p, const Field& p0, const Field& p1, double eps);

/// u_eps - u_app on a common grid.
VectorField remainder(const VectorField& u_eps, const VectorField& u_app);

}  // namespace q2d
