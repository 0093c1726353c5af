// Copyright 2026 the q2dlab authors
// SPDX-License-Identifier: Apache-2.0
//
// Initial-data construction: band-limited bump profiles, exact odd/even
// vertical factors, divergence-free assembly, the vertical slow-variation
// rescaling (an exact relabeling of vertical modes onto a taller box), and
// the tensor-datum size ratio measured through the heat flow.
#pragma once

#include <vector>

#include "q2d/field.hpp"

namespace q2d {

/// Gaussian-type bump, centered at (cx, cy) in box fractions, projected to
/// the mean-free dealias band of `g` (a 2D grid or the horizontal axes of a
/// 3D grid; the profile is constant in x3).  width = 0 picks len_h / 14,
/// comfortably band-limited on 48-point axes.
struct BumpSpec {
  double amplitude = 1.0;
  double width = 0.0;
  double cx = 0.5, cy = 0.5;
};
Field horizontal_bump(const Grid& g, const BumpSpec& spec = {});

/// Vertical profiles, constant in x_h, band-limited and mean-free.
/// The odd profile is an exact sine series (coefficients purely odd), so its
/// x3 = 0 trace vanishes identically: the z * exp(-z^2 / (2 width^2)) shape
/// is sampled on the box-centered coordinate and then odd-projected.
/// The even profile is the matching Gaussian bell with the mean removed.
struct VerticalSpec {
  double amplitude = 1.0;
  double width = 0.0;  // 0 picks len_v / 9
};
Field vertical_odd_profile(const Grid& g, const VerticalSpec& spec = {});
Field vertical_even_profile(const Grid& g, const VerticalSpec& spec = {});

/// Exact spectral tensor product h(x_h, x3) = f(x_h) g(x3); f lives on a 2D
/// grid (n_h, 1), gv on a 1D grid (1, n_v), and the output on `out`.
Field tensor_field(const Field& f, const Field& gv, const Grid& out);

/// v = (-d2 psi, d1 psi, 0): slice-wise solenoidal horizontal field.
VectorField stream_to_velocity(const Field& psi);

/// curl of a (mean-free) vector potential; exactly divergence-free.
VectorField potential_to_velocity(const VectorField& a);

/// True when eps = 2^-m for some integer m >= 0.
bool is_dyadic_scale(double eps);

/// Vertical slow-variation rescaling f(x_h, x3) -> f(x_h, eps x3): vertical
/// mode j of the input becomes vertical mode j of a box with period
/// len_v / eps, which represents the rescaled function exactly.  The output
/// grid keeps n_v (same modes, taller box).
Field slow_scale(const Field& f, double eps);
VectorField slow_scale(const VectorField& v, double eps);

/// Same relabeling, but placed onto a caller-supplied taller grid `tall`
/// whose period is any whole multiple of len_v / eps (the rescaled profile
/// then repeats across the target box): vertical mode m lands on mode
/// m * (eps * tall.len_v / len_v).  Horizontal axes must match; throws if
/// the rescaled band does not fit the target grid.
Field slow_scale_to(const Field& f, double eps, const Grid& tall);
VectorField slow_scale_to(const VectorField& v, double eps, const Grid& tall);

/// Small divergence-free cellular field
///   amp (sin(a x) cos(a y) cos(b z), -cos(a x) sin(a y) cos(b z), 0),
/// a = 2 pi mh / len_h, b = 2 pi mv / len_v; exactly representable whenever
/// |mh|, |mv| are inside the dealias band.
VectorField cellular_field(const Grid& g, double amp, int mh = 2, int mv = 1);

/// The slowly-varying datum and its building blocks, all on the base box.
struct QuasiTwoDData {
  VectorField v0h;  // horizontal pair, zero third component, slice solenoidal
  VectorField w0;   // divergence-free corrector seed, w0^3 vanishing at x3=0
  double eps = 1.0;
};

/// One bump-built default datum: v0h from a stream bump times an odd
/// vertical factor, w0 from an odd-in-x3 vector potential.
QuasiTwoDData default_quasi2d_data(const Grid& base, double eps,
                                   double amp_v = 3.0, double amp_w = 1.0);

/// Assemble u0 + sum_j (v0h_j + eps_j w0h_j, w0^3_j)(x_h, eps_j x3) on the
/// grid of u0.  Every term's invariants (slice solenoidality, zero traces,
/// mean-freeness, divergence) are validated; violations throw with the name
/// of the failed invariant.
VectorField build_quasi2d_datum(const VectorField& u0,
                                const std::vector<QuasiTwoDData>& parts);

/// Max |component| over the x3 = 0 plane, refined 2x horizontally.
double trace_plane_max(const Field& f);
double trace_plane_max(const VectorField& v);

/// Tensor datum h_eps(x_h, x3) = f(x_h) g(eps x3) and the size quotient
///   || h_eps ||_{B^-1_{inf,inf} on the tall box} /
///   ( || f ||_{B^-1_{inf,inf} 2D} * || g ||_{L^inf} ),
/// both sides through the heat-flow characterization.  The tall-box norm is
/// evaluated without leaving the base grid: the heat flow of the relabeled
/// field is the relabeling of the anisotropic-generator flow, and relabeling
/// preserves sup norms.
struct TensorProfile {
  Field f;   // 2D horizontal profile on (n_h, 1)
  Field g;   // 1D vertical profile on (1, n_v)
  double eps = 1.0;
};
double sizedata_ratio(const TensorProfile& tp, const Grid& base);

}  // namespace q2d
