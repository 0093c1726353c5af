// Copyright 2026 the q2dlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "q2d/field.hpp"

namespace q2d {

// Homogeneous Sobolev and anisotropic mixed norms on the periodic box.
//
// Conventions shared by every evaluator here:
//  * Parseval carries the box volume:  ||f||_{L2}^2 = V * sum_k |f^(k)|^2.
//  * The k = 0 mode (full mean) is always excluded from homogeneous norms.
//  * Degenerate-mode floor: a mode whose horizontal wavevector vanishes
//    identically (k_h = 0, k3 != 0) uses |k|_eff^2 = q_h^2 + k3^2 with
//    q_h = pi/len_h (half the lattice spacing); per-slice means inside mixed
//    horizontal norms use q_h, per-column means q_v.  This is the cell-average
//    surrogate for the R^3 integral the torus atom discretizes; without it,
//    vertically relabeled fields acquire an eps^{-1} box artifact in negative
//    order norms.  s = 0 is unaffected (all weights 1; exact Parseval L2).

/// Homogeneous H^s norm; dim must match the field's grid dimension and s must
/// lie in (-dim/2, dim/2).
double hs_norm(const Field& f, double s, int dim);
double hs_norm(const VectorField& v, double s, int dim);

/// H^s norm of the vertically relabeled field f(x_h, eps x3) on the box
/// [0,len_h)^2 x [0, len_v/eps), evaluated directly on the base-grid
/// coefficients (mode (k_h, k3) carries tall-box wavenumber (k_h, eps k3),
/// and the volume gains a 1/eps).
double hs_norm_scaled(const Field& f, double s, double eps);
double hs_norm_scaled(const VectorField& v, double s, double eps);

/// L^p norm by collocation quadrature; p in {1, 2, 4} or inf (p <= 0 means
/// inf, evaluated on a 2x zero-padded refinement).
double lp_norm(const Field& f, double p);

/// sqrt( int dx3 ||f(.,x3)||_{H^s_h}^2 )  — spectral, per-slice horizontal.
double l2v_hsh_norm(const Field& f, double s);
double l2v_hsh_norm(const VectorField& v, double s);

/// sqrt( int dx_h ||f(x_h,.)||_{H^s_v}^2 ) — spectral, per-column vertical.
double l2h_hsv_norm(const Field& f, double s);

/// sup_{x3} ||f(.,x3)||_{L2_h}, evaluated on a 2x vertically refined slice
/// family.  The joint overloads take sqrt of the component sum per slice
/// before the sup (needed for |grad u| style monitors).
double linfv_l2h_norm(const Field& f);
double linfv_l2h_norm(const std::vector<const Field*>& comps);

/// sup_{x3} ||f(.,x3)||_{H^s_h} on the 2x refined slice family.
double linfv_hsh_norm(const Field& f, double s);

/// sup-norm via 2x zero-padded refinement.
double linf_norm(const Field& f);
double linf_norm(const VectorField& v);

/// Horizontal slice x3 = z(l) as a standalone 2D field (grid (n_h, n_h, 1),
/// unit vertical length).
Field slice_to_2d(const Field& f, int l);

/// H^s inner product (same weights and exclusions as hs_norm).
double hs_inner(const Field& a, const Field& b, double s);
double hs_inner(const VectorField& a, const VectorField& b, double s);

struct WeightedX3 {
  double value = 0.0;          // || x3 f ||_{L2}, box-centered sawtooth coordinate
  double far_mass_fraction = 0.0;  // share of |f|^2 mass at |x3| > len_v/4
};
WeightedX3 weighted_x3_l2(const Field& f);

/// Either side of the Sobolev/anisotropic embedding:
///   s <= 0:  ||f||_{H^s}  <=  ||f||_{L2_v H^s_h}   (reversed for s >= 0).
/// Returns RHS - LHS (nonnegative up to roundoff when the embedding holds).
double embedding_margin(const Field& f, double s);

/// ||f||_{L2_h H^{1/2}_v} + ||f||_{L2_v H^{1/2}_h} - ||f||_{H^{1/2}}  (>= 0).
double h_half_splitting_margin(const Field& f);

/// Time series of a norm with L^rho(dt) aggregation (trapezoid; rho <= 0 =
/// sup).  Times must be strictly increasing.
class TimeSeriesNorm {
 public:
  void push(double t, double value);
  double aggregate(double rho) const;
  std::size_t size() const { return t_.size(); }
  const std::vector<double>& times() const { return t_; }
  const std::vector<double>& values() const { return v_; }

  struct Tail {
    double decay_rate = 0.0;   // lambda from log-linear fit over the last quarter
    double tail_l2 = -1.0;     // estimated contribution of (T,inf) to the L2 integral
    bool decaying = false;
  };
  Tail tail_estimate() const;

 private:
  std::vector<double> t_, v_;
};

}  // namespace q2d
