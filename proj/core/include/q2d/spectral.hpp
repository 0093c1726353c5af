// Copyright 2026 the q2dlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "q2d/field.hpp"

namespace q2d {

/// Collocation samples of the (real) field; row-major, z fastest.
std::vector<double> to_physical(const Field& f);

/// Forward transform of real samples; coefficients are normalized by 1/N and
/// Hermitian-symmetrized so the field represents a real function exactly.
Field to_spectral(const Grid& g, const std::vector<double>& samples);

/// Spectral derivative d^{a1}/dx1 d^{a2}/dx2 d^{a3}/dx3 via (ik)^a multipliers.
Field derivative(const Field& f, const std::array<int, 3>& orders);

struct HeatMode {
  enum class Kind { full, horizontal, anisotropic };
  Kind kind = Kind::full;
  double eps = 1.0;  // anisotropic only: symbol |k_h|^2 + eps^2 k3^2

  static HeatMode full_laplacian() { return {Kind::full, 1.0}; }
  static HeatMode horizontal() { return {Kind::horizontal, 1.0}; }
  static HeatMode anisotropic(double e) { return {Kind::anisotropic, e}; }
};

/// e^{-t sigma(k)} multiplier; t >= 0.  Contraction in spectral L2.
Field heat_propagate(const Field& f, double t, const HeatMode& mode = HeatMode{});

/// Heat symbol value sigma(k) at FFT bin (i, j, l).
double heat_symbol(const Grid& g, const HeatMode& mode, int i, int j, int l);

/// Leray projection onto divergence-free fields: u - k (k.u)/|k|^2, k=0 kept.
VectorField leray_project(const VectorField& v);

/// Anisotropic pressure correction: returns (v - (grad_h p, eps^2 d3 p), p)
/// where (Lap_h + eps^2 d33) p = div v mode by mode.  eps = 1 coincides with
/// leray_project.  Modes where the symbol vanishes keep their content and get
/// zero pressure.
std::pair<VectorField, Field> aniso_pressure_project(const VectorField& v, double eps);

/// 2/3-rule dealiasing: zero every mode with |m_axis| > n_axis/3.
Field dealias(Field f);
void dealias_inplace(Field& f);
bool is_dealiased(const Field& f, double tol = 0.0);

/// Dealiased pointwise product computed in physical space.
Field product(const Field& a, const Field& b);

Field divergence(const VectorField& v);
Field divergence_h(const VectorField& v);  // horizontal components only
VectorField gradient(const Field& f);

/// ||div v||_L2 / ||grad v||_L2 (0 for exactly solenoidal; dimensionless).
double divergence_residual(const VectorField& v);

/// Zero-padded spectral interpolation onto a grid refined by `factor` along
/// every non-degenerate axis; used for sup-norm evaluation.
std::vector<double> to_physical_upsampled(const Field& f, int factor, Grid* fine_grid = nullptr);

/// Per-slice horizontal mean content removed (all k_h = 0 modes, every k3).
void drop_horizontal_means(Field& f);
void drop_horizontal_means(VectorField& v);

double max_abs(const std::vector<double>& samples);

// Spectral l2 of the coefficient array (no volume factor); the physical
// L2 norm is sqrt(volume) times this for mean-free fields.
double coeff_l2(const Field& f);

}  // namespace q2d
