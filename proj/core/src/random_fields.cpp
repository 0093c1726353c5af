// Copyright 2026 the q2dlab authors
// SPDX-License-Identifier: Apache-2.0

#include "q2d/random_fields.hpp"

#include <cmath>

#include "q2d/spectral.hpp"

namespace q2d {

Field random_field(const Grid& g, Rng& rng, double k0, bool horizontally_mean_free) {
  if (k0 <= 0.0) k0 = 0.5 * g.k_cut();
  Field f(g);
  auto& c = f.coeffs();
  // Fill independent coefficients in a fixed traversal order, then mirror.
  for (int i = 0; i < g.n_h(); ++i) {
    const double k1 = g.kx(i);
    for (int j = 0; j < g.n_h(); ++j) {
      const double k2 = g.ky(j);
      for (int l = 0; l < g.n_v(); ++l) {
        const double k3 = g.kz(l);
        const double kk = std::sqrt(k1 * k1 + k2 * k2 + k3 * k3);
        const double env = std::exp(-(kk * kk) / (k0 * k0));
        const double re = rng.next_normal();
        const double im = rng.next_normal();
        c[g.index(i, j, l)] = env * cplx(re, im);
      }
    }
  }
  // realize: symmetrize via physical round trip of the real part
  dealias_inplace(f);
  f.drop_mean();
  if (horizontally_mean_free) drop_horizontal_means(f);
  Field real_f = to_spectral(g, to_physical(f));
  dealias_inplace(real_f);
  real_f.drop_mean();
  if (horizontally_mean_free) drop_horizontal_means(real_f);
  return real_f;
}

VectorField random_divfree_field(const Grid& g, Rng& rng, double k0,
                                 bool horizontally_mean_free) {
  VectorField v(random_field(g, rng, k0, horizontally_mean_free),
                random_field(g, rng, k0, horizontally_mean_free),
                random_field(g, rng, k0, horizontally_mean_free));
  VectorField out = leray_project(v);
  for (int c = 0; c < 3; ++c) {
    dealias_inplace(out[c]);
    out[c].drop_mean();
    if (horizontally_mean_free) drop_horizontal_means(out[c]);
  }
  return out;
}

}  // namespace q2d
