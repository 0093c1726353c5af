// Copyright 2026 the q2dlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "q2d/field.hpp"

namespace q2d {

/// splitmix64 stream with a hand-rolled Box-Muller normal sampler, so seeded
/// corpora are bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in (0, 1].
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Random mean-free real field, band-limited to the dealias band, with a
/// smooth spectral envelope exp(-|k|^2/k0^2) and unit-scale coefficients.
/// `horizontally_mean_free` additionally zeroes every k_h = 0 mode.
Field random_field(const Grid& g, Rng& rng, double k0 = 0.0,
                   bool horizontally_mean_free = false);

/// Random divergence-free vector field (Leray projection of three random
/// fields), mean-free and dealiased.
VectorField random_divfree_field(const Grid& g, Rng& rng, double k0 = 0.0,
                                 bool horizontally_mean_free = false);

}  // namespace q2d
