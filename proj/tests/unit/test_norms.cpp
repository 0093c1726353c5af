// Copyright 2026 the q2dlab authors
// SPDX-License-Identifier: Apache-2.0
//
// Norm evaluators against closed-form single modes, physical-space
// quadrature, an explicitly relabeled field on the tall box, and analytic
// time integrals.

#include <cmath>
#include <vector>

#include "doctest.h"
#include "q2d/norms.hpp"
#include "q2d/random_fields.hpp"
#include "q2d/spectral.hpp"

using namespace q2d;

namespace {

Field cosine_mode(const Grid& g, int mx, int my, int mz, double amp) {
  std::vector<double> s(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.n_h(); ++i)
    for (int j = 0; j < g.n_h(); ++j)
      for (int l = 0; l < g.n_v(); ++l)
        s[g.index(i, j, l)] = amp * std::cos(g.kx(mx) * g.x(i) + g.ky(my) * g.y(j) +
                                             g.kz(mz) * g.z(l));
  return to_spectral(g, s);
}

}  // namespace

TEST_SUITE("norms") {

TEST_CASE("single cosine modes: closed-form Sobolev norms") {
  Grid g(16, 16, 2.0 * M_PI * 2.0, 2.0 * M_PI * 3.0);
  const double V = g.volume();
  const double amp = 1.7;

  SUBCASE("generic mode") {
    const Field f = cosine_mode(g, 3, 1, 2, amp);
    const double k2 = g.kx(3) * g.kx(3) + g.ky(1) * g.ky(1) + g.kz(2) * g.kz(2);
    for (double s : {-1.0, -0.5, 0.0, 0.5, 1.0, 1.4}) {
      const double want = amp * std::sqrt(V / 2.0) * std::pow(k2, 0.5 * s);
      CHECK(hs_norm(f, s, 3) == doctest::Approx(want).epsilon(1e-12));
    }
  }
  SUBCASE("purely vertical mode gets the half-spacing floor") {
    const Field f = cosine_mode(g, 0, 0, 2, amp);
    const double k2 = g.q_h() * g.q_h() + g.kz(2) * g.kz(2);
    const double want = amp * std::sqrt(V / 2.0) * std::pow(k2, -0.25);
    CHECK(hs_norm(f, -0.5, 3) == doctest::Approx(want).epsilon(1e-12));
  }
  SUBCASE("L2 equals the physical quadrature for random fields") {
    Rng rng(19);
    const Field f = random_field(g, rng);
    const auto s = to_physical(f);
    double acc = 0.0;
    for (double v : s) acc += v * v;
    CHECK(hs_norm(f, 0.0, 3) ==
          doctest::Approx(std::sqrt(acc * g.cell_volume())).epsilon(1e-12));
  }
}

TEST_CASE("anisotropic norms on separated modes") {
  Grid g(16, 16, 2.0 * M_PI, 2.0 * M_PI * 4.0);
  const double amp = 0.9;
  const Field f = cosine_mode(g, 2, 1, 3, amp);
  const double kh = std::hypot(g.kx(2), g.ky(1));
  const double kv = std::abs(g.kz(3));
  const double V = g.volume();

  for (double s : {-0.5, 0.5}) {
    CHECK(l2v_hsh_norm(f, s) ==
          doctest::Approx(amp * std::sqrt(V / 2.0) * std::pow(kh, s)).epsilon(1e-12));
    CHECK(l2h_hsv_norm(f, s) ==
          doctest::Approx(amp * std::sqrt(V / 2.0) * std::pow(kv, s)).epsilon(1e-12));
  }

  // sup_z ||f(., z)||_{L2_h}: the slice norm is amp |cos(kv z)| L_h / sqrt(2),
  // maximized at z = 0
  CHECK(linfv_l2h_norm(f) ==
        doctest::Approx(amp * g.len_h() / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(linfv_hsh_norm(f, 0.5) ==
        doctest::Approx(amp * g.len_h() / std::sqrt(2.0) * std::sqrt(kh)).epsilon(1e-12));

  CHECK(linf_norm(f) == doctest::Approx(amp).epsilon(1e-12));
}

TEST_CASE("weighted vertical moment matches fine 1D quadrature") {
  Grid g(8, 16, 3.0, 11.0);
  // separable sample f = amp cos(k1 x) cos(k3 z) so the moment factorizes
  const double amp = 1.3;
  const double k1 = g.kx(1), k3 = g.kz(2);
  std::vector<double> s(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.n_h(); ++i)
    for (int j = 0; j < g.n_h(); ++j)
      for (int l = 0; l < g.n_v(); ++l)
        s[g.index(i, j, l)] = amp * std::cos(k1 * g.x(i)) * std::cos(k3 * g.z(l));
  const auto got = weighted_x3_l2(to_spectral(g, s));

  // || x3 f ||_L2^2 = amp^2 L_h (integral_h cos^2) (integral_v z^2 cos^2),
  // z the box-centered coordinate; both 1D factors by brute-force quadrature
  const int nq = 400000;
  double vert = 0.0, horiz = 0.0;
  for (int i = 0; i < nq; ++i) {
    const double z = -0.5 * g.len_v() + g.len_v() * (i + 0.5) / nq;
    vert += z * z * std::cos(k3 * z) * std::cos(k3 * z) * (g.len_v() / nq);
    const double xh = g.len_h() * (i + 0.5) / nq;
    horiz += std::cos(k1 * xh) * std::cos(k1 * xh) * (g.len_h() / nq);
  }
  const double want = amp * std::sqrt(vert * horiz * g.len_h());
  // the grid-point moment is a rectangle rule for the continuum integral
  CHECK(got.value == doctest::Approx(want).epsilon(2e-2));
  CHECK(got.far_mass_fraction > 0.3);  // cos^2 mass is spread over the box
}

TEST_CASE("relabeled-field norm equals the explicit tall-box evaluation") {
  Grid g(12, 12, 5.0, 7.0);
  Rng rng(43);
  const Field f = random_field(g, rng, 0.0, true);
  for (double eps : {0.5, 0.25, 0.125}) {
    Grid tall(g.n_h(), g.n_v(), g.len_h(), g.len_v() / eps);
    Field relabeled(tall, f.coeffs());
    for (double s : {-0.5, 0.5, 1.0}) {
      CHECK(hs_norm_scaled(f, s, eps) ==
            doctest::Approx(hs_norm(relabeled, s, 3)).epsilon(1e-12));
    }
  }
}

TEST_CASE("slices and traces") {
  Grid g(12, 16, 4.0, 9.0);
  Rng rng(47);
  const Field f = random_field(g, rng);
  const auto samples = to_physical(f);
  for (int l : {0, 5, 11}) {
    const Field sl = slice_to_2d(f, l);
    CHECK(sl.grid().dim() == 2);
    const auto flat = to_physical(sl);
    for (int i = 0; i < g.n_h(); ++i)
      for (int j = 0; j < g.n_h(); ++j)
        CHECK(flat[sl.grid().index(i, j, 0)] ==
              doctest::Approx(samples[g.index(i, j, l)]).epsilon(1e-11));
  }
}

TEST_CASE("inner product is compatible with the norm") {
  Grid g(12, 12, 3.0, 3.0);
  Rng rng(53);
  const Field a = random_field(g, rng);
  const Field b = random_field(g, rng);
  for (double s : {-0.5, 0.5}) {
    const double na = hs_norm(a, s, 3);
    CHECK(hs_inner(a, a, s) == doctest::Approx(na * na).epsilon(1e-12));
    // polarization: (a+b, a+b) = (a,a) + 2(a,b) + (b,b)
    const double nab = hs_norm(a + b, s, 3);
    CHECK(hs_inner(a, b, s) ==
          doctest::Approx(0.5 * (nab * nab - na * na -
                                 hs_norm(b, s, 3) * hs_norm(b, s, 3)))
              .epsilon(1e-10));
  }
}

TEST_CASE("embedding and splitting margins are nonnegative on random fields") {
  Grid g(12, 12, 2.0, 6.0);
  Rng rng(59);
  for (int trial = 0; trial < 25; ++trial) {
    const Field f = random_field(g, rng);
    for (double s : {-0.5, 0.5})
      CHECK(embedding_margin(f, s) >= -1e-12 * hs_norm(f, s, 3));
    CHECK(h_half_splitting_margin(f) >= -1e-12 * hs_norm(f, 0.5, 3));
  }
}

TEST_CASE("time-series aggregation against analytic integrals") {
  TimeSeriesNorm ts;
  const int n = 4000;
  for (int i = 0; i <= n; ++i) {
    const double t = 2.0 * i / n;
    ts.push(t, std::exp(-t));
  }
  // (integral_0^2 e^{-2t} dt)^{1/2}
  CHECK(ts.aggregate(2.0) ==
        doctest::Approx(std::sqrt(0.5 * (1.0 - std::exp(-4.0)))).epsilon(1e-6));
  CHECK(ts.aggregate(0.0) == doctest::Approx(1.0).epsilon(1e-12));

  const auto tail = ts.tail_estimate();
  CHECK(tail.decaying);
  CHECK(tail.decay_rate == doctest::Approx(1.0).epsilon(1e-3));
  // e^{-2T}/(2 lambda) at T = 2, lambda = 1
  CHECK(tail.tail_l2 == doctest::Approx(0.5 * std::exp(-4.0)).epsilon(1e-2));
}

}  // TEST_SUITE
