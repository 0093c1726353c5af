// Copyright 2026 the q2dlab authors
// SPDX-License-Identifier: Apache-2.0
//
// Initial-data construction: profiles against direct function evaluation,
// exact symmetry and trace properties, the vertical relabeling against naive
// Fourier synthesis, datum invariants, and the tensor-datum size ratio.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "q2d/littlewood_paley.hpp"
#include "q2d/norms.hpp"
#include "q2d/profiles.hpp"
#include "q2d/random_fields.hpp"
#include "q2d/spectral.hpp"

namespace {

using q2d::Field;
using q2d::Grid;
using q2d::VectorField;

constexpr double kTau = 6.283185307179586476925286766559;

// Direct periodized-Gaussian sum (5x5 images), minus its box mean.
double bump_reference(double x, double y, double cx, double cy, double w,
                      double L) {
  double s = 0.0;
  for (int p = -2; p <= 2; ++p) {
    for (int q = -2; q <= 2; ++q) {
      const double dx = x - cx + L * p;
      const double dy = y - cy + L * q;
      s += std::exp(-(dx * dx + dy * dy) / (2.0 * w * w));
    }
  }
  return s - kTau * w * w / (L * L);
}

// Naive synthesis of a field's coefficients at one physical point.
double synth_at(const Field& f, double x, double y, double z) {
  const Grid& g = f.grid();
  std::complex<double> acc(0.0, 0.0);
  for (int i = 0; i < g.n_h(); ++i) {
    for (int j = 0; j < g.n_h(); ++j) {
      for (int l = 0; l < g.n_v(); ++l) {
        const double ph = g.kx(i) * x + g.ky(j) * y + g.kz(l) * z;
        acc += f.at(i, j, l) * std::complex<double>(std::cos(ph), std::sin(ph));
      }
    }
  }
  return acc.real();
}

}  // namespace

TEST_SUITE("profiles") {

TEST_CASE("horizontal bump matches the periodized gaussian") {
  const double L = kTau * 8.0;
  const Grid flat(48, 1, L, 1.0);
  const q2d::BumpSpec spec{1.7, 0.0, 0.42, 0.58};
  const Field f = q2d::horizontal_bump(flat, spec);
  CHECK(q2d::is_dealiased(f));
  CHECK(std::abs(f.mean()) == 0.0);

  const double w = L / 14.0;
  const std::vector<double> phys = q2d::to_physical(f);
  for (int i = 0; i < 48; i += 5) {
    for (int j = 0; j < 48; j += 7) {
      const double want = spec.amplitude *
                          bump_reference(flat.x(i), flat.y(j), 0.42 * L,
                                         0.58 * L, w, L);
      CHECK(phys[static_cast<std::size_t>(i) * 48 + j] ==
            doctest::Approx(want).epsilon(1e-8).scale(1.0));
    }
  }
}

TEST_CASE("vertical profiles: symmetry, trace, and shape") {
  const double Lv = kTau * 8.0;
  const Grid column(1, 64, 1.0, Lv);
  const double w = Lv / 9.0;

  const Field odd = q2d::vertical_odd_profile(column, {2.0, 0.0});
  const std::vector<double> po = q2d::to_physical(odd);
  // Exact sine series: the z = 0 sample vanishes and samples are odd.
  CHECK(std::abs(po[0]) < 1e-13);
  for (int l = 1; l < 64; ++l) {
    CHECK(po[l] == doctest::Approx(-po[64 - l]).epsilon(1e-12).scale(1.0));
  }
  // Shape: the periodization of z exp(-z^2 / 2w^2) scaled to peak amplitude 2.
  auto shape = [&](double z) {
    double s = 0.0;
    for (int p = -2; p <= 2; ++p) {
      const double zz = z + p * Lv;
      s += zz * std::exp(-zz * zz / (2.0 * w * w));
    }
    return 2.0 * s / (w * std::exp(-0.5));
  };
  for (int l = 3; l < 64; l += 6) {
    CHECK(po[l] ==
          doctest::Approx(shape(column.z_centered(l))).epsilon(1e-7).scale(1.0));
  }

  const Field even = q2d::vertical_even_profile(column, {1.3, 0.0});
  const std::vector<double> pe = q2d::to_physical(even);
  CHECK(std::abs(even.mean()) == 0.0);
  for (int l = 1; l < 64; ++l) {
    CHECK(pe[l] == doctest::Approx(pe[64 - l]).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("tensor field equals the pointwise product of its factors") {
  const double L = kTau * 8.0;
  const Grid flat(12, 1, L, 1.0);
  const Grid column(1, 16, 1.0, L);
  const Grid box(12, 16, L, L);
  const Field f = q2d::horizontal_bump(flat, {1.0, L / 6.0, 0.3, 0.7});
  const Field gv = q2d::vertical_odd_profile(column, {1.0, L / 7.0});
  const Field h = q2d::tensor_field(f, gv, box);

  const std::vector<double> pf = q2d::to_physical(f);
  const std::vector<double> pg = q2d::to_physical(gv);
  const std::vector<double> ph = q2d::to_physical(h);
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 12; ++j) {
      for (int l = 0; l < 16; ++l) {
        const double want = pf[static_cast<std::size_t>(i) * 12 + j] * pg[l];
        const double got = ph[(static_cast<std::size_t>(i) * 12 + j) * 16 + l];
        CHECK(got == doctest::Approx(want).epsilon(1e-12).scale(1.0));
      }
    }
  }
  CHECK_THROWS_AS(q2d::tensor_field(gv, f, box), std::invalid_argument);
}

TEST_CASE("stream function velocity: solenoidal with vorticity = laplacian") {
  const double L = kTau * 8.0;
  const Grid g(16, 12, L, L);
  const Grid flat(16, 1, L, 1.0);
  const Grid column(1, 12, 1.0, L);
  const Field psi = q2d::tensor_field(q2d::horizontal_bump(flat, {1.0}),
                                      q2d::vertical_odd_profile(column), g);
  const VectorField v = q2d::stream_to_velocity(psi);
  CHECK(q2d::coeff_l2(v[2]) == 0.0);
  CHECK(q2d::coeff_l2(q2d::divergence_h(v)) < 1e-14);

  // d1 v2 - d2 v1 should equal the horizontal laplacian of psi.
  Field vort = q2d::derivative(v[1], {1, 0, 0});
  vort -= q2d::derivative(v[0], {0, 1, 0});
  Field lap = q2d::derivative(psi, {2, 0, 0});
  lap += q2d::derivative(psi, {0, 2, 0});
  vort -= lap;
  CHECK(q2d::coeff_l2(vort) < 1e-13 * q2d::coeff_l2(psi));
}

TEST_CASE("vector potential velocity equals the per-mode cross product") {
  const double L = kTau * 8.0;
  const Grid g(12, 8, L, L / 2.0);
  q2d::Rng rng(321);
  VectorField a(q2d::random_field(g, rng), q2d::random_field(g, rng),
                q2d::random_field(g, rng));
  const VectorField u = q2d::potential_to_velocity(a);
  CHECK(q2d::coeff_l2(q2d::divergence(u)) < 1e-13);

  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 12; ++j) {
      for (int l = 0; l < 8; ++l) {
        const std::complex<double> ik(0.0, 1.0);
        const std::complex<double> c0 =
            ik * g.ky(j) * a[2].at(i, j, l) - ik * g.kz(l) * a[1].at(i, j, l);
        const std::complex<double> c1 =
            ik * g.kz(l) * a[0].at(i, j, l) - ik * g.kx(i) * a[2].at(i, j, l);
        const std::complex<double> c2 =
            ik * g.kx(i) * a[1].at(i, j, l) - ik * g.ky(j) * a[0].at(i, j, l);
        CHECK(std::abs(u[0].at(i, j, l) - c0) < 1e-12);
        CHECK(std::abs(u[1].at(i, j, l) - c1) < 1e-12);
        CHECK(std::abs(u[2].at(i, j, l) - c2) < 1e-12);
      }
    }
  }
}

TEST_CASE("dyadic scale recognition") {
  CHECK(q2d::is_dyadic_scale(1.0));
  CHECK(q2d::is_dyadic_scale(0.5));
  CHECK(q2d::is_dyadic_scale(0.25));
  CHECK(q2d::is_dyadic_scale(std::ldexp(1.0, -20)));
  CHECK_FALSE(q2d::is_dyadic_scale(0.3));
  CHECK_FALSE(q2d::is_dyadic_scale(0.75));
  CHECK_FALSE(q2d::is_dyadic_scale(2.0));
  CHECK_FALSE(q2d::is_dyadic_scale(0.0));
  CHECK_FALSE(q2d::is_dyadic_scale(-0.5));
}

TEST_CASE("slow rescaling relabels modes exactly") {
  const double L = kTau * 8.0;
  const Grid g(12, 16, L, L);
  q2d::Rng rng(77);
  const Field f = q2d::random_field(g, rng);

  // Grid samples are preserved verbatim: sample l of the rescaled field sits
  // at z = l * (len_v / eps) / n_v, where f(eps z) reproduces sample l of f.
  const Field tallf = q2d::slow_scale(f, 0.25);
  CHECK(tallf.grid().len_v() == doctest::Approx(4.0 * L).epsilon(1e-14));
  const std::vector<double> pf = q2d::to_physical(f);
  const std::vector<double> pt = q2d::to_physical(tallf);
  for (std::size_t m = 0; m < pf.size(); m += 13) {
    CHECK(pt[m] == doctest::Approx(pf[m]).epsilon(1e-13).scale(1.0));
  }
  CHECK(q2d::linf_norm(tallf) == doctest::Approx(q2d::linf_norm(f)).epsilon(1e-12));
  CHECK_THROWS_AS(q2d::slow_scale(f, 0.3), std::invalid_argument);

  // Placement onto a taller axis: compare against naive synthesis of the
  // base coefficients at the stretched coordinate.
  const Grid tall2(12, 48, L, 4.0 * L);
  const Field placed = q2d::slow_scale_to(f, 0.25, tall2);
  const std::vector<double> pp = q2d::to_physical(placed);
  for (int l = 0; l < 48; l += 5) {
    const double z = tall2.z(l);
    const double want = synth_at(f, g.x(2), g.y(9), 0.25 * z);
    CHECK(pp[(static_cast<std::size_t>(2) * 12 + 9) * 48 + l] ==
          doctest::Approx(want).epsilon(1e-11).scale(1.0));
  }

  // Integer-stride placement: period 4L holds two copies of the eps = 1/2
  // rescaling, i.e. vertical mode m lands on mode 2m.
  const Field strided = q2d::slow_scale_to(f, 0.5, tall2);
  const std::vector<double> ps = q2d::to_physical(strided);
  for (int l = 0; l < 48; l += 7) {
    const double z = tall2.z(l);
    const double want = synth_at(f, g.x(5), g.y(3), 0.5 * z);
    CHECK(ps[(static_cast<std::size_t>(5) * 12 + 3) * 48 + l] ==
          doctest::Approx(want).epsilon(1e-11).scale(1.0));
  }

  // Bands that cannot fit must be rejected, not folded: eps = 1/2 onto the
  // 4L box doubles every vertical mode index, overflowing n_v = 16.
  const Grid short_box(12, 16, L, 2.0 * L);
  CHECK_THROWS_AS(q2d::slow_scale_to(f, 0.125, short_box), std::invalid_argument);
  const Grid narrow_tall(12, 16, L, 4.0 * L);
  CHECK_THROWS_AS(q2d::slow_scale_to(f, 0.5, narrow_tall), std::invalid_argument);
}

TEST_CASE("cellular field: exact amplitude, solenoidal, band checked") {
  const double L = kTau * 8.0;
  const Grid g(24, 12, L, L);
  const VectorField u = q2d::cellular_field(g, 0.01, 2, 1);
  CHECK(q2d::coeff_l2(q2d::divergence(u)) < 1e-15);
  CHECK(q2d::linf_norm(u) == doctest::Approx(0.01).epsilon(1e-10));
  CHECK(q2d::coeff_l2(u[2]) == 0.0);
  CHECK_THROWS_AS(q2d::cellular_field(g, 1.0, 9, 1), std::invalid_argument);
}

TEST_CASE("default datum: invariants hold and assembly is validated") {
  const double L = kTau * 8.0;
  const Grid base(24, 24, L, L);
  const q2d::QuasiTwoDData d = q2d::default_quasi2d_data(base, 0.25, 3.0, 1.0);

  CHECK(q2d::linf_norm(d.v0h) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(q2d::linf_norm(d.w0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(q2d::trace_plane_max(d.v0h) < 1e-12);
  CHECK(q2d::trace_plane_max(d.w0[2]) < 1e-12);
  CHECK(q2d::coeff_l2(q2d::divergence(d.w0)) < 1e-13);
  CHECK(q2d::coeff_l2(q2d::divergence_h(d.v0h)) < 1e-13);

  const Grid tall(24, 48, L, 4.0 * L);
  const VectorField u0 = q2d::cellular_field(tall, 0.0025, 2, 1);
  const VectorField datum = q2d::build_quasi2d_datum(u0, {d});
  CHECK(q2d::coeff_l2(q2d::divergence(datum)) < 1e-10);

  // Linearity of assembly: two parts equal the sum of single-part builds.
  q2d::QuasiTwoDData d2 = q2d::default_quasi2d_data(base, 0.5, 1.0, 0.5);
  const VectorField both = q2d::build_quasi2d_datum(u0, {d, d2});
  VectorField sum = q2d::build_quasi2d_datum(u0, {d2});
  sum += datum;
  sum -= u0;
  for (int c = 0; c < 3; ++c) {
    Field diff = both[c];
    diff -= sum[c];
    CHECK(q2d::coeff_l2(diff) < 1e-12);
  }

  // The datum reproduces u0 + relabeled profile parts.
  VectorField expect = u0;
  Field t0 = d.w0[0];
  t0 *= 0.25;
  t0 += d.v0h[0];
  expect[0] += q2d::slow_scale_to(t0, 0.25, tall);
  Field diff0 = expect[0];
  diff0 -= datum[0];
  CHECK(q2d::coeff_l2(diff0) < 1e-13);
}

TEST_CASE("assembly rejects violated invariants by name") {
  const double L = kTau * 8.0;
  const Grid base(12, 16, L, L);
  const Grid tall(12, 16, L, 2.0 * L);
  const VectorField u0(tall);

  // An even vertical factor breaks the zero-trace requirement.
  const Grid flat(12, 1, L, 1.0);
  const Grid column(1, 16, 1.0, L);
  const Field psi_even =
      q2d::tensor_field(q2d::horizontal_bump(flat), q2d::vertical_even_profile(column), base);
  q2d::QuasiTwoDData bad;
  bad.v0h = q2d::stream_to_velocity(psi_even);
  bad.w0 = VectorField(base);
  bad.eps = 0.5;
  try {
    q2d::build_quasi2d_datum(u0, {bad});
    CHECK(false);
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("v0h-zero-slice-trace") != std::string::npos);
  }

  // A third component on the slice family is rejected earlier still.
  q2d::QuasiTwoDData bad2 = q2d::default_quasi2d_data(base, 0.5);
  bad2.v0h[2] = bad2.w0[2];
  try {
    q2d::build_quasi2d_datum(u0, {bad2});
    CHECK(false);
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("v0h-third-component-zero") != std::string::npos);
  }
}

TEST_CASE("tensor datum size ratio: bounded by one, monotone, tensor-exact") {
  const double L = kTau * 8.0;
  const Grid base(32, 32, L, L);
  const Grid flat(32, 1, L, 1.0);
  const Grid column(1, 32, 1.0, L);

  q2d::TensorProfile tp;
  tp.f = q2d::horizontal_bump(flat, {2.0, 0.0, 0.5, 0.5});
  tp.g = q2d::vertical_odd_profile(column, {1.0, 0.0});

  // sup_t products factor exactly, so the quotient never exceeds one and
  // grows monotonically as the vertical variation slows.
  double prev = 0.0;
  for (double eps : {1.0, 0.5, 0.25, 0.125}) {
    tp.eps = eps;
    const double r = q2d::sizedata_ratio(tp, base);
    CHECK(r <= 1.0 + 1e-9);
    CHECK(r >= prev * (1.0 - 5e-3));  // quadrature grids differ per eps
    prev = r;
  }
  CHECK(prev > 0.5);  // eps = 1/8 already close to the 2D benchmark

  // A constant vertical factor makes both sides identical.
  Field gone(column);
  gone.at(0, 0, 0) = 1.0;
  q2d::TensorProfile unit{tp.f, gone, 0.5};
  CHECK(q2d::sizedata_ratio(unit, base) == doctest::Approx(1.0).epsilon(1e-10));

  tp.eps = 1.5;
  CHECK_THROWS_AS(q2d::sizedata_ratio(tp, base), std::invalid_argument);
}

}  // TEST_SUITE
