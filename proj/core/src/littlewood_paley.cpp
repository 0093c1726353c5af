// Copyright 2026 the q2dlab authors
// SPDX-License-Identifier: Apache-2.0

#include "q2d/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "q2d/norms.hpp"

namespace q2d {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_sup(double exponent) { return exponent <= 0.0 || std::isinf(exponent); }

double bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

double mode_k2(const Grid& g, int i, int j, int l) {
  const double k1 = g.kx(i), k2 = g.ky(j), k3 = g.kz(l);
  return k1 * k1 + k2 * k2 + k3 * k3;
}

// smallest and largest |k| over nonzero modes of the grid (Nyquist included,
// so the window also covers fields that were never dealiased)
std::pair<double, double> k_extremes(const Grid& g) {
  double hi = 0.0;
  if (g.n_h() > 1) {
    const double ny = 2.0 * M_PI / g.len_h() * (g.n_h() / 2);
    hi += 2.0 * ny * ny;
  }
  if (g.n_v() > 1) {
    const double ny = 2.0 * M_PI / g.len_v() * (g.n_v() / 2);
    hi += ny * ny;
  }
  return {g.k_min(), std::sqrt(hi)};
}

Field apply_radial(const Field& f, const DyadicCutoff& cutoff, int level, bool band) {
  const Grid& g = f.grid();
  Field out(g);
  for (int i = 0; i < g.n_h(); ++i)
    for (int j = 0; j < g.n_h(); ++j)
      for (int l = 0; l < g.n_v(); ++l) {
        const double k = std::sqrt(mode_k2(g, i, j, l));
        const double m = band ? cutoff.band(k, level) : cutoff.low_pass(k, level);
        if (m != 0.0) out.at(i, j, l) = m * f.at(i, j, l);
      }
  return out;
}

double block_l2(const Field& f, const DyadicCutoff& cutoff, int level) {
  const Grid& g = f.grid();
  double acc = 0.0;
  for (int i = 0; i < g.n_h(); ++i)
    for (int j = 0; j < g.n_h(); ++j)
      for (int l = 0; l < g.n_v(); ++l) {
        const double m = cutoff.band(std::sqrt(mode_k2(g, i, j, l)), level);
        if (m != 0.0) acc += m * m * std::norm(f.at(i, j, l));
      }
  return std::sqrt(g.volume() * acc);
}

double block_lp(const Field& f, const DyadicCutoff& cutoff, int level, double p) {
  if (p == 2.0) return block_l2(f, cutoff, level);
  if (is_sup(p)) return linf_norm(apply_radial(f, cutoff, level, true));
  throw std::invalid_argument("besov norms: p must be 2 or inf");
}

double weighted_lq(const std::vector<std::pair<int, double>>& level_values,
                   double s, double q) {
  if (is_sup(q)) {
    double best = 0.0;
    for (const auto& [ell, a] : level_values)
      best = std::max(best, a * std::pow(2.0, s * ell));
    return best;
  }
  if (!(q >= 1.0)) throw std::invalid_argument("besov norms: q must be >= 1 or inf");
  double acc = 0.0;
  for (const auto& [ell, a] : level_values)
    acc += std::pow(std::pow(2.0, s * ell) * a, q);
  return std::pow(acc, 1.0 / q);
}

}  // namespace

DyadicCutoff::DyadicCutoff(double transition_end) : end_(transition_end) {
  if (!(end_ > 1.0 && end_ <= 2.0))
    throw std::invalid_argument("DyadicCutoff: transition end must lie in (1, 2]");
}

double DyadicCutoff::shape(double r) const {
  if (r <= 1.0) return 1.0;
  if (r >= end_) return 0.0;
  const double x = (r - 1.0) / (end_ - 1.0);
  const double up = bump(1.0 - x);
  return up / (up + bump(x));
}

DyadicRange dyadic_range(const Grid& g, const DyadicCutoff& cutoff) {
  const auto [k_lo, k_hi] = k_extremes(g);
  DyadicRange r;
  r.ell_min = static_cast<int>(std::floor(std::log2(k_lo / cutoff.transition_end())));
  while (cutoff.low_pass(k_lo, r.ell_min) > 0.0) --r.ell_min;
  r.ell_max = static_cast<int>(std::ceil(std::log2(k_hi))) - 1;
  while (cutoff.low_pass(k_hi, r.ell_max + 1) < 1.0) ++r.ell_max;
  return r;
}

Field low_pass_block(const Field& f, int level, const DyadicCutoff& cutoff) {
  return apply_radial(f, cutoff, level, false);
}

Field dyadic_block(const Field& f, int level, const DyadicCutoff& cutoff) {
  return apply_radial(f, cutoff, level, true);
}

double bernstein_ratio(const Field& f, int level, const DyadicCutoff& cutoff) {
  const double l2 = block_l2(f, cutoff, level);
  if (l2 == 0.0) return 0.0;
  const double sup = linf_norm(apply_radial(f, cutoff, level, true));
  return sup / (std::pow(2.0, 0.5 * f.grid().dim() * level) * l2);
}

BesovNorm besov_norm(const Field& f, double s, double p, double q,
                     const DyadicCutoff& cutoff) {
  const Grid& g = f.grid();
  const DyadicRange range = dyadic_range(g, cutoff);
  std::vector<std::pair<int, double>> parts;
  for (int ell = range.ell_min; ell <= range.ell_max; ++ell) {
    const double a = block_lp(f, cutoff, ell, p);
    if (a > 0.0) parts.emplace_back(ell, a);
  }
  BesovNorm out;
  out.value = weighted_lq(parts, s, q);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < g.n_h(); ++i)
    for (int j = 0; j < g.n_h(); ++j)
      for (int l = 0; l < g.n_v(); ++l) {
        if (i == 0 && j == 0 && l == 0) continue;
        const double k = std::sqrt(mode_k2(g, i, j, l));
        const double covered =
            cutoff.low_pass(k, range.ell_max + 1) - cutoff.low_pass(k, range.ell_min);
        const double m2 = std::norm(f.at(i, j, l));
        num += (1.0 - covered) * (1.0 - covered) * m2;
        den += m2;
      }
  out.unresolved_mass = den > 0.0 ? std::sqrt(num / den) : 0.0;
  return out;
}

double besov_value(const Field& f, double s, double p, double q,
                   const DyadicCutoff& cutoff) {
  return besov_norm(f, s, p, q, cutoff).value;
}

namespace {

struct TimeGrid {
  std::vector<double> t;
};

// geometric time samples covering every active mode's peak of t^{s/2} e^{-sigma t}
TimeGrid heat_times(const Grid& g, const std::vector<const Field*>& comps,
                    double s, const HeatMode& mode, int n_t, double t_min,
                    double t_max) {
  if (n_t < 8) throw std::invalid_argument("heatflow norm: need at least 8 times");
  if (t_min <= 0.0 || t_max <= 0.0) {
    double peak = 0.0;
    for (const Field* f : comps)
      for (const auto& c : f->coeffs()) peak = std::max(peak, std::abs(c));
    const double thresh = 1e-13 * peak;
    double sig_lo = kInf, sig_hi = 0.0;
    for (int i = 0; i < g.n_h(); ++i)
      for (int j = 0; j < g.n_h(); ++j)
        for (int l = 0; l < g.n_v(); ++l) {
          bool active = false;
          for (const Field* f : comps)
            if (std::abs(f->at(i, j, l)) > thresh) { active = true; break; }
          if (!active) continue;
          const double sig = heat_symbol(g, mode, i, j, l);
          if (sig <= 0.0)
            throw std::invalid_argument(
                "heatflow norm: field has non-decaying content (nonzero mean)");
          sig_lo = std::min(sig_lo, sig);
          sig_hi = std::max(sig_hi, sig);
        }
    if (!(sig_hi > 0.0)) {
      TimeGrid tg;
      tg.t.assign(static_cast<std::size_t>(n_t), 0.0);
      return tg;  // zero field; times unused
    }
    // the lower end must reach far below every mode's peak time s/(2 sigma):
    // for finite r the integrand has an integrable t^{rs/2 - 1} singularity
    // at 0 and the truncated mass scales like t_min^{rs/2}
    const double s_eff = std::clamp(s, 0.25, 4.0);
    if (t_min <= 0.0) t_min = 1e-5 * s_eff / (2.0 * sig_hi);
    if (t_max <= 0.0) t_max = 100.0 * s_eff / (2.0 * sig_lo);
  }
  TimeGrid tg;
  tg.t.resize(static_cast<std::size_t>(n_t));
  const double r = std::log(t_max / t_min) / (n_t - 1);
  for (int i = 0; i < n_t; ++i) tg.t[i] = t_min * std::exp(r * i);
  return tg;
}

double heat_lp_at(const std::vector<const Field*>& comps, double t, double p,
                  const HeatMode& mode) {
  const Grid& g = comps[0]->grid();
  if (p == 2.0) {
    double acc = 0.0;
    for (int i = 0; i < g.n_h(); ++i)
      for (int j = 0; j < g.n_h(); ++j)
        for (int l = 0; l < g.n_v(); ++l) {
          const double damp = std::exp(-2.0 * t * heat_symbol(g, mode, i, j, l));
          for (const Field* f : comps) acc += damp * std::norm(f->at(i, j, l));
        }
    return std::sqrt(g.volume() * acc);
  }
  if (!is_sup(p)) throw std::invalid_argument("heatflow norm: p must be 2 or inf");
  std::vector<std::vector<double>> samples;
  samples.reserve(comps.size());
  for (const Field* f : comps)
    samples.push_back(to_physical_upsampled(heat_propagate(*f, t, mode), 2));
  double best = 0.0;
  for (std::size_t n = 0; n < samples[0].size(); ++n) {
    double sq = 0.0;
    for (const auto& s : samples) sq += s[n] * s[n];
    best = std::max(best, sq);
  }
  return std::sqrt(best);
}

double heatflow_impl(const std::vector<const Field*>& comps, double s, double p,
                     double r, const HeatMode& mode, int n_t, double t_min,
                     double t_max) {
  if (!(s > 0.0)) throw std::invalid_argument("heatflow norm: s must be positive");
  const Grid& g = comps[0]->grid();
  const TimeGrid tg = heat_times(g, comps, s, mode, n_t, t_min, t_max);
  TimeSeriesNorm series;
  bool all_zero = true;
  for (double t : tg.t) {
    if (t <= 0.0) { series.push(0.0, 0.0); continue; }
    const double v = std::pow(t, 0.5 * s) * heat_lp_at(comps, t, p, mode);
    if (v != 0.0) all_zero = false;
    series.push(std::log(t), v);  // dt/t measure: uniform in log t
  }
  if (all_zero) return 0.0;
  return series.aggregate(is_sup(r) ? 0.0 : r);
}

}  // namespace

double heatflow_besov_norm(const Field& f, double s, double p, double r,
                           const HeatMode& mode, int n_t, double t_min,
                           double t_max) {
  return heatflow_impl({&f}, s, p, r, mode, n_t, t_min, t_max);
}

double heatflow_besov_norm(const VectorField& v, double s, double p, double r,
                           const HeatMode& mode, int n_t, double t_min,
                           double t_max) {
  return heatflow_impl({&v[0], &v[1], &v[2]}, s, p, r, mode, n_t, t_min, t_max);
}

BonySplit bony_split(const Field& a, const Field& b, const DyadicCutoff& cutoff) {
  const Grid& g = a.grid();
  if (g != b.grid()) throw std::invalid_argument("bony_split: grid mismatch");
  const DyadicRange range = dyadic_range(g, cutoff);
  BonySplit out{Field(g), Field(g), Field(g)};
  std::vector<Field> da, db;
  da.reserve(range.count());
  db.reserve(range.count());
  for (int ell = range.ell_min; ell <= range.ell_max; ++ell) {
    da.push_back(dyadic_block(a, ell, cutoff));
    db.push_back(dyadic_block(b, ell, cutoff));
  }
  for (int ell = range.ell_min; ell <= range.ell_max; ++ell) {
    const int idx = ell - range.ell_min;
    const Field sa = low_pass_block(a, ell - 1, cutoff);
    const Field sb = low_pass_block(b, ell - 1, cutoff);
    out.low_high += product(sa, db[idx]);
    out.high_low += product(da[idx], sb);
    Field near(g);
    for (int ell2 = std::max(ell - 1, range.ell_min);
         ell2 <= std::min(ell + 1, range.ell_max); ++ell2)
      near += db[ell2 - range.ell_min];
    out.resonant += product(da[idx], near);
  }
  return out;
}

double product_law_ratio(ProductLaw law, const ProductLawParams& params,
                         const Field& a, const Field& b) {
  const Grid& g = a.grid();
  if (g != b.grid()) throw std::invalid_argument("product_law_ratio: grid mismatch");
  const int d = g.dim();
  const Field ab = product(a, b);
  switch (law) {
    case ProductLaw::sobolev_refined: {
      const double s = params.s;
      if (d < 2) throw std::invalid_argument("sobolev_refined: needs dim >= 2");
      if (!(s > 0.0 && s + 0.5 < 0.5 * d))
        throw std::invalid_argument("sobolev_refined: s outside (0, (d-1)/2)");
      const double lhs = hs_norm(ab, s, d);
      const double rhs = hs_norm(a, 0.5 * (d - 1), d) * hs_norm(b, s + 0.5, d) +
                         hs_norm(a, s, d) * linf_norm(b);
      return rhs > 0.0 ? lhs / rhs : 0.0;
    }
    case ProductLaw::sobolev_besov: {
      const double s1 = params.s1, s2 = params.s2;
      if (!(s1 + s2 > 0.0) || !(std::abs(s1) < 0.5 * d) || !(std::abs(s2) < 0.5 * d))
        throw std::invalid_argument(
            "sobolev_besov: need s1 + s2 > 0 and |si| < d/2");
      const double lhs = besov_value(ab, s1 + s2 - 0.5 * d, 2.0, 1.0);
      const double rhs = hs_norm(a, s1, d) * hs_norm(b, s2, d);
      return rhs > 0.0 ? lhs / rhs : 0.0;
    }
    case ProductLaw::aniso_h_half: {
      if (d != 3) throw std::invalid_argument("aniso_h_half: needs a 3D grid");
      const double lhs = hs_norm(ab, 0.5, 3);
      const Field b1 = derivative(b, {1, 0, 0});
      const Field b2 = derivative(b, {0, 1, 0});
      const Field b3 = derivative(b, {0, 0, 1});
      const double rhs =
          hs_norm(a, 0.5, 3) *
          (linfv_l2h_norm({&b1, &b2}) + linf_norm(b) + l2v_hsh_norm(b3, 0.5));
      return rhs > 0.0 ? lhs / rhs : 0.0;
    }
    case ProductLaw::slowvar_trace: {
      if (d != 3) throw std::invalid_argument("slowvar_trace: needs a 3D grid");
      const double lhs = hs_norm(ab, -0.5, 3);
      const Field trace = slice_to_2d(b, 0);
      const double trace_l2 =
          std::sqrt(trace.grid().volume()) * coeff_l2(trace);
      const Field b3 = derivative(b, {0, 0, 1});
      const double rhs = l2v_hsh_norm(a, 0.5) * trace_l2 +
                         weighted_x3_l2(a).value * linfv_hsh_norm(b3, 0.5);
      return rhs > 0.0 ? lhs / rhs : 0.0;
    }
  }
  throw std::logic_error("product_law_ratio: unknown law");
}

double tilde_besov_norm(const std::vector<double>& times,
                        const std::vector<const Field*>& snapshots,
                        double s, double rho, double p, double q,
                        const DyadicCutoff& cutoff) {
  if (times.size() != snapshots.size() || times.empty())
    throw std::invalid_argument("tilde_besov_norm: times / snapshots mismatch");
  const Grid& g = snapshots[0]->grid();
  const DyadicRange range = dyadic_range(g, cutoff);
  std::vector<std::pair<int, double>> parts;
  for (int ell = range.ell_min; ell <= range.ell_max; ++ell) {
    TimeSeriesNorm series;
    for (std::size_t n = 0; n < times.size(); ++n) {
      if (snapshots[n]->grid() != g)
        throw std::invalid_argument("tilde_besov_norm: grid mismatch");
      series.push(times[n], block_lp(*snapshots[n], cutoff, ell, p));
    }
    const double a = series.aggregate(rho);
    if (a > 0.0) parts.emplace_back(ell, a);
  }
  return weighted_lq(parts, s, q);
}

}  // namespace q2d
