// Copyright 2026 the q2dlab authors
// SPDX-License-Identifier: Apache-2.0

#include "q2d/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace q2d::fft {
namespace {

std::mutex g_planner_mutex;
std::map<std::tuple<int, int, int, int>, fftw_plan>& plan_cache() {
  static std::map<std::tuple<int, int, int, int>, fftw_plan> cache;
  return cache;
}

fftw_plan get_plan(int n0, int n1, int n2, int sign) {
  const auto key = std::make_tuple(n0, n1, n2, sign);
  std::lock_guard<std::mutex> lock(g_planner_mutex);
  auto& cache = plan_cache();
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  // Dummy buffers only live for planning; FFTW_UNALIGNED makes the plan
  // valid for any properly-shaped array via the new-array interface.
  std::vector<std::complex<double>> a(static_cast<std::size_t>(n0) * n1 * n2);
  std::vector<std::complex<double>> b(a.size());
  int dims[3] = {n0, n1, n2};
  int rank = 0;
  int packed[3];
  for (int d = 0; d < 3; ++d)
    if (dims[d] > 1) packed[rank++] = dims[d];
  fftw_plan plan;
  if (rank == 0) {
    plan = nullptr;  // 1-point transform: identity, handled by caller path
  } else {
    plan = fftw_plan_dft(rank, packed, reinterpret_cast<fftw_complex*>(a.data()),
                         reinterpret_cast<fftw_complex*>(b.data()),
                         sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                         FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("fft: FFTW plan creation failed");
  }
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

void transform(int n0, int n1, int n2, const std::complex<double>* in,
               std::complex<double>* out, int sign) {
  const std::size_t n = static_cast<std::size_t>(n0) * n1 * n2;
  fftw_plan plan = get_plan(n0, n1, n2, sign);
  if (!plan) {
    for (std::size_t i = 0; i < n; ++i) out[i] = in[i];
    return;
  }
  fftw_execute_dft(plan,
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

void transform(int n0, int n1, int n2, const std::vector<std::complex<double>>& in,
               std::vector<std::complex<double>>& out, int sign) {
  if (in.size() != static_cast<std::size_t>(n0) * n1 * n2)
    throw std::invalid_argument("fft: input size does not match shape");
  out.resize(in.size());
  transform(n0, n1, n2, in.data(), out.data(), sign);
}

namespace {

fftw_plan get_last_axis_plan(int howmany, int n, int sign) {
  const auto key = std::make_tuple(-howmany, n, 0, sign);  // disjoint key space
  std::lock_guard<std::mutex> lock(g_planner_mutex);
  auto& cache = plan_cache();
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::vector<std::complex<double>> a(static_cast<std::size_t>(howmany) * n);
  std::vector<std::complex<double>> b(a.size());
  fftw_plan plan = fftw_plan_many_dft(
      1, &n, howmany, reinterpret_cast<fftw_complex*>(a.data()), nullptr, 1, n,
      reinterpret_cast<fftw_complex*>(b.data()), nullptr, 1, n,
      sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan) throw std::runtime_error("fft: FFTW batched plan creation failed");
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

void transform_last_axis(int n0, int n1, int n2, const std::complex<double>* in,
                         std::complex<double>* out, int sign) {
  const std::size_t n = static_cast<std::size_t>(n0) * n1 * n2;
  if (n2 == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = in[i];
    return;
  }
  fftw_plan plan = get_last_axis_plan(n0 * n1, n2, sign);
  fftw_execute_dft(plan,
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

namespace {

fftw_plan get_horizontal_plan(int n0, int n1, int n2, int sign) {
  const auto key = std::make_tuple(-n0, -n1, n2, sign);  // disjoint key space
  std::lock_guard<std::mutex> lock(g_planner_mutex);
  auto& cache = plan_cache();
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::vector<std::complex<double>> a(static_cast<std::size_t>(n0) * n1 * n2);
  std::vector<std::complex<double>> b(a.size());
  int dims[2] = {n0, n1};
  fftw_plan plan = fftw_plan_many_dft(
      2, dims, n2, reinterpret_cast<fftw_complex*>(a.data()), nullptr, n2, 1,
      reinterpret_cast<fftw_complex*>(b.data()), nullptr, n2, 1,
      sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan) throw std::runtime_error("fft: FFTW horizontal plan creation failed");
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

void transform_horizontal(int n0, int n1, int n2, const std::complex<double>* in,
                          std::complex<double>* out, int sign) {
  const std::size_t n = static_cast<std::size_t>(n0) * n1 * n2;
  if (n0 == 1 && n1 == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = in[i];
    return;
  }
  fftw_plan plan = get_horizontal_plan(n0, n1, n2, sign);
  fftw_execute_dft(plan,
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace q2d::fft
