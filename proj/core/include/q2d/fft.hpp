// Copyright 2026 the q2dlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

namespace q2d::fft {

/// Out-of-place complex DFT over an (n0, n1, n2) row-major array; any axis
/// may be 1.  sign = -1 forward (no normalization), +1 backward.  Plans are
/// FFTW_ESTIMATE | FFTW_UNALIGNED, created once per shape under a lock and
/// reused; execution is lock-free and deterministic run to run.
void transform(int n0, int n1, int n2, const std::complex<double>* in,
               std::complex<double>* out, int sign);

void transform(int n0, int n1, int n2, const std::vector<std::complex<double>>& in,
               std::vector<std::complex<double>>& out, int sign);

/// Batched DFT along the last (contiguous) axis only; the first two axes are
/// carried as n0*n1 independent transforms of length n2.
void transform_last_axis(int n0, int n1, int n2, const std::complex<double>* in,
                         std::complex<double>* out, int sign);

/// Batched 2D DFT over the first two axes, carrying the last axis as n2
/// independent interleaved transforms.  Each last-axis index is transformed
/// by the same plan with no arithmetic coupling between batch members, so
/// equal slices map to bitwise-equal outputs.
void transform_horizontal(int n0, int n1, int n2, const std::complex<double>* in,
                          std::complex<double>* out, int sign);

}  // namespace q2d::fft
