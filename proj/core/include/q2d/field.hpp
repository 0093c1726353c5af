// Copyright 2026 the q2dlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>
#include <vector>

#include "q2d/grid.hpp"

namespace q2d {

using cplx = std::complex<double>;

/// Scalar field stored as a full complex Fourier coefficient array in FFT
/// bin order (kx slowest, kz fastest).  Fields representing real functions
/// keep conjugate symmetry; all operators here preserve it.
class Field {
 public:
  Field() = default;
  explicit Field(const Grid& g) : grid_(g), c_(g.size(), cplx(0.0, 0.0)) {}
  Field(const Grid& g, std::vector<cplx> coeffs) : grid_(g), c_(std::move(coeffs)) {
    if (static_cast<std::int64_t>(c_.size()) != g.size())
      throw std::invalid_argument("Field: coefficient count mismatch");
  }

  const Grid& grid() const { return grid_; }
  std::vector<cplx>& coeffs() { return c_; }
  const std::vector<cplx>& coeffs() const { return c_; }

  cplx& at(int i, int j, int l) { return c_[grid_.index(i, j, l)]; }
  const cplx& at(int i, int j, int l) const { return c_[grid_.index(i, j, l)]; }

  cplx mean() const { return c_.empty() ? cplx(0) : c_[0]; }
  void drop_mean() {
    if (!c_.empty()) c_[0] = cplx(0.0, 0.0);
  }

  Field& operator+=(const Field& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Field& operator-=(const Field& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Field& operator*=(double a) {
    for (auto& v : c_) v *= a;
    return *this;
  }

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(double a, Field f) { return f *= a; }

 private:
  void check_same(const Field& o) const {
    if (grid_ != o.grid_)
      throw std::invalid_argument("Field: grid mismatch in arithmetic");
  }

  Grid grid_;
  std::vector<cplx> c_;
};

/// Three-component vector field on a common grid.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(const Grid& g) : comps_{Field(g), Field(g), Field(g)} {}
  VectorField(Field u1, Field u2, Field u3)
      : comps_{std::move(u1), std::move(u2), std::move(u3)} {
    if (comps_[0].grid() != comps_[1].grid() || comps_[0].grid() != comps_[2].grid())
      throw std::invalid_argument("VectorField: components on different grids");
  }

  const Grid& grid() const { return comps_[0].grid(); }
  Field& operator[](int i) { return comps_[i]; }
  const Field& operator[](int i) const { return comps_[i]; }

  VectorField& operator+=(const VectorField& o) {
    for (int i = 0; i < 3; ++i) comps_[i] += o.comps_[i];
    return *this;
  }
  VectorField& operator-=(const VectorField& o) {
    for (int i = 0; i < 3; ++i) comps_[i] -= o.comps_[i];
    return *this;
  }
  VectorField& operator*=(double a) {
    for (int i = 0; i < 3; ++i) comps_[i] *= a;
    return *this;
  }
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(double a, VectorField f) { return f *= a; }

 private:
  std::array<Field, 3> comps_;
};

}  // namespace q2d
