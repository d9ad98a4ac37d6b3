/*
 * Copyright 2026 The qfrelay Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace qfrelay {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Upper bound on antennas per node. Keeps per-call scratch on the stack.
inline constexpr std::size_t kMaxAntennas = 64;

/// Dense row-major complex matrix. Sized for the handful of antennas a relay
/// link has, so no BLAS.
class ChannelMatrix {
public:
  ChannelMatrix() = default;
  ChannelMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Complex &operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  const Complex &operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }

  std::span<const Complex> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  /// out = H * x. Sizes are the caller's responsibility.
  void multiply(std::span<const Complex> x, std::span<Complex> out) const noexcept {
    for (std::size_t r = 0; r < rows_; ++r) {
      const Complex *h = data_.data() + r * cols_;
      double re = 0.0, im = 0.0;
      for (std::size_t c = 0; c < cols_; ++c) {
        re += h[c].real() * x[c].real() - h[c].imag() * x[c].imag();
        im += h[c].real() * x[c].imag() + h[c].imag() * x[c].real();
      }
      out[r] = {re, im};
    }
  }

  ComplexVector operator*(std::span<const Complex> x) const {
    if (x.size() != cols_)
      throw std::invalid_argument("ChannelMatrix: dimension mismatch");
    ComplexVector out(rows_);
    multiply(x, out);
    return out;
  }

  static ChannelMatrix identity(std::size_t n) {
    ChannelMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1.0;
    return m;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  ComplexVector data_;
};

inline double squared_norm(std::span<const Complex> v) noexcept {
  double s = 0.0;
  for (const Complex &c : v)
    s += std::norm(c);
  return s;
}

/// ||a - b||^2
inline double squared_distance(std::span<const Complex> a, std::span<const Complex> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += std::norm(a[i] - b[i]);
  return s;
}

} // namespace qfrelay
