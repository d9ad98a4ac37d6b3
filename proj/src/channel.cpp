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

#include "qfrelay/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qfrelay {

Complex RngStream::complex_normal(double variance) noexcept {
  const double u1 = uniform_open0();
  const double u2 = uniform();
  const double r = std::sqrt(-variance * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

NoiseModel::NoiseModel(double s2) : sigma2(s2) {
  if (!(s2 > 0.0) || !std::isfinite(s2))
    throw std::invalid_argument("sigma2 must be positive and finite");
}

double snr_db_to_sigma2(double snr_db) noexcept { return std::pow(10.0, -snr_db / 10.0); }

ChannelMatrix sample_channel(std::size_t rows, std::size_t cols, RngStream &rng) {
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("sample_channel: empty dimension");
  ChannelMatrix h(rows, cols);
  for (Complex &c : h.data())
    c = rng.complex_normal();
  return h;
}

LinkRealization sample_links(std::size_t n_s, std::size_t n_r, std::size_t n_d, RngStream &rng) {
  LinkRealization links;
  links.h_sr = sample_channel(n_r, n_s, rng);
  links.h_sd = sample_channel(n_d, n_s, rng);
  links.h_rd = sample_channel(n_d, n_r, rng);
  return links;
}

void apply_link_into(const ChannelMatrix &h, std::span<const Complex> x, double sigma2,
                     RngStream &rng, std::span<Complex> out) noexcept {
  h.multiply(x, out);
  for (Complex &o : out)
    o += rng.complex_normal(sigma2);
}

ComplexVector apply_link(const ChannelMatrix &h, std::span<const Complex> x, const NoiseModel &noise,
                         RngStream &rng) {
  if (x.size() != h.cols())
    throw std::invalid_argument("apply_link: x has " + std::to_string(x.size()) +
                                " entries, channel expects " + std::to_string(h.cols()));
  const double power = squared_norm(x);
  if (std::abs(power - 1.0) > 1e-9)
    throw std::invalid_argument("apply_link: transmit vector violates unit power (|x|^2 = " +
                                std::to_string(power) + ")");
  ComplexVector y(h.rows());
  apply_link_into(h, x, noise.sigma2, rng, y);
  return y;
}

} // namespace qfrelay
