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

#include "qfrelay/rng.hpp"
#include "qfrelay/types.hpp"

namespace qfrelay {

/// i.i.d. Rayleigh links of one two-slot transmission.
struct LinkRealization {
  ChannelMatrix h_sr; ///< N_R x N_S
  ChannelMatrix h_sd; ///< N_D x N_S
  ChannelMatrix h_rd; ///< N_D x N_R
};

/// Per-receive-antenna complex noise variance; identical on every link.
struct NoiseModel {
  double sigma2 = 1.0;

  explicit NoiseModel(double s2);
};

/// sigma^2 = 10^(-snr_db/10) for unit transmit power.
double snr_db_to_sigma2(double snr_db) noexcept;

/// Entries ~ CN(0, 1), drawn row-major.
ChannelMatrix sample_channel(std::size_t rows, std::size_t cols, RngStream &rng);

/// Draws H_SR, H_SD, H_RD in that order.
LinkRealization sample_links(std::size_t n_s, std::size_t n_r, std::size_t n_d, RngStream &rng);

/// H x + z with z ~ CN(0, sigma^2 I). x must have unit squared norm (1e-9).
ComplexVector apply_link(const ChannelMatrix &h, std::span<const Complex> x, const NoiseModel &noise,
                         RngStream &rng);

/// Allocation-free form of apply_link for the simulation inner loop; does not
/// check the power constraint.
void apply_link_into(const ChannelMatrix &h, std::span<const Complex> x, double sigma2,
                     RngStream &rng, std::span<Complex> out) noexcept;

} // namespace qfrelay
