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

// Independent reference computations for tests. Nothing here calls into
// the library's quantizer or codec internals.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace qfrelay::oracle {

/// All valid O-AQ level assignments for (n_r, m) in lexicographic order,
/// produced by std::next_permutation over the sorted multiset.
inline std::vector<std::vector<std::uint32_t>> enumerate_assignments(int n_r, int m) {
  const int levels = (n_r + m - 1) / m;
  std::vector<std::uint32_t> seq;
  for (int i = 0; i < n_r; ++i)
    seq.push_back(static_cast<std::uint32_t>(std::min(i / m + 1, levels)));
  std::vector<std::vector<std::uint32_t>> all;
  do {
    all.push_back(seq);
  } while (std::next_permutation(seq.begin(), seq.end()));
  return all;
}

/// N! / ((N - (K-1) m)! (m!)^(K-1)) via plain factorials; N <= 20.
inline std::uint64_t codeword_count_by_factorials(int n_r, int m) {
  auto fact = [](int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i)
      f *= static_cast<std::uint64_t>(i);
    return f;
  };
  const int levels = (n_r + m - 1) / m;
  std::uint64_t den = fact(n_r - (levels - 1) * m);
  for (int k = 1; k < levels; ++k)
    den *= fact(m);
  return fact(n_r) / den;
}

/// Whether theta in [0, 2pi) lies in sector k: ((2k-1)pi/2^q, (2k+1)pi/2^q],
/// with sector 0 wrapping around 2pi.
inline bool in_phase_sector(double theta, std::uint32_t k, int q) {
  const double pi = std::numbers::pi;
  const double n = std::ldexp(1.0, q);
  const double lo = (2.0 * k - 1.0) * pi / n;
  const double hi = (2.0 * k + 1.0) * pi / n;
  if (k == 0)
    return theta <= hi || theta > 2.0 * pi + lo;
  return theta > lo && theta <= hi;
}

/// Level spacing for a_k = k * delta straight from the closed form.
inline double linear_family_delta(int n_r, int m) {
  const int K = (n_r + m - 1) / m;
  const double sum_sq = m * (K - 1.0) * K * (2.0 * K - 1.0) / 6.0;
  return std::sqrt(1.0 / (sum_sq + (n_r - (K - 1.0) * m) * K * K));
}

/// Level index per antenna by counting, for each antenna, how many antennas
/// precede it in (amplitude, index) order. O(N^2), no sorting.
inline std::vector<std::uint32_t> assignment_by_counting(const std::vector<double> &amps, int m) {
  const std::size_t n = amps.size();
  std::vector<std::uint32_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t below = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (amps[j] < amps[i] || (amps[j] == amps[i] && j < i))
        ++below;
    out[i] = static_cast<std::uint32_t>(below / static_cast<std::size_t>(m)) + 1;
  }
  return out;
}

inline std::vector<std::complex<double>> random_complex_vector(std::mt19937_64 &gen, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::complex<double>> v(n);
  for (auto &c : v)
    c = {g(gen), g(gen)};
  return v;
}

} // namespace qfrelay::oracle
