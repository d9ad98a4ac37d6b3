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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qfrelay {

/// Exact codeword counts and ranks. 128 bits holds N_R! for N_R <= 34, so
/// every (N_R, m) with N_R <= 32 fits; larger values raise overflow_error.
using WideCount = unsigned __int128;

inline WideCount checked_mul(WideCount a, WideCount b) {
  WideCount r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("codeword count exceeds 128 bits");
  return r;
}

inline WideCount checked_add(WideCount a, WideCount b) {
  WideCount r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("codeword count exceeds 128 bits");
  return r;
}

/// C(n, k), exact. Each partial product is itself a binomial coefficient,
/// so the division is exact at every step.
inline WideCount binomial(unsigned n, unsigned k) {
  if (k > n)
    return 0;
  if (k > n - k)
    k = n - k;
  WideCount r = 1;
  for (unsigned i = 1; i <= k; ++i)
    r = checked_mul(r, n - k + i) / i;
  return r;
}

/// Number of bits needed to write v, i.e. floor(log2 v) + 1; zero for v = 0.
inline int bit_length(WideCount v) noexcept {
  int n = 0;
  while (v != 0) {
    v >>= 1;
    ++n;
  }
  return n;
}

/// ceil(log2 count) for count >= 1.
inline int ceil_log2(WideCount count) {
  if (count == 0)
    throw std::invalid_argument("ceil_log2 of zero");
  return bit_length(count - 1);
}

inline std::string to_string(WideCount v) {
  if (v == 0)
    return "0";
  std::string s;
  while (v != 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

} // namespace qfrelay
