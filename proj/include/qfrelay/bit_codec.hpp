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

// Bit-exact relay memory layout. A RelayState is written in exactly
// quantizer_bits(spec, N_R) bits, most significant bit first:
//
//   U-PQ   q-bit phase index per antenna
//   U-APQ  qbar-bit phase index per antenna, then (q-qbar)-bit amplitude
//          bin per antenna
//   H-APQ  qbar-bit phase index per antenna, then the lexicographic rank of
//          the level assignment in ceil(log2(codeword count)) bits
//
// Antennas are always in ascending index order.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qfrelay/quantizer.hpp"
#include "qfrelay/wide_count.hpp"

namespace qfrelay {

using BitString = std::vector<bool>;

struct EncodedRelayState {
  BitString payload;
  QuantizerSpec spec;
  int n_r = 0;

  friend bool operator==(const EncodedRelayState &, const EncodedRelayState &) = default;
};

/// Zero-based lexicographic index of a 1-based level assignment among all
/// sequences with the O-AQ multiplicities (m per level, remainder on K).
WideCount rank_assignment(std::span<const std::uint32_t> assignment, int n_r, int m);

std::vector<std::uint32_t> unrank_assignment(WideCount rank, int n_r, int m);

EncodedRelayState encode_relay_state(const RelayState &state);
RelayState decode_relay_state(const EncodedRelayState &encoded);

/// MSB-first fixed-width integer writer/reader on a BitString.
void append_bits(BitString &out, WideCount value, int width);
WideCount read_bits(const BitString &in, std::size_t &pos, int width);

/// Debug container: tag, N_R, parameter bytes, 16-bit big-endian bit
/// length, then the payload packed MSB-first and zero padded.
std::vector<std::uint8_t> to_container(const EncodedRelayState &encoded);
EncodedRelayState from_container(std::span<const std::uint8_t> bytes);

/// Payload as a string of '0'/'1'.
std::string bits_to_string(const BitString &bits);

/// Lowercase hex with single spaces between bytes.
std::string to_hex(std::span<const std::uint8_t> bytes);

} // namespace qfrelay
