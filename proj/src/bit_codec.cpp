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

#include "qfrelay/bit_codec.hpp"

#include <array>
#include <cstdio>
#include <stdexcept>

namespace qfrelay {
namespace {

struct Multiset {
  std::array<int, kMaxAntennas + 1> count{}; // 1-based levels
  int levels = 0;
  int total = 0;
};

Multiset oaq_multiset(int n_r, int m) {
  const LevelSet shape{{}, 0.0, (n_r + m - 1) / m, m, n_r};
  Multiset ms;
  ms.levels = shape.K;
  ms.total = n_r;
  for (int k = 1; k <= shape.K; ++k)
    ms.count[k] = shape.multiplicity(k);
  return ms;
}

// Distinct arrangements of the multiset: a product of binomials, each of
// which is bounded by the final result.
WideCount arrangements(const Multiset &ms) {
  WideCount r = 1;
  int remaining = ms.total;
  for (int k = 1; k <= ms.levels; ++k) {
    r = checked_mul(r, binomial(static_cast<unsigned>(remaining), static_cast<unsigned>(ms.count[k])));
    remaining -= ms.count[k];
  }
  return r;
}

void check_shape(int n_r, int m) {
  if (n_r < 1 || n_r > static_cast<int>(kMaxAntennas))
    throw std::invalid_argument("N_R out of range");
  if (m < 1 || m > n_r)
    throw std::invalid_argument("m must be in [1, N_R]");
}

int amplitude_width(const QuantizerSpec &spec, int n_r) {
  switch (spec.kind) {
  case Method::UAPQ:
    return spec.q - spec.qbar;
  case Method::HAPQ:
    return ceil_log2(oaq_codeword_count(n_r, spec.m));
  default:
    return 0;
  }
}

} // namespace

WideCount rank_assignment(std::span<const std::uint32_t> assignment, int n_r, int m) {
  check_shape(n_r, m);
  if (assignment.size() != static_cast<std::size_t>(n_r))
    throw std::invalid_argument("rank_assignment: length differs from N_R");
  Multiset ms = oaq_multiset(n_r, m);

  Multiset seen;
  for (std::uint32_t a : assignment) {
    if (a < 1 || a > static_cast<std::uint32_t>(ms.levels))
      throw std::invalid_argument("rank_assignment: level index out of range");
    ++seen.count[a];
  }
  for (int k = 1; k <= ms.levels; ++k)
    if (seen.count[k] != ms.count[k])
      throw std::invalid_argument("rank_assignment: level " + std::to_string(k) + " used " +
                                  std::to_string(seen.count[k]) + " times, expected " +
                                  std::to_string(ms.count[k]));

  WideCount rank = 0;
  for (std::uint32_t a : assignment) {
    for (int v = 1; v < static_cast<int>(a); ++v) {
      if (ms.count[v] == 0)
        continue;
      --ms.count[v];
      --ms.total;
      rank = checked_add(rank, arrangements(ms));
      ++ms.count[v];
      ++ms.total;
    }
    --ms.count[a];
    --ms.total;
  }
  return rank;
}

std::vector<std::uint32_t> unrank_assignment(WideCount rank, int n_r, int m) {
  check_shape(n_r, m);
  Multiset ms = oaq_multiset(n_r, m);
  if (rank >= arrangements(ms))
    throw std::out_of_range("unrank_assignment: rank " + to_string(rank) +
                            " not below codeword count " + to_string(arrangements(ms)));

  std::vector<std::uint32_t> out;
  out.reserve(static_cast<std::size_t>(n_r));
  for (int pos = 0; pos < n_r; ++pos) {
    for (int v = 1; v <= ms.levels; ++v) {
      if (ms.count[v] == 0)
        continue;
      --ms.count[v];
      --ms.total;
      const WideCount block = arrangements(ms);
      if (rank < block) {
        out.push_back(static_cast<std::uint32_t>(v));
        break;
      }
      rank -= block;
      ++ms.count[v];
      ++ms.total;
    }
  }
  return out;
}

void append_bits(BitString &out, WideCount value, int width) {
  if (width < 0 || width > 128 || (width < 128 && (value >> width) != 0))
    throw std::invalid_argument("append_bits: value does not fit in " + std::to_string(width) +
                                " bits");
  for (int b = width - 1; b >= 0; --b)
    out.push_back(((value >> b) & 1) != 0);
}

WideCount read_bits(const BitString &in, std::size_t &pos, int width) {
  if (pos + static_cast<std::size_t>(width) > in.size())
    throw std::invalid_argument("read_bits: payload truncated");
  WideCount v = 0;
  for (int b = 0; b < width; ++b)
    v = (v << 1) | (in[pos++] ? 1 : 0);
  return v;
}

EncodedRelayState encode_relay_state(const RelayState &state) {
  const int n_r = static_cast<int>(state.n_r());
  const int total = quantizer_bits(state.spec, n_r);
  // Reject malformed states before packing.
  ComplexVector scratch(state.n_r());
  RelayProcessor(state.spec, n_r).reconstruct(state, scratch);

  EncodedRelayState enc;
  enc.spec = state.spec;
  enc.n_r = n_r;
  enc.payload.reserve(static_cast<std::size_t>(total));
  const int phase_width = state.spec.phase_bits();
  for (std::uint32_t k : state.phase_indices)
    append_bits(enc.payload, k, phase_width);

  if (state.spec.kind == Method::UAPQ) {
    for (std::uint32_t a : state.amplitude_indices)
      append_bits(enc.payload, a, state.spec.q - state.spec.qbar);
  } else if (state.spec.kind == Method::HAPQ) {
    append_bits(enc.payload, rank_assignment(state.amplitude_indices, n_r, state.spec.m),
                amplitude_width(state.spec, n_r));
  }
  if (enc.payload.size() != static_cast<std::size_t>(total))
    throw std::logic_error("encode_relay_state: layout disagrees with quantizer_bits");
  return enc;
}

RelayState decode_relay_state(const EncodedRelayState &enc) {
  const int total = quantizer_bits(enc.spec, enc.n_r);
  if (enc.payload.size() != static_cast<std::size_t>(total))
    throw std::invalid_argument("decode_relay_state: payload has " +
                                std::to_string(enc.payload.size()) + " bits, expected " +
                                std::to_string(total));
  RelayState state;
  state.spec = enc.spec;
  std::size_t pos = 0;
  const int phase_width = enc.spec.phase_bits();
  for (int i = 0; i < enc.n_r; ++i)
    state.phase_indices.push_back(static_cast<std::uint32_t>(read_bits(enc.payload, pos, phase_width)));

  if (enc.spec.kind == Method::UAPQ) {
    const int width = enc.spec.q - enc.spec.qbar;
    for (int i = 0; i < enc.n_r; ++i)
      state.amplitude_indices.push_back(static_cast<std::uint32_t>(read_bits(enc.payload, pos, width)));
  } else if (enc.spec.kind == Method::HAPQ) {
    const WideCount rank = read_bits(enc.payload, pos, amplitude_width(enc.spec, enc.n_r));
    state.amplitude_indices = unrank_assignment(rank, enc.n_r, enc.spec.m);
  }
  return state;
}

std::vector<std::uint8_t> to_container(const EncodedRelayState &enc) {
  if (enc.spec.kind == Method::AF)
    throw std::invalid_argument("AF relaying has no finite bit encoding");
  std::vector<std::uint8_t> out;
  out.push_back(static_cast<std::uint8_t>(enc.spec.kind));
  out.push_back(static_cast<std::uint8_t>(enc.n_r));
  switch (enc.spec.kind) {
  case Method::UPQ:
    out.push_back(static_cast<std::uint8_t>(enc.spec.q));
    break;
  case Method::UAPQ:
    out.push_back(static_cast<std::uint8_t>(enc.spec.q));
    out.push_back(static_cast<std::uint8_t>(enc.spec.qbar));
    break;
  case Method::HAPQ:
    out.push_back(static_cast<std::uint8_t>(enc.spec.qbar));
    out.push_back(static_cast<std::uint8_t>(enc.spec.m));
    out.push_back(static_cast<std::uint8_t>(enc.spec.family_n));
    break;
  case Method::AF:
    break;
  }
  const std::size_t nbits = enc.payload.size();
  if (nbits > 0xFFFF)
    throw std::invalid_argument("payload longer than 65535 bits");
  out.push_back(static_cast<std::uint8_t>(nbits >> 8));
  out.push_back(static_cast<std::uint8_t>(nbits & 0xFF));
  std::uint8_t byte = 0;
  for (std::size_t i = 0; i < nbits; ++i) {
    byte = static_cast<std::uint8_t>((byte << 1) | (enc.payload[i] ? 1 : 0));
    if (i % 8 == 7) {
      out.push_back(byte);
      byte = 0;
    }
  }
  if (nbits % 8 != 0)
    out.push_back(static_cast<std::uint8_t>(byte << (8 - nbits % 8)));
  return out;
}

EncodedRelayState from_container(std::span<const std::uint8_t> bytes) {
  std::size_t pos = 0;
  auto next = [&]() -> std::uint8_t {
    if (pos >= bytes.size())
      throw std::invalid_argument("container truncated");
    return bytes[pos++];
  };
  EncodedRelayState enc;
  const std::uint8_t tag = next();
  enc.n_r = next();
  switch (tag) {
  case static_cast<std::uint8_t>(Method::UPQ):
    enc.spec = QuantizerSpec::upq(next());
    break;
  case static_cast<std::uint8_t>(Method::UAPQ): {
    const int q = next();
    enc.spec = QuantizerSpec::uapq(q, next());
    break;
  }
  case static_cast<std::uint8_t>(Method::HAPQ): {
    const int qbar = next();
    const int m = next();
    enc.spec = QuantizerSpec::hapq(qbar, m, next());
    break;
  }
  default:
    throw std::invalid_argument("container: unknown spec tag " + std::to_string(tag));
  }
  std::size_t nbits = static_cast<std::size_t>(next()) << 8;
  nbits |= next();
  if (nbits != static_cast<std::size_t>(quantizer_bits(enc.spec, enc.n_r)))
    throw std::invalid_argument("container: bit length does not match spec");
  const std::size_t nbytes = (nbits + 7) / 8;
  if (bytes.size() - pos != nbytes)
    throw std::invalid_argument("container: payload size mismatch");
  for (std::size_t i = 0; i < nbits; ++i)
    enc.payload.push_back(((bytes[pos + i / 8] >> (7 - i % 8)) & 1) != 0);
  return enc;
}

std::string bits_to_string(const BitString &bits) {
  std::string s;
  s.reserve(bits.size());
  for (bool b : bits)
    s.push_back(b ? '1' : '0');
  return s;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  std::string s;
  char buf[4];
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    std::snprintf(buf, sizeof buf, i == 0 ? "%02x" : " %02x", bytes[i]);
    s += buf;
  }
  return s;
}

} // namespace qfrelay
