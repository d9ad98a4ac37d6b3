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

// Source -> relay -> destination link with a direct source -> destination
// path. Slot 1: the source broadcasts x, the relay stores its quantized
// observation. Slot 2: the relay reloads the state and transmits x_R.
// The destination detects over both observations with full CSI.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qfrelay/channel.hpp"
#include "qfrelay/quantizer.hpp"
#include "qfrelay/rng.hpp"

namespace qfrelay {

std::uint32_t gray_encode(std::uint32_t v) noexcept;
std::uint32_t gray_decode(std::uint32_t g) noexcept;

/// Per-antenna Gray-labelled M-PSK. Message s (zero-based) has base-M
/// digits s_0..s_{N_S-1}, least significant first; antenna i transmits the
/// constellation point whose Gray label is s_i, scaled by 1/sqrt(N_S).
class Codebook {
public:
  Codebook(int alphabet, int n_s);

  int alphabet() const noexcept { return alphabet_; }
  int n_s() const noexcept { return n_s_; }
  int bits_per_symbol() const noexcept { return bits_per_symbol_; }
  std::size_t size() const noexcept { return size_; }
  /// N_S * log2(M)
  int bits_per_message() const noexcept { return n_s_ * bits_per_symbol_; }

  std::span<const Complex> codeword(std::size_t message) const noexcept {
    return {symbols_.data() + message * static_cast<std::size_t>(n_s_),
            static_cast<std::size_t>(n_s_)};
  }

  /// Bit label carried by antenna i for message s.
  std::uint32_t digit(std::size_t message, int antenna) const noexcept {
    return static_cast<std::uint32_t>((message >> (antenna * bits_per_symbol_)) &
                                      static_cast<std::size_t>(alphabet_ - 1));
  }

  /// Hamming distance between the bit labels of two messages.
  int bit_errors(std::size_t sent, std::size_t detected) const noexcept;

private:
  int alphabet_;
  int n_s_;
  int bits_per_symbol_;
  std::size_t size_;
  ComplexVector symbols_;
};

Codebook build_codebook(int alphabet, int n_s);

enum class Detector { Mismatched, Marginalized };

std::string detector_name(Detector d);

struct LinkConfig {
  int n_s = 4;
  int n_r = 4;
  int n_d = 4;
  int alphabet = 4;
  QuantizerSpec spec;
  double sigma2 = 1.0;
  Detector detector = Detector::Mismatched;
  int marginal_samples = 64;
};

struct TrialOutcome {
  std::size_t sent = 0;
  std::size_t detected = 0;
  int bit_errors = 0;
  int total_bits = 0;
};

/// Relay function as deployed: quantize, write to memory, reload, transmit.
/// AF skips the memory round trip.
ComplexVector relay_process(std::span<const Complex> y_sr, const QuantizerSpec &spec);

/// Everything fixed for one (spec, SNR) operating point. Const methods are
/// thread-safe; each trial owns its RngStream.
class RelayLink {
public:
  explicit RelayLink(const LinkConfig &config);

  const LinkConfig &config() const noexcept { return config_; }
  const Codebook &codebook() const noexcept { return codebook_; }
  const RelayProcessor &relay() const noexcept { return relay_; }

  /// Relay output after the store/reload round trip through the bit codec.
  ComplexVector relay_process(std::span<const Complex> y_sr) const;

  /// argmin_S |y_SD - H_SD x(S)|^2 + |y_RD - H_RD f(H_SR x(S))|^2, smallest
  /// S on ties.
  std::size_t detect_mismatched(std::span<const Complex> y_sd, std::span<const Complex> y_rd,
                                const LinkRealization &links) const;

  /// Same objective as detect_mismatched, returned for every candidate.
  std::vector<double> mismatched_metrics(std::span<const Complex> y_sd, std::span<const Complex> y_rd,
                                         const LinkRealization &links) const;

  /// Monte Carlo marginalization of the relay noise using the given samples,
  /// shared by every candidate. Largest score wins, smallest S on ties.
  std::size_t detect_marginalized(std::span<const Complex> y_sd, std::span<const Complex> y_rd,
                                  const LinkRealization &links,
                                  std::span<const ComplexVector> relay_noise) const;

  /// Draws marginal_samples relay-noise vectors from rng, then detects.
  std::size_t detect_marginalized(std::span<const Complex> y_sd, std::span<const Complex> y_rd,
                                  const LinkRealization &links, RngStream &rng) const;

  /// One message transmission. Draws from stream (seed, point, trial, 0);
  /// the marginalized detector's samples come from substream 1.
  TrialOutcome run_trial(std::uint64_t seed, std::uint32_t point, std::uint32_t trial) const;

private:
  LinkConfig config_;
  Codebook codebook_;
  RelayProcessor relay_;
};

} // namespace qfrelay
