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

// Relay-side quantizers for quantize-forward relaying:
//   U-PQ   uniform phase quantization, amplitudes dropped
//   U-APQ  uniform phase + uniform amplitude on norm-scaled amplitudes
//   H-APQ  uniform phase + ordered amplitude quantization (O-AQ)
//   AF     unit-norm scaling of the received vector (no quantization)
// Every relay output has unit squared norm.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qfrelay/types.hpp"
#include "qfrelay/wide_count.hpp"

namespace qfrelay {

enum class Method : std::uint8_t { AF = 0, UPQ = 1, UAPQ = 2, HAPQ = 3 };

/// Largest per-antenna phase resolution accepted (phasor tables are 2^q long).
inline constexpr int kMaxPhaseBits = 16;
/// Largest level-family exponent accepted.
inline constexpr int kMaxFamilyExponent = 4;

struct QuantizerSpec {
  Method kind = Method::AF;
  int q = 0;        ///< total bits per antenna (U-PQ, U-APQ)
  int qbar = 0;     ///< phase bits per antenna (U-APQ, H-APQ)
  int m = 0;        ///< antennas per amplitude level (H-APQ)
  int family_n = 2; ///< levels a_k = k^(n/2) * delta (H-APQ)

  static QuantizerSpec af() { return {}; }
  static QuantizerSpec upq(int q) { return {Method::UPQ, q, 0, 0, 2}; }
  static QuantizerSpec uapq(int q, int qbar) { return {Method::UAPQ, q, qbar, 0, 2}; }
  static QuantizerSpec hapq(int qbar, int m, int family_n = 2) {
    return {Method::HAPQ, 0, qbar, m, family_n};
  }

  /// Bits spent on each antenna's phase index.
  int phase_bits() const noexcept { return kind == Method::UPQ ? q : qbar; }

  /// Throws std::invalid_argument naming the offending field.
  void validate(std::size_t n_r) const;

  /// Parses "af", "upq:q=8", "uapq:q=8,qbar=4", "hapq:qbar=4,m=2[,n=2]".
  static QuantizerSpec parse(const std::string &text);

  /// Inverse of parse().
  std::string to_string() const;

  friend bool operator==(const QuantizerSpec &, const QuantizerSpec &) = default;
};

/// "AF", "U-PQ", "U-APQ" or "H-APQ".
std::string method_label(Method kind);

/// Ascending O-AQ amplitude levels satisfying the unit-power identity
/// m * sum_{k<K} a_k^2 + (N_R - (K-1) m) * a_K^2 = 1.
struct LevelSet {
  std::vector<double> levels;
  double delta = 0.0;
  int K = 0;
  int m = 0;
  int n_r = 0;

  /// Antennas assigned to level k (1-based).
  int multiplicity(int k) const noexcept { return k < K ? m : n_r - (K - 1) * m; }
};

/// Quantized relay contents: everything the relay writes to memory.
/// For U-APQ amplitude_indices holds uniform bin numbers in [0, 2^(q-qbar));
/// for H-APQ it holds 1-based O-AQ level numbers; for U-PQ it is empty.
struct RelayState {
  std::vector<std::uint32_t> phase_indices;
  std::vector<std::uint32_t> amplitude_indices;
  QuantizerSpec spec;

  std::size_t n_r() const noexcept { return phase_indices.size(); }
  friend bool operator==(const RelayState &, const RelayState &) = default;
};

struct PhaseQuantization {
  std::uint32_t index = 0;
  double angle = 0.0;
};

struct OrderedAmplitudes {
  std::vector<double> amplitudes;
  std::vector<std::uint32_t> assignment; ///< 1-based level per antenna
};

struct HapqOutput {
  ComplexVector symbols;
  RelayState state;
};

/// theta mod 2*pi in [0, 2*pi).
double wrap_phase(double theta);

/// Nearest of 2^q uniformly spaced phases, with sector k covering
/// ((2k-1)pi/2^q, (2k+1)pi/2^q].
PhaseQuantization uniform_phase_quantize(double theta, int q);

/// Bin-center reconstruction of values in (0, 1] on 2^b uniform bins; 1.0
/// falls into the top bin.
std::vector<double> uniform_amplitude_quantize(std::span<const double> normalized_amps, int b);

LevelSet build_level_set(int n_r, int m, int family_n = 2);

/// Stable ascending sort of amplitudes, then m antennas per level.
OrderedAmplitudes ordered_amplitude_quantize(std::span<const double> amps, const LevelSet &levels);

ComplexVector upq_relay_symbols(std::span<const Complex> y_sr, int q);
ComplexVector uapq_relay_symbols(std::span<const Complex> y_sr, int q, int qbar);
HapqOutput hapq_relay_symbols(std::span<const Complex> y_sr, int qbar, int m, int family_n = 2);
ComplexVector af_relay_symbols(std::span<const Complex> y_sr);

/// N_R! / ((N_R - (K-1) m)! (m!)^(K-1)), exact.
WideCount oaq_codeword_count(int n_r, int m);

/// Memory bits per received vector. Throws for AF.
int quantizer_bits(const QuantizerSpec &spec, int n_r);

/// Quantizes y_sr into its storable form. AF is rejected.
RelayState quantize_state(std::span<const Complex> y_sr, const QuantizerSpec &spec);

/// Rebuilds the relay transmit vector from stored state.
ComplexVector reconstruct_symbols(const RelayState &state);

/// Precomputed relay function for a fixed (spec, N_R). process() does not
/// allocate and is safe to call concurrently on one instance.
class RelayProcessor {
public:
  RelayProcessor(const QuantizerSpec &spec, int n_r);

  const QuantizerSpec &spec() const noexcept { return spec_; }
  int n_r() const noexcept { return n_r_; }
  bool quantizes() const noexcept { return spec_.kind != Method::AF; }
  const LevelSet &level_set() const noexcept { return levels_; }

  /// out = relay transmit vector for received y. Throws std::domain_error on
  /// a zero received vector where the method needs its norm.
  void process(std::span<const Complex> y, std::span<Complex> out) const;

  RelayState quantize(std::span<const Complex> y) const;
  void reconstruct(const RelayState &state, std::span<Complex> out) const;

private:
  std::uint32_t phase_index(Complex y) const noexcept;
  void quantize_into(std::span<const Complex> y, std::uint32_t *phase, std::uint32_t *amp) const;
  void reconstruct_from(const std::uint32_t *phase, const std::uint32_t *amp,
                        std::span<Complex> out) const;

  QuantizerSpec spec_;
  int n_r_;
  std::vector<Complex> phasors_;
  LevelSet levels_;
};

} // namespace qfrelay
