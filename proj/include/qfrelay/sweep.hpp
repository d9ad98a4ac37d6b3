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
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qfrelay/quantizer.hpp"
#include "qfrelay/relay_link.hpp"

namespace qfrelay {

struct SweepConfig {
  int n_s = 4;
  int n_r = 4;
  int n_d = 4;
  int alphabet = 4;
  std::vector<QuantizerSpec> specs;
  std::vector<double> snr_db_grid;
  std::uint64_t trials_per_point = 10000;
  std::uint64_t seed = 1;
  Detector detector = Detector::Mismatched;
  int marginal_samples = 64;
  int workers = 1;

  /// Throws std::invalid_argument whose message starts with the field name.
  void validate() const;
};

/// Processors OpenMP will use by default.
int default_workers();

/// 0, 2, ..., 20 dB.
std::vector<double> default_snr_grid();

struct BerRecord {
  QuantizerSpec spec;
  int n_s = 0;
  int n_r = 0;
  int n_d = 0;
  int alphabet = 0;
  double snr_db = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t total_bits = 0;
  std::optional<int> n_b; ///< empty for AF
  std::uint64_t seed = 0;

  double ber() const noexcept {
    return total_bits == 0 ? 0.0 : static_cast<double>(bit_errors) / static_cast<double>(total_bits);
  }
  /// sqrt(p (1 - p) / total_bits)
  double std_err() const noexcept;
};

/// Bit errors summed over trials [0, trials) of one operating point.
/// Reference implementation: one thread, trials in order.
std::uint64_t count_bit_errors_serial(const RelayLink &link, std::uint64_t seed, std::uint32_t point,
                                      std::uint64_t trials);

/// Same sum with trials spread over an OpenMP team. Returns the identical
/// value as the serial kernel for any worker count.
std::uint64_t count_bit_errors_parallel(const RelayLink &link, std::uint64_t seed,
                                        std::uint32_t point, std::uint64_t trials, int workers);

/// One record per (spec, SNR), specs in config order, SNR ascending. Trial
/// t at SNR index i uses stream (seed, i, t) for every spec, so methods are
/// compared on identical messages, channels and noise.
std::vector<BerRecord> run_ber_sweep(const SweepConfig &config);

/// Header plus one line per record.
void write_csv(std::ostream &os, std::span<const BerRecord> records);
std::string to_csv(std::span<const BerRecord> records);

struct MemoryRow {
  int n_r = 0;
  QuantizerSpec spec;
  int n_b = 0;
};

/// Relay memory bits for every N_R in [nr_min, nr_max] and every spec.
std::vector<MemoryRow> memory_report(int nr_min, int nr_max, std::span<const QuantizerSpec> specs);
void write_memory_csv(std::ostream &os, std::span<const MemoryRow> rows);

} // namespace qfrelay
