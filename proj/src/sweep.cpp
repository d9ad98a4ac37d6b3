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

#include "qfrelay/sweep.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <omp.h>

namespace qfrelay {
namespace {

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string sig10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_params(std::ostream &os, const QuantizerSpec &spec) {
  auto field = [&](bool present, int value) {
    if (present)
      os << value;
    os << ',';
  };
  field(spec.kind == Method::UPQ || spec.kind == Method::UAPQ, spec.q);
  field(spec.kind == Method::UAPQ || spec.kind == Method::HAPQ, spec.qbar);
  field(spec.kind == Method::HAPQ, spec.m);
  field(spec.kind == Method::HAPQ, spec.family_n);
}

} // namespace

int default_workers() { return std::max(1, omp_get_num_procs()); }

std::vector<double> default_snr_grid() {
  std::vector<double> grid;
  for (int db = 0; db <= 20; db += 2)
    grid.push_back(db);
  return grid;
}

void SweepConfig::validate() const {
  auto antennas = [](const char *name, int v) {
    if (v < 1 || v > static_cast<int>(kMaxAntennas))
      throw std::invalid_argument(std::string(name) + " must be in [1, " +
                                  std::to_string(kMaxAntennas) + "] (got " + std::to_string(v) + ")");
  };
  antennas("N_S", n_s);
  antennas("N_R", n_r);
  antennas("N_D", n_d);
  if (alphabet != 2 && alphabet != 4 && alphabet != 8 && alphabet != 16)
    throw std::invalid_argument("M must be one of 2, 4, 8, 16 (got " + std::to_string(alphabet) + ")");
  // Constructs the codebook only to reuse its size check.
  (void)Codebook(alphabet, n_s);
  if (specs.empty())
    throw std::invalid_argument("specs: at least one [spec] block is required");
  for (std::size_t i = 0; i < specs.size(); ++i) {
    try {
      specs[i].validate(static_cast<std::size_t>(n_r));
    } catch (const std::invalid_argument &e) {
      throw std::invalid_argument(std::string(e.what()) + " in spec " + std::to_string(i + 1));
    }
  }
  if (snr_db_grid.empty())
    throw std::invalid_argument("snr_db_grid must not be empty");
  for (double v : snr_db_grid)
    if (!std::isfinite(v))
      throw std::invalid_argument("snr_db_grid has a non-finite value");
  for (std::size_t i = 1; i < snr_db_grid.size(); ++i)
    if (!(snr_db_grid[i] > snr_db_grid[i - 1]))
      throw std::invalid_argument("snr_db_grid not ascending");
  if (trials_per_point < 1 || trials_per_point > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("trials_per_point must be in [1, 2^32)");
  if (marginal_samples < 1)
    throw std::invalid_argument("marginal_samples must be >= 1");
  if (workers < 1)
    throw std::invalid_argument("workers must be >= 1");
}

double BerRecord::std_err() const noexcept {
  if (total_bits == 0)
    return 0.0;
  const double p = ber();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(total_bits));
}

std::uint64_t count_bit_errors_serial(const RelayLink &link, std::uint64_t seed, std::uint32_t point,
                                      std::uint64_t trials) {
  std::uint64_t errors = 0;
  for (std::uint64_t t = 0; t < trials; ++t)
    errors += static_cast<std::uint64_t>(link.run_trial(seed, point, static_cast<std::uint32_t>(t)).bit_errors);
  return errors;
}

std::uint64_t count_bit_errors_parallel(const RelayLink &link, std::uint64_t seed,
                                        std::uint32_t point, std::uint64_t trials, int workers) {
  std::uint64_t errors = 0;
  const auto n = static_cast<std::int64_t>(trials);
  bool failed = false;
  std::string failure;
#pragma omp parallel for num_threads(workers) schedule(dynamic, 64) reduction(+ : errors)
  for (std::int64_t t = 0; t < n; ++t) {
    try {
      errors += static_cast<std::uint64_t>(
          link.run_trial(seed, point, static_cast<std::uint32_t>(t)).bit_errors);
    } catch (const std::exception &e) {
#pragma omp critical(qfrelay_trial_failure)
      {
        if (!failed) {
          failed = true;
          failure = e.what();
        }
      }
    }
  }
  if (failed)
    throw std::runtime_error("trial failed: " + failure);
  return errors;
}

std::vector<BerRecord> run_ber_sweep(const SweepConfig &config) {
  config.validate();
  std::vector<BerRecord> records;
  records.reserve(config.specs.size() * config.snr_db_grid.size());
  for (const QuantizerSpec &spec : config.specs) {
    const std::optional<int> n_b =
        spec.kind == Method::AF ? std::nullopt : std::optional<int>(quantizer_bits(spec, config.n_r));
    for (std::size_t i = 0; i < config.snr_db_grid.size(); ++i) {
      LinkConfig lc;
      lc.n_s = config.n_s;
      lc.n_r = config.n_r;
      lc.n_d = config.n_d;
      lc.alphabet = config.alphabet;
      lc.spec = spec;
      lc.sigma2 = snr_db_to_sigma2(config.snr_db_grid[i]);
      lc.detector = config.detector;
      lc.marginal_samples = config.marginal_samples;
      const RelayLink link(lc);

      BerRecord r;
      r.spec = spec;
      r.n_s = config.n_s;
      r.n_r = config.n_r;
      r.n_d = config.n_d;
      r.alphabet = config.alphabet;
      r.snr_db = config.snr_db_grid[i];
      r.trials = config.trials_per_point;
      r.total_bits = config.trials_per_point * static_cast<std::uint64_t>(link.codebook().bits_per_message());
      r.n_b = n_b;
      r.seed = config.seed;
      const auto point = static_cast<std::uint32_t>(i);
      r.bit_errors = config.workers == 1
                         ? count_bit_errors_serial(link, config.seed, point, config.trials_per_point)
                         : count_bit_errors_parallel(link, config.seed, point,
                                                     config.trials_per_point, config.workers);
      records.push_back(r);
    }
  }
  return records;
}

void write_csv(std::ostream &os, std::span<const BerRecord> records) {
  os << "method,q,qbar,m,family_n,N_S,N_R,N_D,M,snr_db,trials,bit_errors,total_bits,ber,N_b,seed,"
        "std_err\n";
  for (const BerRecord &r : records) {
    os << method_label(r.spec.kind) << ',';
    write_params(os, r.spec);
    os << r.n_s << ',' << r.n_r << ',' << r.n_d << ',' << r.alphabet << ',' << shortest(r.snr_db)
       << ',' << r.trials << ',' << r.bit_errors << ',' << r.total_bits << ',' << sig10(r.ber())
       << ',';
    if (r.n_b)
      os << *r.n_b;
    os << ',' << r.seed << ',' << sig10(r.std_err()) << '\n';
  }
}

std::string to_csv(std::span<const BerRecord> records) {
  std::ostringstream os;
  write_csv(os, records);
  return os.str();
}

std::vector<MemoryRow> memory_report(int nr_min, int nr_max, std::span<const QuantizerSpec> specs) {
  if (nr_min < 1 || nr_max < nr_min)
    throw std::invalid_argument("N_R range must satisfy 1 <= nr-min <= nr-max");
  std::vector<MemoryRow> rows;
  for (int n_r = nr_min; n_r <= nr_max; ++n_r)
    for (const QuantizerSpec &spec : specs)
      rows.push_back({n_r, spec, quantizer_bits(spec, n_r)});
  return rows;
}

void write_memory_csv(std::ostream &os, std::span<const MemoryRow> rows) {
  os << "N_R,method,q,qbar,m,family_n,N_b\n";
  for (const MemoryRow &row : rows) {
    os << row.n_r << ',' << method_label(row.spec.kind) << ',';
    write_params(os, row.spec);
    os << row.n_b << '\n';
  }
}

} // namespace qfrelay
