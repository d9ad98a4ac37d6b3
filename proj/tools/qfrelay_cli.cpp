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

// qfrelay ber <config> [--workers N] [--out FILE]
// qfrelay bits --nr-min A --nr-max B --spec S [--spec S ...] [--out FILE]
// qfrelay quantize --spec S --input "v1 v2 ..." [--out FILE]
//
// Exit status: 0 success, 1 usage or configuration error, 2 numeric failure.

#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "qfrelay/config.hpp"
#include "qfrelay/report.hpp"
#include "qfrelay/sweep.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kNumericError = 2;

class Output {
public:
  explicit Output(const std::string &path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_)
        throw qfrelay::ConfigError(qfrelay::ConfigError::Kind::MissingFile,
                                   "cannot open output file '" + path + "'");
    }
  }
  std::ostream &stream() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Quantize-forward MIMO relay simulator"};
  app.require_subcommand(1);

  std::string out_path;

  std::string config_path;
  int workers = 0;
  auto *ber = app.add_subcommand("ber", "Monte Carlo BER sweep from a config file, CSV output");
  ber->add_option("config", config_path, "sweep configuration file")->required();
  ber->add_option("--workers", workers, "override the config's worker count")->check(CLI::PositiveNumber);
  ber->add_option("--out", out_path, "output file (default stdout)");

  int nr_min = 1, nr_max = 20;
  std::vector<std::string> bit_specs;
  auto *bits = app.add_subcommand("bits", "relay memory bits per received vector, CSV output");
  bits->add_option("--nr-min", nr_min, "smallest N_R")->required();
  bits->add_option("--nr-max", nr_max, "largest N_R")->required();
  bits->add_option("--spec", bit_specs, "quantizer, e.g. hapq:qbar=4,m=2")->required();
  bits->add_option("--out", out_path, "output file (default stdout)");

  std::string quant_spec, quant_input;
  auto *quant = app.add_subcommand("quantize", "dump one relay quantization");
  quant->add_option("--spec", quant_spec, "quantizer, e.g. upq:q=8")->required();
  quant->add_option("--input", quant_input, "received values, e.g. \"2+0j 0+1j\"")->required();
  quant->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  try {
    if (*ber) {
      qfrelay::SweepConfig cfg = qfrelay::parse_config(config_path);
      if (workers > 0)
        cfg.workers = workers;
      const auto records = qfrelay::run_ber_sweep(cfg);
      Output out(out_path);
      out.stream() << "# bit_mapping=gray detector=" << qfrelay::detector_name(cfg.detector)
                   << '\n';
      qfrelay::write_csv(out.stream(), records);
    } else if (*bits) {
      std::vector<qfrelay::QuantizerSpec> specs;
      for (const std::string &s : bit_specs)
        specs.push_back(qfrelay::QuantizerSpec::parse(s));
      const auto rows = qfrelay::memory_report(nr_min, nr_max, specs);
      Output out(out_path);
      qfrelay::write_memory_csv(out.stream(), rows);
    } else if (*quant) {
      const auto spec = qfrelay::QuantizerSpec::parse(quant_spec);
      const auto input = qfrelay::parse_complex_list(quant_input);
      const std::string dump = qfrelay::quantize_debug(input, spec);
      Output out(out_path);
      out.stream() << dump;
    }
  } catch (const qfrelay::ConfigError &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception &e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kNumericError;
  }
  return 0;
}
