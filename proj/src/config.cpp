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

#include "qfrelay/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qfrelay {
namespace {

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_error(int line, const std::string &msg) {
  throw ConfigError(ConfigError::Kind::Parse, "line " + std::to_string(line) + ": " + msg);
}

template <class T>
T parse_number(const std::string &key, const std::string &value, int line) {
  T v{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    parse_error(line, key + ": cannot parse '" + value + "' as a number");
  return v;
}

struct SpecBlock {
  int line = 0;
  std::map<std::string, std::string> values;
};

QuantizerSpec build_spec(const SpecBlock &block, std::size_t index) {
  const auto kind_it = block.values.find("kind");
  if (kind_it == block.values.end())
    throw ConfigError(ConfigError::Kind::Validation,
                      "kind: missing in spec " + std::to_string(index + 1));
  std::string text = kind_it->second;
  bool first = true;
  for (const auto &[key, value] : block.values) {
    if (key == "kind")
      continue;
    text += (first ? ":" : ",") + key + "=" + value;
    first = false;
  }
  try {
    return QuantizerSpec::parse(text);
  } catch (const std::invalid_argument &e) {
    throw ConfigError(ConfigError::Kind::Validation,
                      std::string(e.what()) + " in spec " + std::to_string(index + 1));
  }
}

} // namespace

SweepConfig parse_config_text(const std::string &text) {
  static const std::set<std::string> kTopKeys = {
      "N_S",  "N_R",    "N_D",      "M",      "snr_db_grid",      "trials_per_point",
      "seed", "detector", "marginal_samples", "workers"};
  static const std::set<std::string> kSpecKeys = {"kind", "q", "qbar", "m", "family_n", "n"};

  SweepConfig cfg;
  cfg.snr_db_grid = default_snr_grid();
  cfg.workers = default_workers();

  std::vector<SpecBlock> blocks;
  std::set<std::string> seen_top;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty())
      continue;
    if (line.front() == '[') {
      if (line != "[spec]")
        parse_error(line_no, "unknown section " + line);
      blocks.push_back({line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      parse_error(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty())
      parse_error(line_no, key + ": empty value");

    if (!blocks.empty()) {
      if (!kSpecKeys.contains(key))
        parse_error(line_no, "unknown key '" + key + "' in [spec]");
      const std::string canonical = key == "family_n" ? "n" : key;
      if (!blocks.back().values.emplace(canonical, value).second)
        parse_error(line_no, key + ": duplicate key");
      continue;
    }
    if (!kTopKeys.contains(key))
      parse_error(line_no, "unknown key '" + key + "'");
    if (!seen_top.insert(key).second)
      parse_error(line_no, key + ": duplicate key");

    if (key == "N_S")
      cfg.n_s = parse_number<int>(key, value, line_no);
    else if (key == "N_R")
      cfg.n_r = parse_number<int>(key, value, line_no);
    else if (key == "N_D")
      cfg.n_d = parse_number<int>(key, value, line_no);
    else if (key == "M")
      cfg.alphabet = parse_number<int>(key, value, line_no);
    else if (key == "trials_per_point")
      cfg.trials_per_point = parse_number<std::uint64_t>(key, value, line_no);
    else if (key == "seed")
      cfg.seed = parse_number<std::uint64_t>(key, value, line_no);
    else if (key == "marginal_samples")
      cfg.marginal_samples = parse_number<int>(key, value, line_no);
    else if (key == "workers")
      cfg.workers = parse_number<int>(key, value, line_no);
    else if (key == "detector") {
      if (value == "mismatched")
        cfg.detector = Detector::Mismatched;
      else if (value == "marginalized")
        cfg.detector = Detector::Marginalized;
      else
        parse_error(line_no, "detector: expected mismatched or marginalized");
    } else if (key == "snr_db_grid") {
      cfg.snr_db_grid.clear();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ','))
        cfg.snr_db_grid.push_back(parse_number<double>(key, trim(item), line_no));
    }
  }

  for (std::size_t i = 0; i < blocks.size(); ++i)
    cfg.specs.push_back(build_spec(blocks[i], i));

  try {
    cfg.validate();
  } catch (const std::invalid_argument &e) {
    throw ConfigError(ConfigError::Kind::Validation, e.what());
  }
  return cfg;
}

SweepConfig parse_config(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError(ConfigError::Kind::MissingFile, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

} // namespace qfrelay
