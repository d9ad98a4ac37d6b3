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

// Sweep configuration files. Flat `key = value` lines, '#' comments, and any
// number of `[spec]` sections:
//
//   N_S = 4
//   snr_db_grid = 0, 5, 10
//   trials_per_point = 100000
//   seed = 7
//
//   [spec]
//   kind = hapq
//   qbar = 4
//   m = 2
//
// Unknown keys are errors.

#include <stdexcept>
#include <string>

#include "qfrelay/sweep.hpp"

namespace qfrelay {

class ConfigError : public std::runtime_error {
public:
  enum class Kind { MissingFile, Parse, Validation };

  ConfigError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

SweepConfig parse_config_text(const std::string &text);
SweepConfig parse_config(const std::string &path);

} // namespace qfrelay
