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

#include <span>
#include <string>

#include "qfrelay/quantizer.hpp"

namespace qfrelay {

/// Parses whitespace-separated complex literals: "2", "-1.5j", "0+1j", "3-4j".
ComplexVector parse_complex_list(const std::string &text);

/// Human-readable dump of one relay quantization: state, transmit vector,
/// bit payload and debug container bytes.
std::string quantize_debug(std::span<const Complex> input, const QuantizerSpec &spec);

} // namespace qfrelay
