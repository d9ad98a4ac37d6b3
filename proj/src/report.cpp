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

#include "qfrelay/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "qfrelay/bit_codec.hpp"

namespace qfrelay {
namespace {

// 12 decimals, so libm last-bit noise (cos(pi/2) etc.) never reaches the dump.
std::string num(double v) {
  v = std::round(v * 1e12) / 1e12;
  if (v == 0.0)
    v = 0.0;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string complex_str(Complex c) {
  const std::string im = num(c.imag());
  return num(c.real()) + (im.front() == '-' ? "" : "+") + im + "j";
}

double parse_real(const std::string &s, const std::string &token) {
  if (s.empty() || s == "+")
    return 1.0;
  if (s == "-")
    return -1.0;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != s.size() || !std::isfinite(v))
    throw std::invalid_argument("cannot parse complex value '" + token + "'");
  return v;
}

Complex parse_complex(const std::string &token) {
  if (token.back() != 'j' && token.back() != 'i')
    return {parse_real(token, token), 0.0};
  const std::string body = token.substr(0, token.size() - 1);
  // The sign separating real and imaginary parts is the last +/- that does
  // not start the token or follow an exponent marker.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos)
    return {0.0, parse_real(body, token)};
  return {parse_real(body.substr(0, split), token), parse_real(body.substr(split), token)};
}

} // namespace

ComplexVector parse_complex_list(const std::string &text) {
  std::istringstream in(text);
  ComplexVector out;
  std::string token;
  while (in >> token)
    out.push_back(parse_complex(token));
  if (out.empty())
    throw std::invalid_argument("input: no complex values given");
  return out;
}

std::string quantize_debug(std::span<const Complex> input, const QuantizerSpec &spec) {
  const int n_r = static_cast<int>(input.size());
  spec.validate(input.size());
  const RelayProcessor relay(spec, n_r);

  std::ostringstream os;
  os << "spec: " << spec.to_string() << '\n';
  os << "method: " << method_label(spec.kind) << '\n';
  os << "N_R: " << n_r << '\n';
  os << "input:";
  for (const Complex &c : input)
    os << ' ' << complex_str(c);
  os << "\namplitudes:";
  for (const Complex &c : input)
    os << ' ' << num(std::sqrt(std::norm(c)));
  os << '\n';

  ComplexVector x_r(input.size());
  if (!relay.quantizes()) {
    relay.process(input, x_r);
  } else {
    const RelayState state = relay.quantize(input);
    os << "phase_indices:";
    for (std::uint32_t k : state.phase_indices)
      os << ' ' << k;
    os << '\n';
    if (spec.kind == Method::HAPQ) {
      os << "levels:";
      for (double a : relay.level_set().levels)
        os << ' ' << num(a);
      os << "\ndelta: " << num(relay.level_set().delta) << '\n';
    }
    if (!state.amplitude_indices.empty()) {
      os << (spec.kind == Method::HAPQ ? "amplitude_assignment:" : "amplitude_bins:");
      for (std::uint32_t a : state.amplitude_indices)
        os << ' ' << a;
      os << '\n';
    }
    const EncodedRelayState enc = encode_relay_state(state);
    if (spec.kind == Method::HAPQ)
      os << "assignment_rank: " << to_string(rank_assignment(state.amplitude_indices, n_r, spec.m))
         << " of " << to_string(oaq_codeword_count(n_r, spec.m)) << '\n';
    relay.reconstruct(decode_relay_state(enc), x_r);
    os << "x_R:\n";
    for (const Complex &c : x_r)
      os << "  " << complex_str(c) << '\n';
    os << "power: " << num(squared_norm(x_r)) << '\n';
    os << "N_b: " << enc.payload.size() << '\n';
    os << "payload: " << bits_to_string(enc.payload) << '\n';
    os << "container: " << to_hex(to_container(enc)) << '\n';
    return os.str();
  }
  os << "x_R:\n";
  for (const Complex &c : x_r)
    os << "  " << complex_str(c) << '\n';
  os << "power: " << num(squared_norm(x_r)) << '\n';
  os << "N_b: none (no finite bit encoding)\n";
  return os.str();
}

} // namespace qfrelay
