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

#include "qfrelay/quantizer.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qfrelay {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxFreePhaseBits = 30;

// Sector k covers ((2k-1)pi/2^q, (2k+1)pi/2^q]; theta must be in [0, 2pi).
// The ceil estimate can be one off when theta sits within rounding of a
// boundary, so the interval test is evaluated literally to settle it.
std::uint32_t sector_index(double theta, int q) noexcept {
  constexpr double pi = std::numbers::pi;
  const double sectors = std::ldexp(1.0, q);
  auto k = static_cast<std::int64_t>(std::ceil(theta / kTwoPi * sectors - 0.5));
  if (theta <= (2.0 * static_cast<double>(k) - 1.0) * pi / sectors)
    --k;
  else if (theta > (2.0 * static_cast<double>(k) + 1.0) * pi / sectors)
    ++k;
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(k) & ((std::uint64_t{1} << q) - 1));
}

double wrap_arg(Complex y) noexcept {
  double theta = std::arg(y);
  if (theta < 0.0)
    theta += kTwoPi;
  return theta >= kTwoPi ? 0.0 : theta;
}

std::uint32_t amplitude_bin(double v, int b) noexcept {
  const double bins = std::ldexp(1.0, b);
  const double j = std::floor(v * bins);
  if (j < 0.0)
    return 0;
  if (j >= bins)
    return static_cast<std::uint32_t>(bins) - 1;
  return static_cast<std::uint32_t>(j);
}

double bin_center(std::uint32_t j, int b) noexcept {
  return std::ldexp(static_cast<double>(j) + 0.5, -b);
}

double magnitude(Complex y) noexcept { return std::sqrt(std::norm(y)); }

// Stable ascending order by amplitude (insertion sort; N_R is small).
void ascending_order(const double *amps, std::size_t n, std::uint32_t *order) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = i;
    while (j > 0 && amps[order[j - 1]] > amps[i]) {
      order[j] = order[j - 1];
      --j;
    }
    order[j] = static_cast<std::uint32_t>(i);
  }
}

void assign_levels(const double *amps, std::size_t n, int m, std::uint32_t *assignment) noexcept {
  std::array<std::uint32_t, kMaxAntennas> order{};
  ascending_order(amps, n, order.data());
  for (std::size_t rank = 0; rank < n; ++rank)
    assignment[order[rank]] = static_cast<std::uint32_t>(rank / static_cast<std::size_t>(m)) + 1;
}

double integer_power(int base, int exponent) noexcept {
  double r = 1.0;
  for (int i = 0; i < exponent; ++i)
    r *= base;
  return r;
}

void require_n_r(std::size_t n_r) {
  if (n_r < 1 || n_r > kMaxAntennas)
    throw std::invalid_argument("N_R must be in [1, " + std::to_string(kMaxAntennas) +
                                "] (got " + std::to_string(n_r) + ")");
}

void require_range(const char *field, int value, int lo, int hi) {
  if (value < lo || value > hi)
    throw std::invalid_argument(std::string(field) + " must be in [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "] (got " + std::to_string(value) + ")");
}

void require_finite(std::span<const Complex> y) {
  for (const Complex &c : y)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw std::invalid_argument("received vector has non-finite entries");
}

} // namespace

// ---------------------------------------------------------------------------
// QuantizerSpec

void QuantizerSpec::validate(std::size_t n_r) const {
  require_n_r(n_r);
  switch (kind) {
  case Method::AF:
    return;
  case Method::UPQ:
    require_range("q", q, 1, kMaxPhaseBits);
    return;
  case Method::UAPQ:
    require_range("q", q, 2, kMaxPhaseBits);
    require_range("qbar", qbar, 1, q - 1);
    return;
  case Method::HAPQ:
    require_range("qbar", qbar, 1, kMaxPhaseBits);
    require_range("m", m, 1, static_cast<int>(n_r));
    require_range("family_n", family_n, 1, kMaxFamilyExponent);
    return;
  }
  throw std::invalid_argument("kind: unknown quantizer kind");
}

std::string method_label(Method kind) {
  switch (kind) {
  case Method::AF:
    return "AF";
  case Method::UPQ:
    return "U-PQ";
  case Method::UAPQ:
    return "U-APQ";
  case Method::HAPQ:
    return "H-APQ";
  }
  return "?";
}

QuantizerSpec QuantizerSpec::parse(const std::string &text) {
  const auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::transform(kind.begin(), kind.end(), kind.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

  QuantizerSpec spec;
  std::vector<std::string> allowed;
  if (kind == "af") {
    spec.kind = Method::AF;
  } else if (kind == "upq") {
    spec.kind = Method::UPQ;
    allowed = {"q"};
  } else if (kind == "uapq") {
    spec.kind = Method::UAPQ;
    allowed = {"q", "qbar"};
  } else if (kind == "hapq") {
    spec.kind = Method::HAPQ;
    allowed = {"qbar", "m", "n"};
  } else {
    throw std::invalid_argument("kind: unknown quantizer '" + kind + "'");
  }

  std::vector<std::string> seen;
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("expected key=value in spec, got '" + item + "'");
      std::string key = item.substr(0, eq);
      if (key == "family_n")
        key = "n";
      const std::string value = item.substr(eq + 1);
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        throw std::invalid_argument(key + ": not a parameter of " + kind);
      int v = 0;
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc{} || ptr != value.data() + value.size())
        throw std::invalid_argument(key + ": not an integer: '" + value + "'");
      if (key == "q")
        spec.q = v;
      else if (key == "qbar")
        spec.qbar = v;
      else if (key == "m")
        spec.m = v;
      else
        spec.family_n = v;
      seen.push_back(key);
    }
  }
  for (const std::string &key : allowed) {
    if (key == "n")
      continue;
    if (std::find(seen.begin(), seen.end(), key) == seen.end())
      throw std::invalid_argument(key + ": missing for " + kind);
  }
  return spec;
}

std::string QuantizerSpec::to_string() const {
  switch (kind) {
  case Method::AF:
    return "af";
  case Method::UPQ:
    return "upq:q=" + std::to_string(q);
  case Method::UAPQ:
    return "uapq:q=" + std::to_string(q) + ",qbar=" + std::to_string(qbar);
  case Method::HAPQ:
    return "hapq:qbar=" + std::to_string(qbar) + ",m=" + std::to_string(m) +
           ",n=" + std::to_string(family_n);
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Scalar quantizers

double wrap_phase(double theta) {
  if (!std::isfinite(theta))
    throw std::invalid_argument("wrap_phase: non-finite angle");
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0)
    r += kTwoPi;
  return r >= kTwoPi ? 0.0 : r;
}

PhaseQuantization uniform_phase_quantize(double theta, int q) {
  require_range("q", q, 1, kMaxFreePhaseBits);
  const std::uint32_t k = sector_index(wrap_phase(theta), q);
  return {k, kTwoPi * std::ldexp(static_cast<double>(k), -q)};
}

std::vector<double> uniform_amplitude_quantize(std::span<const double> normalized_amps, int b) {
  require_range("b", b, 1, kMaxFreePhaseBits);
  std::vector<double> out;
  out.reserve(normalized_amps.size());
  for (double v : normalized_amps) {
    if (!(v > 0.0 && v <= 1.0))
      throw std::invalid_argument("uniform_amplitude_quantize: input outside (0, 1]");
    out.push_back(bin_center(amplitude_bin(v, b), b));
  }
  return out;
}

LevelSet build_level_set(int n_r, int m, int family_n) {
  require_n_r(static_cast<std::size_t>(std::max(n_r, 0)));
  require_range("m", m, 1, n_r);
  require_range("family_n", family_n, 1, kMaxFamilyExponent);

  LevelSet set;
  set.n_r = n_r;
  set.m = m;
  set.K = (n_r + m - 1) / m;

  // sum of squared levels in units of delta^2; integers, exact in double
  double weight = 0.0;
  for (int k = 1; k < set.K; ++k)
    weight += m * integer_power(k, family_n);
  weight += set.multiplicity(set.K) * integer_power(set.K, family_n);
  set.delta = 1.0 / std::sqrt(weight);

  set.levels.reserve(static_cast<std::size_t>(set.K));
  for (int k = 1; k <= set.K; ++k) {
    const double scale = family_n % 2 == 0 ? integer_power(k, family_n / 2)
                                           : std::sqrt(integer_power(k, family_n));
    set.levels.push_back(scale * set.delta);
  }
  return set;
}

OrderedAmplitudes ordered_amplitude_quantize(std::span<const double> amps, const LevelSet &levels) {
  if (amps.size() != static_cast<std::size_t>(levels.n_r))
    throw std::invalid_argument("ordered_amplitude_quantize: " + std::to_string(amps.size()) +
                                " amplitudes for a level set built for N_R=" +
                                std::to_string(levels.n_r));
  for (double a : amps)
    if (!(a >= 0.0) || !std::isfinite(a))
      throw std::invalid_argument("ordered_amplitude_quantize: amplitudes must be finite and >= 0");

  OrderedAmplitudes out;
  out.assignment.resize(amps.size());
  assign_levels(amps.data(), amps.size(), levels.m, out.assignment.data());
  out.amplitudes.reserve(amps.size());
  for (std::uint32_t k : out.assignment)
    out.amplitudes.push_back(levels.levels[k - 1]);
  return out;
}

// ---------------------------------------------------------------------------
// Vector quantizers

ComplexVector upq_relay_symbols(std::span<const Complex> y_sr, int q) {
  const RelayProcessor relay(QuantizerSpec::upq(q), static_cast<int>(y_sr.size()));
  ComplexVector out(y_sr.size());
  relay.process(y_sr, out);
  return out;
}

ComplexVector uapq_relay_symbols(std::span<const Complex> y_sr, int q, int qbar) {
  const RelayProcessor relay(QuantizerSpec::uapq(q, qbar), static_cast<int>(y_sr.size()));
  ComplexVector out(y_sr.size());
  relay.process(y_sr, out);
  return out;
}

HapqOutput hapq_relay_symbols(std::span<const Complex> y_sr, int qbar, int m, int family_n) {
  const RelayProcessor relay(QuantizerSpec::hapq(qbar, m, family_n),
                             static_cast<int>(y_sr.size()));
  HapqOutput out;
  out.state = relay.quantize(y_sr);
  out.symbols.resize(y_sr.size());
  relay.reconstruct(out.state, out.symbols);
  return out;
}

ComplexVector af_relay_symbols(std::span<const Complex> y_sr) {
  const RelayProcessor relay(QuantizerSpec::af(), static_cast<int>(y_sr.size()));
  ComplexVector out(y_sr.size());
  relay.process(y_sr, out);
  return out;
}

WideCount oaq_codeword_count(int n_r, int m) {
  require_n_r(static_cast<std::size_t>(std::max(n_r, 0)));
  require_range("m", m, 1, n_r);
  const int levels = (n_r + m - 1) / m;
  WideCount count = 1;
  int remaining = n_r;
  for (int k = 1; k < levels; ++k) {
    count = checked_mul(count, binomial(static_cast<unsigned>(remaining), static_cast<unsigned>(m)));
    remaining -= m;
  }
  return count;
}

int quantizer_bits(const QuantizerSpec &spec, int n_r) {
  spec.validate(static_cast<std::size_t>(std::max(n_r, 0)));
  switch (spec.kind) {
  case Method::UPQ:
  case Method::UAPQ:
    return spec.q * n_r;
  case Method::HAPQ:
    return spec.qbar * n_r + ceil_log2(oaq_codeword_count(n_r, spec.m));
  case Method::AF:
    break;
  }
  throw std::invalid_argument("AF relaying has no finite bit encoding");
}

RelayState quantize_state(std::span<const Complex> y_sr, const QuantizerSpec &spec) {
  return RelayProcessor(spec, static_cast<int>(y_sr.size())).quantize(y_sr);
}

ComplexVector reconstruct_symbols(const RelayState &state) {
  const RelayProcessor relay(state.spec, static_cast<int>(state.n_r()));
  ComplexVector out(state.n_r());
  relay.reconstruct(state, out);
  return out;
}

// ---------------------------------------------------------------------------
// RelayProcessor

RelayProcessor::RelayProcessor(const QuantizerSpec &spec, int n_r) : spec_(spec), n_r_(n_r) {
  spec_.validate(static_cast<std::size_t>(std::max(n_r, 0)));
  if (quantizes()) {
    const int bits = spec_.phase_bits();
    const std::size_t count = std::size_t{1} << bits;
    phasors_.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
      phasors_.push_back(std::polar(1.0, kTwoPi * std::ldexp(static_cast<double>(k), -bits)));
  }
  if (spec_.kind == Method::HAPQ)
    levels_ = build_level_set(n_r, spec_.m, spec_.family_n);
}

std::uint32_t RelayProcessor::phase_index(Complex y) const noexcept {
  return sector_index(wrap_arg(y), spec_.phase_bits());
}

void RelayProcessor::quantize_into(std::span<const Complex> y, std::uint32_t *phase,
                                   std::uint32_t *amp) const {
  const auto n = static_cast<std::size_t>(n_r_);
  for (std::size_t i = 0; i < n; ++i)
    phase[i] = phase_index(y[i]);

  std::array<double, kMaxAntennas> amps{};
  switch (spec_.kind) {
  case Method::UPQ:
  case Method::AF:
    return;
  case Method::UAPQ: {
    const double norm = std::sqrt(squared_norm(y));
    if (norm == 0.0)
      throw std::domain_error("U-APQ: zero received vector");
    const int b = spec_.q - spec_.qbar;
    for (std::size_t i = 0; i < n; ++i)
      amp[i] = amplitude_bin(magnitude(y[i]) / norm, b);
    return;
  }
  case Method::HAPQ:
    for (std::size_t i = 0; i < n; ++i)
      amps[i] = magnitude(y[i]);
    assign_levels(amps.data(), n, spec_.m, amp);
    return;
  }
}

void RelayProcessor::reconstruct_from(const std::uint32_t *phase, const std::uint32_t *amp,
                                      std::span<Complex> out) const {
  const auto n = static_cast<std::size_t>(n_r_);
  switch (spec_.kind) {
  case Method::UPQ: {
    const double a = 1.0 / std::sqrt(static_cast<double>(n_r_));
    for (std::size_t i = 0; i < n; ++i)
      out[i] = a * phasors_[phase[i]];
    return;
  }
  case Method::UAPQ: {
    const int b = spec_.q - spec_.qbar;
    double power = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = bin_center(amp[i], b);
      power += c * c;
    }
    const double scale = std::sqrt(power);
    for (std::size_t i = 0; i < n; ++i)
      out[i] = (bin_center(amp[i], b) / scale) * phasors_[phase[i]];
    return;
  }
  case Method::HAPQ:
    for (std::size_t i = 0; i < n; ++i)
      out[i] = levels_.levels[amp[i] - 1] * phasors_[phase[i]];
    return;
  case Method::AF:
    break;
  }
  throw std::invalid_argument("AF relaying has no quantized state");
}

void RelayProcessor::process(std::span<const Complex> y, std::span<Complex> out) const {
  if (y.size() != static_cast<std::size_t>(n_r_) || out.size() != y.size())
    throw std::invalid_argument("relay input length does not match N_R");
  if (spec_.kind == Method::AF) {
    const double norm = std::sqrt(squared_norm(y));
    if (norm == 0.0)
      throw std::domain_error("AF: zero received vector");
    for (std::size_t i = 0; i < y.size(); ++i)
      out[i] = y[i] / norm;
    return;
  }
  std::array<std::uint32_t, kMaxAntennas> phase{};
  std::array<std::uint32_t, kMaxAntennas> amp{};
  quantize_into(y, phase.data(), amp.data());
  reconstruct_from(phase.data(), amp.data(), out);
}

RelayState RelayProcessor::quantize(std::span<const Complex> y) const {
  if (spec_.kind == Method::AF)
    throw std::invalid_argument("AF relaying has no quantized state");
  if (y.size() != static_cast<std::size_t>(n_r_))
    throw std::invalid_argument("relay input length does not match N_R");
  require_finite(y);
  RelayState state;
  state.spec = spec_;
  state.phase_indices.resize(y.size());
  std::array<std::uint32_t, kMaxAntennas> amp{};
  quantize_into(y, state.phase_indices.data(), amp.data());
  if (spec_.kind != Method::UPQ)
    state.amplitude_indices.assign(amp.begin(), amp.begin() + n_r_);
  return state;
}

void RelayProcessor::reconstruct(const RelayState &state, std::span<Complex> out) const {
  if (state.spec != spec_ || state.n_r() != static_cast<std::size_t>(n_r_) ||
      out.size() != state.n_r())
    throw std::invalid_argument("relay state does not match this processor");
  const std::uint32_t phase_limit = std::uint32_t{1} << spec_.phase_bits();
  for (std::uint32_t k : state.phase_indices)
    if (k >= phase_limit)
      throw std::invalid_argument("phase index out of range");
  if (spec_.kind == Method::UPQ) {
    reconstruct_from(state.phase_indices.data(), nullptr, out);
    return;
  }
  if (state.amplitude_indices.size() != state.n_r())
    throw std::invalid_argument("amplitude indices missing");
  const std::uint32_t lo = spec_.kind == Method::HAPQ ? 1 : 0;
  const std::uint32_t hi = spec_.kind == Method::HAPQ
                               ? static_cast<std::uint32_t>(levels_.K)
                               : (std::uint32_t{1} << (spec_.q - spec_.qbar)) - 1;
  for (std::uint32_t a : state.amplitude_indices)
    if (a < lo || a > hi)
      throw std::invalid_argument("amplitude index out of range");
  reconstruct_from(state.phase_indices.data(), state.amplitude_indices.data(), out);
}

} // namespace qfrelay
