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

#include "qfrelay/relay_link.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qfrelay/bit_codec.hpp"

namespace qfrelay {
namespace {

constexpr std::size_t kMaxCodebookSize = std::size_t{1} << 24;

using Scratch = std::array<Complex, kMaxAntennas>;

std::span<Complex> first(Scratch &s, int n) { return {s.data(), static_cast<std::size_t>(n)}; }

ComplexVector stored_relay_output(const RelayProcessor &relay, std::span<const Complex> y_sr) {
  ComplexVector out(y_sr.size());
  if (!relay.quantizes()) {
    relay.process(y_sr, out);
    return out;
  }
  const RelayState reloaded = decode_relay_state(encode_relay_state(relay.quantize(y_sr)));
  relay.reconstruct(reloaded, out);
  return out;
}

void check_dims(const LinkConfig &c, std::span<const Complex> y_sd, std::span<const Complex> y_rd,
                const LinkRealization &links) {
  const auto n_s = static_cast<std::size_t>(c.n_s);
  const auto n_r = static_cast<std::size_t>(c.n_r);
  const auto n_d = static_cast<std::size_t>(c.n_d);
  if (y_sd.size() != n_d || y_rd.size() != n_d || links.h_sd.rows() != n_d ||
      links.h_sd.cols() != n_s || links.h_sr.rows() != n_r || links.h_sr.cols() != n_s ||
      links.h_rd.rows() != n_d || links.h_rd.cols() != n_r)
    throw std::invalid_argument("detector: observation or channel dimensions inconsistent");
}

} // namespace

std::uint32_t gray_encode(std::uint32_t v) noexcept { return v ^ (v >> 1); }

std::uint32_t gray_decode(std::uint32_t g) noexcept {
  std::uint32_t v = g;
  for (std::uint32_t shift = g >> 1; shift != 0; shift >>= 1)
    v ^= shift;
  return v;
}

Codebook::Codebook(int alphabet, int n_s) : alphabet_(alphabet), n_s_(n_s) {
  if (alphabet != 2 && alphabet != 4 && alphabet != 8 && alphabet != 16)
    throw std::invalid_argument("M must be one of 2, 4, 8, 16 (got " + std::to_string(alphabet) + ")");
  if (n_s < 1 || n_s > static_cast<int>(kMaxAntennas))
    throw std::invalid_argument("N_S out of range");
  bits_per_symbol_ = std::countr_zero(static_cast<unsigned>(alphabet));
  if (bits_per_symbol_ * n_s > 24)
    throw std::invalid_argument("codebook M^N_S exceeds 2^24 codewords");
  size_ = std::size_t{1} << (bits_per_symbol_ * n_s);
  if (size_ > kMaxCodebookSize)
    throw std::invalid_argument("codebook too large");

  std::vector<Complex> points(static_cast<std::size_t>(alphabet));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_s));
  for (std::uint32_t label = 0; label < static_cast<std::uint32_t>(alphabet); ++label) {
    const double position = gray_decode(label);
    points[label] = std::polar(scale, 2.0 * std::numbers::pi * position / alphabet);
  }
  symbols_.resize(size_ * static_cast<std::size_t>(n_s));
  for (std::size_t s = 0; s < size_; ++s)
    for (int i = 0; i < n_s; ++i)
      symbols_[s * static_cast<std::size_t>(n_s) + static_cast<std::size_t>(i)] = points[digit(s, i)];
}

int Codebook::bit_errors(std::size_t sent, std::size_t detected) const noexcept {
  return std::popcount(static_cast<std::uint64_t>(sent ^ detected));
}

Codebook build_codebook(int alphabet, int n_s) { return Codebook(alphabet, n_s); }

std::string detector_name(Detector d) {
  return d == Detector::Mismatched ? "mismatched" : "marginalized";
}

ComplexVector relay_process(std::span<const Complex> y_sr, const QuantizerSpec &spec) {
  return stored_relay_output(RelayProcessor(spec, static_cast<int>(y_sr.size())), y_sr);
}

RelayLink::RelayLink(const LinkConfig &config)
    : config_(config), codebook_(config.alphabet, config.n_s), relay_(config.spec, config.n_r) {
  if (config.n_d < 1 || config.n_d > static_cast<int>(kMaxAntennas))
    throw std::invalid_argument("N_D out of range");
  if (!(config.sigma2 > 0.0))
    throw std::invalid_argument("sigma2 must be positive");
  if (config.marginal_samples < 1)
    throw std::invalid_argument("marginal_samples must be >= 1");
}

ComplexVector RelayLink::relay_process(std::span<const Complex> y_sr) const {
  return stored_relay_output(relay_, y_sr);
}

std::vector<double> RelayLink::mismatched_metrics(std::span<const Complex> y_sd,
                                                  std::span<const Complex> y_rd,
                                                  const LinkRealization &links) const {
  check_dims(config_, y_sd, y_rd, links);
  Scratch u{}, v{}, xr{}, w{};
  std::vector<double> metrics(codebook_.size());
  for (std::size_t s = 0; s < codebook_.size(); ++s) {
    const auto x = codebook_.codeword(s);
    links.h_sd.multiply(x, first(u, config_.n_d));
    links.h_sr.multiply(x, first(v, config_.n_r));
    relay_.process(first(v, config_.n_r), first(xr, config_.n_r));
    links.h_rd.multiply(first(xr, config_.n_r), first(w, config_.n_d));
    metrics[s] = squared_distance(y_sd, first(u, config_.n_d)) +
                 squared_distance(y_rd, first(w, config_.n_d));
  }
  return metrics;
}

std::size_t RelayLink::detect_mismatched(std::span<const Complex> y_sd,
                                         std::span<const Complex> y_rd,
                                         const LinkRealization &links) const {
  check_dims(config_, y_sd, y_rd, links);
  Scratch u{}, v{}, xr{}, w{};
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_s = 0;
  for (std::size_t s = 0; s < codebook_.size(); ++s) {
    const auto x = codebook_.codeword(s);
    links.h_sd.multiply(x, first(u, config_.n_d));
    const double direct = squared_distance(y_sd, first(u, config_.n_d));
    // The relay term is non-negative, so this candidate cannot win.
    if (!(direct < best))
      continue;
    links.h_sr.multiply(x, first(v, config_.n_r));
    relay_.process(first(v, config_.n_r), first(xr, config_.n_r));
    links.h_rd.multiply(first(xr, config_.n_r), first(w, config_.n_d));
    const double metric = direct + squared_distance(y_rd, first(w, config_.n_d));
    if (metric < best) {
      best = metric;
      best_s = s;
    }
  }
  return best_s;
}

std::size_t RelayLink::detect_marginalized(std::span<const Complex> y_sd,
                                           std::span<const Complex> y_rd,
                                           const LinkRealization &links,
                                           std::span<const ComplexVector> relay_noise) const {
  check_dims(config_, y_sd, y_rd, links);
  if (relay_noise.empty())
    throw std::invalid_argument("detect_marginalized: no relay noise samples");
  for (const ComplexVector &z : relay_noise)
    if (z.size() != static_cast<std::size_t>(config_.n_r))
      throw std::invalid_argument("detect_marginalized: noise sample length differs from N_R");

  const double inv_sigma2 = 1.0 / config_.sigma2;
  const double log_samples = std::log(static_cast<double>(relay_noise.size()));
  std::vector<double> relay_metric(relay_noise.size());
  Scratch u{}, v{}, noisy{}, xr{}, w{};
  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_s = 0;

  for (std::size_t s = 0; s < codebook_.size(); ++s) {
    const auto x = codebook_.codeword(s);
    links.h_sd.multiply(x, first(u, config_.n_d));
    const double direct = -squared_distance(y_sd, first(u, config_.n_d)) * inv_sigma2;
    // log-mean-exp of non-positive terms is at most log(L).
    if (!(direct + log_samples > best))
      continue;
    links.h_sr.multiply(x, first(v, config_.n_r));

    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < relay_noise.size(); ++l) {
      for (int i = 0; i < config_.n_r; ++i)
        noisy[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)] + relay_noise[l][static_cast<std::size_t>(i)];
      relay_.process(first(noisy, config_.n_r), first(xr, config_.n_r));
      links.h_rd.multiply(first(xr, config_.n_r), first(w, config_.n_d));
      relay_metric[l] = -squared_distance(y_rd, first(w, config_.n_d)) * inv_sigma2;
      peak = std::max(peak, relay_metric[l]);
    }
    double sum = 0.0;
    for (double r : relay_metric)
      sum += std::exp(r - peak);
    const double score = direct + (peak + std::log(sum));
    if (score > best) {
      best = score;
      best_s = s;
    }
  }
  return best_s;
}

std::size_t RelayLink::detect_marginalized(std::span<const Complex> y_sd,
                                           std::span<const Complex> y_rd,
                                           const LinkRealization &links, RngStream &rng) const {
  std::vector<ComplexVector> samples(static_cast<std::size_t>(config_.marginal_samples),
                                     ComplexVector(static_cast<std::size_t>(config_.n_r)));
  for (ComplexVector &z : samples)
    for (Complex &c : z)
      c = rng.complex_normal(config_.sigma2);
  return detect_marginalized(y_sd, y_rd, links, samples);
}

TrialOutcome RelayLink::run_trial(std::uint64_t seed, std::uint32_t point, std::uint32_t trial) const {
  RngStream rng({seed, point, trial, 0});
  TrialOutcome out;
  out.total_bits = codebook_.bits_per_message();
  out.sent = static_cast<std::size_t>(rng.next_u64() & (codebook_.size() - 1));

  const LinkRealization links = sample_links(static_cast<std::size_t>(config_.n_s),
                                             static_cast<std::size_t>(config_.n_r),
                                             static_cast<std::size_t>(config_.n_d), rng);
  const auto x = codebook_.codeword(out.sent);
  ComplexVector y_sr(static_cast<std::size_t>(config_.n_r));
  ComplexVector y_sd(static_cast<std::size_t>(config_.n_d));
  ComplexVector y_rd(static_cast<std::size_t>(config_.n_d));
  apply_link_into(links.h_sr, x, config_.sigma2, rng, y_sr);
  apply_link_into(links.h_sd, x, config_.sigma2, rng, y_sd);
  const ComplexVector x_r = relay_process(y_sr);
  apply_link_into(links.h_rd, x_r, config_.sigma2, rng, y_rd);

  if (config_.detector == Detector::Mismatched) {
    out.detected = detect_mismatched(y_sd, y_rd, links);
  } else {
    RngStream marginal({seed, point, trial, 1});
    out.detected = detect_marginalized(y_sd, y_rd, links, marginal);
  }
  out.bit_errors = codebook_.bit_errors(out.sent, out.detected);
  return out;
}

} // namespace qfrelay
