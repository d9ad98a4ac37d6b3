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

// Acceptance runner. One line per criterion:
//   AC<k> PASS|FAIL <title> [<seconds> s] <detail>
// Optional arguments select criteria, e.g. "acceptance AC1 AC7".
// AC7 writes its sweep to ac7_ber.csv in the working directory.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qfrelay/bit_codec.hpp"
#include "qfrelay/sweep.hpp"

using namespace qfrelay;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void fail(const std::string &why) {
    if (pass)
      detail = why;
    pass = false;
  }
};

std::string fmt(const char *f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const std::vector<int> kRelaySizes{2, 4, 8, 16};

std::vector<QuantizerSpec> power_specs(int n_r) {
  std::vector<QuantizerSpec> specs{QuantizerSpec::upq(8), QuantizerSpec::uapq(8, 4), QuantizerSpec::af()};
  std::set<int> ms{1, 2, n_r / 2, n_r};
  for (int m : ms)
    if (m >= 1)
      specs.push_back(QuantizerSpec::hapq(4, m));
  return specs;
}

RelayState random_state(std::mt19937_64 &gen, const QuantizerSpec &spec, int n_r) {
  RelayState s;
  s.spec = spec;
  std::uniform_int_distribution<std::uint32_t> phase(0, (1u << spec.phase_bits()) - 1);
  for (int i = 0; i < n_r; ++i)
    s.phase_indices.push_back(phase(gen));
  if (spec.kind == Method::UAPQ) {
    std::uniform_int_distribution<std::uint32_t> bin(0, (1u << (spec.q - spec.qbar)) - 1);
    for (int i = 0; i < n_r; ++i)
      s.amplitude_indices.push_back(bin(gen));
  } else if (spec.kind == Method::HAPQ) {
    const int levels = (n_r + spec.m - 1) / spec.m;
    for (int i = 0; i < n_r; ++i)
      s.amplitude_indices.push_back(static_cast<std::uint32_t>(std::min(i / spec.m + 1, levels)));
    std::shuffle(s.amplitude_indices.begin(), s.amplitude_indices.end(), gen);
  }
  return s;
}

// a <= b within three standard errors of the difference.
bool within(const BerRecord &a, const BerRecord &b) {
  return a.ber() <= b.ber() + 3.0 * std::hypot(a.std_err(), b.std_err());
}

bool measurable(const BerRecord &a, const BerRecord &b) { return a.bit_errors > 0 && b.bit_errors > 0; }

std::string point_str(const BerRecord &a, const BerRecord &b) {
  return a.spec.to_string() + " " + fmt("%.6g", a.ber()) + " vs " + b.spec.to_string() + " " +
         fmt("%.6g", b.ber()) + " at " + fmt("%g", a.snr_db) + " dB";
}

// ---------------------------------------------------------------------------

Verdict ac1() {
  Verdict v;
  const int expect_h[] = {19, 44, 101};
  const int nrs[] = {4, 8, 16};
  std::ostringstream d;
  for (int i = 0; i < 3; ++i) {
    const int h = quantizer_bits(QuantizerSpec::hapq(4, 2), nrs[i]);
    const int u = quantizer_bits(QuantizerSpec::upq(8), nrs[i]);
    const int a = quantizer_bits(QuantizerSpec::uapq(8, 4), nrs[i]);
    d << "N_R=" << nrs[i] << ": " << h << " vs " << u << "/" << a << " (saves " << u - h << ") ";
    if (h != expect_h[i] || u != 8 * nrs[i] || a != 8 * nrs[i])
      v.fail("N_R=" + std::to_string(nrs[i]) + " gives H-APQ " + std::to_string(h) + ", U-PQ " +
             std::to_string(u) + ", U-APQ " + std::to_string(a));
  }
  if (v.pass)
    v.detail = d.str();
  return v;
}

Verdict ac2() {
  Verdict v;
  int worst = -1000;
  for (int n_r = 2; n_r <= 20; ++n_r) {
    const int b = quantizer_bits(QuantizerSpec::hapq(4, 1), n_r);
    worst = std::max(worst, b - 8 * n_r);
    if (b >= 8 * n_r)
      v.fail("N_R=" + std::to_string(n_r) + ": N_b=" + std::to_string(b) + " >= " + std::to_string(8 * n_r));
  }
  if (v.pass)
    v.detail = "max N_b - 8 N_R over 2..20 = " + std::to_string(worst);
  return v;
}

Verdict ac3() {
  Verdict v;
  std::mt19937_64 gen(3);
  double worst = 0.0;
  int checked = 0;
  for (int n_r : kRelaySizes) {
    for (const auto &spec : power_specs(n_r)) {
      for (int t = 0; t < 10000; ++t) {
        const auto y = oracle::random_complex_vector(gen, static_cast<std::size_t>(n_r));
        const double err = std::abs(squared_norm(relay_process(y, spec)) - 1.0);
        worst = std::max(worst, err);
        if (!(err < 1e-12))
          v.fail(spec.to_string() + " N_R=" + std::to_string(n_r) + " power error " + fmt("%.3g", err));
      }
      ++checked;
    }
  }
  if (v.pass)
    v.detail = std::to_string(checked) + " (spec, N_R) pairs, max |P-1| = " + fmt("%.3g", worst);
  return v;
}

Verdict ac4() {
  Verdict v;
  std::mt19937_64 gen(4);
  int compared = 0;
  for (int n_r : kRelaySizes) {
    const RelayProcessor h(QuantizerSpec::hapq(4, n_r), n_r), u(QuantizerSpec::upq(4), n_r);
    ComplexVector xh(static_cast<std::size_t>(n_r)), xu(static_cast<std::size_t>(n_r));
    for (int t = 0; t < 10000; ++t) {
      const auto y = oracle::random_complex_vector(gen, static_cast<std::size_t>(n_r));
      h.process(y, xh);
      u.process(y, xu);
      ++compared;
      for (int i = 0; i < n_r; ++i)
        if (std::memcmp(&xh[i], &xu[i], sizeof(Complex)) != 0) {
          v.fail("outputs differ at N_R=" + std::to_string(n_r) + " trial " + std::to_string(t));
          break;
        }
    }
  }
  if (v.pass)
    v.detail = std::to_string(compared) + " inputs bitwise equal";
  return v;
}

Verdict ac5() {
  Verdict v;
  std::uint64_t total = 0;
  for (int n_r = 1; n_r <= 8; ++n_r) {
    for (int m = 1; m <= n_r; ++m) {
      const auto all = oracle::enumerate_assignments(n_r, m);
      const auto tag = "N_R=" + std::to_string(n_r) + " m=" + std::to_string(m);
      if (oaq_codeword_count(n_r, m) != all.size()) {
        v.fail(tag + ": count " + to_string(oaq_codeword_count(n_r, m)) + " vs " +
               std::to_string(all.size()) + " enumerated");
        continue;
      }
      for (std::size_t r = 0; r < all.size(); ++r) {
        if (rank_assignment(all[r], n_r, m) != r || unrank_assignment(r, n_r, m) != all[r]) {
          v.fail(tag + ": rank/unrank mismatch at " + std::to_string(r));
          break;
        }
      }
      total += all.size();
    }
  }
  if (v.pass)
    v.detail = std::to_string(total) + " assignments ranked and unranked";
  return v;
}

Verdict ac6() {
  Verdict v;
  std::mt19937_64 gen(6);
  int specs = 0;
  for (int n_r : kRelaySizes) {
    for (const auto &spec : power_specs(n_r)) {
      if (spec.kind == Method::AF)
        continue;
      ++specs;
      const auto n_b = static_cast<std::size_t>(quantizer_bits(spec, n_r));
      for (int t = 0; t < 10000; ++t) {
        const RelayState s = random_state(gen, spec, n_r);
        const EncodedRelayState enc = encode_relay_state(s);
        if (enc.payload.size() != n_b) {
          v.fail(spec.to_string() + ": payload " + std::to_string(enc.payload.size()) + " bits, N_b " +
                 std::to_string(n_b));
          break;
        }
        if (!(decode_relay_state(enc) == s)) {
          v.fail(spec.to_string() + " N_R=" + std::to_string(n_r) + ": round trip mismatch");
          break;
        }
      }
    }
  }
  if (v.pass)
    v.detail = std::to_string(specs) + " (spec, N_R) pairs x 10^4 states";
  return v;
}

Verdict ac7() {
  Verdict v;
  SweepConfig c;
  const QuantizerSpec af = QuantizerSpec::af(), uapq = QuantizerSpec::uapq(8, 4),
                      h2 = QuantizerSpec::hapq(4, 2), h4 = QuantizerSpec::hapq(4, 4);
  c.specs = {af, uapq, h2, h4};
  for (int m : {1, 2})
    for (int n : {1, 2, 3, 4})
      if (!(m == 2 && n == 2))
        c.specs.push_back(QuantizerSpec::hapq(4, m, n));
  c.snr_db_grid = default_snr_grid();
  c.trials_per_point = 100000;
  c.seed = 2026;
  c.workers = default_workers();
  const auto records = run_ber_sweep(c);
  {
    std::ofstream out("ac7_ber.csv");
    write_csv(out, records);
  }
  const std::size_t points = c.snr_db_grid.size();
  auto rec = [&](const QuantizerSpec &s, std::size_t i) -> const BerRecord & {
    const auto it = std::find(c.specs.begin(), c.specs.end(), s);
    return records[static_cast<std::size_t>(it - c.specs.begin()) * points + i];
  };

  int mono = 0, order = 0, family = 0;
  for (const auto &s : c.specs)
    for (std::size_t i = 0; i + 1 < points; ++i, ++mono)
      if (!within(rec(s, i + 1), rec(s, i)))
        v.fail("(a) BER rises: " + point_str(rec(s, i + 1), rec(s, i)));
  const QuantizerSpec chain[] = {af, uapq, h2, h4};
  for (std::size_t i = 0; i < points; ++i)
    for (int k = 0; k < 3; ++k) {
      const auto &lo = rec(chain[k], i), &hi = rec(chain[k + 1], i);
      if (!measurable(lo, hi))
        continue;
      ++order;
      if (!within(lo, hi))
        v.fail("(b) order: " + point_str(lo, hi));
    }
  for (int m : {1, 2})
    for (std::size_t i = 0; i < points; ++i) {
      const auto &n2 = rec(QuantizerSpec::hapq(4, m, 2), i), &n4 = rec(QuantizerSpec::hapq(4, m, 4), i);
      if (!measurable(n2, n4))
        continue;
      ++family;
      if (!within(n2, n4))
        v.fail("(c) family: " + point_str(n2, n4));
    }
  if (v.pass)
    v.detail = std::to_string(mono) + " monotonicity, " + std::to_string(order) + " ordering, " +
               std::to_string(family) + " family comparisons hold (ac7_ber.csv)";
  return v;
}

Verdict ac8() {
  Verdict v;
  SweepConfig c;
  c.specs = {QuantizerSpec::af(), QuantizerSpec::upq(8), QuantizerSpec::upq(4), QuantizerSpec::uapq(8, 4)};
  for (int m : {1, 2, 4})
    for (int n = 1; n <= kMaxFamilyExponent; ++n)
      c.specs.push_back(QuantizerSpec::hapq(4, m, n));
  c.snr_db_grid = {300.0};
  c.trials_per_point = 1000;
  c.workers = default_workers();
  for (const auto &r : run_ber_sweep(c))
    if (r.bit_errors != 0)
      v.fail(r.spec.to_string() + ": " + std::to_string(r.bit_errors) + " bit errors");
  if (v.pass)
    v.detail = std::to_string(c.specs.size()) + " specs, 10^3 trials each, zero errors";
  return v;
}

Verdict ac9() {
  Verdict v;
  SweepConfig c;
  c.specs = {QuantizerSpec::hapq(4, 2), QuantizerSpec::af()};
  c.snr_db_grid = {0.0, 10.0, 20.0};
  c.trials_per_point = 20000;
  c.seed = 9;
  c.workers = default_workers();
  const auto mism = run_ber_sweep(c);
  c.detector = Detector::Marginalized;
  const auto marg = run_ber_sweep(c);
  std::ostringstream d;
  for (std::size_t i = 0; i < mism.size(); ++i) {
    d << marg[i].spec.to_string() << "@" << marg[i].snr_db << ": " << fmt("%.4g", marg[i].ber()) << "<="
      << fmt("%.4g", mism[i].ber()) << " ";
    if (!within(marg[i], mism[i]))
      v.fail(point_str(marg[i], mism[i]) + " (marginalized vs mismatched)");
  }
  if (v.pass)
    v.detail = d.str();
  return v;
}

Verdict ac10() {
  Verdict v;
  SweepConfig c;
  c.specs = {QuantizerSpec::af(), QuantizerSpec::uapq(8, 4), QuantizerSpec::hapq(4, 2),
             QuantizerSpec::hapq(4, 1, 3)};
  c.snr_db_grid = {0.0, 6.0, 12.0};
  c.trials_per_point = 2000;
  c.seed = 10;
  c.workers = 1;
  const std::string one = to_csv(run_ber_sweep(c));
  c.workers = 8;
  const std::string eight = to_csv(run_ber_sweep(c));
  if (one != eight)
    v.fail("CSV differs between workers=1 and workers=8");
  else
    v.detail = std::to_string(one.size()) + " CSV bytes identical";
  return v;
}

struct Criterion {
  const char *id;
  const char *title;
  double budget_s;
  std::function<Verdict()> run;
};

} // namespace

int main(int argc, char **argv) {
  const std::vector<Criterion> all{
      {"AC1", "bit accounting", 1, ac1},
      {"AC2", "H-APQ m=1 memory below 8 N_R", 1, ac2},
      {"AC3", "unit transmit power", 10, ac3},
      {"AC4", "H-APQ m=N_R equals U-PQ q=4", 10, ac4},
      {"AC5", "combinatorial oracle", 30, ac5},
      {"AC6", "codec round trip", 10, ac6},
      {"AC7", "BER ordering", 1800, ac7},
      {"AC8", "noiseless correctness", 60, ac8},
      {"AC9", "detector sanity", 600, ac9},
      {"AC10", "determinism", 120, ac10},
  };
  std::set<std::string> wanted(argv + 1, argv + argc);
  int failures = 0;
  for (const auto &c : all) {
    if (!wanted.empty() && !wanted.contains(c.id))
      continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception &e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v.pass && secs > c.budget_s)
      v.fail("took " + fmt("%.1f", secs) + " s, budget " + fmt("%g", c.budget_s) + " s");
    failures += v.pass ? 0 : 1;
    std::printf("%s %s %s [%.2f s] %s\n", c.id, v.pass ? "PASS" : "FAIL", c.title, secs, v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
