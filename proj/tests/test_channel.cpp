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

#include <doctest.h>

#include <cmath>

#include "qfrelay/channel.hpp"

using namespace qfrelay;
using doctest::Approx;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using P = Philox4x32;
  CHECK(P::generate({0, 0, 0, 0}, {0, 0}) ==
        P::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(P::generate({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
        P::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(P::generate({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                    {0xa4093822u, 0x299f31d0u}) ==
        P::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are reproducible and distinct") {
  RngStream a({42, 3, 17, 0}), b({42, 3, 17, 0});
  for (int i = 0; i < 100; ++i)
    CHECK(a.next_u32() == b.next_u32());
  RngStream c({42, 3, 18, 0}), d({42, 4, 17, 0}), e({42, 3, 17, 1}), f({43, 3, 17, 0});
  RngStream g({42, 3, 17, 0});
  const auto first = g.next_u64();
  CHECK(c.next_u64() != first);
  CHECK(d.next_u64() != first);
  CHECK(e.next_u64() != first);
  CHECK(f.next_u64() != first);
}

TEST_CASE("uniform draws stay in range") {
  RngStream r({1, 0, 0, 0});
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    const double v = r.uniform_open0();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    REQUIRE(v > 0.0);
    REQUIRE(v <= 1.0);
  }
}

TEST_CASE("snr_db_to_sigma2") {
  CHECK(snr_db_to_sigma2(0.0) == 1.0);
  CHECK(snr_db_to_sigma2(10.0) == Approx(0.1).epsilon(1e-15));
  CHECK(snr_db_to_sigma2(20.0) == Approx(0.01).epsilon(1e-15));
  CHECK(snr_db_to_sigma2(300.0) == Approx(1e-30).epsilon(1e-12));
}

TEST_CASE("sample_channel entries are CN(0, 1)") {
  RngStream rng({7, 0, 0, 0});
  const ChannelMatrix h = sample_channel(1000, 1000, rng);
  double re = 0, im = 0, power = 0, re2 = 0, im2 = 0, cross = 0;
  for (const Complex &c : h.data()) {
    re += c.real();
    im += c.imag();
    re2 += c.real() * c.real();
    im2 += c.imag() * c.imag();
    cross += c.real() * c.imag();
    power += std::norm(c);
  }
  const double n = 1e6;
  CHECK(std::abs(re / n) < 0.01);
  CHECK(std::abs(im / n) < 0.01);
  CHECK(std::abs(power / n - 1.0) < 0.01);
  // Circular symmetry: equal component variances, uncorrelated.
  CHECK(std::abs(re2 / n - 0.5) < 0.01);
  CHECK(std::abs(im2 / n - 0.5) < 0.01);
  CHECK(std::abs(cross / n) < 0.01);

  RngStream r1({9, 1, 2, 0}), r2({9, 1, 2, 0});
  const auto a = sample_channel(4, 3, r1);
  const auto b = sample_channel(4, 3, r2);
  CHECK(a.rows() == 4);
  CHECK(a.cols() == 3);
  for (std::size_t i = 0; i < 12; ++i)
    CHECK(a.data()[i] == b.data()[i]);
  CHECK_THROWS_AS(sample_channel(0, 3, r1), std::invalid_argument);
}

TEST_CASE("apply_link") {
  RngStream rng({5, 0, 0, 0});
  const ChannelMatrix h = sample_channel(3, 2, rng);
  const ComplexVector x{{0.6, 0.0}, {0.0, 0.8}};
  const auto y = apply_link(h, x, NoiseModel(1e-30), rng);
  const auto hx = h * x;
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(std::abs(y[i] - hx[i]) < 1e-12);

  // Noise variance per component.
  const ChannelMatrix eye = ChannelMatrix::identity(2);
  const ComplexVector e1{{1.0, 0.0}, {0.0, 0.0}};
  const double sigma2 = 0.5;
  double p0 = 0, p1 = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto out = apply_link(eye, e1, NoiseModel(sigma2), rng);
    p0 += std::norm(out[0] - 1.0);
    p1 += std::norm(out[1]);
  }
  CHECK(std::abs(p0 / n - sigma2) < 0.01);
  CHECK(std::abs(p1 / n - sigma2) < 0.01);

  RngStream s1({1, 2, 3, 0}), s2({1, 2, 3, 0});
  const auto ya = apply_link(h, x, NoiseModel(0.1), s1);
  const auto yb = apply_link(h, x, NoiseModel(0.1), s2);
  CHECK(ya == yb);

  CHECK_THROWS_AS(apply_link(h, ComplexVector{{1.0, 0.0}}, NoiseModel(0.1), rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_link(h, ComplexVector{{1.0, 0.0}, {1.0, 0.0}}, NoiseModel(0.1), rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(NoiseModel(0.0), std::invalid_argument);
  CHECK_THROWS_AS(NoiseModel(-1.0), std::invalid_argument);
}

TEST_CASE("sample_links dimensions") {
  RngStream rng({3, 0, 0, 0});
  const auto links = sample_links(2, 3, 5, rng);
  CHECK(links.h_sr.rows() == 3);
  CHECK(links.h_sr.cols() == 2);
  CHECK(links.h_sd.rows() == 5);
  CHECK(links.h_sd.cols() == 2);
  CHECK(links.h_rd.rows() == 5);
  CHECK(links.h_rd.cols() == 3);
}
