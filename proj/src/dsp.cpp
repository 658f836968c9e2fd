// Copyright 2026 The speechfactor Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "speechfactor/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "speechfactor/error.hpp"

namespace speechfactor::dsp {

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) {
    p <<= 1;
  }
  return p;
}

void fft(std::span<std::complex<double>> data, bool inverse) {
  const std::size_t n = data.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw Error(Errc::InvalidArgument, "fft size must be a power of two");
  }
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) {
      j ^= bit;
    }
    j ^= bit;
    if (i < j) {
      std::swap(data[i], data[j]);
    }
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    const std::complex<double> step(std::cos(angle), std::sin(angle));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const auto u = data[i + k];
        const auto v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
        w *= step;
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& x : data) {
      x *= scale;
    }
  }
}

std::vector<double> colored_noise(std::size_t n, double psd_exponent, Rng& rng) {
  std::vector<double> out(n);
  if (n == 0) {
    return out;
  }
  if (psd_exponent == 0.0) {
    for (auto& x : out) {
      x = rng.gaussian();
    }
    return out;
  }
  const std::size_t m = next_power_of_two(std::max<std::size_t>(n, 2));
  std::vector<std::complex<double>> spectrum(m);
  for (auto& x : spectrum) {
    x = {rng.gaussian(), 0.0};
  }
  fft(spectrum, false);
  // Amplitude follows f^(exponent / 2); bins k and m - k share |f|.
  spectrum[0] = 0.0;
  for (std::size_t k = 1; k <= m / 2; ++k) {
    const double gain = std::pow(static_cast<double>(k), psd_exponent / 2.0);
    spectrum[k] *= gain;
    if (k != m - k) {
      spectrum[m - k] *= gain;
    }
  }
  fft(spectrum, true);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = spectrum[i].real();
  }
  return out;
}

void normalize_peak(std::span<double> signal, double peak) {
  double max_abs = 0.0;
  for (double x : signal) {
    max_abs = std::max(max_abs, std::abs(x));
  }
  if (max_abs == 0.0) {
    return;
  }
  const double scale = peak / max_abs;
  for (auto& x : signal) {
    x *= scale;
  }
}

} // namespace speechfactor::dsp
