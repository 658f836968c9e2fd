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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "speechfactor/rng.hpp"

namespace speechfactor::dsp {

/// In-place iterative radix-2 FFT. Size must be a power of two.
void fft(std::span<std::complex<double>> data, bool inverse);

std::size_t next_power_of_two(std::size_t n);

/// Gaussian noise whose power spectral density follows f^exponent
/// (0 white, -1 pink, -2 brown, +1 blue, +2 violet). Shaped in the frequency
/// domain over a power-of-two block, then truncated to `n` samples. The DC
/// bin is zeroed for non-zero exponents. Output is not normalized.
std::vector<double> colored_noise(std::size_t n, double psd_exponent, Rng& rng);

/// Scales `signal` in place so that max |x| == peak. All-zero input is left
/// untouched.
void normalize_peak(std::span<double> signal, double peak);

} // namespace speechfactor::dsp
