// Copyright 2026 The qdisplace Authors
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

#include <array>
#include <cstdint>

#include "qdisplace/core.hpp"

namespace qdisplace {

// splitmix64: tiny 64-bit generator with a fully specified update, so traces
// are reproducible byte-for-byte across platforms and library versions.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 bits of mantissa.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [-1, 1).
  double next_signed() { return 2.0 * next_double() - 1.0; }

 private:
  std::uint64_t state_;
};

// Random unit amplitude 4-vector; not Haar-distributed, which no caller needs.
inline std::array<Complex, 4> random_unit_amplitudes(SeededRng& rng) {
  std::array<Complex, 4> a{};
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (auto& c : a) {
      c = Complex{rng.next_signed(), rng.next_signed()};
      n2 += std::norm(c);
    }
  } while (n2 < 1e-6);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& c : a) c *= inv;
  return a;
}

}  // namespace qdisplace
