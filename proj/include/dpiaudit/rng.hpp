//
// Copyright 2026 The dpi-audit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPIAUDIT_RNG_HPP_
#define DPIAUDIT_RNG_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace dpiaudit {

// One splitmix64 round over `base + (stream+1) * golden`. Derives
// independent sub-stream seeds (per replication, per dataset) from a base
// seed; a fixed function so audits replay bit-for-bit.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);

// Deterministic random source. std::mt19937_64 is fully specified by the
// standard; the draw helpers below replace the std:: distributions, whose
// output is implementation-defined, so sequences are identical on every
// platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double next_double();

  // Uniform on {0, ..., n-1} without modulo bias (rejection sampling).
  std::uint64_t next_below(std::uint64_t n);

  // Standard normal via Box-Muller; two uniforms per draw, no cached spare.
  double next_gaussian();

  // Index drawn according to a cumulative weight vector (last entry is the
  // total mass).
  std::size_t pick_cumulative(std::span<const double> cumulative);

 private:
  std::mt19937_64 engine_;
};

// Seeded Fisher-Yates permutation of {0, ..., n-1}.
std::vector<std::size_t> random_permutation(std::size_t n, std::uint64_t seed);

}  // namespace dpiaudit

#endif  // DPIAUDIT_RNG_HPP_
