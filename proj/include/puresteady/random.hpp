// Copyright 2026 The puresteady Authors
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

#ifndef PURESTEADY_RANDOM_HPP
#define PURESTEADY_RANDOM_HPP

#include <cstdint>
#include <limits>

namespace puresteady {

/// One step of splitmix64; advances `state`.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed of substream `index`: seed XOR (index * 0x9E3779B97F4A7C15), expanded
/// by the generator constructor.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

/// xoshiro256** seeded through splitmix64, with Box-Muller normals. Output
/// depends only on the seed, so streams are identical across platforms.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next(); }

  std::uint64_t next();
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  /// Standard normal. Box-Muller pairs are consumed in order.
  double gaussian();

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace puresteady

#endif  // PURESTEADY_RANDOM_HPP
