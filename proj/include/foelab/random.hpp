// Copyright 2026 The foelab Authors.
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

#ifndef FOELAB_RANDOM_HPP_
#define FOELAB_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace foelab {

// A named, explicitly seeded random stream. Two streams built from the same
// seed but different names are statistically independent; the same
// (seed, name) pair always reproduces the same sequence on every platform
// because only the raw 64-bit engine output is consumed.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::string_view name);

  // Uniform on [0, 1), 53 random bits.
  double uniform();

  // Uniform on (0, 1]; never returns 0, so -log is finite.
  double uniform_open_closed() { return 1.0 - uniform(); }

  // Unit-rate exponential by inverse transform.
  double exponential();

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Inverse transform for a unit-rate exponential: -ln(u) for u in (0, 1].
double exponential_from_uniform(double u);

// Randomness owned by one run. "foe" drives the explore flag and the
// exploration draw, "fpl" drives the perturbations, "env" is reserved for
// stochastic environments.
struct RunStreams {
  explicit RunStreams(std::uint64_t seed)
      : foe(seed, "foe"), fpl(seed, "fpl") {}

  RandomStream foe;
  RandomStream fpl;
};

// 64-bit FNV-1a, used for deriving stream seeds and config hashes.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace foelab

#endif  // FOELAB_RANDOM_HPP_
