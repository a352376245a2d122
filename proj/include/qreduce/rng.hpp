// Copyright 2026 The qreduce authors
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

#ifndef QREDUCE_RNG_HPP
#define QREDUCE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qreduce/types.hpp"

namespace qreduce {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seedable, splittable generator: a SplitMix64-scrambled seed feeding
// std::mt19937_64, with uniform/Gaussian draws built from raw 64-bit
// output so that streams are reproducible bit-for-bit for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t s = seed;
    engine_.seed(splitmix64(s));
  }

  // Independent child stream; deterministic in (seed, stream).
  Rng split(std::uint64_t stream) const {
    std::uint64_t s = seed_ ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    return Rng(splitmix64(s));
  }

  std::uint64_t raw() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double gauss() {
    // Box-Muller; the cached second value is dropped to keep draws
    // independent of call history length.
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  Complex cgauss() { return Complex(gauss(), gauss()); }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Square matrix with i.i.d. standard complex Gaussian entries.
Matrix random_matrix(int dim, Rng& rng);

// Hermitian matrix (G + G†)/2 with Gaussian G.
Matrix random_hermitian(int dim, Rng& rng);

// Haar-random unitary via QR of a Ginibre matrix with phase-fixed R.
Matrix random_unitary(int dim, Rng& rng);

// Haar-random pure state projector.
Matrix random_pure_density(int dim, Rng& rng);

// Random mixed state G G†/Tr[G G†]; rank defaults to full.
Matrix random_density(int dim, Rng& rng, int rank = 0);

}  // namespace qreduce

#endif  // QREDUCE_RNG_HPP
