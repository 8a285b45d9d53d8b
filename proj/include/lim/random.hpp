// Copyright 2026 The Authors.
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

#include <cstdint>
#include <limits>

namespace lim {

// Stateless 64-bit finalizer (SplitMix64 output function).
constexpr uint64_t Mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based random stream. Output i of a stream is a pure function of
// (key, i), so a stream can be split into child streams by index without any
// shared state. Every RR set, simulation run and experiment cell draws from
// its own child stream, which keeps results independent of thread count.
class RandomStream {
 public:
  using result_type = uint64_t;

  constexpr explicit RandomStream(uint64_t seed = 0) : key_(Mix64(seed ^ kSalt)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return Next(); }

  uint64_t Next() {
    ++counter_;
    return Mix64(key_ + counter_ * kGamma);
  }

  // Uniform in [0, 1) with 53 bits of resolution.
  double Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound); bound must be positive.
  uint64_t Below(uint64_t bound) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(Next()) * bound) >> 64);
  }

  bool Bernoulli(double p) { return Uniform() < p; }

  // Child stream for `index`. Does not advance this stream.
  RandomStream Split(uint64_t index) const {
    RandomStream child;
    child.key_ = Mix64(key_ ^ Mix64(index + kGamma));
    return child;
  }

  uint64_t key() const { return key_; }

 private:
  static constexpr uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr uint64_t kSalt = 0x5851f42d4c957f2dULL;

  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace lim
