// Copyright 2026 The pseudosep Authors
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
#include <random>
#include <string>

#include "pseudosep/types.hpp"

namespace pseudosep {

/// A named, seedable pseudorandom stream. Every sampling operation in the
/// library takes one of these explicitly so that protocol traces are
/// reproducible. Child streams for independent runs are derived from a
/// master stream by index, never by drawing from it.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::string name = "main");

  std::uint64_t seed() const { return seed_; }
  const std::string& name() const { return name_; }

  /// Uniform double in [0, 1), 53 bits of mantissa.
  double uniform();
  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n);
  double normal();
  std::uint64_t next_u64() { return engine_(); }

  /// Independent stream number `index` of this stream's family.
  RandomStream derive(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::string name_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Haar-distributed unitary of dimension `dim` (QR of a complex Ginibre
/// matrix with the R-diagonal phases folded back into Q).
Matrix haar_unitary(int dim, RandomStream& rng);

/// Haar-random unit vector of dimension `dim`.
Vector haar_vector(int dim, RandomStream& rng);

}  // namespace pseudosep
