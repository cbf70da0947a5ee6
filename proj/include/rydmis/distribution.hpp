// Copyright 2026 The rydmis Authors
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

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "rydmis/bitstring.hpp"

namespace rydmis {

enum class DistributionMode { probabilities, counts };

// Bitstring -> weight map. Entries are kept ordered so iteration, export and
// reductions are deterministic.
class Distribution {
 public:
  Distribution() = default;
  Distribution(std::size_t n_bits, DistributionMode mode) : n_(n_bits), mode_(mode) {}

  std::size_t bits() const noexcept { return n_; }
  DistributionMode mode() const noexcept { return mode_; }
  const std::map<Bitstring, double>& entries() const noexcept { return entries_; }
  std::size_t support() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  // Accumulates; zero or negative weights are rejected.
  void add(const Bitstring& b, double weight);
  double weight(const Bitstring& b) const;
  double total() const;

  // Probability view; throws EmptyDistribution when the total weight is zero.
  Distribution normalized() const;
  double probability(const Bitstring& b) const;

  // Dense vector indexed by basis index (vertex 0 = LSB), always normalized.
  std::vector<double> to_dense() const;
  static Distribution from_dense(std::span<const double> probs, std::size_t n_bits, double drop_below = 0.0);

 private:
  std::size_t n_ = 0;
  DistributionMode mode_ = DistributionMode::probabilities;
  std::map<Bitstring, double> entries_;
};

double total_variation(const Distribution& a, const Distribution& b);

}  // namespace rydmis
