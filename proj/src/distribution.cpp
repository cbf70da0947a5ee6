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

#include "rydmis/distribution.hpp"

#include <cmath>
#include <string>

#include "rydmis/error.hpp"

namespace rydmis {

inline constexpr std::size_t kMaxDenseBits = 24;

void Distribution::add(const Bitstring& b, double weight) {
  if (b.size() != n_) {
    raise(ErrorKind::LengthMismatch, "bitstring of length " + std::to_string(b.size()) + " in distribution over " +
                                         std::to_string(n_) + " bits");
  }
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    if (weight == 0.0) return;
    raise(ErrorKind::InvalidArgument, "distribution weights must be finite and non-negative");
  }
  entries_[b] += weight;
}

double Distribution::weight(const Bitstring& b) const {
  auto it = entries_.find(b);
  return it == entries_.end() ? 0.0 : it->second;
}

double Distribution::total() const {
  double t = 0.0;
  for (const auto& [b, w] : entries_) t += w;
  return t;
}

Distribution Distribution::normalized() const {
  const double t = total();
  if (!(t > 0.0)) raise(ErrorKind::EmptyDistribution, "distribution has no mass");
  Distribution out(n_, DistributionMode::probabilities);
  for (const auto& [b, w] : entries_) out.entries_.emplace(b, w / t);
  return out;
}

double Distribution::probability(const Bitstring& b) const {
  const double t = total();
  if (!(t > 0.0)) raise(ErrorKind::EmptyDistribution, "distribution has no mass");
  return weight(b) / t;
}

std::vector<double> Distribution::to_dense() const {
  if (n_ > kMaxDenseBits) raise(ErrorKind::TooLargeForExact, "dense view limited to 24 bits");
  const double t = total();
  if (!(t > 0.0)) raise(ErrorKind::EmptyDistribution, "distribution has no mass");
  std::vector<double> p(std::size_t{1} << n_, 0.0);
  for (const auto& [b, w] : entries_) p[b.to_index()] = w / t;
  return p;
}

Distribution Distribution::from_dense(std::span<const double> probs, std::size_t n_bits, double drop_below) {
  if (probs.size() != (std::size_t{1} << n_bits)) raise(ErrorKind::LengthMismatch, "dense vector size");
  Distribution out(n_bits, DistributionMode::probabilities);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > drop_below) out.entries_.emplace(Bitstring::from_index(i, n_bits), probs[i]);
  }
  return out;
}

double total_variation(const Distribution& a, const Distribution& b) {
  if (a.bits() != b.bits()) raise(ErrorKind::LengthMismatch, "distributions over different bit counts");
  const auto pa = a.normalized();
  const auto pb = b.normalized();
  double tv = 0.0;
  auto ia = pa.entries().begin();
  auto ib = pb.entries().begin();
  while (ia != pa.entries().end() || ib != pb.entries().end()) {
    if (ib == pb.entries().end() || (ia != pa.entries().end() && ia->first < ib->first)) {
      tv += ia->second;
      ++ia;
    } else if (ia == pa.entries().end() || ib->first < ia->first) {
      tv += ib->second;
      ++ib;
    } else {
      tv += std::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return 0.5 * tv;
}

}  // namespace rydmis
