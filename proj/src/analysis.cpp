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

#include "rydmis/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rydmis/error.hpp"

namespace rydmis {

CumulativeMisk cumulative_misk(const Graph& g, const Distribution& dist, std::size_t mis_size, std::size_t k_max) {
  if (mis_size == 0) raise(ErrorKind::MissingMisSize, "cumulative_misk needs the MIS size");
  if (dist.bits() != g.order()) raise(ErrorKind::LengthMismatch, "distribution and graph sizes differ");
  const Distribution p = dist.normalized();
  CumulativeMisk out;
  std::vector<double> level(k_max + 1, 0.0);
  for (const auto& [b, w] : p.entries()) {
    if (!is_independent_set(g, b)) {
      out.p_non_is += w;
      continue;
    }
    out.p_is += w;
    if (b.count() > mis_size) raise(ErrorKind::InvalidArgument, "independent set larger than the MIS size");
    const std::size_t deficit = mis_size - b.count();
    if (deficit <= k_max) level[deficit] += w;
  }
  out.cumulative.resize(k_max + 1);
  double run = 0.0;
  for (std::size_t k = 0; k <= k_max; ++k) out.cumulative[k] = run += level[k];
  return out;
}

double DecayFit::operator()(double n) const {
  const double x = n - static_cast<double>(b_k);
  return x <= 0.0 ? 1.0 : std::exp(-x / n_k);
}

DecayFit fit_decay(std::span<const ScalingPoint> points, std::size_t k) {
  if (points.size() < 3) raise(ErrorKind::InsufficientData, "decay fits need at least 3 points");
  double n_max = 0.0;
  bool saturated = true;
  for (const auto& pt : points) {
    if (!(pt.p > 0.0 && pt.p <= 1.0)) raise(ErrorKind::OutOfRange, "probability " + std::to_string(pt.p) +
                                                                       " outside (0, 1]");
    if (pt.n < 0.0) raise(ErrorKind::OutOfRange, "negative size");
    n_max = std::max(n_max, pt.n);
    saturated = saturated && pt.p == 1.0;
  }
  if (saturated) raise(ErrorKind::AllSaturated, "every point has probability 1");

  DecayFit best;
  best.k = k;
  best.residual = std::numeric_limits<double>::infinity();
  const auto b_max = static_cast<std::int64_t>(std::floor(n_max));
  for (std::int64_t b = 0; b <= b_max; ++b) {
    double sxy = 0.0, sxx = 0.0;
    for (const auto& pt : points) {
      const double x = pt.n - static_cast<double>(b);
      if (x <= 0.0 || pt.p == 1.0) continue;
      sxy += x * std::log(pt.p);
      sxx += x * x;
    }
    if (sxx == 0.0 || sxy >= 0.0) continue;
    DecayFit cand;
    cand.k = k;
    cand.b_k = b;
    cand.n_k = -sxx / sxy;
    for (const auto& pt : points) {
      const double r = std::log(pt.p) - std::log(cand(pt.n));
      cand.residual += r * r;
    }
    if (cand.residual < best.residual) best = cand;
  }
  if (!std::isfinite(best.residual)) raise(ErrorKind::InsufficientData, "no breakpoint leaves a decaying branch");
  return best;
}

std::uint64_t extrapolate_shots(const DecayFit& fit, double n, double target) {
  if (!(target > 0.0 && target < 1.0)) raise(ErrorKind::OutOfRange, "target probability must lie in (0, 1)");
  if (!(fit.n_k > 0.0)) raise(ErrorKind::InvalidArgument, "decay constant must be positive");
  const double p = fit(n);
  if (p >= 1.0) return 1;
  if (p < std::numeric_limits<double>::min()) raise(ErrorKind::ProbabilityUnderflow, "success probability underflows");
  const double shots = std::ceil(std::log1p(-target) / std::log1p(-p));
  if (!(shots < 1.8e19)) raise(ErrorKind::ProbabilityUnderflow, "shot count overflows");
  return static_cast<std::uint64_t>(shots);
}

}  // namespace rydmis
