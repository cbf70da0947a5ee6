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

#include "rydmis/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "rydmis/error.hpp"
#include "rydmis/pipeline.hpp"
#include "rydmis/random.hpp"

namespace rydmis {

Eigen::Matrix2d detection_matrix(double eps, double eps_prime) {
  if (!(eps >= 0.0 && eps < 1.0) || !(eps_prime >= 0.0 && eps_prime < 1.0)) {
    raise(ErrorKind::OutOfRange, "detection error probabilities must lie in [0, 1)");
  }
  Eigen::Matrix2d m;
  m << 1.0 - eps, eps_prime, eps, 1.0 - eps_prime;
  return m;
}

DetectionModel DetectionModel::uniform(std::size_t n, double eps, double eps_prime) {
  DetectionModel m{std::vector<double>(n, eps), std::vector<double>(n, eps_prime)};
  m.validate();
  return m;
}

void DetectionModel::validate() const {
  if (eps.size() != eps_prime.size()) raise(ErrorKind::LengthMismatch, "per-qubit error vectors differ in length");
  for (std::size_t i = 0; i < eps.size(); ++i) detection_matrix(eps[i], eps_prime[i]);
}

bool DetectionModel::identity() const {
  return std::all_of(eps.begin(), eps.end(), [](double e) { return e == 0.0; }) &&
         std::all_of(eps_prime.begin(), eps_prime.end(), [](double e) { return e == 0.0; });
}

namespace {

void check_model(const Distribution& dist, const DetectionModel& model) {
  model.validate();
  if (model.size() != dist.bits()) {
    raise(ErrorKind::LengthMismatch, "detection model over " + std::to_string(model.size()) +
                                         " qubits for a distribution over " + std::to_string(dist.bits()));
  }
}

// In-place application of a 2×2 matrix on every qubit axis.
void apply_tensor(std::vector<double>& p, std::size_t n, const std::vector<Eigen::Matrix2d>& mats) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    const auto& m = mats[i];
    for (std::size_t z = 0; z < p.size(); ++z) {
      if (z & bit) continue;
      const double p0 = p[z];
      const double p1 = p[z | bit];
      p[z] = m(0, 0) * p0 + m(0, 1) * p1;
      p[z | bit] = m(1, 0) * p0 + m(1, 1) * p1;
    }
  }
}

// Duchi et al. projection of v onto {x ≥ 0, Σx = 1}.
void project_to_simplex(std::vector<double>& v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) tau = t;
  }
  for (auto& x : v) x = std::max(0.0, x - tau);
}

}  // namespace

Distribution apply_detection_errors(const Distribution& dist, const DetectionModel& model, DetectionMode mode,
                                    std::uint64_t seed) {
  check_model(dist, model);
  const auto n = dist.bits();
  if (mode == DetectionMode::exact_tensor) {
    if (n > kMaxExactDetectionBits) {
      raise(ErrorKind::TooLargeForExact, "exact detection model limited to " + std::to_string(kMaxExactDetectionBits) +
                                             " qubits");
    }
    auto p = dist.to_dense();
    std::vector<Eigen::Matrix2d> mats;
    for (std::size_t i = 0; i < n; ++i) mats.push_back(detection_matrix(model.eps[i], model.eps_prime[i]));
    apply_tensor(p, n, mats);
    return Distribution::from_dense(p, n, 0.0);
  }
  if (dist.mode() != DistributionMode::counts) {
    raise(ErrorKind::InvalidArgument, "stochastic detection errors need a counts distribution");
  }
  Rng rng(seed);
  Distribution out(n, DistributionMode::counts);
  for (const auto& [b, w] : dist.entries()) {
    const auto shots = static_cast<std::size_t>(std::llround(w));
    for (std::size_t s = 0; s < shots; ++s) {
      Bitstring read = b;
      for (std::size_t i = 0; i < n; ++i) {
        const double flip = read.test(i) ? model.eps_prime[i] : model.eps[i];
        if (flip > 0.0 && uniform01(rng) < flip) read.flip(i);
      }
      out.add(read, 1.0);
    }
  }
  return out;
}

double readout_fidelity(const Bitstring& b, const DetectionModel& model) {
  if (b.size() != model.size()) raise(ErrorKind::LengthMismatch, "bitstring and detection model sizes differ");
  model.validate();
  double f = 1.0;
  for (std::size_t i = 0; i < b.size(); ++i) f *= b.test(i) ? 1.0 - model.eps_prime[i] : 1.0 - model.eps[i];
  return f;
}

double readout_fidelity(std::size_t n, std::size_t selected, double eps, double eps_prime) {
  if (selected > n) raise(ErrorKind::InvalidArgument, "selected count exceeds size");
  detection_matrix(eps, eps_prime);
  return std::pow(1.0 - eps, static_cast<double>(n - selected)) * std::pow(1.0 - eps_prime, static_cast<double>(selected));
}

Distribution correct_distribution(const Distribution& dist, const DetectionModel& model, CorrectionPolicy policy) {
  check_model(dist, model);
  const auto n = dist.bits();
  if (n > kMaxExactDetectionBits) {
    raise(ErrorKind::TooLargeForExact, "correction limited to " + std::to_string(kMaxExactDetectionBits) + " qubits");
  }
  std::vector<Eigen::Matrix2d> inv;
  for (std::size_t i = 0; i < n; ++i) {
    const auto m = detection_matrix(model.eps[i], model.eps_prime[i]);
    const double det = m.determinant();
    if (std::abs(det) < 1e-12) raise(ErrorKind::SingularModel, "eps + eps' = 1 on qubit " + std::to_string(i));
    inv.push_back(m.inverse());
  }
  auto p = dist.to_dense();
  apply_tensor(p, n, inv);
  if (policy == CorrectionPolicy::truncate) {
    double total = 0.0;
    for (auto& x : p) total += (x = std::max(0.0, x));
    if (!(total > 0.0)) raise(ErrorKind::EmptyDistribution, "no positive mass after correction");
    for (auto& x : p) x /= total;
  } else {
    project_to_simplex(p);
  }
  return Distribution::from_dense(p, n, 0.0);
}

std::vector<CurvePoint> truncated_ratio_curve(const Graph& g, const Distribution& dist, std::size_t mis_size,
                                              double penalty, std::span<const double> d_grid) {
  if (dist.empty()) raise(ErrorKind::EmptyDistribution, "empty distribution");
  if (mis_size == 0) raise(ErrorKind::MissingMisSize, "MIS size is required");
  const auto probs = dist.normalized();
  std::vector<std::pair<double, double>> items;  // (energy, probability)
  for (const auto& [b, p] : probs.entries()) items.emplace_back(bitstring_energy(g, b, penalty), p);
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  const double s = static_cast<double>(mis_size);
  std::vector<CurvePoint> out;
  for (double d : d_grid) {
    if (!(d >= 0.0 && d <= 100.0)) raise(ErrorKind::OutOfRange, "d must lie in [0, 100]");
    if (d == 0.0) {
      out.push_back({d, 1.0 + items.front().first / s});
      continue;
    }
    const double target = d / 100.0;
    double kept = 0.0;
    double energy = 0.0;
    for (const auto& [e, p] : items) {
      const double take = std::min(p, target - kept);
      if (take <= 0.0) break;
      kept += take;
      energy += take * e;
    }
    out.push_back({d, 1.0 + energy / (kept * s)});
  }
  return out;
}

}  // namespace rydmis
