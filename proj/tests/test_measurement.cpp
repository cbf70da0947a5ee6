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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>

#include "rydmis/error.hpp"
#include "rydmis/measurement.hpp"
#include "rydmis/pipeline.hpp"

namespace rydmis {
namespace {

Distribution random_distribution(std::size_t n, std::uint64_t seed, double sparsity = 0.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Distribution d(n, DistributionMode::probabilities);
  for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
    const double w = u(rng);
    if (w > sparsity) d.add(Bitstring::from_index(z, n), w);
  }
  return d.normalized();
}

// Full 2ⁿ × 2ⁿ confusion matrix, qubit 0 as the least significant factor.
Eigen::MatrixXd full_matrix(const DetectionModel& m) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
  for (std::size_t k = m.size(); k-- > 0;) out = Eigen::kroneckerProduct(out, detection_matrix(m.eps[k], m.eps_prime[k])).eval();
  return out;
}

TEST(DetectionMatrix, ColumnsAreStochastic) {
  const auto m = detection_matrix(0.03, 0.08);
  EXPECT_DOUBLE_EQ(m.col(0).sum(), 1.0);
  EXPECT_DOUBLE_EQ(m.col(1).sum(), 1.0);
  EXPECT_DOUBLE_EQ(m(1, 0), 0.03);
  EXPECT_DOUBLE_EQ(m(0, 1), 0.08);
  EXPECT_THROW(detection_matrix(1.0, 0.0), Error);
  EXPECT_THROW(detection_matrix(0.0, -0.1), Error);
}

TEST(Detection, TensorMatchesPerBitEnumeration) {
  const DetectionModel model{{0.01, 0.05, 0.02, 0.1}, {0.07, 0.03, 0.12, 0.0}};
  const auto d = random_distribution(4, 1);
  const auto out = apply_detection_errors(d, model, DetectionMode::exact_tensor);
  for (std::uint64_t r = 0; r < 16; ++r) {
    double ref = 0.0;
    for (std::uint64_t z = 0; z < 16; ++z) {
      double p = d.probability(Bitstring::from_index(z, 4));
      for (std::size_t i = 0; i < 4; ++i) {
        const bool zi = (z >> i) & 1, ri = (r >> i) & 1;
        const double flip = zi ? model.eps_prime[i] : model.eps[i];
        p *= zi == ri ? 1.0 - flip : flip;
      }
      ref += p;
    }
    EXPECT_NEAR(out.probability(Bitstring::from_index(r, 4)), ref, 1e-14);
  }
}

TEST(Detection, IdentityModelIsNoOp) {
  const auto d = random_distribution(5, 2);
  const auto out = apply_detection_errors(d, DetectionModel::uniform(5, 0, 0), DetectionMode::exact_tensor);
  EXPECT_LT(total_variation(d, out), 1e-15);
}

TEST(Detection, StochasticAgreesWithTensor) {
  Distribution counts(3, DistributionMode::counts);
  counts.add(Bitstring::from_string("101"), 30000);
  counts.add(Bitstring::from_string("010"), 10000);
  const auto model = DetectionModel::uniform(3, 0.05, 0.1);
  const auto sto = apply_detection_errors(counts, model, DetectionMode::stochastic, 7);
  EXPECT_EQ(sto.mode(), DistributionMode::counts);
  EXPECT_DOUBLE_EQ(sto.total(), 40000.0);
  const auto ex = apply_detection_errors(counts, model, DetectionMode::exact_tensor);
  EXPECT_LT(total_variation(sto, ex), 0.015);
  EXPECT_EQ(apply_detection_errors(counts, model, DetectionMode::stochastic, 7).entries(), sto.entries());
  EXPECT_THROW(apply_detection_errors(random_distribution(3, 3), model, DetectionMode::stochastic, 7), Error);
}

TEST(Detection, SizeChecks) {
  const auto d = random_distribution(3, 4);
  EXPECT_THROW(apply_detection_errors(d, DetectionModel::uniform(4, 0.1, 0.1), DetectionMode::exact_tensor), Error);
  Distribution big(21, DistributionMode::probabilities);
  big.add(Bitstring(21), 1.0);
  try {
    apply_detection_errors(big, DetectionModel::uniform(21, 0.1, 0.1), DetectionMode::exact_tensor);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooLargeForExact);
  }
}

TEST(ReadoutFidelity, ProductOfBitFidelities) {
  const DetectionModel model{{0.01, 0.05, 0.02}, {0.07, 0.03, 0.12}};
  EXPECT_NEAR(readout_fidelity(Bitstring::from_string("101"), model), 0.93 * 0.95 * 0.88, 1e-15);
  EXPECT_NEAR(readout_fidelity(10, 4, 0.03, 0.08), std::pow(0.97, 6) * std::pow(0.92, 4), 1e-15);
  const auto all = DetectionModel::uniform(10, 0.03, 0.08);
  const Eigen::VectorXd diag = full_matrix(all).diagonal();
  EXPECT_NEAR(readout_fidelity(Bitstring::from_index(0b1100110000, 10), all), diag(0b1100110000), 1e-14);
}

TEST(Correction, InvertsExactDetection) {
  const auto model = DetectionModel::uniform(6, 0.03, 0.08);
  for (std::uint64_t s = 0; s < 4; ++s) {
    const auto d = random_distribution(6, 10 + s);
    const auto measured = apply_detection_errors(d, model, DetectionMode::exact_tensor);
    for (auto pol : {CorrectionPolicy::truncate, CorrectionPolicy::renormalize})
      EXPECT_LT(total_variation(correct_distribution(measured, model, pol), d), 1e-10);
  }
}

TEST(Correction, RenormalizeIsTheSimplexProjection) {
  const DetectionModel model = DetectionModel::uniform(3, 0.1, 0.15);
  Distribution q(3, DistributionMode::probabilities);
  q.add(Bitstring::from_string("000"), 0.9);
  q.add(Bitstring::from_string("111"), 0.1);
  const Eigen::VectorXd v = full_matrix(model).inverse() * Eigen::Map<const Eigen::VectorXd>(q.to_dense().data(), 8);
  ASSERT_LT(v.minCoeff(), 0.0);
  const auto y = correct_distribution(q, model, CorrectionPolicy::renormalize).to_dense();
  // Optimality: y = max(v − τ, 0) for a single threshold τ.
  double tau = 0.0;
  std::size_t active = 0;
  for (int z = 0; z < 8; ++z) {
    if (y[z] > 0) {
      tau += v(z) - y[z];
      ++active;
    }
  }
  tau /= static_cast<double>(active);
  double total = 0.0;
  for (int z = 0; z < 8; ++z) {
    total += y[z];
    if (y[z] > 0) EXPECT_NEAR(v(z) - y[z], tau, 1e-12);
    else EXPECT_LE(v(z), tau + 1e-12);
  }
  EXPECT_NEAR(total, 1.0, 1e-12);

  const auto t = correct_distribution(q, model, CorrectionPolicy::truncate).to_dense();
  const double pos = (v.array().max(0.0)).sum();
  for (int z = 0; z < 8; ++z) EXPECT_NEAR(t[z], std::max(0.0, v(z)) / pos, 1e-12);
}

TEST(Correction, SingularModel) {
  const auto d = random_distribution(2, 5);
  try {
    correct_distribution(d, DetectionModel{{0.5, 0.1}, {0.5, 0.1}});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularModel);
  }
}

TEST(TruncatedCurve, EndpointsAndMonotonicity) {
  Graph p3(3);
  p3.add_edge(0, 1);
  p3.add_edge(1, 2);
  const auto d = random_distribution(3, 6);
  const std::vector<double> grid{0, 10, 25, 50, 75, 100};
  const auto curve = truncated_ratio_curve(p3, d, 2, kDefaultPenalty, grid);
  ASSERT_EQ(curve.size(), grid.size());
  EXPECT_NEAR(curve.front().cost, 0.0, 1e-12);  // the best sampled state is the MIS
  EXPECT_NEAR(curve.back().cost, cost_ratio(p3, d, 2, kDefaultPenalty), 1e-12);
  for (std::size_t i = 1; i < curve.size(); ++i) EXPECT_GE(curve[i].cost, curve[i - 1].cost - 1e-12);
  EXPECT_THROW(truncated_ratio_curve(p3, d, 2, kDefaultPenalty, std::vector<double>{120}), Error);
}

}  // namespace
}  // namespace rydmis
