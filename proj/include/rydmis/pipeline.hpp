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
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rydmis/bayesopt.hpp"
#include "rydmis/distribution.hpp"
#include "rydmis/graph.hpp"
#include "rydmis/rydberg.hpp"
#include "rydmis/schedule.hpp"

namespace rydmis {

inline constexpr double kDefaultPenalty = 10.0;

enum class CostKind { one_minus_pmis, approx_ratio };
std::string_view to_string(CostKind kind);
CostKind parse_cost_kind(std::string_view text);

// ⟨z|C_G|z⟩ = −|selected| + c · (violated edges).
double bitstring_energy(const Graph& g, const Bitstring& b, double penalty = kDefaultPenalty);

// 1 − P(MIS). A zero mis_size raises MissingMisSize.
double cost_pmis(const Graph& g, const Distribution& dist, std::size_t mis_size);
// 1 + ⟨C_G⟩ / S_G; zero for a pure-MIS distribution.
double cost_ratio(const Graph& g, const Distribution& dist, std::size_t mis_size, double penalty = kDefaultPenalty);

// A family member prepared for exact evaluation: exact MIS size, per-basis
// labels and energies, and the matrix-free Hamiltonian.
struct Instance {
  UdGraph graph;
  std::size_t mis_size = 0;
  std::vector<std::uint8_t> categories;  // basis_categories
  std::vector<double> energies;          // bitstring_energy per basis index
  std::shared_ptr<const RydbergOperator> op;
  RydbergParams params;

  static Instance prepare(const UdGraph& g, const RydbergParams& params = {}, double penalty = kDefaultPenalty);
  const Graph& topology() const noexcept { return graph.graph(); }
};

struct GraphEvaluation {
  double p_mis = 0.0;
  double ratio = 0.0;  // 1 + ⟨C⟩/S
  double cost = 0.0;   // per the requested CostKind
};

GraphEvaluation evaluate_state(const Instance& inst, const QuantumState& state, CostKind kind);
GraphEvaluation evaluate_distribution(const Instance& inst, const Distribution& dist, CostKind kind,
                                      double penalty = kDefaultPenalty);

// Detection and decoherence applied when evaluating with noise.
struct NoiseSetting {
  NoiseParams noise;
  std::size_t trajectories = 500;
  bool detection = true;
};

struct EvalSettings {
  CostKind kind = CostKind::one_minus_pmis;
  std::size_t shots = 0;  // 0 = exact expectation
  std::optional<NoiseSetting> noise;
  EvolveOptions evolve;
  double penalty = kDefaultPenalty;
};

GraphEvaluation evaluate_schedule(const Instance& inst, const Schedule& schedule, const EvalSettings& settings,
                                  std::uint64_t seed = 0);

// Map from an optimizer vector θ to a control schedule.
class Parametrization {
 public:
  virtual ~Parametrization() = default;
  virtual std::string name() const = 0;
  virtual SearchSpace space() const = 0;
  virtual Schedule schedule(const Theta& theta) const = 0;
};

// θ = [T, ω_1..ω_m, δ_0..δ_{m+1}].
class VqaaParametrization final : public Parametrization {
 public:
  VqaaParametrization(std::size_t m, VqaaBounds bounds) : m_(m), bounds_(bounds) {}
  std::string name() const override { return "vqaa"; }
  SearchSpace space() const override;
  Schedule schedule(const Theta& theta) const override;
  std::size_t m() const noexcept { return m_; }
  const VqaaBounds& bounds() const noexcept { return bounds_; }

 private:
  std::size_t m_;
  VqaaBounds bounds_;
};

// Two-parameter VQAA slice: a fixed base schedule whose last two detuning
// knots are free.
class VqaaTailParametrization final : public Parametrization {
 public:
  VqaaTailParametrization(VqaaParams base, double lower, double upper, VqaaBounds bounds = {})
      : base_(std::move(base)), lower_(lower), upper_(upper), bounds_(bounds) {}
  std::string name() const override { return "vqaa_tail"; }
  SearchSpace space() const override;
  Schedule schedule(const Theta& theta) const override;

 private:
  VqaaParams base_;
  double lower_, upper_;
  VqaaBounds bounds_;
};

struct QaoaSettings {
  std::size_t depth = 5;
  double omega_mix = kTwoPi * 2.0;
  double delta_cost = -kTwoPi * 4.0;
  bool init_pulse = true;
  double t_min = kMinSegmentDuration;
  double t_max = 0.3;
};

// All layers share (t_cost, t_mix).
class QaoaTiedParametrization final : public Parametrization {
 public:
  explicit QaoaTiedParametrization(QaoaSettings settings) : s_(settings) {}
  std::string name() const override { return "qaoa_tied"; }
  SearchSpace space() const override;
  Schedule schedule(const Theta& theta) const override;

 private:
  QaoaSettings s_;
};

// θ = [t_cost_1..p, t_mix_1..p].
class QaoaFullParametrization final : public Parametrization {
 public:
  explicit QaoaFullParametrization(QaoaSettings settings) : s_(settings) {}
  std::string name() const override { return "qaoa_full"; }
  SearchSpace space() const override;
  Schedule schedule(const Theta& theta) const override;

 private:
  QaoaSettings s_;
};

struct FamilyObjective {
  std::vector<Instance> instances;
  EvalSettings eval;
  double std_weight = 1.0;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

struct FamilyCost {
  double value = 0.0;  // mean + w · population std
  double mean = 0.0;
  double std = 0.0;
  std::vector<GraphEvaluation> per_graph;
};

// Mean plus weighted population standard deviation, summed in index order.
FamilyCost aggregate_family_cost(std::span<const GraphEvaluation> per_graph, double std_weight);
FamilyCost family_cost(const FamilyObjective& obj, const Schedule& schedule, std::uint64_t eval_index = 0);

struct FamilyFingerprint {
  std::optional<LatticeKind> kind;
  double spacing = 0.0;
  std::vector<std::size_t> sizes;  // sorted, distinct
};

FamilyFingerprint fingerprint(const std::vector<Instance>& family);

struct TrainedProtocol {
  std::string parametrization;
  std::vector<std::string> names;
  Theta theta;
  Schedule schedule;
  FamilyFingerprint fingerprint;
  double training_cost = 0.0;
  std::vector<GraphEvaluation> per_graph;
  std::vector<Observation> history;
};

TrainedProtocol train_transferable(const FamilyObjective& obj, const Parametrization& param, const BoOptions& options,
                                   std::uint64_t seed);

struct TransferReport {
  std::vector<GraphEvaluation> per_graph;
  double mean_pmis = 0.0;
  double min_pmis = 0.0;
  double std_pmis = 0.0;
  double mean_ratio = 0.0;
  std::vector<std::string> warnings;
};

TransferReport evaluate_transfer(const Schedule& schedule, const FamilyFingerprint& trained_on,
                                 const std::vector<Instance>& test, const EvalSettings& settings,
                                 std::uint64_t seed = 0, std::size_t jobs = 1);

struct LandscapeResult {
  std::vector<double> xs, ys;
  Eigen::MatrixXd mean;                    // rows xs, cols ys
  std::vector<Eigen::MatrixXd> per_graph;  // same layout
  std::vector<std::pair<std::size_t, std::size_t>> argmin;
  std::pair<std::size_t, std::size_t> mean_argmin;
};

// Requires a two-parameter parametrization.
LandscapeResult landscape_scan(const std::vector<Instance>& family, const Parametrization& param,
                               std::span<const double> xs, std::span<const double> ys, const EvalSettings& settings,
                               std::size_t jobs = 1);

struct RobustnessResult {
  std::vector<double> omega_scales, delta_shifts;
  Eigen::MatrixXd one_minus_pmis;  // rows omega_scales, cols delta_shifts
  Eigen::MatrixXd degradation;     // relative to the nominal (1, 0) evaluation
  double nominal = 0.0;
  std::size_t flagged_cells = 0;   // cells whose controls exceed the hardware box
};

RobustnessResult robustness_map(const Instance& inst, const Schedule& schedule, std::span<const double> omega_scales,
                                std::span<const double> delta_shifts, const EvalSettings& settings,
                                std::uint64_t seed = 0, std::size_t jobs = 1);

struct StretchPoint {
  double duration = 0.0;
  double p_mis = 0.0;
};

// Evaluates the same schedule shape played over each requested duration.
std::vector<StretchPoint> duration_stretch(const Instance& inst, const Schedule& schedule,
                                           std::span<const double> durations, const EvalSettings& settings,
                                           std::uint64_t seed = 0, std::size_t jobs = 1);

}  // namespace rydmis
