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

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "rydmis/distribution.hpp"
#include "rydmis/graph.hpp"
#include "rydmis/register.hpp"
#include "rydmis/schedule.hpp"

namespace rydmis {

inline constexpr std::size_t kMaxQubits = 20;
inline constexpr std::size_t kDenseHamiltonianCap = 14;
inline constexpr std::size_t kDenseEigenCap = 10;

// Angular units throughout: rad/µs, µs, ℏ = 1.
struct RydbergParams {
  double c6 = kTwoPi * 138000.0;  // rad/µs · µm⁶
  double omega_max = kTwoPi * 2.0;
  double delta_max_abs = kTwoPi * 10.0;
};

double interaction_strength(double r, const RydbergParams& params = {});

// Interaction scale U = C6 / r_min⁶ of a register (5 µm reference below two atoms).
double energy_unit(const Register& reg, const RydbergParams& params = {});

using Complex = std::complex<double>;
using StateVector = std::vector<Complex>;

// Basis index bit i = occupation of vertex i.
struct QuantumState {
  std::size_t n = 0;
  StateVector amplitudes;

  static QuantumState basis(std::size_t n, std::uint64_t index);
  double norm() const;
  double probability(std::uint64_t index) const { return std::norm(amplitudes.at(index)); }
};

// H(Ω, δ) = (Ω/2) Σ σˣ_i − δ Σ n_i + Σ_{i<j} U_ij n_i n_j applied without
// storing the matrix. The operator is real symmetric for real Ω.
class RydbergOperator {
 public:
  RydbergOperator(const Register& reg, const RydbergParams& params = {});

  std::size_t qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return interaction_.size(); }
  double interaction(std::uint64_t z) const { return interaction_[z]; }
  int occupation(std::uint64_t z) const { return occupation_[z]; }
  double unit() const noexcept { return unit_; }

  // out = H in.
  void apply(const Complex* in, Complex* out, double omega, double delta) const;
  void apply(const double* in, double* out, double omega, double delta) const;
  // out = −i (H − (i/2) κ n_tot) in.
  void derivative(const Complex* in, Complex* out, double omega, double delta, double kappa = 0.0) const;

  Eigen::MatrixXd dense(double omega, double delta) const;
  Eigen::SparseMatrix<double> sparse(double omega, double delta) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> interaction_;
  std::vector<std::uint8_t> occupation_;
  double unit_ = 0.0;
};

using Hamiltonian = std::variant<Eigen::MatrixXd, Eigen::SparseMatrix<double>>;

// Dense up to 14 qubits, sparse up to 20; TooManyQubits beyond.
Hamiltonian build_hamiltonian(const Register& reg, double omega, double delta, const RydbergParams& params = {});

struct EvolveOptions {
  double tol = 1e-8;
  double t_begin = 0.0;
  std::optional<double> t_end;  // defaults to the schedule duration
};

QuantumState evolve(const RydbergOperator& op, const Schedule& schedule, const QuantumState& initial,
                    const EvolveOptions& options = {});
QuantumState evolve(const Register& reg, const Schedule& schedule, const QuantumState& initial,
                    const RydbergParams& params = {}, const EvolveOptions& options = {});

// Multinomial shot counts.
Distribution sample(const QuantumState& state, std::size_t shots, std::uint64_t seed);
// |a_z|² for every z above `drop_below`.
Distribution exact_distribution(const QuantumState& state, double drop_below = 0.0);

struct Eigenpairs {
  std::vector<double> values;  // ascending
  Eigen::MatrixXd vectors;     // column k pairs with values[k]
};

// Lowest k eigenpairs: dense diagonalisation up to 10 qubits, restarted
// Lanczos with deflation beyond.
Eigenpairs lowest_eigenpairs(const RydbergOperator& op, double omega, double delta, std::size_t k,
                             double tol = 1e-10);

struct GroundState {
  double energy = 0.0;
  QuantumState state;
  bool degenerate = false;
  std::size_t manifold_dim = 1;  // levels within 1e-6·U of the ground energy (of those computed)
  Eigen::MatrixXd manifold;      // orthonormal basis of the computed ground manifold
  double residual = 0.0;
};

GroundState ground_state(const RydbergOperator& op, double omega, double delta);
GroundState ground_state(const Register& reg, double omega, double delta, const RydbergParams& params = {});

// Basis-state classes: 0 non-IS, 1 IS below the maximum, 2 MIS.
std::vector<std::uint8_t> basis_categories(const Graph& g, std::size_t mis_size);
std::vector<std::uint64_t> mis_indices(const Graph& g);

struct MapGrid {
  std::vector<double> omega_over_u;
  std::vector<double> delta_over_u;
};

// Rows follow omega_over_u, columns delta_over_u.
Eigen::MatrixXd pmis_map(const Graph& g, const Register& reg, const MapGrid& grid, const RydbergParams& params = {},
                         std::size_t jobs = 1);

struct FamilyMember {
  Graph graph;
  Register reg;
};
// Elementwise minimum over the family.
Eigen::MatrixXd pmis_map_family(const std::vector<FamilyMember>& family, const MapGrid& grid,
                                const RydbergParams& params = {}, std::size_t jobs = 1);

struct GapOptions {
  double degeneracy_tol = 1e-6;  // relative to U
  double composition_threshold = 0.99;
  bool strict = false;  // raise AmbiguousManifold on mixed manifolds
};

// Gap between the lowest |MIS| levels (the MIS manifold) and the next level.
double mis_gap(const RydbergOperator& op, const Graph& g, double omega, double delta, const GapOptions& options = {});
Eigen::MatrixXd gap_map(const Graph& g, const Register& reg, const MapGrid& grid, const RydbergParams& params = {},
                        const GapOptions& options = {}, std::size_t jobs = 1);

struct SpectrumSample {
  double t = 0.0;
  std::vector<double> energies;
  std::vector<double> populations;
  std::vector<std::array<double, 3>> composition;  // non-IS, IS, MIS weight per level
};

std::vector<SpectrumSample> spectrum_along_schedule(const Graph& g, const Register& reg, const Schedule& schedule,
                                                    std::size_t n_times, std::size_t k_levels,
                                                    const RydbergParams& params = {},
                                                    std::optional<QuantumState> initial = std::nullopt);

// N / Δ² in µs (a guidance scale).
double adiabatic_time_bound(double min_gap, std::size_t n_qubits);

struct NoiseParams {
  double t1 = 100.0;  // µs
  double t2 = 4.5;    // µs
  double eps = 0.03;
  double eps_prime = 0.08;

  static NoiseParams noiseless() {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {inf, inf, 0.0, 0.0};
  }
  void validate() const;
  double decay_rate() const;      // 1/T1
  double dephasing_rate() const;  // 1/T2 − 1/(2T1)
};

// Quantum-trajectory average of the measured distribution under amplitude
// damping (σ⁻ at 1/T1) and pure dephasing (n_i at rate 2γ_φ) on every qubit.
Distribution evolve_noisy(const Register& reg, const Schedule& schedule, const NoiseParams& noise,
                          std::size_t n_trajectories, std::uint64_t seed, const RydbergParams& params = {},
                          const EvolveOptions& options = {}, std::size_t jobs = 1);

}  // namespace rydmis
