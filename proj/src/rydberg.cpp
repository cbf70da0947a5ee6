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

#include "rydmis/rydberg.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "rydmis/error.hpp"
#include "rydmis/parallel.hpp"
#include "rydmis/random.hpp"

namespace rydmis {

namespace odeint = boost::numeric::odeint;

double interaction_strength(double r, const RydbergParams& params) {
  if (!(r > 0.0)) raise(ErrorKind::ZeroDistance, "interaction at non-positive distance");
  return params.c6 / std::pow(r, 6);
}

double energy_unit(const Register& reg, const RydbergParams& params) {
  double r_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < reg.size(); ++i) {
    for (std::size_t j = i + 1; j < reg.size(); ++j) r_min = std::min(r_min, distance(reg.positions[i], reg.positions[j]));
  }
  if (!std::isfinite(r_min)) r_min = 5.0;
  return interaction_strength(r_min, params);
}

QuantumState QuantumState::basis(std::size_t n, std::uint64_t index) {
  if (n > kMaxQubits) raise(ErrorKind::TooManyQubits, std::to_string(n) + " qubits exceeds the exact cap");
  QuantumState s;
  s.n = n;
  s.amplitudes.assign(std::size_t{1} << n, Complex{0.0, 0.0});
  s.amplitudes.at(index) = 1.0;
  return s;
}

double QuantumState::norm() const {
  double acc = 0.0;
  for (const auto& a : amplitudes) acc += std::norm(a);
  return std::sqrt(acc);
}

RydbergOperator::RydbergOperator(const Register& reg, const RydbergParams& params) : n_(reg.size()) {
  if (n_ > kMaxQubits) {
    raise(ErrorKind::TooManyQubits, std::to_string(n_) + " qubits exceeds the exact cap of " + std::to_string(kMaxQubits));
  }
  std::vector<double> u(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double v = interaction_strength(distance(reg.positions[i], reg.positions[j]), params);
      u[i * n_ + j] = v;
      u[j * n_ + i] = v;
    }
  }
  const std::size_t dim = std::size_t{1} << n_;
  interaction_.assign(dim, 0.0);
  occupation_.assign(dim, 0);
  for (std::uint64_t z = 1; z < dim; ++z) {
    const auto low = static_cast<std::size_t>(std::countr_zero(z));
    const auto rest = z & (z - 1);
    double e = interaction_[rest];
    for (auto r = rest; r != 0; r &= r - 1) e += u[low * n_ + static_cast<std::size_t>(std::countr_zero(r))];
    interaction_[z] = e;
    occupation_[z] = static_cast<std::uint8_t>(std::popcount(z));
  }
  unit_ = energy_unit(reg, params);
}

void RydbergOperator::apply(const Complex* in, Complex* out, double omega, double delta) const {
  const double half = 0.5 * omega;
  const auto dim = this->dim();
  for (std::size_t z = 0; z < dim; ++z) {
    Complex acc = (interaction_[z] - delta * occupation_[z]) * in[z];
    for (std::size_t i = 0; i < n_; ++i) acc += half * in[z ^ (std::size_t{1} << i)];
    out[z] = acc;
  }
}

void RydbergOperator::apply(const double* in, double* out, double omega, double delta) const {
  const double half = 0.5 * omega;
  const auto dim = this->dim();
  for (std::size_t z = 0; z < dim; ++z) {
    double acc = (interaction_[z] - delta * occupation_[z]) * in[z];
    for (std::size_t i = 0; i < n_; ++i) acc += half * in[z ^ (std::size_t{1} << i)];
    out[z] = acc;
  }
}

void RydbergOperator::derivative(const Complex* in, Complex* out, double omega, double delta, double kappa) const {
  const double half = 0.5 * omega;
  const auto dim = this->dim();
  for (std::size_t z = 0; z < dim; ++z) {
    const Complex diag(interaction_[z] - delta * occupation_[z], -0.5 * kappa * occupation_[z]);
    Complex acc = diag * in[z];
    for (std::size_t i = 0; i < n_; ++i) acc += half * in[z ^ (std::size_t{1} << i)];
    out[z] = Complex(acc.imag(), -acc.real());  // −i · acc
  }
}

Eigen::MatrixXd RydbergOperator::dense(double omega, double delta) const {
  const auto dim = static_cast<Eigen::Index>(this->dim());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index z = 0; z < dim; ++z) {
    h(z, z) = interaction_[z] - delta * occupation_[z];
    for (std::size_t i = 0; i < n_; ++i) h(z, z ^ (Eigen::Index{1} << i)) = 0.5 * omega;
  }
  return h;
}

Eigen::SparseMatrix<double> RydbergOperator::sparse(double omega, double delta) const {
  const auto dim = static_cast<Eigen::Index>(this->dim());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(dim) * (n_ + 1));
  for (Eigen::Index z = 0; z < dim; ++z) {
    trip.emplace_back(z, z, interaction_[z] - delta * occupation_[z]);
    if (omega != 0.0) {
      for (std::size_t i = 0; i < n_; ++i) trip.emplace_back(z, z ^ (Eigen::Index{1} << i), 0.5 * omega);
    }
  }
  Eigen::SparseMatrix<double> h(dim, dim);
  h.setFromTriplets(trip.begin(), trip.end());
  return h;
}

Hamiltonian build_hamiltonian(const Register& reg, double omega, double delta, const RydbergParams& params) {
  RydbergOperator op(reg, params);
  if (op.qubits() <= kDenseHamiltonianCap) return op.dense(omega, delta);
  return op.sparse(omega, delta);
}

namespace {

// Right-hand side of the (possibly non-Hermitian) Schrödinger equation on one
// schedule segment. Piecewise-constant channels are read at the segment
// midpoint so stage evaluations on the boundary never pick up the next value.
struct Rhs {
  const RydbergOperator* op;
  const Schedule* schedule;
  double mid;
  double kappa;

  void operator()(const StateVector& x, StateVector& dxdt, double t) const {
    const auto& w = schedule->omega();
    const auto& d = schedule->delta();
    const double omega = w(w.kind() == Waveform::Kind::piecewise_constant ? mid : t);
    const double delta = d(d.kind() == Waveform::Kind::piecewise_constant ? mid : t);
    dxdt.resize(x.size());
    op->derivative(x.data(), dxdt.data(), omega, delta, kappa);
  }
};

using Dopri = odeint::runge_kutta_dopri5<StateVector>;

struct Window {
  std::vector<std::pair<double, double>> pieces;
};

Window schedule_window(const Schedule& schedule, const EvolveOptions& options) {
  const double t0 = options.t_begin;
  const double t1 = options.t_end.value_or(schedule.duration());
  if (t0 < 0.0 || t1 > schedule.duration() * (1 + 1e-12) || t1 < t0) {
    raise(ErrorKind::InvalidArgument, "evolution window outside the schedule");
  }
  Window w;
  const auto seg = schedule.segments();
  for (std::size_t k = 0; k + 1 < seg.size(); ++k) {
    const double a = std::max(seg[k], t0);
    const double b = std::min(seg[k + 1], t1);
    if (b > a) w.pieces.emplace_back(a, b);
  }
  return w;
}

double segment_mid(const Schedule& schedule, double a, double b) {
  // Midpoint of the schedule segment containing (a, b).
  const auto seg = schedule.segments();
  const double c = 0.5 * (a + b);
  const auto it = std::upper_bound(seg.begin(), seg.end(), c);
  if (it == seg.begin() || it == seg.end()) return c;
  return 0.5 * (*(it - 1) + *it);
}

void check_finite(const StateVector& x) {
  for (const auto& a : x) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) raise(ErrorKind::IntegratorFailure, "non-finite amplitude");
  }
}

double norm2(const StateVector& x) {
  double acc = 0.0;
  for (const auto& a : x) acc += std::norm(a);
  return acc;
}

}  // namespace

QuantumState evolve(const RydbergOperator& op, const Schedule& schedule, const QuantumState& initial,
                    const EvolveOptions& options) {
  if (initial.amplitudes.size() != op.dim()) raise(ErrorKind::LengthMismatch, "state dimension does not match register");
  if (std::abs(initial.norm() - 1.0) > 1e-6) raise(ErrorKind::InvalidArgument, "initial state is not normalized");
  StateVector x = initial.amplitudes;
  const auto window = schedule_window(schedule, options);
  try {
    for (auto [a, b] : window.pieces) {
      Rhs rhs{&op, &schedule, segment_mid(schedule, a, b), 0.0};
      auto stepper = odeint::make_controlled(options.tol, options.tol, Dopri());
      odeint::integrate_adaptive(stepper, rhs, x, a, b, std::min(b - a, 1e-2));
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    raise(ErrorKind::IntegratorFailure, e.what());
  }
  check_finite(x);
  return {initial.n, std::move(x)};
}

QuantumState evolve(const Register& reg, const Schedule& schedule, const QuantumState& initial,
                    const RydbergParams& params, const EvolveOptions& options) {
  return evolve(RydbergOperator(reg, params), schedule, initial, options);
}

Distribution sample(const QuantumState& state, std::size_t shots, std::uint64_t seed) {
  Distribution out(state.n, DistributionMode::counts);
  if (shots == 0) return out;
  Rng rng(seed);
  double remaining_mass = 0.0;
  for (const auto& a : state.amplitudes) remaining_mass += std::norm(a);
  std::size_t remaining = shots;
  const auto dim = state.amplitudes.size();
  for (std::size_t z = 0; z < dim && remaining > 0; ++z) {
    const double p = std::norm(state.amplitudes[z]);
    if (p <= 0.0) continue;
    std::size_t k = remaining;
    const double q = p / remaining_mass;
    if (q < 1.0) k = std::binomial_distribution<std::size_t>(remaining, q)(rng);
    if (k > 0) out.add(Bitstring::from_index(z, state.n), static_cast<double>(k));
    remaining -= k;
    remaining_mass -= p;
    if (remaining_mass <= 0.0) break;
  }
  if (remaining > 0) {
    // Round-off left shots unassigned; give them to the last populated state.
    for (std::size_t z = dim; z-- > 0;) {
      if (std::norm(state.amplitudes[z]) > 0.0) {
        out.add(Bitstring::from_index(z, state.n), static_cast<double>(remaining));
        break;
      }
    }
  }
  return out;
}

Distribution exact_distribution(const QuantumState& state, double drop_below) {
  std::vector<double> p(state.amplitudes.size());
  double total = 0.0;
  for (std::size_t z = 0; z < p.size(); ++z) total += (p[z] = std::norm(state.amplitudes[z]));
  for (auto& v : p) v /= total;
  return Distribution::from_dense(p, state.n, drop_below);
}

namespace {

Eigenpairs lanczos_lowest(const RydbergOperator& op, double omega, double delta, std::size_t k, double tol) {
  using Vec = Eigen::VectorXd;
  const auto dim = static_cast<Eigen::Index>(op.dim());
  const std::size_t basis = dim <= (1 << 16) ? 60 : (dim <= (1 << 18) ? 40 : 24);
  Rng rng(0x5eed5eedULL);
  std::normal_distribution<double> gauss;
  std::vector<Vec> found;
  std::vector<double> values;
  auto apply = [&](const Vec& in, Vec& out) {
    out.resize(dim);
    op.apply(in.data(), out.data(), omega, delta);
  };
  auto deflate = [&](Vec& v) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& f : found) v -= f.dot(v) * f;
    }
  };
  for (std::size_t level = 0; level < k; ++level) {
    Vec x(dim);
    for (Eigen::Index i = 0; i < dim; ++i) x[i] = gauss(rng);
    deflate(x);
    x.normalize();
    double theta = 0.0;
    double resid = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < 400; ++restart) {
      std::vector<Vec> q{x};
      std::vector<double> alpha, beta;
      Vec w;
      const std::size_t room = static_cast<std::size_t>(dim) - found.size();
      const std::size_t m = std::min(basis, room);
      for (std::size_t j = 0; j < m; ++j) {
        apply(q[j], w);
        alpha.push_back(q[j].dot(w));
        for (int pass = 0; pass < 2; ++pass) {
          for (const auto& v : q) w -= v.dot(w) * v;
          deflate(w);
        }
        const double b = w.norm();
        if (j + 1 == m || b < 1e-12 * std::max(1.0, std::abs(alpha.back()))) break;
        beta.push_back(b);
        q.push_back(w / b);
      }
      const auto J = static_cast<Eigen::Index>(alpha.size());
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(J, J);
      for (Eigen::Index i = 0; i < J; ++i) {
        t(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < J) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      theta = es.eigenvalues()[0];
      x.setZero();
      for (Eigen::Index i = 0; i < J; ++i) x += es.eigenvectors()(i, 0) * q[static_cast<std::size_t>(i)];
      deflate(x);
      x.normalize();
      apply(x, w);
      theta = x.dot(w);
      resid = (w - theta * x).norm();
      if (resid <= tol * std::max(1.0, std::abs(theta))) break;
    }
    if (!(resid <= 1e2 * tol * std::max(1.0, std::abs(theta)))) {
      raise(ErrorKind::NoConvergence, "Lanczos residual " + std::to_string(resid) + " above tolerance");
    }
    found.push_back(x);
    values.push_back(theta);
  }
  std::vector<std::size_t> order(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  Eigenpairs out;
  out.vectors.resize(dim, static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.values.push_back(values[order[i]]);
    out.vectors.col(static_cast<Eigen::Index>(i)) = found[order[i]];
  }
  return out;
}

}  // namespace

Eigenpairs lowest_eigenpairs(const RydbergOperator& op, double omega, double delta, std::size_t k, double tol) {
  k = std::min<std::size_t>(k, op.dim());
  if (op.qubits() <= kDenseEigenCap) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.dense(omega, delta));
    if (es.info() != Eigen::Success) raise(ErrorKind::NoConvergence, "dense eigensolver failed");
    Eigenpairs out;
    const auto kk = static_cast<Eigen::Index>(k);
    out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + kk);
    out.vectors = es.eigenvectors().leftCols(kk);
    return out;
  }
  return lanczos_lowest(op, omega, delta, k, tol);
}

GroundState ground_state(const RydbergOperator& op, double omega, double delta) {
  const std::size_t k = op.qubits() <= kDenseEigenCap ? op.dim() : std::min<std::size_t>(2, op.dim());
  const auto ep = lowest_eigenpairs(op, omega, delta, k);
  GroundState gs;
  gs.energy = ep.values[0];
  const double tol = 1e-6 * op.unit();
  std::size_t dimm = 1;
  while (dimm < ep.values.size() && ep.values[dimm] - ep.values[0] <= tol) ++dimm;
  gs.manifold_dim = dimm;
  gs.degenerate = dimm > 1;
  gs.manifold = ep.vectors.leftCols(static_cast<Eigen::Index>(dimm));
  gs.state.n = op.qubits();
  gs.state.amplitudes.resize(op.dim());
  for (std::size_t z = 0; z < op.dim(); ++z) gs.state.amplitudes[z] = ep.vectors(static_cast<Eigen::Index>(z), 0);
  std::vector<double> v(op.dim()), hv(op.dim());
  for (std::size_t z = 0; z < op.dim(); ++z) v[z] = ep.vectors(static_cast<Eigen::Index>(z), 0);
  op.apply(v.data(), hv.data(), omega, delta);
  double r = 0.0;
  for (std::size_t z = 0; z < op.dim(); ++z) r += std::pow(hv[z] - gs.energy * v[z], 2);
  gs.residual = std::sqrt(r);
  return gs;
}

GroundState ground_state(const Register& reg, double omega, double delta, const RydbergParams& params) {
  return ground_state(RydbergOperator(reg, params), omega, delta);
}

namespace {

std::vector<std::uint64_t> adjacency_masks(const Graph& g) {
  if (g.order() > 24) raise(ErrorKind::TooLarge, "basis enumeration limited to 24 vertices");
  std::vector<std::uint64_t> adj(g.order(), 0);
  for (auto [i, j] : g.edges()) {
    adj[i] |= std::uint64_t{1} << j;
    adj[j] |= std::uint64_t{1} << i;
  }
  return adj;
}

}  // namespace

std::vector<std::uint8_t> basis_categories(const Graph& g, std::size_t mis_size) {
  const auto adj = adjacency_masks(g);
  const std::size_t dim = std::size_t{1} << g.order();
  std::vector<std::uint8_t> cat(dim, 0);
  for (std::uint64_t z = 0; z < dim; ++z) {
    bool independent = true;
    for (auto r = z; r != 0 && independent; r &= r - 1) independent = (adj[std::countr_zero(r)] & z) == 0;
    if (!independent) continue;
    cat[z] = static_cast<std::size_t>(std::popcount(z)) == mis_size ? 2 : 1;
  }
  return cat;
}

std::vector<std::uint64_t> mis_indices(const Graph& g) {
  const auto res = mis_exact(g, true);
  std::vector<std::uint64_t> out;
  out.reserve(res.maximum_sets.size());
  for (const auto& b : res.maximum_sets) out.push_back(b.to_index());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

double manifold_mis_weight(const Eigenpairs& ep, std::size_t levels, const std::vector<std::uint64_t>& mis) {
  double acc = 0.0;
  for (std::size_t l = 0; l < levels; ++l) {
    for (auto z : mis) acc += std::pow(ep.vectors(static_cast<Eigen::Index>(z), static_cast<Eigen::Index>(l)), 2);
  }
  return acc / static_cast<double>(levels);
}

void check_register(const Graph& g, const Register& reg) {
  if (g.order() != reg.size()) raise(ErrorKind::LengthMismatch, "graph and register sizes differ");
}

double ground_pmis(const RydbergOperator& op, const std::vector<std::uint64_t>& mis, double omega, double delta) {
  const std::size_t k = op.qubits() <= kDenseEigenCap ? op.dim() : mis.size() + 1;
  const auto ep = lowest_eigenpairs(op, omega, delta, k);
  const double tol = 1e-6 * op.unit();
  std::size_t levels = 1;
  while (levels < ep.values.size() && ep.values[levels] - ep.values[0] <= tol) ++levels;
  return manifold_mis_weight(ep, levels, mis);
}

}  // namespace

Eigen::MatrixXd pmis_map(const Graph& g, const Register& reg, const MapGrid& grid, const RydbergParams& params,
                         std::size_t jobs) {
  check_register(g, reg);
  const RydbergOperator op(reg, params);
  const auto mis = mis_indices(g);
  const auto nw = grid.omega_over_u.size();
  const auto nd = grid.delta_over_u.size();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(nw), static_cast<Eigen::Index>(nd));
  parallel_for(nw * nd, jobs, [&](std::size_t idx) {
    const auto i = idx / nd;
    const auto j = idx % nd;
    out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
        ground_pmis(op, mis, grid.omega_over_u[i] * op.unit(), grid.delta_over_u[j] * op.unit());
  });
  return out;
}

Eigen::MatrixXd pmis_map_family(const std::vector<FamilyMember>& family, const MapGrid& grid,
                                const RydbergParams& params, std::size_t jobs) {
  if (family.empty()) raise(ErrorKind::InvalidArgument, "empty family");
  Eigen::MatrixXd out;
  for (const auto& m : family) {
    auto map = pmis_map(m.graph, m.reg, grid, params, jobs);
    out = out.size() == 0 ? map : out.cwiseMin(map).eval();
  }
  return out;
}

double mis_gap(const RydbergOperator& op, const Graph& g, double omega, double delta, const GapOptions& options) {
  const auto mis = mis_indices(g);
  const std::size_t n_mis = mis.size();
  if (n_mis >= op.dim()) return 0.0;
  const std::size_t k = op.qubits() <= kDenseEigenCap ? op.dim() : n_mis + 1;
  const auto ep = lowest_eigenpairs(op, omega, delta, k);
  if (options.strict) {
    const double c = manifold_mis_weight(ep, n_mis, mis);
    const double lo = 1.0 - options.composition_threshold;
    if (c > lo && c < options.composition_threshold) {
      raise(ErrorKind::AmbiguousManifold, "MIS weight of the lowest manifold is " + std::to_string(c));
    }
  }
  double gap = ep.values[n_mis] - ep.values[n_mis - 1];
  if (gap <= options.degeneracy_tol * op.unit()) gap = 0.0;
  return gap;
}

Eigen::MatrixXd gap_map(const Graph& g, const Register& reg, const MapGrid& grid, const RydbergParams& params,
                        const GapOptions& options, std::size_t jobs) {
  check_register(g, reg);
  const RydbergOperator op(reg, params);
  mis_indices(g);  // validates the exact-solver cap before fanning out
  const auto nw = grid.omega_over_u.size();
  const auto nd = grid.delta_over_u.size();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(nw), static_cast<Eigen::Index>(nd));
  parallel_for(nw * nd, jobs, [&](std::size_t idx) {
    const auto i = idx / nd;
    const auto j = idx % nd;
    out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
        mis_gap(op, g, grid.omega_over_u[i] * op.unit(), grid.delta_over_u[j] * op.unit(), options);
  });
  return out;
}

std::vector<SpectrumSample> spectrum_along_schedule(const Graph& g, const Register& reg, const Schedule& schedule,
                                                    std::size_t n_times, std::size_t k_levels,
                                                    const RydbergParams& params, std::optional<QuantumState> initial) {
  check_register(g, reg);
  if (n_times < 2) raise(ErrorKind::InvalidArgument, "need at least two sample times");
  const RydbergOperator op(reg, params);
  const auto cat = basis_categories(g, mis_exact(g).size);
  QuantumState psi = initial.value_or(QuantumState::basis(reg.size(), 0));
  std::vector<SpectrumSample> out;
  double t_prev = 0.0;
  for (std::size_t s = 0; s < n_times; ++s) {
    const double t = schedule.duration() * static_cast<double>(s) / static_cast<double>(n_times - 1);
    if (t > t_prev) {
      EvolveOptions opt;
      opt.t_begin = t_prev;
      opt.t_end = t;
      psi = evolve(op, schedule, psi, opt);
    }
    t_prev = t;
    const auto ep = lowest_eigenpairs(op, schedule.omega_at(t), schedule.delta_at(t), k_levels);
    SpectrumSample smp;
    smp.t = t;
    smp.energies = ep.values;
    for (std::size_t l = 0; l < ep.values.size(); ++l) {
      Complex overlap{0.0, 0.0};
      std::array<double, 3> comp{0.0, 0.0, 0.0};
      for (std::size_t z = 0; z < op.dim(); ++z) {
        const double v = ep.vectors(static_cast<Eigen::Index>(z), static_cast<Eigen::Index>(l));
        overlap += v * psi.amplitudes[z];
        comp[cat[z]] += v * v;
      }
      smp.populations.push_back(std::norm(overlap));
      smp.composition.push_back(comp);
    }
    out.push_back(std::move(smp));
  }
  return out;
}

double adiabatic_time_bound(double min_gap, std::size_t n_qubits) {
  if (!(min_gap > 0.0)) raise(ErrorKind::ZeroGap, "minimum gap must be positive");
  return static_cast<double>(n_qubits) / (min_gap * min_gap);
}

void NoiseParams::validate() const {
  if (!(t1 > 0.0) || !(t2 > 0.0)) raise(ErrorKind::InvalidNoise, "T1 and T2 must be positive");
  if (t2 > 2.0 * t1) raise(ErrorKind::InvalidNoise, "T2 exceeds 2·T1");
  if (!(eps >= 0.0 && eps < 1.0) || !(eps_prime >= 0.0 && eps_prime < 1.0)) {
    raise(ErrorKind::InvalidNoise, "detection error probabilities must lie in [0, 1)");
  }
}

double NoiseParams::decay_rate() const { return std::isfinite(t1) ? 1.0 / t1 : 0.0; }

double NoiseParams::dephasing_rate() const {
  const double r = (std::isfinite(t2) ? 1.0 / t2 : 0.0) - 0.5 * decay_rate();
  return std::max(0.0, r);
}

namespace {

using DenseStepper = odeint::dense_output_runge_kutta<odeint::controlled_runge_kutta<Dopri>>;

void apply_jump(StateVector& x, std::size_t n, double gamma_decay, double gamma_dephase, Rng& rng) {
  std::vector<double> weight(n, 0.0);
  for (std::size_t z = 0; z < x.size(); ++z) {
    const double p = std::norm(x[z]);
    if (p == 0.0) continue;
    for (auto r = static_cast<std::uint64_t>(z); r != 0; r &= r - 1) weight[static_cast<std::size_t>(std::countr_zero(r))] += p;
  }
  const double per_qubit = gamma_decay + gamma_dephase;
  double total = 0.0;
  for (double w : weight) total += per_qubit * w;
  if (!(total > 0.0)) return;
  double u = uniform01(rng) * total;
  std::size_t qubit = n - 1;
  bool decay = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (u < gamma_decay * weight[i]) {
      qubit = i;
      decay = true;
      break;
    }
    u -= gamma_decay * weight[i];
    if (u < gamma_dephase * weight[i]) {
      qubit = i;
      decay = false;
      break;
    }
    u -= gamma_dephase * weight[i];
  }
  const std::size_t bit = std::size_t{1} << qubit;
  if (decay) {
    // σ⁻ moves every |…1…⟩ amplitude onto |…0…⟩ and annihilates |…0…⟩.
    for (std::size_t z = 0; z < x.size(); ++z) {
      if (z & bit) {
        x[z ^ bit] = x[z];
        x[z] = 0.0;
      }
    }
  } else {
    for (std::size_t z = 0; z < x.size(); ++z) {
      if (!(z & bit)) x[z] = 0.0;
    }
  }
  const double nrm = std::sqrt(norm2(x));
  for (auto& a : x) a /= nrm;
}

std::vector<double> run_trajectory(const RydbergOperator& op, const Schedule& schedule, const Window& window,
                                   const NoiseParams& noise, double tol, std::uint64_t seed) {
  Rng rng(seed);
  const double g1 = noise.decay_rate();
  const double gd = 2.0 * noise.dephasing_rate();
  const double kappa = g1 + gd;
  StateVector x(op.dim(), Complex{0.0, 0.0});
  x[0] = 1.0;
  double threshold = uniform01(rng);
  StateVector tmp;
  double dt = 1e-2;
  for (auto [a, b] : window.pieces) {
    Rhs rhs{&op, &schedule, segment_mid(schedule, a, b), kappa};
    DenseStepper stepper = odeint::make_dense_output(tol, tol, Dopri());
    stepper.initialize(x, a, std::min(dt, b - a));
    for (;;) {
      const auto [t0, t1] = stepper.do_step(rhs);
      const double hi = std::min(t1, b);
      if (t1 > b) {
        stepper.calc_state(b, tmp);
      } else {
        tmp = stepper.current_state();
      }
      if (kappa > 0.0 && norm2(tmp) < threshold) {
        double lo_t = t0;
        double hi_t = hi;
        for (int it = 0; it < 60 && hi_t - lo_t > 1e-13; ++it) {
          const double mid = 0.5 * (lo_t + hi_t);
          stepper.calc_state(mid, tmp);
          (norm2(tmp) < threshold ? hi_t : lo_t) = mid;
        }
        stepper.calc_state(hi_t, tmp);
        apply_jump(tmp, op.qubits(), g1, gd, rng);
        threshold = uniform01(rng);
        x = tmp;
        dt = std::max(1e-6, stepper.current_time_step());
        if (hi_t >= b) break;
        stepper.initialize(x, hi_t, std::min(dt, b - hi_t));
        continue;
      }
      if (t1 >= b) {
        x = tmp;
        dt = std::max(1e-6, stepper.current_time_step());
        break;
      }
    }
  }
  check_finite(x);
  std::vector<double> p(x.size());
  const double total = norm2(x);
  for (std::size_t z = 0; z < x.size(); ++z) p[z] = std::norm(x[z]) / total;
  return p;
}

}  // namespace

Distribution evolve_noisy(const Register& reg, const Schedule& schedule, const NoiseParams& noise,
                          std::size_t n_trajectories, std::uint64_t seed, const RydbergParams& params,
                          const EvolveOptions& options, std::size_t jobs) {
  noise.validate();
  if (n_trajectories == 0) raise(ErrorKind::InvalidArgument, "need at least one trajectory");
  const RydbergOperator op(reg, params);
  const auto window = schedule_window(schedule, options);
  // Fixed blocks of trajectories are summed in order so the result does not
  // depend on the worker count.
  constexpr std::size_t kBlocks = 16;
  std::vector<std::vector<double>> partial(kBlocks, std::vector<double>(op.dim(), 0.0));
  try {
    parallel_for(kBlocks, jobs, [&](std::size_t blk) {
      for (std::size_t t = blk; t < n_trajectories; t += kBlocks) {
        const auto p = run_trajectory(op, schedule, window, noise, options.tol, derive_seed(seed, t));
        for (std::size_t z = 0; z < p.size(); ++z) partial[blk][z] += p[z];
      }
    });
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    raise(ErrorKind::IntegratorFailure, e.what());
  }
  std::vector<double> avg(op.dim(), 0.0);
  for (const auto& blk : partial) {
    for (std::size_t z = 0; z < avg.size(); ++z) avg[z] += blk[z];
  }
  for (auto& v : avg) v /= static_cast<double>(n_trajectories);
  return Distribution::from_dense(avg, reg.size(), 1e-15);
}

}  // namespace rydmis
