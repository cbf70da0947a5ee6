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

#include "rydmis/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "rydmis/error.hpp"
#include "rydmis/measurement.hpp"
#include "rydmis/parallel.hpp"
#include "rydmis/random.hpp"
#include "rydmis/register.hpp"

namespace rydmis {

std::string_view to_string(CostKind kind) {
  return kind == CostKind::one_minus_pmis ? "pmis" : "ratio";
}

CostKind parse_cost_kind(std::string_view text) {
  if (text == "pmis" || text == "one_minus_pmis") return CostKind::one_minus_pmis;
  if (text == "ratio" || text == "approx_ratio") return CostKind::approx_ratio;
  raise(ErrorKind::UnknownKind, "unknown cost kind '" + std::string(text) + "'");
}

double bitstring_energy(const Graph& g, const Bitstring& b, double penalty) {
  return -static_cast<double>(b.count()) + penalty * static_cast<double>(violated_edges(g, b));
}

double cost_pmis(const Graph& g, const Distribution& dist, std::size_t mis_size) {
  if (mis_size == 0) raise(ErrorKind::MissingMisSize, "cost_pmis needs the MIS size");
  const Distribution p = dist.normalized();
  double hit = 0.0;
  for (const auto& [b, w] : p.entries())
    if (b.count() == mis_size && is_independent_set(g, b)) hit += w;
  return 1.0 - hit;
}

double cost_ratio(const Graph& g, const Distribution& dist, std::size_t mis_size, double penalty) {
  if (mis_size == 0) raise(ErrorKind::MissingMisSize, "cost_ratio needs the MIS size");
  const Distribution p = dist.normalized();
  double energy = 0.0;
  for (const auto& [b, w] : p.entries()) energy += w * bitstring_energy(g, b, penalty);
  return 1.0 + energy / static_cast<double>(mis_size);
}

Instance Instance::prepare(const UdGraph& g, const RydbergParams& params, double penalty) {
  Instance inst;
  inst.graph = g;
  inst.params = params;
  const Graph& topo = g.graph();
  inst.mis_size = mis_exact(topo).size;
  inst.categories = basis_categories(topo, inst.mis_size);
  const std::size_t n = topo.order();
  inst.energies.resize(std::size_t{1} << n);
  for (std::uint64_t z = 0; z < inst.energies.size(); ++z)
    inst.energies[z] = bitstring_energy(topo, Bitstring::from_index(z, n), penalty);
  inst.op = std::make_shared<const RydbergOperator>(register_of(g), params);
  return inst;
}

namespace {

double pick_cost(const GraphEvaluation& e, CostKind kind) {
  return kind == CostKind::one_minus_pmis ? 1.0 - e.p_mis : e.ratio;
}

Distribution resample(const Distribution& dist, std::size_t shots, std::uint64_t seed) {
  const Distribution p = dist.normalized();
  std::vector<Bitstring> keys;
  std::vector<double> weights;
  for (const auto& [b, w] : p.entries()) {
    keys.push_back(b);
    weights.push_back(w);
  }
  Rng rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::vector<std::size_t> counts(keys.size(), 0);
  for (std::size_t s = 0; s < shots; ++s) ++counts[pick(rng)];
  Distribution out(p.bits(), DistributionMode::counts);
  for (std::size_t i = 0; i < keys.size(); ++i)
    if (counts[i] > 0) out.add(keys[i], static_cast<double>(counts[i]));
  return out;
}

}  // namespace

GraphEvaluation evaluate_state(const Instance& inst, const QuantumState& state, CostKind kind) {
  if (state.n != inst.topology().order()) raise(ErrorKind::LengthMismatch, "state and instance sizes differ");
  const double norm = state.norm();
  const double norm2 = norm * norm;
  GraphEvaluation e;
  double energy = 0.0;
  for (std::uint64_t z = 0; z < state.amplitudes.size(); ++z) {
    const double p = std::norm(state.amplitudes[z]) / norm2;
    if (inst.categories[z] == 2) e.p_mis += p;
    energy += p * inst.energies[z];
  }
  e.ratio = 1.0 + energy / static_cast<double>(inst.mis_size);
  e.cost = pick_cost(e, kind);
  return e;
}

GraphEvaluation evaluate_distribution(const Instance& inst, const Distribution& dist, CostKind kind, double penalty) {
  const Graph& g = inst.topology();
  GraphEvaluation e;
  e.p_mis = 1.0 - cost_pmis(g, dist, inst.mis_size);
  e.ratio = cost_ratio(g, dist, inst.mis_size, penalty);
  e.cost = pick_cost(e, kind);
  return e;
}

GraphEvaluation evaluate_schedule(const Instance& inst, const Schedule& schedule, const EvalSettings& settings,
                                  std::uint64_t seed) {
  const std::size_t n = inst.topology().order();
  if (settings.noise) {
    const NoiseSetting& ns = *settings.noise;
    Distribution dist = evolve_noisy(register_of(inst.graph), schedule, ns.noise, ns.trajectories,
                                     derive_seed(seed, 1), inst.params, settings.evolve, 1);
    if (ns.detection) {
      const auto model = DetectionModel::uniform(n, ns.noise.eps, ns.noise.eps_prime);
      dist = apply_detection_errors(dist, model, DetectionMode::exact_tensor);
    }
    if (settings.shots > 0) dist = resample(dist, settings.shots, derive_seed(seed, 2));
    return evaluate_distribution(inst, dist, settings.kind, settings.penalty);
  }
  const QuantumState final_state = evolve(*inst.op, schedule, QuantumState::basis(n, 0), settings.evolve);
  if (settings.shots == 0) return evaluate_state(inst, final_state, settings.kind);
  return evaluate_distribution(inst, sample(final_state, settings.shots, derive_seed(seed, 2)), settings.kind,
                               settings.penalty);
}

SearchSpace VqaaParametrization::space() const {
  SearchSpace sp;
  sp.dims.push_back({"T", bounds_.t_min, bounds_.t_max});
  for (std::size_t i = 1; i <= m_; ++i)
    sp.dims.push_back({"omega" + std::to_string(i), bounds_.omega_min, bounds_.omega_max});
  for (std::size_t j = 0; j < m_ + 2; ++j)
    sp.dims.push_back({"delta" + std::to_string(j), bounds_.delta_min, bounds_.delta_max});
  return sp;
}

Schedule VqaaParametrization::schedule(const Theta& theta) const {
  return vqaa_schedule(VqaaParams::from_vector(theta, m_), bounds_);
}

SearchSpace VqaaTailParametrization::space() const {
  const std::size_t m = base_.m();
  SearchSpace sp;
  sp.dims.push_back({"delta" + std::to_string(m), lower_, upper_});
  sp.dims.push_back({"delta" + std::to_string(m + 1), lower_, upper_});
  return sp;
}

Schedule VqaaTailParametrization::schedule(const Theta& theta) const {
  if (theta.size() != 2) raise(ErrorKind::LengthMismatch, "vqaa_tail takes two parameters");
  VqaaParams p = base_;
  const std::size_t k = p.delta_knots.size();
  p.delta_knots[k - 2] = theta[0];
  p.delta_knots[k - 1] = theta[1];
  return vqaa_schedule(p, bounds_);
}

namespace {

QaoaParams qaoa_base(const QaoaSettings& s) {
  QaoaParams q;
  q.omega_mix = s.omega_mix;
  q.delta_cost = s.delta_cost;
  q.init_pulse = s.init_pulse;
  return q;
}

}  // namespace

SearchSpace QaoaTiedParametrization::space() const {
  return SearchSpace{{{"t_cost", s_.t_min, s_.t_max}, {"t_mix", s_.t_min, s_.t_max}}};
}

Schedule QaoaTiedParametrization::schedule(const Theta& theta) const {
  if (theta.size() != 2) raise(ErrorKind::LengthMismatch, "qaoa_tied takes two parameters");
  QaoaParams q = qaoa_base(s_);
  q.t_cost.assign(s_.depth, theta[0]);
  q.t_mix.assign(s_.depth, theta[1]);
  return qaoa_schedule(q);
}

SearchSpace QaoaFullParametrization::space() const {
  SearchSpace sp;
  for (std::size_t l = 1; l <= s_.depth; ++l) sp.dims.push_back({"t_cost" + std::to_string(l), s_.t_min, s_.t_max});
  for (std::size_t l = 1; l <= s_.depth; ++l) sp.dims.push_back({"t_mix" + std::to_string(l), s_.t_min, s_.t_max});
  return sp;
}

Schedule QaoaFullParametrization::schedule(const Theta& theta) const {
  if (theta.size() != 2 * s_.depth) raise(ErrorKind::LengthMismatch, "qaoa_full takes 2p parameters");
  QaoaParams q = qaoa_base(s_);
  q.t_cost.assign(theta.begin(), theta.begin() + static_cast<std::ptrdiff_t>(s_.depth));
  q.t_mix.assign(theta.begin() + static_cast<std::ptrdiff_t>(s_.depth), theta.end());
  return qaoa_schedule(q);
}

FamilyCost aggregate_family_cost(std::span<const GraphEvaluation> per_graph, double std_weight) {
  if (per_graph.empty()) raise(ErrorKind::InvalidArgument, "empty family");
  FamilyCost fc;
  fc.per_graph.assign(per_graph.begin(), per_graph.end());
  double sum = 0.0;
  for (const auto& e : per_graph) sum += e.cost;
  fc.mean = sum / static_cast<double>(per_graph.size());
  double sq = 0.0;
  for (const auto& e : per_graph) sq += (e.cost - fc.mean) * (e.cost - fc.mean);
  fc.std = std::sqrt(sq / static_cast<double>(per_graph.size()));
  fc.value = fc.mean + std_weight * fc.std;
  return fc;
}

FamilyCost family_cost(const FamilyObjective& obj, const Schedule& schedule, std::uint64_t eval_index) {
  std::vector<GraphEvaluation> per(obj.instances.size());
  const std::uint64_t root = derive_seed(obj.seed, eval_index);
  parallel_for(per.size(), obj.jobs, [&](std::size_t i) {
    per[i] = evaluate_schedule(obj.instances[i], schedule, obj.eval, derive_seed(root, i));
  });
  return aggregate_family_cost(per, obj.std_weight);
}

FamilyFingerprint fingerprint(const std::vector<Instance>& family) {
  FamilyFingerprint fp;
  bool consistent = !family.empty();
  for (const auto& inst : family) {
    fp.sizes.push_back(inst.topology().order());
    const auto& prov = inst.graph.provenance();
    if (!prov) {
      consistent = false;
      continue;
    }
    if (!fp.kind) {
      fp.kind = prov->kind;
      fp.spacing = prov->spacing;
    } else if (*fp.kind != prov->kind || std::abs(fp.spacing - prov->spacing) > 1e-9 * fp.spacing) {
      consistent = false;
    }
  }
  if (!consistent) {
    fp.kind.reset();
    fp.spacing = 0.0;
  }
  std::sort(fp.sizes.begin(), fp.sizes.end());
  fp.sizes.erase(std::unique(fp.sizes.begin(), fp.sizes.end()), fp.sizes.end());
  return fp;
}

TrainedProtocol train_transferable(const FamilyObjective& obj, const Parametrization& param, const BoOptions& options,
                                   std::uint64_t seed) {
  const SearchSpace space = param.space();
  BayesOptimizer opt(space, options, seed);
  std::size_t iter = 0;
  while (!opt.done()) {
    const Theta theta = opt.suggest();
    try {
      opt.observe(theta, family_cost(obj, param.schedule(theta), iter).value);
    } catch (const Error&) {
      opt.observe_failure(theta);
    }
    ++iter;
  }

  const auto& hist = opt.history();
  std::size_t best = hist.size();
  for (std::size_t i = 0; i < hist.size(); ++i)
    if (!hist[i].failed && (best == hist.size() || hist[i].cost < hist[best].cost)) best = i;
  if (best == hist.size()) raise(ErrorKind::NonConvergence, "every training evaluation failed");

  TrainedProtocol out;
  out.parametrization = param.name();
  for (const auto& d : space.dims) out.names.push_back(d.name);
  out.theta = hist[best].theta;
  out.schedule = param.schedule(out.theta);
  out.fingerprint = fingerprint(obj.instances);
  FamilyCost fc = family_cost(obj, out.schedule, best);
  out.training_cost = fc.value;
  out.per_graph = std::move(fc.per_graph);
  out.history = hist;
  return out;
}

TransferReport evaluate_transfer(const Schedule& schedule, const FamilyFingerprint& trained_on,
                                 const std::vector<Instance>& test, const EvalSettings& settings, std::uint64_t seed,
                                 std::size_t jobs) {
  if (test.empty()) raise(ErrorKind::InvalidArgument, "empty test family");
  TransferReport rep;
  const FamilyFingerprint fp = fingerprint(test);
  if (!trained_on.kind || !fp.kind) {
    rep.warnings.push_back("lattice provenance unavailable for the training or test family");
  } else if (*trained_on.kind != *fp.kind ||
             std::abs(trained_on.spacing - fp.spacing) > 1e-9 * std::max(trained_on.spacing, fp.spacing)) {
    rep.warnings.push_back("layout mismatch: trained on " + std::string(to_string(*trained_on.kind)) + " a=" +
                           std::to_string(trained_on.spacing) + ", tested on " + std::string(to_string(*fp.kind)) +
                           " a=" + std::to_string(fp.spacing));
  }

  rep.per_graph.resize(test.size());
  parallel_for(test.size(), jobs, [&](std::size_t i) {
    rep.per_graph[i] = evaluate_schedule(test[i], schedule, settings, derive_seed(seed, i));
  });
  const double n = static_cast<double>(test.size());
  double sum = 0.0, ratio = 0.0;
  rep.min_pmis = std::numeric_limits<double>::infinity();
  for (const auto& e : rep.per_graph) {
    sum += e.p_mis;
    ratio += e.ratio;
    rep.min_pmis = std::min(rep.min_pmis, e.p_mis);
  }
  rep.mean_pmis = sum / n;
  rep.mean_ratio = ratio / n;
  double sq = 0.0;
  for (const auto& e : rep.per_graph) sq += (e.p_mis - rep.mean_pmis) * (e.p_mis - rep.mean_pmis);
  rep.std_pmis = std::sqrt(sq / n);
  return rep;
}

namespace {

std::pair<std::size_t, std::size_t> argmin_of(const Eigen::MatrixXd& m) {
  Eigen::Index r = 0, c = 0;
  m.minCoeff(&r, &c);
  return {static_cast<std::size_t>(r), static_cast<std::size_t>(c)};
}

}  // namespace

LandscapeResult landscape_scan(const std::vector<Instance>& family, const Parametrization& param,
                               std::span<const double> xs, std::span<const double> ys, const EvalSettings& settings,
                               std::size_t jobs) {
  if (param.space().size() != 2) raise(ErrorKind::InvalidArgument, "landscape scans need a two-parameter slice");
  if (family.empty() || xs.empty() || ys.empty()) raise(ErrorKind::InvalidArgument, "empty landscape scan");
  LandscapeResult res;
  res.xs.assign(xs.begin(), xs.end());
  res.ys.assign(ys.begin(), ys.end());
  const auto rows = static_cast<Eigen::Index>(xs.size());
  const auto cols = static_cast<Eigen::Index>(ys.size());
  res.per_graph.assign(family.size(), Eigen::MatrixXd::Zero(rows, cols));
  const std::size_t cells = xs.size() * ys.size();
  parallel_for(cells, jobs, [&](std::size_t k) {
    const std::size_t i = k / ys.size();
    const std::size_t j = k % ys.size();
    const Schedule s = param.schedule({xs[i], ys[j]});
    for (std::size_t g = 0; g < family.size(); ++g)
      res.per_graph[g](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          evaluate_schedule(family[g], s, settings, derive_seed(k, g)).cost;
  });
  res.mean = Eigen::MatrixXd::Zero(rows, cols);
  for (const auto& m : res.per_graph) {
    res.mean += m;
    res.argmin.push_back(argmin_of(m));
  }
  res.mean /= static_cast<double>(family.size());
  res.mean_argmin = argmin_of(res.mean);
  return res;
}

RobustnessResult robustness_map(const Instance& inst, const Schedule& schedule, std::span<const double> omega_scales,
                                std::span<const double> delta_shifts, const EvalSettings& settings,
                                std::uint64_t seed, std::size_t jobs) {
  RobustnessResult res;
  res.omega_scales.assign(omega_scales.begin(), omega_scales.end());
  res.delta_shifts.assign(delta_shifts.begin(), delta_shifts.end());
  res.nominal = 1.0 - evaluate_schedule(inst, schedule, settings, seed).p_mis;
  const auto rows = static_cast<Eigen::Index>(omega_scales.size());
  const auto cols = static_cast<Eigen::Index>(delta_shifts.size());
  res.one_minus_pmis = Eigen::MatrixXd::Zero(rows, cols);
  std::vector<std::uint8_t> flagged(omega_scales.size() * delta_shifts.size(), 0);
  const HardwareBounds hw{inst.params.omega_max, inst.params.delta_max_abs, kMinSegmentDuration};
  parallel_for(flagged.size(), jobs, [&](std::size_t k) {
    const std::size_t i = k / delta_shifts.size();
    const std::size_t j = k % delta_shifts.size();
    const Miscalibrated mc = miscalibrate(schedule, omega_scales[i], delta_shifts[j], hw);
    flagged[k] = mc.exceeds_bounds ? 1 : 0;
    res.one_minus_pmis(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
        1.0 - evaluate_schedule(inst, mc.schedule, settings, derive_seed(seed, k)).p_mis;
  });
  res.degradation = res.one_minus_pmis.array() - res.nominal;
  res.flagged_cells = static_cast<std::size_t>(std::count(flagged.begin(), flagged.end(), 1));
  return res;
}

std::vector<StretchPoint> duration_stretch(const Instance& inst, const Schedule& schedule,
                                           std::span<const double> durations, const EvalSettings& settings,
                                           std::uint64_t seed, std::size_t jobs) {
  std::vector<StretchPoint> out(durations.size());
  parallel_for(durations.size(), jobs, [&](std::size_t k) {
    const Schedule s = stretch(schedule, durations[k] / schedule.duration());
    out[k] = {durations[k], evaluate_schedule(inst, s, settings, derive_seed(seed, k)).p_mis};
  });
  return out;
}

}  // namespace rydmis
