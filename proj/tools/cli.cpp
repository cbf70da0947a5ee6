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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rydmis/analysis.hpp"
#include "rydmis/embedding.hpp"
#include "rydmis/error.hpp"
#include "rydmis/gisp.hpp"
#include "rydmis/io.hpp"
#include "rydmis/measurement.hpp"
#include "rydmis/parallel.hpp"
#include "rydmis/pipeline.hpp"
#include "rydmis/postprocess.hpp"
#include "rydmis/random.hpp"
#include "rydmis/rydberg.hpp"
#include "rydmis/schedule.hpp"
#include "rydmis/version.hpp"

namespace fs = std::filesystem;

namespace rydmis::cli {

namespace {

using io::json;

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  const auto dots = text.find("..");
  try {
    if (dots != std::string::npos) {
      const auto lo = std::stoul(text.substr(0, dots));
      const auto hi = std::stoul(text.substr(dots + 2));
      if (hi < lo) raise(ErrorKind::InvalidArgument, "size range '" + text + "' is empty");
      for (auto s = lo; s <= hi; ++s) out.push_back(s);
    } else {
      std::istringstream is(text);
      std::string cell;
      while (std::getline(is, cell, ',')) out.push_back(std::stoul(cell));
    }
  } catch (const std::logic_error&) {
    raise(ErrorKind::InvalidArgument, "bad size list '" + text + "'");
  }
  if (out.empty()) raise(ErrorKind::InvalidArgument, "bad size list '" + text + "'");
  return out;
}

// "lo:hi:n" → n evenly spaced values including both ends.
std::vector<double> parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::istringstream is(text);
  std::string cell;
  while (std::getline(is, cell, ':')) parts.push_back(cell);
  try {
    if (parts.size() == 1) return {std::stod(parts[0])};
    if (parts.size() != 3) throw std::invalid_argument(text);
    const double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
    const auto n = std::stoul(parts[2]);
    if (n == 0) throw std::invalid_argument(text);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1.0);
    return out;
  } catch (const std::logic_error&) {
    raise(ErrorKind::InvalidArgument, "bad range '" + text + "', expected lo:hi:n");
  }
}

std::pair<std::size_t, std::size_t> parse_budget(const std::string& text) {
  const auto plus = text.find('+');
  try {
    if (plus == std::string::npos) throw std::invalid_argument(text);
    return {std::stoul(text.substr(0, plus)), std::stoul(text.substr(plus + 1))};
  } catch (const std::logic_error&) {
    raise(ErrorKind::InvalidArgument, "bad budget '" + text + "', expected n_init+n_opt");
  }
}

struct NamedGraph {
  std::string id;
  UdGraph graph;
};

std::vector<NamedGraph> load_family(const fs::path& dir) {
  if (!fs::is_directory(dir)) return {{dir.stem().string(), io::graph_from_json(io::load_json(dir))}};
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json" && e.path().stem().string().rfind("graph_", 0) == 0)
      files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) raise(ErrorKind::ParseError, "no graph_*.json files in " + dir.string());
  std::vector<NamedGraph> out;
  for (const auto& f : files) out.push_back({f.stem().string(), io::graph_from_json(io::load_json(f))});
  return out;
}

std::vector<Instance> prepare_all(const std::vector<NamedGraph>& family, std::size_t jobs) {
  std::vector<Instance> out(family.size());
  parallel_for(family.size(), jobs, [&](std::size_t i) { out[i] = Instance::prepare(family[i].graph); });
  return out;
}

// Accepts a bare schedule file or a trained-protocol file.
Schedule load_schedule(const fs::path& path) {
  const json j = io::load_json(path);
  return j.contains("schedule") ? io::schedule_from_json(j.at("schedule")) : io::schedule_from_json(j);
}

Distribution load_distribution(const fs::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::ParseError, "cannot open " + path.string());
  return io::read_distribution_csv(in);
}

void save_distribution(const fs::path& path, const Distribution& d, const std::map<std::string, std::string>& prov) {
  std::ostringstream os;
  io::write_distribution_csv(os, d, prov);
  io::write_text(path, os.str());
}

template <class Writer>
void save_csv(const fs::path& path, Writer&& w) {
  std::ostringstream os;
  w(os);
  io::write_text(path, os.str());
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

// Shared state for every subcommand.
struct Context {
  CLI::App* sub = nullptr;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;

  void manifest(const fs::path& at) const {
    io::Manifest m;
    m.command = sub->get_name();
    m.config = sub->config_to_str(true, false);
    m.seed = seed;
    m.inputs = inputs;
    m.outputs = outputs;
    io::save_json(at, io::manifest_to_json(m));
  }
  void finish(const fs::path& out) const {
    manifest(fs::is_directory(out) ? out / "manifest.json" : fs::path(out.string() + ".manifest.json"));
  }
};

NoiseParams noise_from(double t1, double t2, double eps, double eps_prime) {
  NoiseParams n{t1, t2, eps, eps_prime};
  n.validate();
  return n;
}

struct NoiseFlags {
  bool enabled = false;
  double t1 = 100.0, t2 = 4.5, eps = 0.03, eps_prime = 0.08;
  std::size_t trajectories = 500;

  void add(CLI::App* app) {
    app->add_flag("--noise", enabled, "Evaluate with decoherence and detection errors");
    app->add_option("--t1-us", t1, "Relaxation time T1");
    app->add_option("--t2-us", t2, "Dephasing time T2");
    app->add_option("--eps", eps, "False-positive detection rate");
    app->add_option("--eps-prime", eps_prime, "False-negative detection rate");
    app->add_option("--trajectories", trajectories, "Quantum trajectories per evaluation");
  }
  std::optional<NoiseSetting> setting() const {
    if (!enabled) return std::nullopt;
    return NoiseSetting{noise_from(t1, t2, eps, eps_prime), trajectories, true};
  }
};

// ---- subcommands ----------------------------------------------------------

void cmd_generate(Context& ctx, const std::string& layout, std::size_t rows, std::size_t cols, double spacing,
                  const std::string& sizes_text, std::size_t per_size, bool trees, const fs::path& out) {
  const auto sizes = parse_sizes(sizes_text);
  const std::size_t largest = *std::max_element(sizes.begin(), sizes.end());
  if (rows == 0) rows = std::max<std::size_t>(5, static_cast<std::size_t>(std::ceil(std::sqrt(2.0 * largest))) + 1);
  if (cols == 0) cols = rows;
  const auto lat = generate_lattice(parse_lattice_kind(layout), rows, cols, spacing);
  FamilyOptions opts;
  opts.allow_cycles = !trees;
  const auto family = sample_family(lat, sizes, per_size, ctx.seed, opts);
  fs::create_directories(out);
  for (std::size_t i = 0; i < family.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "graph_%04zu.json", i);
    io::save_json(out / name, io::graph_to_json(family[i]));
    ctx.outputs.push_back((out / name).string());
  }
  std::cout << "wrote " << family.size() << " graphs to " << out.string() << "\n";
  ctx.finish(out);
}

void cmd_embed(Context& ctx, const fs::path& graph_path, const std::string& method, double target_nn,
               const fs::path& out) {
  ctx.inputs.push_back(graph_path.string());
  const UdGraph g = io::graph_from_json(io::load_json(graph_path));
  Register reg;
  double rb = g.blockade_radius();
  if (method == "lattice") {
    reg = embed_on_lattice(g);
  } else if (method == "force") {
    ForceDirectedOptions opts;
    opts.target_nn = target_nn;
    auto fr = embed_force_directed(g.graph(), ctx.seed, opts);
    reg = std::move(fr.reg);
    rb = fr.blockade_radius;
  } else {
    raise(ErrorKind::UnknownKind, "unknown embedding method '" + method + "'");
  }
  const auto rep = validate_embedding(g.graph(), reg, rb);
  json j = io::register_to_json(reg);
  j["blockade_radius_um"] = rb;
  j["report"] = {{"edge_residual", rep.edge_residual}, {"tail_residual", rep.tail_residual},
                 {"ratio_worst", rep.ratio_worst},     {"tail_hazard", rep.tail_hazard},
                 {"edges_match", rep.edges_match},     {"accepted", rep.accepted}};
  io::save_json(out, j);
  ctx.outputs.push_back(out.string());
  std::cout << "ratio_worst " << rep.ratio_worst << (rep.accepted ? " accepted" : " rejected") << "\n";
  ctx.finish(out);
}

std::unique_ptr<Parametrization> make_parametrization(const std::string& kind, std::size_t m, double tmax,
                                                      std::size_t depth) {
  if (kind == "vqaa") {
    VqaaBounds b;
    b.t_max = tmax;
    b.t_min = std::min(b.t_min, tmax);
    return std::make_unique<VqaaParametrization>(m, b);
  }
  QaoaSettings s;
  s.depth = depth;
  if (kind == "qaoa_tied") return std::make_unique<QaoaTiedParametrization>(s);
  if (kind == "qaoa_full") return std::make_unique<QaoaFullParametrization>(s);
  raise(ErrorKind::UnknownKind, "unknown parametrization '" + kind + "'");
}

struct TrainArgs {
  fs::path family, out, history;
  std::string param = "vqaa", cost = "pmis", budget = "25+175";
  std::size_t m = 3, depth = 5, shots = 0;
  double tmax = 4.0, std_weight = 1.0;
};

void cmd_train(Context& ctx, const TrainArgs& a) {
  ctx.inputs.push_back(a.family.string());
  const auto family = load_family(a.family);
  FamilyObjective obj;
  obj.instances = prepare_all(family, ctx.jobs);
  obj.eval.kind = parse_cost_kind(a.cost);
  obj.eval.shots = a.shots;
  obj.std_weight = a.std_weight;
  obj.seed = derive_seed(ctx.seed, 1);
  obj.jobs = ctx.jobs;
  const auto [n_init, n_opt] = parse_budget(a.budget);
  BoOptions bo;
  bo.n_init = n_init;
  bo.n_opt = n_opt;
  const auto param = make_parametrization(a.param, a.m, a.tmax, a.depth);
  const auto proto = train_transferable(obj, *param, bo, ctx.seed);

  json j = io::protocol_to_json(proto);
  json ids = json::array();
  for (const auto& g : family) ids.push_back(g.id);
  j["graph_ids"] = ids;
  fs::path hist = a.history.empty() ? fs::path(a.out.string() + ".history.csv") : a.history;
  {
    std::ostringstream os;
    os << "iter";
    for (const auto& n : proto.names) os << "," << n;
    os << ",cost,best\n";
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < proto.history.size(); ++i) {
      const auto& o = proto.history[i];
      os << i;
      for (double t : o.theta) os << "," << fmt(t);
      if (!o.failed) best = std::min(best, o.cost);
      os << "," << (o.failed ? std::string("nan") : fmt(o.cost)) << "," << fmt(best) << "\n";
    }
    io::write_text(hist, os.str());
  }
  j["history_path"] = hist.string();
  io::save_json(a.out, j);
  ctx.outputs = {a.out.string(), hist.string()};
  double mean = 0.0, worst = 1.0;
  for (const auto& e : proto.per_graph) {
    mean += e.p_mis / static_cast<double>(proto.per_graph.size());
    worst = std::min(worst, e.p_mis);
  }
  std::cout << "training cost " << proto.training_cost << ", mean P(MIS) " << mean << ", min " << worst << "\n";
  ctx.finish(a.out);
}

void cmd_transfer(Context& ctx, const fs::path& proto_path, const fs::path& family_path, const NoiseFlags& noise,
                  std::size_t shots, const fs::path& out, const fs::path& histogram) {
  ctx.inputs = {proto_path.string(), family_path.string()};
  const json pj = io::load_json(proto_path);
  const auto proto = io::protocol_from_json(pj);
  const auto family = load_family(family_path);
  const auto inst = prepare_all(family, ctx.jobs);
  EvalSettings es;
  es.shots = shots;
  es.noise = noise.setting();
  const auto rep = evaluate_transfer(proto.schedule, proto.fingerprint, inst, es, ctx.seed, ctx.jobs);
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
  json per = json::array();
  for (std::size_t i = 0; i < family.size(); ++i)
    per.push_back({{"graph_id", family[i].id},
                   {"n", family[i].graph.order()},
                   {"p_mis", rep.per_graph[i].p_mis},
                   {"ratio", rep.per_graph[i].ratio}});
  io::save_json(out, {{"mean_pmis", rep.mean_pmis},
                      {"min_pmis", rep.min_pmis},
                      {"std_pmis", rep.std_pmis},
                      {"mean_ratio", rep.mean_ratio},
                      {"warnings", rep.warnings},
                      {"per_graph", per}});
  ctx.outputs.push_back(out.string());
  if (!histogram.empty()) {
    std::vector<std::string> ids;
    for (const auto& g : family) ids.push_back(g.id);
    save_csv(histogram, [&](std::ostream& os) { io::write_histogram_csv(os, ids, rep.per_graph); });
    ctx.outputs.push_back(histogram.string());
  }
  std::cout << "mean P(MIS) " << rep.mean_pmis << ", min " << rep.min_pmis << "\n";
  ctx.finish(out);
}

void cmd_scan(Context& ctx, const fs::path& family_path, const std::string& what, const std::string& omega_range,
              const std::string& delta_range, const fs::path& out) {
  ctx.inputs.push_back(family_path.string());
  const auto family = load_family(family_path);
  MapGrid grid{parse_range(omega_range), parse_range(delta_range)};
  Eigen::MatrixXd values;
  if (what == "pmis") {
    std::vector<FamilyMember> members;
    for (const auto& g : family) members.push_back({g.graph.graph(), register_of(g.graph)});
    values = members.size() == 1 ? pmis_map(members[0].graph, members[0].reg, grid, {}, ctx.jobs)
                                 : pmis_map_family(members, grid, {}, ctx.jobs);
  } else if (what == "gap") {
    if (family.size() != 1) raise(ErrorKind::InvalidArgument, "gap maps take a single graph");
    values = gap_map(family[0].graph.graph(), register_of(family[0].graph), grid, {}, {}, ctx.jobs);
  } else {
    raise(ErrorKind::UnknownKind, "unknown scan '" + what + "'");
  }
  save_csv(out, [&](std::ostream& os) { io::write_map_csv(os, grid, values); });
  ctx.outputs.push_back(out.string());
  ctx.finish(out);
}

void cmd_sample(Context& ctx, const fs::path& graph_path, const fs::path& sched_path, std::size_t shots, bool exact,
                const NoiseFlags& noise, const fs::path& out) {
  ctx.inputs = {graph_path.string(), sched_path.string()};
  const UdGraph g = io::graph_from_json(io::load_json(graph_path));
  const Schedule s = load_schedule(sched_path);
  const Register reg = register_of(g);
  Distribution d;
  if (noise.enabled) {
    const auto ns = *noise.setting();
    d = evolve_noisy(reg, s, ns.noise, noise.trajectories, derive_seed(ctx.seed, 1), {}, {}, ctx.jobs);
    d = apply_detection_errors(d, DetectionModel::uniform(g.order(), ns.noise.eps, ns.noise.eps_prime),
                               DetectionMode::exact_tensor);
    if (!exact) {
      // Draw shots from the noisy distribution.
      const auto dense = d.to_dense();
      QuantumState pseudo{g.order(), StateVector(dense.size())};
      for (std::size_t z = 0; z < dense.size(); ++z) pseudo.amplitudes[z] = std::sqrt(dense[z]);
      d = sample(pseudo, shots, derive_seed(ctx.seed, 2));
    }
  } else {
    const auto psi = evolve(reg, s, QuantumState::basis(g.order(), 0));
    d = exact ? exact_distribution(psi, 1e-14) : sample(psi, shots, derive_seed(ctx.seed, 2));
  }
  save_distribution(out, d, {{"graph", graph_path.string()}, {"schedule", sched_path.string()},
                             {"seed", std::to_string(ctx.seed)}});
  ctx.outputs.push_back(out.string());
  ctx.finish(out);
}

void cmd_corrupt(Context& ctx, const fs::path& in, double eps, double eps_prime, const std::string& mode,
                 const fs::path& out) {
  ctx.inputs.push_back(in.string());
  const Distribution d = load_distribution(in);
  DetectionMode m;
  if (mode == "exact") m = DetectionMode::exact_tensor;
  else if (mode == "stochastic") m = DetectionMode::stochastic;
  else raise(ErrorKind::UnknownKind, "unknown detection mode '" + mode + "'");
  const auto res = apply_detection_errors(d, DetectionModel::uniform(d.bits(), eps, eps_prime), m, ctx.seed);
  save_distribution(out, res, {{"corrupted_from", in.string()}, {"eps", fmt(eps)}, {"eps_prime", fmt(eps_prime)}});
  ctx.outputs.push_back(out.string());
  ctx.finish(out);
}

void cmd_correct(Context& ctx, const fs::path& in, double eps, double eps_prime, const std::string& policy,
                 const fs::path& out) {
  ctx.inputs.push_back(in.string());
  const Distribution d = load_distribution(in);
  CorrectionPolicy p;
  if (policy == "truncate") p = CorrectionPolicy::truncate;
  else if (policy == "renormalize") p = CorrectionPolicy::renormalize;
  else raise(ErrorKind::UnknownKind, "unknown correction policy '" + policy + "'");
  const auto res = correct_distribution(d, DetectionModel::uniform(d.bits(), eps, eps_prime), p);
  save_distribution(out, res, {{"corrected_from", in.string()}, {"eps", fmt(eps)}, {"eps_prime", fmt(eps_prime)},
                               {"policy", policy}});
  ctx.outputs.push_back(out.string());
  ctx.finish(out);
}

void cmd_postprocess(Context& ctx, const fs::path& graph_path, const fs::path& in, std::size_t depth,
                     const std::string& choice, const fs::path& out, const fs::path& report) {
  ctx.inputs = {graph_path.string(), in.string()};
  const UdGraph g = io::graph_from_json(io::load_json(graph_path));
  const Distribution d = load_distribution(in);
  PostprocessOptions opts{depth, parse_extension_choice(choice), ctx.seed};
  const auto res = postprocess_distribution(g.graph(), d, opts);
  save_distribution(out, res.dist, {{"postprocessed_from", in.string()}, {"depth", std::to_string(depth)}});
  ctx.outputs.push_back(out.string());
  const std::size_t s = mis_exact(g.graph()).size;
  json r = {{"depth", depth},
            {"avg_removed", res.avg_removed},
            {"avg_added", res.avg_added},
            {"p_mis_before", 1.0 - cost_pmis(g.graph(), d, s)},
            {"p_mis_after", 1.0 - cost_pmis(g.graph(), res.dist, s)}};
  const fs::path rp = report.empty() ? fs::path(out.string() + ".report.json") : report;
  io::save_json(rp, r);
  ctx.outputs.push_back(rp.string());
  std::cout << r.dump() << "\n";
  ctx.finish(out);
}

void cmd_fit(Context& ctx, const fs::path& in, std::size_t k, double n_target, double fidelity, const fs::path& out) {
  ctx.inputs.push_back(in.string());
  std::ifstream is(in);
  if (!is) raise(ErrorKind::ParseError, "cannot open " + in.string());
  const auto pts = io::read_scaling_points(is, k);
  const auto fit = fit_decay(pts, k);
  json j = io::fit_to_json(fit);
  if (n_target > 0.0) {
    j["shots"] = {{"N", n_target}, {"F", fidelity}, {"n_shots", extrapolate_shots(fit, n_target, fidelity)}};
  }
  io::save_json(out, j);
  ctx.outputs.push_back(out.string());
  std::cout << j.dump() << "\n";
  ctx.finish(out);
}

void cmd_gisp_import(Context& ctx, const fs::path& in, const fs::path& out) {
  ctx.inputs.push_back(in.string());
  io::save_json(out, io::gisp_to_json(parse_gisp_dataset(in)));
  ctx.outputs.push_back(out.string());
  ctx.finish(out);
}

void cmd_gisp_tograph(Context& ctx, const fs::path& in, const fs::path& out) {
  ctx.inputs.push_back(in.string());
  const auto inst = io::gisp_from_json(io::load_json(in));
  const Graph g = gisp_to_graph(inst);
  json j = io::conflict_graph_to_json(inst, g);
  if (g.order() <= kDefaultExactCap) j["mis_size"] = mis_exact(g).size;
  io::save_json(out, j);
  ctx.outputs.push_back(out.string());
  ctx.finish(out);
}

struct ReportArgs {
  std::string what;
  fs::path family, protocol, in, out;
  std::string x_range, y_range, scan_kind = "vqaa";
  std::string omega_scales = "0.9:1.1:5", delta_shifts = "-0.05:0.05:5", durations = "0.25:4:16";
  std::size_t depth = 5, points = 401, k_max = 4, levels = 6;
  double penalty = kDefaultPenalty;
};

void cmd_report(Context& ctx, const ReportArgs& a) {
  if (!a.family.empty()) ctx.inputs.push_back(a.family.string());
  if (!a.protocol.empty()) ctx.inputs.push_back(a.protocol.string());
  if (!a.in.empty()) ctx.inputs.push_back(a.in.string());
  auto need = [](const fs::path& p, const char* flag) {
    if (p.empty()) raise(ErrorKind::InvalidArgument, std::string("report needs ") + flag);
  };

  if (a.what == "waveform") {
    need(a.protocol, "--protocol");
    const auto samples = sample_waveform(load_schedule(a.protocol), a.points);
    save_csv(a.out, [&](std::ostream& os) { io::write_waveform_csv(os, samples); });
  } else if (a.what == "histogram") {
    need(a.protocol, "--protocol");
    need(a.family, "--family");
    const auto family = load_family(a.family);
    const auto inst = prepare_all(family, ctx.jobs);
    const auto rep = evaluate_transfer(load_schedule(a.protocol), {}, inst, {}, ctx.seed, ctx.jobs);
    std::vector<std::string> ids;
    for (const auto& g : family) ids.push_back(g.id);
    save_csv(a.out, [&](std::ostream& os) { io::write_histogram_csv(os, ids, rep.per_graph); });
  } else if (a.what == "landscape") {
    need(a.family, "--family");
    const auto family = load_family(a.family);
    const auto inst = prepare_all(family, ctx.jobs);
    const auto xs = parse_range(a.x_range), ys = parse_range(a.y_range);
    std::unique_ptr<Parametrization> param;
    std::vector<double> xr = xs, yr = ys;
    if (a.scan_kind == "qaoa") {
      QaoaSettings s;
      s.depth = a.depth;
      param = std::make_unique<QaoaTiedParametrization>(s);
    } else if (a.scan_kind == "vqaa") {
      need(a.protocol, "--protocol");
      const auto p = io::protocol_from_json(io::load_json(a.protocol));
      const std::size_t m = (p.theta.size() - 3) / 2;
      // Ranges are in MHz for VQAA detuning knots.
      for (auto& v : xr) v *= kTwoPi;
      for (auto& v : yr) v *= kTwoPi;
      const double lo = std::min(xr.front(), yr.front()), hi = std::max(xr.back(), yr.back());
      param = std::make_unique<VqaaTailParametrization>(VqaaParams::from_vector(p.theta, m), lo, hi);
    } else {
      raise(ErrorKind::UnknownKind, "unknown landscape kind '" + a.scan_kind + "'");
    }
    const auto res = landscape_scan(inst, *param, xr, yr, {}, ctx.jobs);
    save_csv(a.out, [&](std::ostream& os) { io::write_grid_csv(os, "x", xs, "y", ys, res.mean); });
    const fs::path am(a.out.string() + ".argmin.csv");
    save_csv(am, [&](std::ostream& os) {
      os << "graph_id,x,y\n";
      for (std::size_t g = 0; g < family.size(); ++g)
        os << family[g].id << "," << fmt(xs[res.argmin[g].first]) << "," << fmt(ys[res.argmin[g].second]) << "\n";
    });
    ctx.outputs.push_back(am.string());
  } else if (a.what == "robustness") {
    need(a.protocol, "--protocol");
    need(a.family, "--family");
    const auto family = load_family(a.family);
    const Instance inst = Instance::prepare(family.front().graph);
    auto shifts = parse_range(a.delta_shifts);
    const auto scales = parse_range(a.omega_scales);
    std::vector<double> shifts_abs = shifts;
    for (auto& v : shifts_abs) v *= inst.op->unit();
    const auto res = robustness_map(inst, load_schedule(a.protocol), scales, shifts_abs, {}, ctx.seed, ctx.jobs);
    save_csv(a.out, [&](std::ostream& os) {
      io::write_grid_csv(os, "omega_scale", scales, "delta_shift_over_u", shifts, res.one_minus_pmis);
    });
  } else if (a.what == "stretch") {
    need(a.protocol, "--protocol");
    need(a.family, "--family");
    const auto family = load_family(a.family);
    const Instance inst = Instance::prepare(family.front().graph);
    const auto ds = parse_range(a.durations);
    const auto pts = duration_stretch(inst, load_schedule(a.protocol), ds, {}, ctx.seed, ctx.jobs);
    save_csv(a.out, [&](std::ostream& os) {
      os << "T_us,p_mis\n";
      for (const auto& p : pts) os << fmt(p.duration) << "," << fmt(p.p_mis) << "\n";
    });
  } else if (a.what == "cumulative" || a.what == "curve") {
    need(a.family, "--family");
    need(a.in, "--in");
    const auto family = load_family(a.family);
    const Graph& g = family.front().graph.graph();
    const std::size_t s = mis_exact(g).size;
    const Distribution d = load_distribution(a.in);
    if (a.what == "cumulative") {
      const auto c = cumulative_misk(g, d, s, a.k_max);
      save_csv(a.out, [&](std::ostream& os) {
        os << "N,k,cum_prob,fit\n";
        for (std::size_t k = 0; k < c.cumulative.size(); ++k)
          os << g.order() << "," << k << "," << fmt(c.cumulative[k]) << ",nan\n";
      });
    } else {
      std::vector<double> grid;
      for (int d_pct = 0; d_pct <= 100; d_pct += 5) grid.push_back(d_pct);
      const auto curve = truncated_ratio_curve(g, d, s, a.penalty, grid);
      save_csv(a.out, [&](std::ostream& os) { io::write_curve_csv(os, curve); });
    }
  } else if (a.what == "spectrum") {
    need(a.protocol, "--protocol");
    need(a.family, "--family");
    const auto family = load_family(a.family);
    const auto& ug = family.front().graph;
    const auto spec = spectrum_along_schedule(ug.graph(), register_of(ug), load_schedule(a.protocol), a.points,
                                              a.levels);
    save_csv(a.out, [&](std::ostream& os) {
      os << "t_us,level,energy_mhz,population,mis_weight\n";
      for (const auto& smp : spec)
        for (std::size_t l = 0; l < smp.energies.size(); ++l)
          os << fmt(smp.t) << "," << l << "," << fmt(smp.energies[l] / kTwoPi) << ","
             << fmt(l < smp.populations.size() ? smp.populations[l] : 0.0) << ","
             << fmt(l < smp.composition.size() ? smp.composition[l][2] : 0.0) << "\n";
    });
  } else {
    raise(ErrorKind::UnknownKind, "unknown report '" + a.what + "'");
  }
  ctx.outputs.insert(ctx.outputs.begin(), a.out.string());
  ctx.finish(a.out);
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Rydberg-array MIS solver: graph families, pulse training, sampling and analysis", "rydmis"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "TOML-style configuration; command-line flags take precedence");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  Context ctx;
  ctx.jobs = 1;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", ctx.seed, "Root seed");
    sub->add_option("--jobs", ctx.jobs, "Worker threads")->check(CLI::PositiveNumber);
  };
  std::function<void()> action;

  // generate
  std::string layout = "triangular", sizes = "5..9";
  std::size_t rows = 0, cols = 0, per_size = 10;
  double spacing = 5.0;
  bool trees = false;
  fs::path out;
  auto* gen = app.add_subcommand("generate", "Sample a lattice graph family");
  gen->add_option("--layout", layout, "triangular, square or shastry_sutherland");
  gen->add_option("--rows", rows, "Lattice rows (default sized to the family)");
  gen->add_option("--cols", cols, "Lattice columns");
  gen->add_option("--spacing-um", spacing, "Lattice spacing");
  gen->add_option("--sizes", sizes, "Graph sizes, e.g. 5..9 or 5,7");
  gen->add_option("--per-size", per_size, "Graphs per size");
  gen->add_flag("--trees", trees, "Reject graphs with cycles");
  gen->add_option("--out", out, "Output directory")->required();
  common(gen);
  gen->callback([&] { action = [&] { cmd_generate(ctx, layout, rows, cols, spacing, sizes, per_size, trees, out); }; });

  // embed
  fs::path graph_path;
  std::string method = "lattice";
  double target_nn = 6.0;
  auto* emb = app.add_subcommand("embed", "Embed a graph into an atom register");
  emb->add_option("--graph", graph_path, "Graph file")->required();
  emb->add_option("--method", method, "lattice or force");
  emb->add_option("--target-nn-um", target_nn, "Median edge length for force-directed layouts");
  emb->add_option("--out", out, "Register file")->required();
  common(emb);
  emb->callback([&] { action = [&] { cmd_embed(ctx, graph_path, method, target_nn, out); }; });

  // train
  TrainArgs ta;
  auto* tr = app.add_subcommand("train", "Train a transferable protocol on a graph family");
  tr->add_option("--family", ta.family, "Family directory")->required();
  tr->add_option("--param", ta.param, "vqaa, qaoa_tied or qaoa_full");
  tr->add_option("--m", ta.m, "Interior VQAA knots");
  tr->add_option("--depth", ta.depth, "QAOA layers");
  tr->add_option("--tmax-us", ta.tmax, "Maximum VQAA duration");
  tr->add_option("--budget", ta.budget, "Evaluations as n_init+n_opt");
  tr->add_option("--cost", ta.cost, "pmis or ratio");
  tr->add_option("--shots", ta.shots, "Shots per evaluation (0 = exact)");
  tr->add_option("--std-weight", ta.std_weight, "Weight of the family standard deviation");
  tr->add_option("--history", ta.history, "History CSV path");
  tr->add_option("--out", ta.out, "Protocol file")->required();
  common(tr);
  tr->callback([&] { action = [&] { cmd_train(ctx, ta); }; });

  // transfer
  fs::path proto_path, family_path, histogram;
  std::size_t shots = 0;
  NoiseFlags noise;
  auto* tf = app.add_subcommand("transfer", "Evaluate a trained protocol on another family");
  tf->add_option("--protocol", proto_path, "Protocol file")->required();
  tf->add_option("--family", family_path, "Family directory")->required();
  tf->add_option("--shots", shots, "Shots per graph (0 = exact)");
  tf->add_option("--histogram", histogram, "graph_id,p_mis CSV");
  tf->add_option("--out", out, "Report file")->required();
  noise.add(tf);
  common(tf);
  tf->callback([&] { action = [&] { cmd_transfer(ctx, proto_path, family_path, noise, shots, out, histogram); }; });

  // scan
  std::string what = "pmis", omega_range = "0.02:1:25", delta_range = "0:3:31";
  auto* sc = app.add_subcommand("scan", "Ground-state P(MIS) or gap maps over (Omega/U, delta/U)");
  sc->add_option("--family", family_path, "Graph file or family directory")->required();
  sc->add_option("--what", what, "pmis or gap");
  sc->add_option("--omega-over-u", omega_range, "lo:hi:n");
  sc->add_option("--delta-over-u", delta_range, "lo:hi:n");
  sc->add_option("--out", out, "Map CSV")->required();
  common(sc);
  sc->callback([&] { action = [&] { cmd_scan(ctx, family_path, what, omega_range, delta_range, out); }; });

  // sample
  fs::path sched_path;
  std::size_t sample_shots = 1000;
  bool exact = false;
  auto* sa = app.add_subcommand("sample", "Evolve under a schedule and measure");
  sa->add_option("--graph", graph_path, "Graph file")->required();
  sa->add_option("--schedule", sched_path, "Schedule or protocol file")->required();
  sa->add_option("--shots", sample_shots, "Shots");
  sa->add_flag("--exact", exact, "Write exact probabilities instead of counts");
  sa->add_option("--out", out, "Distribution CSV")->required();
  noise.add(sa);
  common(sa);
  sa->callback([&] { action = [&] { cmd_sample(ctx, graph_path, sched_path, sample_shots, exact, noise, out); }; });

  // corrupt / correct
  fs::path in;
  double eps = 0.03, eps_prime = 0.08;
  std::string mode = "exact", policy = "truncate";
  auto* co = app.add_subcommand("corrupt", "Apply detection errors to a distribution");
  co->add_option("--in", in, "Distribution CSV")->required();
  co->add_option("--eps", eps, "p(0 read as 1)");
  co->add_option("--eps-prime", eps_prime, "p(1 read as 0)");
  co->add_option("--mode", mode, "exact or stochastic");
  co->add_option("--out", out, "Distribution CSV")->required();
  common(co);
  co->callback([&] { action = [&] { cmd_corrupt(ctx, in, eps, eps_prime, mode, out); }; });

  auto* cr = app.add_subcommand("correct", "Invert detection errors");
  cr->add_option("--in", in, "Distribution CSV")->required();
  cr->add_option("--eps", eps, "p(0 read as 1)");
  cr->add_option("--eps-prime", eps_prime, "p(1 read as 0)");
  cr->add_option("--policy", policy, "truncate or renormalize");
  cr->add_option("--out", out, "Distribution CSV")->required();
  common(cr);
  cr->callback([&] { action = [&] { cmd_correct(ctx, in, eps, eps_prime, policy, out); }; });

  // postprocess
  std::size_t depth = 1;
  std::string choice = "sample_one";
  fs::path report;
  auto* pp = app.add_subcommand("postprocess", "Repair and extend measured bitstrings");
  pp->add_option("--graph", graph_path, "Graph file")->required();
  pp->add_option("--in", in, "Distribution CSV")->required();
  pp->add_option("--depth", depth, "Vertices added per extension round (0-3)");
  pp->add_option("--choice", choice, "sample_one or split_mass");
  pp->add_option("--report", report, "Stats JSON");
  pp->add_option("--out", out, "Distribution CSV")->required();
  common(pp);
  pp->callback([&] { action = [&] { cmd_postprocess(ctx, graph_path, in, depth, choice, out, report); }; });

  // fit
  std::size_t k = 0;
  double n_target = 0.0, fidelity = 0.99;
  auto* fi = app.add_subcommand("fit", "Fit the piecewise exponential decay of MIS-k probabilities");
  fi->add_option("--in", in, "Scaling CSV N,k,cum_prob[,fit]")->required();
  fi->add_option("--k", k, "MIS-k level");
  fi->add_option("--shots-for-n", n_target, "Also extrapolate shots at this size");
  fi->add_option("--target", fidelity, "Target success probability for the extrapolation");
  fi->add_option("--out", out, "Fit JSON")->required();
  common(fi);
  fi->callback([&] { action = [&] { cmd_fit(ctx, in, k, n_target, fidelity, out); }; });

  // gisp
  auto* gi = app.add_subcommand("gisp", "Group interval scheduling instances");
  gi->require_subcommand(1);
  fs::path gisp_in;
  auto* gim = gi->add_subcommand("import", "CSV task list to instance JSON");
  gim->add_option("input", gisp_in, "CSV task_id,group_id,start,end")->required();
  gim->add_option("--out", out, "Instance JSON")->required();
  common(gim);
  gim->callback([&] {
    ctx.sub = gim;
    action = [&] { cmd_gisp_import(ctx, gisp_in, out); };
  });
  auto* gtg = gi->add_subcommand("tograph", "Instance JSON to conflict graph");
  gtg->add_option("input", gisp_in, "Instance JSON")->required();
  gtg->add_option("--out", out, "Conflict graph JSON")->required();
  common(gtg);
  gtg->callback([&] {
    ctx.sub = gtg;
    action = [&] { cmd_gisp_tograph(ctx, gisp_in, out); };
  });

  // report
  ReportArgs ra;
  auto* rp = app.add_subcommand("report", "Plot-ready CSV exports");
  rp->add_option("what", ra.what, "waveform, histogram, landscape, robustness, stretch, cumulative, curve, spectrum")
      ->required();
  rp->add_option("--family", ra.family, "Graph file or family directory");
  rp->add_option("--protocol", ra.protocol, "Protocol or schedule file");
  rp->add_option("--in", ra.in, "Distribution CSV");
  rp->add_option("--kind", ra.scan_kind, "Landscape kind: vqaa or qaoa");
  rp->add_option("--x", ra.x_range, "Landscape axis lo:hi:n (MHz for vqaa, us for qaoa)");
  rp->add_option("--y", ra.y_range, "Landscape axis lo:hi:n");
  rp->add_option("--depth", ra.depth, "QAOA layers");
  rp->add_option("--omega-scales", ra.omega_scales, "lo:hi:n");
  rp->add_option("--delta-shifts-over-u", ra.delta_shifts, "lo:hi:n");
  rp->add_option("--durations-us", ra.durations, "lo:hi:n");
  rp->add_option("--points", ra.points, "Waveform samples or spectrum times");
  rp->add_option("--levels", ra.levels, "Spectrum levels");
  rp->add_option("--k-max", ra.k_max, "Largest MIS-k level");
  rp->add_option("--penalty", ra.penalty, "Constraint penalty");
  rp->add_option("--out", ra.out, "CSV path")->required();
  common(rp);
  rp->callback([&] { action = [&] { cmd_report(ctx, ra); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (!ctx.sub)
      for (auto* s : {gen, emb, tr, tf, sc, sa, co, cr, pp, fi, rp})
        if (s->parsed()) ctx.sub = s;
    if (action) action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args);
}

}  // namespace rydmis::cli
