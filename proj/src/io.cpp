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

#include "rydmis/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "rydmis/error.hpp"
#include "rydmis/version.hpp"

namespace rydmis::io {

namespace {

double to_mhz(double w) { return w / kTwoPi; }
double from_mhz(double f) { return f * kTwoPi; }

std::vector<double> scaled(const std::vector<double>& v, double factor) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * factor;
  return out;
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) raise(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    raise(ErrorKind::ParseError, std::string("bad field '") + key + "': " + e.what());
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

double parse_double(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    raise(ErrorKind::ParseError, "line " + std::to_string(line) + ": bad number '" + s + "'");
  }
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out << text;
}

json load_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    raise(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
}

void save_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

json graph_to_json(const UdGraph& g) {
  json j;
  j["blockade_radius_um"] = g.blockade_radius();
  json verts = json::array();
  for (std::size_t i = 0; i < g.order(); ++i)
    verts.push_back({{"id", i}, {"x_um", g.positions()[i].x}, {"y_um", g.positions()[i].y}});
  j["vertices"] = verts;
  json edges = json::array();
  for (const auto& [u, v] : g.graph().edges()) edges.push_back({u, v});
  j["edges"] = edges;
  if (const auto& p = g.provenance())
    j["lattice"] = {{"kind", to_string(p->kind)}, {"spacing_um", p->spacing}, {"sites", p->site_indices}};
  return j;
}

UdGraph graph_from_json(const json& j) {
  const double rb = field<double>(j, "blockade_radius_um");
  const auto verts = field<json>(j, "vertices");
  std::vector<Point> pos(verts.size());
  std::vector<bool> seen(verts.size(), false);
  for (const auto& v : verts) {
    const auto id = field<std::size_t>(v, "id");
    if (id >= pos.size() || seen[id]) raise(ErrorKind::ParseError, "vertex ids must be 0..n-1 without repeats");
    seen[id] = true;
    pos[id] = {field<double>(v, "x_um"), field<double>(v, "y_um")};
  }
  UdGraph g = build_unit_disk_graph(pos, rb);
  if (j.contains("edges")) {
    std::set<std::pair<std::size_t, std::size_t>> stored;
    for (const auto& e : j.at("edges")) {
      auto u = e.at(0).get<std::size_t>(), v = e.at(1).get<std::size_t>();
      stored.insert({std::min(u, v), std::max(u, v)});
    }
    std::set<std::pair<std::size_t, std::size_t>> built;
    for (const auto& [u, v] : g.graph().edges()) built.insert({std::min(u, v), std::max(u, v)});
    if (stored != built) raise(ErrorKind::ParseError, "stored edges disagree with the unit-disk geometry");
  }
  if (j.contains("lattice")) {
    const auto& l = j.at("lattice");
    LatticeProvenance p;
    p.kind = parse_lattice_kind(field<std::string>(l, "kind"));
    p.spacing = field<double>(l, "spacing_um");
    if (l.contains("sites")) p.site_indices = l.at("sites").get<std::vector<std::size_t>>();
    g.set_provenance(std::move(p));
  }
  return g;
}

json register_to_json(const Register& reg) {
  json pos = json::array();
  for (const auto& p : reg.positions) pos.push_back({p.x, p.y});
  return {{"positions_um", pos}};
}

Register register_from_json(const json& j) {
  Register reg;
  for (const auto& p : field<json>(j, "positions_um")) {
    if (!p.is_array() || p.size() != 2) raise(ErrorKind::ParseError, "positions must be [x, y] pairs");
    reg.positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  }
  return reg;
}

namespace {

void put_channel(json& j, const std::string& name, const Waveform& w) {
  j[name + "_knots_mhz"] = scaled(w.base_values(), 1.0 / kTwoPi);
  j[name + "_times_us"] = w.breakpoints();
  j[name + "_interp"] = w.kind() == Waveform::Kind::spline ? "monotone_cubic" : "piecewise_constant";
  if (w.scale() != 1.0) j[name + "_scale"] = w.scale();
  if (w.shift() != 0.0) j[name + "_shift_mhz"] = to_mhz(w.shift());
}

Waveform get_channel(const json& j, const std::string& name, double duration, ScheduleKind kind) {
  auto values = scaled(field<std::vector<double>>(j, (name + "_knots_mhz").c_str()), kTwoPi);
  const std::string interp = j.value(name + "_interp", kind == ScheduleKind::qaoa ? "piecewise_constant" : "monotone_cubic");
  std::vector<double> times;
  if (j.contains(name + "_times_us")) {
    times = field<std::vector<double>>(j, (name + "_times_us").c_str());
  } else if (interp == "monotone_cubic" && values.size() >= 2) {
    for (std::size_t i = 0; i < values.size(); ++i)
      times.push_back(duration * static_cast<double>(i) / static_cast<double>(values.size() - 1));
  } else {
    raise(ErrorKind::ParseError, "missing field '" + name + "_times_us'");
  }
  Waveform w = interp == "monotone_cubic" ? Waveform::spline(std::move(times), std::move(values))
                                          : Waveform::piecewise(std::move(times), std::move(values));
  const double scale = j.value(name + "_scale", 1.0);
  const double shift = from_mhz(j.value(name + "_shift_mhz", 0.0));
  return (scale != 1.0 || shift != 0.0) ? w.transformed(scale, shift) : w;
}

ScheduleKind parse_schedule_kind(const std::string& s) {
  if (s == "vqaa") return ScheduleKind::vqaa;
  if (s == "qaoa") return ScheduleKind::qaoa;
  if (s == "raw") return ScheduleKind::raw;
  raise(ErrorKind::UnknownKind, "unknown schedule kind '" + s + "'");
}

}  // namespace

json schedule_to_json(const Schedule& s) {
  json j;
  j["T_us"] = s.duration();
  j["kind"] = to_string(s.kind());
  put_channel(j, "omega", s.omega());
  put_channel(j, "delta", s.delta());
  return j;
}

Schedule schedule_from_json(const json& j) {
  const double t = field<double>(j, "T_us");
  const ScheduleKind kind = parse_schedule_kind(j.value("kind", std::string("raw")));
  return Schedule(t, get_channel(j, "omega", t, kind), get_channel(j, "delta", t, kind), kind);
}

json gisp_to_json(const GispInstance& inst) {
  json tasks = json::array();
  for (const auto& t : inst.tasks)
    tasks.push_back({{"task_id", t.task_id}, {"group_id", t.group_id}, {"start", t.start}, {"end", t.end}});
  return {{"tasks", tasks}};
}

GispInstance gisp_from_json(const json& j) {
  GispInstance inst;
  for (const auto& t : field<json>(j, "tasks"))
    inst.tasks.push_back({field<std::int64_t>(t, "task_id"), field<std::int64_t>(t, "group_id"),
                          field<double>(t, "start"), field<double>(t, "end")});
  return inst;
}

json conflict_graph_to_json(const GispInstance& inst, const Graph& g) {
  json ids = json::array();
  for (const auto& t : inst.tasks) ids.push_back(t.task_id);
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  return {{"vertices", g.order()}, {"task_ids", ids}, {"edges", edges}};
}

void write_distribution_csv(std::ostream& out, const Distribution& dist,
                            const std::map<std::string, std::string>& provenance) {
  for (const auto& [k, v] : provenance) out << "# " << k << ": " << v << "\n";
  out << "# mode: " << (dist.mode() == DistributionMode::counts ? "counts" : "probabilities") << "\n";
  out << "bitstring,count\n";
  for (const auto& [b, w] : dist.entries()) out << b.to_string() << "," << fmt(w) << "\n";
}

Distribution read_distribution_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::optional<DistributionMode> mode;
  std::vector<std::pair<Bitstring, double>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.find("mode: counts") != std::string::npos) mode = DistributionMode::counts;
      if (line.find("mode: probabilities") != std::string::npos) mode = DistributionMode::probabilities;
      continue;
    }
    if (!header) {
      if (split_csv(line) != std::vector<std::string>{"bitstring", "count"})
        raise(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected header bitstring,count");
      header = true;
      continue;
    }
    const auto cells = split_csv(line);
    if (cells.size() != 2) raise(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected 2 cells");
    Bitstring b;
    try {
      b = Bitstring::from_string(cells[0]);
    } catch (const Error& e) {
      raise(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": " + e.what());
    }
    rows.emplace_back(std::move(b), parse_double(cells[1], lineno));
  }
  if (!header) raise(ErrorKind::ParseError, "missing header bitstring,count");
  if (rows.empty()) raise(ErrorKind::EmptyDistribution, "distribution file has no rows");
  if (!mode) {
    bool integral = true;
    for (const auto& r : rows) integral = integral && r.second == std::floor(r.second);
    mode = integral ? DistributionMode::counts : DistributionMode::probabilities;
  }
  Distribution d(rows.front().first.size(), *mode);
  for (const auto& [b, w] : rows) {
    if (b.size() != d.bits()) raise(ErrorKind::ParseError, "bitstrings have different lengths");
    if (w > 0.0) d.add(b, w);
    else if (w < 0.0) raise(ErrorKind::ParseError, "negative weight for " + b.to_string());
  }
  return d;
}

void write_grid_csv(std::ostream& out, std::string_view x_name, std::span<const double> xs, std::string_view y_name,
                    std::span<const double> ys, const Eigen::MatrixXd& values) {
  if (values.rows() != static_cast<Eigen::Index>(xs.size()) || values.cols() != static_cast<Eigen::Index>(ys.size()))
    raise(ErrorKind::LengthMismatch, "grid axes do not match the matrix");
  out << x_name << "," << y_name << ",value\n";
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t k = 0; k < ys.size(); ++k)
      out << fmt(xs[i]) << "," << fmt(ys[k]) << ","
          << fmt(values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k))) << "\n";
}

void write_map_csv(std::ostream& out, const MapGrid& grid, const Eigen::MatrixXd& values) {
  write_grid_csv(out, "omega_over_u", grid.omega_over_u, "delta_over_u", grid.delta_over_u, values);
}

void write_waveform_csv(std::ostream& out, std::span<const WaveformSample> samples) {
  out << "t_us,omega_mhz,delta_mhz\n";
  for (const auto& s : samples) out << fmt(s.t) << "," << fmt(to_mhz(s.omega)) << "," << fmt(to_mhz(s.delta)) << "\n";
}

void write_histogram_csv(std::ostream& out, std::span<const std::string> ids, std::span<const GraphEvaluation> evals) {
  if (ids.size() != evals.size()) raise(ErrorKind::LengthMismatch, "ids and evaluations differ in length");
  out << "graph_id,p_mis\n";
  for (std::size_t i = 0; i < ids.size(); ++i) out << ids[i] << "," << fmt(evals[i].p_mis) << "\n";
}

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve) {
  out << "d_percent,cost\n";
  for (const auto& c : curve) out << fmt(c.d_percent) << "," << fmt(c.cost) << "\n";
}

void write_scaling_csv(std::ostream& out, std::span<const ScalingRow> rows) {
  out << "N,k,cum_prob,fit\n";
  for (const auto& r : rows) out << fmt(r.n) << "," << r.k << "," << fmt(r.cum_prob) << "," << fmt(r.fit) << "\n";
}

std::vector<ScalingPoint> read_scaling_points(std::istream& in, std::size_t k) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  std::vector<ScalingPoint> out;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_csv(line);
    if (header.empty()) {
      header = cells;
      if (header.size() < 3 || header[0] != "N" || header[1] != "k" || header[2] != "cum_prob")
        raise(ErrorKind::ParseError, "expected header N,k,cum_prob[,fit]");
      continue;
    }
    if (cells.size() < 3) raise(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": too few cells");
    if (static_cast<std::size_t>(parse_double(cells[1], lineno)) != k) continue;
    out.push_back({parse_double(cells[0], lineno), parse_double(cells[2], lineno)});
  }
  return out;
}

json fit_to_json(const DecayFit& fit) {
  return {{"k", fit.k}, {"N_k", fit.n_k}, {"b_k", fit.b_k}, {"residual", fit.residual}};
}

DecayFit fit_from_json(const json& j) {
  DecayFit f;
  f.k = field<std::size_t>(j, "k");
  f.n_k = field<double>(j, "N_k");
  f.b_k = field<std::int64_t>(j, "b_k");
  f.residual = j.value("residual", 0.0);
  return f;
}

json protocol_to_json(const TrainedProtocol& p) {
  json per = json::array();
  for (const auto& e : p.per_graph) per.push_back({{"p_mis", e.p_mis}, {"ratio", e.ratio}, {"cost", e.cost}});
  json fp = {{"sizes", p.fingerprint.sizes}, {"spacing_um", p.fingerprint.spacing}};
  fp["lattice"] = p.fingerprint.kind ? json(std::string(to_string(*p.fingerprint.kind))) : json(nullptr);
  return {{"parametrization", p.parametrization}, {"names", p.names},   {"theta", p.theta},
          {"schedule", schedule_to_json(p.schedule)}, {"fingerprint", fp}, {"training_cost", p.training_cost},
          {"per_graph", per}};
}

TrainedProtocol protocol_from_json(const json& j) {
  TrainedProtocol p;
  p.parametrization = j.value("parametrization", std::string());
  p.names = j.value("names", std::vector<std::string>{});
  p.theta = j.value("theta", std::vector<double>{});
  p.schedule = schedule_from_json(field<json>(j, "schedule"));
  p.training_cost = j.value("training_cost", 0.0);
  if (j.contains("fingerprint")) {
    const auto& fp = j.at("fingerprint");
    p.fingerprint.sizes = fp.value("sizes", std::vector<std::size_t>{});
    p.fingerprint.spacing = fp.value("spacing_um", 0.0);
    if (fp.contains("lattice") && fp.at("lattice").is_string())
      p.fingerprint.kind = parse_lattice_kind(fp.at("lattice").get<std::string>());
  }
  if (j.contains("per_graph"))
    for (const auto& e : j.at("per_graph"))
      p.per_graph.push_back({e.value("p_mis", 0.0), e.value("ratio", 0.0), e.value("cost", 0.0)});
  return p;
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json manifest_to_json(const Manifest& m) {
  return {{"command", m.command},
          {"config_hash", fnv1a_hex(m.config)},
          {"config", m.config},
          {"seed", m.seed},
          {"versions", {{"rydmis", kVersion}, {"compiler", __VERSION__}}},
          {"inputs", m.inputs},
          {"outputs", m.outputs}};
}

}  // namespace rydmis::io
