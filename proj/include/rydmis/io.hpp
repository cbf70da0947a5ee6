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

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "rydmis/analysis.hpp"
#include "rydmis/distribution.hpp"
#include "rydmis/gisp.hpp"
#include "rydmis/graph.hpp"
#include "rydmis/measurement.hpp"
#include "rydmis/pipeline.hpp"
#include "rydmis/register.hpp"
#include "rydmis/rydberg.hpp"
#include "rydmis/schedule.hpp"

namespace rydmis::io {

using nlohmann::json;

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const json& j);

// {"blockade_radius_um", "vertices": [{"id","x_um","y_um"}], "edges", "lattice"?}
json graph_to_json(const UdGraph& g);
// Edges are rebuilt from the geometry; a stored "edges" array must agree.
UdGraph graph_from_json(const json& j);

json register_to_json(const Register& reg);
Register register_from_json(const json& j);

// {"T_us", "kind", "omega_knots_mhz", "delta_knots_mhz", "omega_times_us",
// "delta_times_us", "omega_interp", "delta_interp", ...}
json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const json& j);

json gisp_to_json(const GispInstance& inst);
GispInstance gisp_from_json(const json& j);
json conflict_graph_to_json(const GispInstance& inst, const Graph& g);

// "bitstring,count" with optional "# key: value" provenance lines.
void write_distribution_csv(std::ostream& out, const Distribution& dist,
                            const std::map<std::string, std::string>& provenance = {});
Distribution read_distribution_csv(std::istream& in);

void write_map_csv(std::ostream& out, const MapGrid& grid, const Eigen::MatrixXd& values);
void write_grid_csv(std::ostream& out, std::string_view x_name, std::span<const double> xs, std::string_view y_name,
                    std::span<const double> ys, const Eigen::MatrixXd& values);
void write_waveform_csv(std::ostream& out, std::span<const WaveformSample> samples);
void write_histogram_csv(std::ostream& out, std::span<const std::string> ids, std::span<const GraphEvaluation> evals);
void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve);

struct ScalingRow {
  double n = 0.0;
  std::size_t k = 0;
  double cum_prob = 0.0;
  double fit = 0.0;
};
void write_scaling_csv(std::ostream& out, std::span<const ScalingRow> rows);
std::vector<ScalingPoint> read_scaling_points(std::istream& in, std::size_t k);

json fit_to_json(const DecayFit& fit);
DecayFit fit_from_json(const json& j);

json protocol_to_json(const TrainedProtocol& p);
// Restores the schedule, θ and fingerprint; history is not reloaded.
TrainedProtocol protocol_from_json(const json& j);

std::string fnv1a_hex(std::string_view text);

struct Manifest {
  std::string command;
  std::string config;  // canonical text of the effective configuration
  std::uint64_t seed = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};
json manifest_to_json(const Manifest& m);

}  // namespace rydmis::io
