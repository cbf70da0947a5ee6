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

#include "rydmis/gisp.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "rydmis/error.hpp"

namespace rydmis {

Graph gisp_to_graph(const GispInstance& inst) {
  const auto& t = inst.tasks;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i].start < t[i].end)) {
      raise(ErrorKind::InvalidInterval, "task " + std::to_string(t[i].task_id) + " has start >= end");
    }
  }
  Graph g(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      const bool overlap = t[i].start < t[j].end && t[j].start < t[i].end;
      if (overlap || t[i].group_id == t[j].group_id) g.add_edge(i, j);
    }
  }
  return g;
}

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_field(const std::string& field, std::size_t line, const char* name) {
  T value{};
  const auto* begin = field.data();
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || field.empty()) {
    raise(ErrorKind::ParseError, "line " + std::to_string(line) + ": bad " + name + " '" + field + "'");
  }
  return value;
}

}  // namespace

GispInstance parse_gisp_csv(std::istream& in) {
  GispInstance inst;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(trim(f));
    if (!header_seen) {
      header_seen = true;
      if (fields == std::vector<std::string>{"task_id", "group_id", "start", "end"}) continue;
      raise(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected header task_id,group_id,start,end");
    }
    if (fields.size() != 4) {
      raise(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 4 fields, got " +
                                       std::to_string(fields.size()));
    }
    GispTask task;
    task.task_id = parse_field<std::int64_t>(fields[0], line_no, "task_id");
    task.group_id = parse_field<std::int64_t>(fields[1], line_no, "group_id");
    task.start = parse_field<double>(fields[2], line_no, "start");
    task.end = parse_field<double>(fields[3], line_no, "end");
    inst.tasks.push_back(task);
  }
  return inst;
}

GispInstance parse_gisp_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::ParseError, "cannot open " + path.string());
  return parse_gisp_csv(in);
}

void write_gisp_csv(std::ostream& out, const GispInstance& inst) {
  out << "task_id,group_id,start,end\n";
  out.precision(17);
  for (const auto& t : inst.tasks) out << t.task_id << ',' << t.group_id << ',' << t.start << ',' << t.end << '\n';
}

}  // namespace rydmis
