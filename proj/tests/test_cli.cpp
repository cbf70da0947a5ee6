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

#include <filesystem>
#include <fstream>
#include <map>

#include "cli.hpp"
#include "rydmis/io.hpp"

namespace rydmis {
namespace {

namespace fs = std::filesystem;
using io::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("rydmis_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "rydmis");
    return cli::run(args);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({}), 2);
  EXPECT_EQ(run({"generate"}), 2);
  EXPECT_EQ(run({"generate", "--out", path("f"), "--bogus"}), 2);
  EXPECT_EQ(run({"embed", "--graph", path("missing.json"), "--out", path("r.json")}), 1);
  EXPECT_EQ(run({"generate", "--layout", "hexagonal", "--out", path("f")}), 1);
}

TEST_F(CliTest, GenerateIsReproducible) {
  const std::vector<std::string> args{"generate", "--sizes", "5,6", "--per-size", "2", "--seed", "3", "--out", path("a")};
  ASSERT_EQ(run(args), 0);
  std::map<std::string, std::string> first;
  for (const auto& e : fs::directory_iterator(dir_ / "a")) first[e.path().filename().string()] = io::read_text(e.path());
  ASSERT_EQ(run(args), 0);
  std::size_t graphs = 0;
  for (const auto& [name, text] : first) {
    if (name.rfind("graph_", 0) != 0) continue;
    ++graphs;
    EXPECT_EQ(io::read_text(dir_ / "a" / name), text);
  }
  EXPECT_EQ(graphs, 4u);
  const json ma = json::parse(first.at("manifest.json"));
  const json mb = io::load_json(dir_ / "a" / "manifest.json");
  EXPECT_EQ(ma["config_hash"], mb["config_hash"]);
  EXPECT_EQ(ma["seed"], 3);
  EXPECT_EQ(ma["command"], "generate");
}

TEST_F(CliTest, SampleCorrectPostprocessChain) {
  ASSERT_EQ(run({"generate", "--sizes", "6", "--per-size", "1", "--seed", "1", "--out", path("fam")}), 0);
  const std::string g = path("fam/graph_0000.json");
  const auto sched = vqaa_schedule({2.0, {8.0, 10.0, 8.0}, {-20.0, -10.0, 5.0, 15.0, 20.0}});
  io::save_json(path("s.json"), io::schedule_to_json(sched));

  ASSERT_EQ(run({"embed", "--graph", g, "--out", path("reg.json")}), 0);
  EXPECT_TRUE(io::load_json(path("reg.json")).contains("positions_um"));
  ASSERT_EQ(run({"sample", "--graph", g, "--schedule", path("s.json"), "--exact", "--out", path("exact.csv")}), 0);
  ASSERT_EQ(run({"corrupt", "--in", path("exact.csv"), "--eps", "0.03", "--eps-prime", "0.08", "--out",
                 path("noisy.csv")}),
            0);
  ASSERT_EQ(run({"correct", "--in", path("noisy.csv"), "--eps", "0.03", "--eps-prime", "0.08", "--out",
                 path("fixed.csv")}),
            0);
  std::ifstream a(path("exact.csv")), b(path("fixed.csv"));
  EXPECT_LT(total_variation(io::read_distribution_csv(a), io::read_distribution_csv(b)), 1e-9);

  ASSERT_EQ(run({"sample", "--graph", g, "--schedule", path("s.json"), "--shots", "300", "--seed", "5", "--out",
                 path("shots.csv")}),
            0);
  ASSERT_EQ(run({"postprocess", "--graph", g, "--in", path("shots.csv"), "--depth", "2", "--report", path("pp.json"),
                 "--out", path("pp.csv")}),
            0);
  const json rep = io::load_json(path("pp.json"));
  EXPECT_TRUE(rep.contains("p_mis_before"));
  EXPECT_GE(rep["p_mis_after"].get<double>(), rep["p_mis_before"].get<double>());
  EXPECT_TRUE(fs::exists(path("pp.csv.manifest.json")));
}

TEST_F(CliTest, TrainTransferAndReports) {
  ASSERT_EQ(run({"generate", "--sizes", "4,5", "--per-size", "1", "--seed", "2", "--out", path("fam")}), 0);
  ASSERT_EQ(run({"train", "--family", path("fam"), "--m", "2", "--budget", "3+2", "--seed", "4", "--history",
                 path("hist.csv"), "--out", path("proto.json")}),
            0);
  const json proto = io::load_json(path("proto.json"));
  EXPECT_EQ(proto["parametrization"], "vqaa");
  EXPECT_EQ(io::read_text(path("hist.csv")).substr(0, 12), "iter,T,omega");
  ASSERT_EQ(run({"transfer", "--protocol", path("proto.json"), "--family", path("fam"), "--histogram",
                 path("hist_pmis.csv"), "--out", path("transfer.json")}),
            0);
  EXPECT_TRUE(io::load_json(path("transfer.json")).contains("mean_pmis"));
  ASSERT_EQ(run({"report", "waveform", "--protocol", path("proto.json"), "--points", "11", "--out", path("w.csv")}), 0);
  EXPECT_EQ(io::read_text(path("w.csv")).substr(0, 22), "t_us,omega_mhz,delta_m");
  ASSERT_EQ(run({"scan", "--family", path("fam/graph_0000.json"), "--omega-over-u", "0.05:0.3:3", "--delta-over-u",
                 "0:1:3", "--out", path("map.csv")}),
            0);
  EXPECT_EQ(io::read_text(path("map.csv")).substr(0, 26), "omega_over_u,delta_over_u,");
}

TEST_F(CliTest, GispImportToGraph) {
  io::write_text(path("tasks.csv"), "task_id,group_id,start,end\n1,1,0,30\n2,1,40,50\n3,2,55,60\n");
  ASSERT_EQ(run({"gisp", "import", path("tasks.csv"), "--out", path("inst.json")}), 0);
  ASSERT_EQ(run({"gisp", "tograph", path("inst.json"), "--out", path("cg.json")}), 0);
  const json cg = io::load_json(path("cg.json"));
  EXPECT_EQ(cg["vertices"], 3);
  EXPECT_EQ(cg["mis_size"], 2);
}

TEST_F(CliTest, FitAndShots) {
  std::string csv = "N,k,cum_prob\n";
  for (int n = 10; n <= 200; n += 10) csv += std::to_string(n) + ",0," + std::to_string(std::exp(-(n - 10) / 50.0)) + "\n";
  io::write_text(path("scaling.csv"), csv);
  ASSERT_EQ(run({"fit", "--in", path("scaling.csv"), "--k", "0", "--shots-for-n", "300", "--target", "0.9", "--out",
                 path("fit.json")}),
            0);
  const json f = io::load_json(path("fit.json"));
  EXPECT_NEAR(f["N_k"].get<double>(), 50.0, 0.5);
  EXPECT_EQ(f["b_k"], 10);
  EXPECT_TRUE(f.contains("shots"));
}

TEST_F(CliTest, ConfigFileSuppliesOptions) {
  io::write_text(path("gen.toml"), "[generate]\nsizes = \"5\"\nper-size = 3\n");
  ASSERT_EQ(run({"--config", path("gen.toml"), "generate", "--out", path("fam")}), 0);
  std::size_t graphs = 0;
  for (const auto& e : fs::directory_iterator(dir_ / "fam")) graphs += e.path().filename().string().rfind("graph_", 0) == 0;
  EXPECT_EQ(graphs, 3u);
}

}  // namespace
}  // namespace rydmis
