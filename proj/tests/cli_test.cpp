// Copyright 2026 The qadapt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qadapt/trace_io.hpp"

namespace fs = std::filesystem;
using qadapt::cli::run_cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "qadapt");
  std::vector<const char *> argv;
  for (const std::string &a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / ("qadapt_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(CliTest, RunWritesTraceAndSummary) {
  const fs::path dir = fresh_dir("run");
  const Result r = invoke({"run", "--env", "e3", "--iterations", "20", "--shots", "128", "--seed",
                           "9", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "e3_seed9.csv"));
  EXPECT_TRUE(fs::exists(dir / "e3_seed9.json"));
  EXPECT_TRUE(fs::exists(dir / "summary.csv"));
  const qadapt::Trace t = qadapt::read_trace(dir / "e3_seed9.json");
  EXPECT_EQ(t.records.size(), 20u);
  EXPECT_EQ(t.config.shots, 128);
  EXPECT_EQ(t.config.seed, 9u);
  const std::string header = std::string(qadapt::kTraceCsvHeader) + "\n";
  EXPECT_EQ(slurp(dir / "e3_seed9.csv").substr(0, header.size()), header);
}

TEST(CliTest, RepeatedRunIsByteIdentical) {
  const fs::path a = fresh_dir("det_a");
  const fs::path b = fresh_dir("det_b");
  const std::vector<std::string> common{"run", "--env", "e5", "--iterations", "60",
                                        "--noise", "device-default", "--seed", "4242"};
  auto with_out = [&](const fs::path &dir) {
    auto args = common;
    args.insert(args.end(), {"--out", dir.string()});
    return args;
  };
  ASSERT_EQ(invoke(with_out(a)).code, 0);
  ASSERT_EQ(invoke(with_out(b)).code, 0);
  for (const char *name : {"e5_seed4242.csv", "e5_seed4242.json", "summary.csv", "aggregate.csv"}) {
    EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  }
}

TEST(CliTest, ConfigFileWithFlagOverride) {
  const fs::path dir = fresh_dir("config");
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "cfg.json");
    cfg << R"({"epsilon": 0.9, "iterations": 7, "shots": 16, "environment": "e4", "seed": 5})";
  }
  const Result r = invoke({"run", "--config", (dir / "cfg.json").string(), "--iterations", "9",
                           "--out", (dir / "out").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const qadapt::Trace t = qadapt::read_trace(dir / "out" / "e4_seed5.json");
  EXPECT_EQ(t.config.epsilon, 0.9);
  EXPECT_EQ(t.config.iterations, 9);
  EXPECT_EQ(t.config.shots, 16);
}

TEST(CliTest, CustomEnvironmentFile) {
  const fs::path dir = fresh_dir("custom");
  fs::create_directories(dir);
  {
    std::ofstream env(dir / "env.json");
    env << R"({"label": "tilt", "preparation": [{"gate": "RX", "angle": 1.0}]})";
  }
  const Result r = invoke({"run", "--env", (dir / "env.json").string(), "--iterations", "5",
                           "--shots", "8", "--out", (dir / "out").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "out" / "tilt_seed1.csv"));
}

TEST(CliTest, SuiteAndSummarize) {
  const fs::path dir = fresh_dir("suite");
  Result r = invoke({"suite", "--envs", "e1,e6", "--seeds", "3", "--seed", "10", "--iterations",
                     "15", "--shots", "32", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char *name : {"e1_seed10.csv", "e1_seed12.json", "e6_seed11.csv", "summary.csv"}) {
    EXPECT_TRUE(fs::exists(dir / name)) << name;
  }
  const std::string summary = slurp(dir / "summary.csv");
  fs::remove(dir / "summary.csv");
  r = invoke({"summarize", "--in", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(dir / "summary.csv"), summary);
  EXPECT_NE(r.out.find("e6: converged"), std::string::npos);

  r = invoke({"suite", "--envs", "e2", "--seeds", "4,8", "--iterations", "3", "--shots", "4",
              "--out", (dir / "list").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "list" / "e2_seed8.json"));
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"bogus"}).code, 1);
  EXPECT_EQ(invoke({"run", "--epsilon", "1.5"}).code, 1);
  EXPECT_EQ(invoke({"run", "--env", "e9"}).code, 1);
  EXPECT_EQ(invoke({"run", "--noise", "0.9,0,0"}).code, 1);
  EXPECT_EQ(invoke({"run", "--iterations", "abc"}).code, 1);
  EXPECT_EQ(invoke({"suite", "--envs", "e1,e1"}).code, 1);
  EXPECT_EQ(invoke({"run", "--help"}).code, 0);

  const fs::path dir = fresh_dir("exit");
  fs::create_directories(dir);
  { std::ofstream(dir / "blocker") << "x"; }
  EXPECT_EQ(invoke({"run", "--iterations", "2", "--shots", "2", "--out",
                    (dir / "blocker" / "sub").string()})
                .code,
            2);
  EXPECT_EQ(invoke({"summarize", "--in", (dir / "nothing").string()}).code, 2);
}
