// Copyright 2026 The modalpca Authors.
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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "modalpca/cli.hpp"
#include "modalpca/io.hpp"

using namespace modalpca;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("modalpca_cli_" + name)).string();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

long count_lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

}  // namespace

TEST(Cli, FitScenario) {
  const auto model = temp_path("fit.json");
  const auto r = run({"fit", "--scenario", "gaussian-diag", "--n", "200", "--d", "20", "--eps", "0.2",
                      "--seed", "7", "--model", model});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("specdist "), std::string::npos);
  const auto m = io::read_model(model);
  EXPECT_EQ(m.dim, 20);
  EXPECT_EQ(m.components.size(), 12u);
  std::filesystem::remove(model);
}

TEST(Cli, FitInput) {
  const auto data = temp_path("data.csv");
  const auto model = temp_path("input.json");
  std::ostringstream csv;
  for (int i = 0; i < 60; ++i) csv << (i % 7) * 0.3 - 1 << ',' << (i % 5) * 0.1 << ',' << (i % 3) * 0.5 << '\n';
  write_file(data, csv.str());
  const auto r = run({"fit", "--input", data, "--components", "2", "--model", model});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(io::read_model(model).components.size(), 2u);
  EXPECT_EQ(count_lines(r.out), 2);
  std::filesystem::remove(data);
  std::filesystem::remove(model);
}

TEST(Cli, InvalidEpsIsConfigError) {
  const auto r = run({"fit", "--scenario", "gaussian-diag", "--eps", "1.5", "--model", temp_path("x.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("eps"), std::string::npos);
}

TEST(Cli, BenchRowCount) {
  const auto r = run({"bench", "--family", "gaussian-diag", "--d", "4", "--n", "60", "--seeds", "20",
                      "--eps-list", "0,0.1,0.2,0.3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 161);
  EXPECT_EQ(r.out.substr(0, 32), "method,epsilon,n,seed,specdist\nm");
}

TEST(Cli, ConfigFile) {
  const auto cfg = temp_path("cfg.json");
  write_file(cfg, R"({"d": 3, "n": 40, "seeds": 2, "eps_list": [0, 0.1], "methods": ["cpca"]})");
  const auto r = run({"bench", "--config", cfg, "--seeds", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 7);

  write_file(cfg, R"({"methods": []})");
  EXPECT_EQ(run({"bench", "--config", cfg}).code, 2);
  write_file(cfg, R"({"bogus": 1})");
  const auto bad = run({"bench", "--config", cfg});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("bogus"), std::string::npos);
  std::filesystem::remove(cfg);
}

TEST(Cli, InfluenceSingleRow) {
  const auto r = run({"influence", "--resolution", "1", "--n", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 2);
  const auto c = run({"influence", "--method", "cpca", "--resolution", "3", "--n", "100"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(count_lines(c.out), 10);
}

TEST(Cli, LbbpNeedsSigmaOrTarget) {
  EXPECT_EQ(run({"lbbp"}).code, 2);
  const auto r = run({"lbbp", "--sigma-z", "0.2", "--n", "200"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, 28), "a,M_a,M_a_star,b_star,bound\n");
}

TEST(Cli, SynthAndSpecdist) {
  const auto r = run({"synth", "--d", "3", "--n", "10", "--eps", "0.2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 11);
  std::size_t outliers = 0;
  for (auto pos = r.out.find(",outlier"); pos != std::string::npos; pos = r.out.find(",outlier", pos + 1)) ++outliers;
  EXPECT_EQ(outliers, 2u);

  const auto a = temp_path("a.csv");
  const auto b = temp_path("b.csv");
  write_file(a, "0,0\n1,0\n0,1\n");
  write_file(b, "0,0.70710678118654757\n1,0\n0,0.70710678118654757\n");
  const auto s = run({"specdist", a, b});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_NEAR(std::stod(s.out), 0.78539816339744828, 1e-12);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"fit", "--n", "abc"}).code, 2);
  EXPECT_EQ(run({"fit", "--input", "/nonexistent/file.csv"}).code, 2);
}
