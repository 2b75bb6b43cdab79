/*
 * Copyright 2026 The shapaudit Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "core/experiments.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "core/error.h"
#include "core/report.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace shapaudit {
namespace {

std::string Csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  WriteCsv(rows, out);
  return out.str();
}

const ReportRow& Find(const std::vector<ReportRow>& rows,
                      const std::string& formulation) {
  for (const auto& r : rows) {
    if (r.GetString("formulation") == formulation) return r;
  }
  throw std::runtime_error("no row for " + formulation);
}

TEST(ReportTest, CsvQuotingAndNumbers) {
  ReportRow row;
  row.Set("name", std::string("a,\"b\""));
  row.Set("x", 0.1);
  row.Set("missing", std::nan(""));
  row.Set("count", int64_t{3});
  EXPECT_EQ(Csv({row}),
            "name,x,missing,count\n\"a,\"\"b\"\"\",0.10000000000000001,,3\n");
}

TEST(ReportTest, JsonNullForNan) {
  ReportRow row;
  row.Set("x", std::nan(""));
  row.Set("y", 1.5);
  std::vector<ReportRow> rows = {row};
  std::ostringstream out;
  WriteJson(rows, out);
  auto j = nlohmann::json::parse(out.str());
  EXPECT_TRUE(j[0]["x"].is_null());
  EXPECT_EQ(j[0]["y"], 1.5);
}

TEST(ReportTest, RejectsRaggedRows) {
  ReportRow a, b;
  a.Set("x", 1.0);
  b.Set("y", 1.0);
  std::ostringstream out;
  EXPECT_THROW(WriteCsv(std::vector<ReportRow>{a, b}, out), Error);
}

TEST(ParseGridTest, PaperGrid) {
  std::vector<GridAxis> g = ParseGrid("t1=-2:2:81,t2=-2:2:81");
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].name, "t1");
  EXPECT_EQ(g[0].count, 81);
  EXPECT_EQ(g[0].At(0), -2.0);
  EXPECT_EQ(g[0].At(40), 0.0);
  EXPECT_EQ(g[0].At(50), 0.5);
  EXPECT_EQ(g[0].At(80), 2.0);
  EXPECT_NEAR(g[0].At(1) - g[0].At(0), 0.05, 1e-15);
}

TEST(ParseGridTest, RejectsBadSpecs) {
  EXPECT_THROW(ParseGrid("ell=0:1:1"), Error);
  EXPECT_THROW(ParseGrid("ell=0:1"), Error);
  EXPECT_THROW(ParseGrid("ell=0:inf:3"), Error);
  EXPECT_THROW(ParseGrid("ell=0:1:2.5"), Error);
  EXPECT_THROW(ParseGrid("t1=0:1:3,t1=0:1:3"), Error);
  EXPECT_THROW(ParseGrid(""), Error);
}

TEST(ParseParamsTest, Values) {
  ExperimentParams p = ParseParams("t1=1.5, t2=-0.25");
  EXPECT_EQ(p.t1, 1.5);
  EXPECT_EQ(p.t2, -0.25);
  EXPECT_EQ(ParseParams("ell=0.3").ell, 0.3);
  EXPECT_EQ(ParseParams("a=1:2:4:8").a, (std::vector<double>{1, 2, 4, 8}));
  EXPECT_THROW(ParseParams("gamma=1"), Error);
  EXPECT_THROW(ParseParams("ell=abc"), Error);
}

TEST(RunMarkov1Test, Rows) {
  std::vector<ReportRow> rows = RunMarkov1(1000000, 42);
  ASSERT_EQ(rows.size(), 4u);
  const ReportRow& r2 = Find(rows, "r2_population");
  EXPECT_NEAR(r2.GetDouble("phi_Z"), 0.26, 0.005);
  EXPECT_NEAR(r2.GetDouble("phi_X1"), 0.16, 0.005);
  EXPECT_EQ(r2.GetInt("rank_violation"), 1);
  EXPECT_EQ(r2.GetString("top3"), "X1;X2;Z");
  const ReportRow& lin = Find(rows, "interventional_linear");
  EXPECT_LT(lin.GetDouble("phi_Z"), 0.1);
  for (const char* x : {"phi_X1", "phi_X2", "phi_X3"}) {
    EXPECT_NEAR(lin.GetDouble(x), 4.0, 0.2);
  }
  EXPECT_EQ(lin.GetInt("rank_violation"), 0);
  EXPECT_LE(Find(rows, "mean_abs_linear_shap").GetDouble("phi_Z"), 0.01);
  EXPECT_THROW(RunMarkov1(100, 1), Error);
}

TEST(RunMarkov2Test, Rows) {
  std::vector<ReportRow> rows = RunMarkov2(0.05, 200000, 42);
  ASSERT_EQ(rows.size(), 2u);
  const ReportRow& bayes = Find(rows, "bayes_accuracy_exact");
  EXPECT_NEAR(bayes.GetDouble("phi_X1"), 0.22, 0.005);
  EXPECT_NEAR(bayes.GetDouble("phi_X2"), 0.09, 0.005);
  EXPECT_EQ(bayes.GetInt("rank_violation"), 1);
  EXPECT_EQ(bayes.GetInt("n"), 0);
  EXPECT_NEAR(bayes.GetDouble("C_123"), 0.4, 1e-9);
  EXPECT_NEAR(bayes.GetDouble("offset"), 0.5, 1e-12);
  const ReportRow& ce = Find(rows, "interventional_table_crossentropy");
  EXPECT_LT(ce.GetDouble("phi1_minus_phi2"), 0.0);
  EXPECT_LT(ce.GetDouble("phi1_minus_phi3"), 0.0);
  EXPECT_EQ(ce.GetInt("rank_violation"), 0);
  EXPECT_THROW(RunMarkov2(1.0, 1000, 1), Error);
}

TEST(RunMarkov2Test, CentreIsNotPathological) {
  std::vector<ReportRow> rows = RunMarkov2(0.5, 0, 1, {"bayes_accuracy_exact"});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_LT(rows[0].GetDouble("phi1_minus_phi2"), 0.0);
}

TEST(RunSecretTest, DegenerateCellIsUnflagged) {
  std::vector<ReportRow> rows = RunSecret(0.0, 0.0, 1000, 42);
  EXPECT_EQ(rows[0].GetInt("pathology_flag"), 0);
  EXPECT_NEAR(rows[0].GetDouble("C_123"), 0.0, 0.02);
  EXPECT_THROW(RunSecret(1, 1, 50, 1), Error);
}

TEST(RunTaxicabTest, Structure) {
  const ReportRow row = RunTaxicab({5, 10, 20}, 100000, 42)[0];
  const double full = row.GetDouble("C_full");
  for (const char* c : {"C_3", "C_13", "C_23"}) {
    EXPECT_NEAR(row.GetDouble(c), full, 0.005 * full) << c;
  }
  EXPECT_GT(row.GetDouble("phi_X1"), 0.0);
  EXPECT_LT(row.GetDouble("phi_X1"), row.GetDouble("phi_X2"));
  EXPECT_LT(row.GetDouble("phi_X2"), row.GetDouble("phi_X3"));
  EXPECT_EQ(row.GetString("taxicab_flags"), "X1;X2");
  EXPECT_EQ(row.GetDouble("selection_regret_k1"), 0.0);
}

TEST(RunExperimentTest, EveryRowIsEfficient) {
  std::vector<std::vector<ReportRow>> runs = {
      RunExperiment(Experiment::kMarkov2, ParseParams("ell=0.3"), 10000, 1),
      RunExperiment(Experiment::kSecret, ParseParams("t1=1,t2=-1"), 500, 1),
      RunExperiment(Experiment::kTaxicab, {}, 1000, 1)};
  for (const auto& rows : runs) {
    for (const auto& row : rows) {
      double scale = 1.0;
      if (row.GetString("experiment") != "markov1") {
        scale = std::max(1.0, std::abs(row.GetDouble("C_123")));
      }
      EXPECT_LE(row.GetDouble("efficiency_residual"), 1e-9 * scale);
    }
  }
}

TEST(RunSweepTest, Markov2RowCountAndFilter) {
  SweepConfig cfg;
  cfg.experiment = Experiment::kMarkov2;
  cfg.grid = ParseGrid("ell=0.05:0.95:20");
  cfg.n = 2000;
  EXPECT_EQ(RunSweep(cfg).size(), 40u);
  cfg.formulations = {"bayes_accuracy_exact"};
  EXPECT_EQ(RunSweep(cfg).size(), 20u);
  cfg.formulations = {"bogus"};
  EXPECT_THROW(RunSweep(cfg), Error);
}

TEST(RunSweepTest, SecretOutputIndependentOfJobs) {
  SweepConfig cfg;
  cfg.experiment = Experiment::kSecret;
  cfg.grid = ParseGrid("t1=-2:2:7,t2=-2:2:5");
  cfg.base_seed = 9;
  cfg.jobs = 1;
  std::string serial = Csv(RunSweep(cfg));
  cfg.jobs = 3;
  EXPECT_EQ(Csv(RunSweep(cfg)), serial);
  EXPECT_EQ(std::count(serial.begin(), serial.end(), '\n'), 36);
}

TEST(RunSweepTest, AxisOrderKeepsCellSeeds) {
  SweepConfig a;
  a.experiment = Experiment::kSecret;
  a.grid = ParseGrid("t1=0:1:2,t2=0:1:3");
  SweepConfig b = a;
  b.grid = ParseGrid("t2=0:1:3,t1=0:1:2");
  std::vector<ReportRow> ra = RunSweep(a), rb = RunSweep(b);
  ASSERT_EQ(ra.size(), 6u);
  // Row (t1 index 1, t2 index 2) in each ordering.
  EXPECT_EQ(ra[1 * 3 + 2].GetInt("seed"), rb[2 * 2 + 1].GetInt("seed"));
  EXPECT_EQ(ra[5].GetDouble("phi_X1"), rb[5].GetDouble("phi_X1"));
}

TEST(RunSweepTest, RejectsWrongAxes) {
  SweepConfig cfg;
  cfg.experiment = Experiment::kSecret;
  cfg.grid = ParseGrid("ell=0.1:0.9:3");
  EXPECT_THROW(RunSweep(cfg), Error);
  cfg.experiment = Experiment::kTaxicab;
  EXPECT_THROW(RunSweep(cfg), Error);
}

}  // namespace
}  // namespace shapaudit
