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

#ifndef SHAPAUDIT_CORE_EXPERIMENTS_H_
#define SHAPAUDIT_CORE_EXPERIMENTS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "core/report.h"

namespace shapaudit {

enum class Experiment { kMarkov1, kMarkov2, kSecret, kTaxicab };

Experiment ParseExperiment(std::string_view name);
std::string_view ExperimentName(Experiment experiment);

// Default sample size per experiment.
int64_t DefaultSampleSize(Experiment experiment);

// Model parameters accepted by `--params`, e.g. "ell=0.05", "t1=2,t2=2.2" or
// "a=5:10:20".
struct ExperimentParams {
  double ell = 0.05;
  double t1 = 2.0;
  double t2 = 2.2;
  std::vector<double> a = {5.0, 10.0, 20.0};
};

ExperimentParams ParseParams(std::string_view spec);

// Formulation names per experiment, in emission order.
std::vector<std::string> Formulations(Experiment experiment);

// Empty `formulations` selects all of them.
std::vector<ReportRow> RunMarkov1(int64_t n, uint64_t seed,
                                  const std::vector<std::string>& formulations = {});
std::vector<ReportRow> RunMarkov2(double ell, int64_t n, uint64_t seed,
                                  const std::vector<std::string>& formulations = {});
std::vector<ReportRow> RunSecret(double t1, double t2, int64_t n,
                                 uint64_t seed);
std::vector<ReportRow> RunTaxicab(const std::vector<double>& a, int64_t n,
                                  uint64_t seed);

std::vector<ReportRow> RunExperiment(Experiment experiment,
                                     const ExperimentParams& params,
                                     int64_t n, uint64_t seed,
                                     const std::vector<std::string>& formulations = {});

// One axis of "name=start:stop:count"; endpoints inclusive, count >= 2.
struct GridAxis {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;

  double At(int i) const;
};

// Comma-separated axes, e.g. "t1=-2:2:81,t2=-2:2:81".
std::vector<GridAxis> ParseGrid(std::string_view spec);

struct SweepConfig {
  Experiment experiment = Experiment::kMarkov2;
  std::vector<GridAxis> grid;
  uint64_t base_seed = 42;
  int64_t n = 0;  // 0 selects DefaultSampleSize.
  std::vector<std::string> formulations;
  int jobs = 1;
};

// Cell (i, j) uses seed DeriveSeed(base_seed, i, j); markov2 cells use j = 0.
// Rows come back in grid order, first axis outermost, whatever `jobs` is.
std::vector<ReportRow> RunSweep(const SweepConfig& config);

// SHAPAUDIT_JOBS when set to a positive integer, else 1.
int DefaultJobs();

}  // namespace shapaudit

#endif  // SHAPAUDIT_CORE_EXPERIMENTS_H_
