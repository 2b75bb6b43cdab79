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
#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "core/axiom_audit.h"
#include "core/csv.h"
#include "core/dgp.h"
#include "core/error.h"
#include "core/game.h"
#include "core/rng.h"
#include "core/selection.h"
#include "core/value_functions.h"

namespace shapaudit {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string Trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> Split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    out.push_back(Trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double ParseNumber(const std::string& text, std::string_view what) {
  errno = 0;
  char* end = nullptr;
  double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE ||
      !std::isfinite(value)) {
    ThrowInvalidArgument("invalid number \"" + text + "\" for " +
                         std::string(what));
  }
  return value;
}

int ParseCount(const std::string& text, std::string_view what) {
  double value = ParseNumber(text, what);
  if (value != std::floor(value) || value < 2 || value > 1e6) {
    ThrowInvalidArgument("grid count for " + std::string(what) +
                         " must be an integer >= 2, got \"" + text + "\"");
  }
  return static_cast<int>(value);
}

bool Wants(const std::vector<std::string>& formulations,
           std::string_view name) {
  return formulations.empty() ||
         std::find(formulations.begin(), formulations.end(), name) !=
             formulations.end();
}

void CheckFormulations(Experiment experiment,
                       const std::vector<std::string>& formulations) {
  const std::vector<std::string> known = Formulations(experiment);
  for (const auto& f : formulations) {
    if (std::find(known.begin(), known.end(), f) == known.end()) {
      ThrowInvalidArgument("unknown formulation \"" + f + "\" for " +
                           std::string(ExperimentName(experiment)));
    }
  }
}

// "C_13" for {1,3}; members are joined by '_' once any index exceeds 9.
std::string CoalitionColumn(Coalition s) {
  const bool wide = (s.bits() >> 9) != 0;
  std::string out = "C";
  bool first = true;
  for (int p : s.Members()) {
    if (first || wide) out += '_';
    out += std::to_string(p + 1);
    first = false;
  }
  return out;
}

std::string JoinLabels(const std::vector<std::string>& labels, Coalition s) {
  std::string out;
  for (int p : s.Members()) {
    if (!out.empty()) out += ';';
    out += labels[p];
  }
  return out;
}

std::string JoinShifts(const std::vector<double>& a) {
  std::string out;
  for (double v : a) {
    if (!out.empty()) out += ':';
    out += FormatDouble(v);
  }
  return out;
}

void AddPhi(ReportRow& row, const std::vector<std::string>& labels,
            const std::vector<double>& phi) {
  for (size_t i = 0; i < labels.size(); ++i) {
    row.Set("phi_" + labels[i], phi[i]);
  }
}

// phi differences, characteristic values and offset for three-player games.
void AddThreePlayerColumns(ReportRow& row, const Game* game,
                           const std::vector<double>& phi) {
  row.Set("phi1_minus_phi2", phi[0] - phi[1]);
  row.Set("phi1_minus_phi3", phi[0] - phi[2]);
  for (uint64_t bits = 1; bits < 8; ++bits) {
    row.Set(CoalitionColumn(Coalition(bits)),
            game ? game->value(Coalition(bits)) : kNan);
  }
  row.Set("offset", game ? game->offset() : kNan);
}

double EfficiencyResidual(const Game& game, const Attribution& attribution) {
  return std::abs(CheckEfficiency(game, attribution));
}

void RequireN(int64_t n, int64_t minimum, std::string_view experiment) {
  if (n < minimum) {
    ThrowInvalidArgument(std::string(experiment) + " needs n >= " +
                         std::to_string(minimum) + ", got " +
                         std::to_string(n));
  }
}

}  // namespace

Experiment ParseExperiment(std::string_view name) {
  if (name == "markov1") return Experiment::kMarkov1;
  if (name == "markov2") return Experiment::kMarkov2;
  if (name == "secret") return Experiment::kSecret;
  if (name == "taxicab") return Experiment::kTaxicab;
  ThrowInvalidArgument("unknown experiment \"" + std::string(name) + "\"");
}

std::string_view ExperimentName(Experiment experiment) {
  switch (experiment) {
    case Experiment::kMarkov1: return "markov1";
    case Experiment::kMarkov2: return "markov2";
    case Experiment::kSecret: return "secret";
    case Experiment::kTaxicab: return "taxicab";
  }
  return "unknown";
}

int64_t DefaultSampleSize(Experiment experiment) {
  switch (experiment) {
    case Experiment::kMarkov1:
    case Experiment::kMarkov2:
      return 1000000;
    case Experiment::kSecret:
      return 1000;
    case Experiment::kTaxicab:
      return 100000;
  }
  return 0;
}

ExperimentParams ParseParams(std::string_view spec) {
  ExperimentParams params;
  if (Trim(spec).empty()) return params;
  for (const std::string& item : Split(spec, ',')) {
    size_t eq = item.find('=');
    if (eq == std::string::npos) {
      ThrowInvalidArgument("parameter \"" + item + "\" is not name=value");
    }
    std::string key = Trim(std::string_view(item).substr(0, eq));
    std::string value = Trim(std::string_view(item).substr(eq + 1));
    if (key == "ell") {
      params.ell = ParseNumber(value, key);
    } else if (key == "t1") {
      params.t1 = ParseNumber(value, key);
    } else if (key == "t2") {
      params.t2 = ParseNumber(value, key);
    } else if (key == "a") {
      params.a.clear();
      for (const auto& v : Split(value, ':')) {
        params.a.push_back(ParseNumber(v, key));
      }
    } else {
      ThrowInvalidArgument("unknown parameter \"" + key + "\"");
    }
  }
  return params;
}

std::vector<std::string> Formulations(Experiment experiment) {
  switch (experiment) {
    case Experiment::kMarkov1:
      return {"r2_population", "r2_empirical", "interventional_linear",
              "mean_abs_linear_shap"};
    case Experiment::kMarkov2:
      return {"bayes_accuracy_exact", "interventional_table_crossentropy"};
    case Experiment::kSecret:
      return {"loglik"};
    case Experiment::kTaxicab:
      return {"mse_skill"};
  }
  return {};
}

std::vector<ReportRow> RunMarkov1(int64_t n, uint64_t seed,
                                  const std::vector<std::string>& formulations) {
  RequireN(n, 10000, "markov1");
  CheckFormulations(Experiment::kMarkov1, formulations);
  const Coalition boundary = Coalition::Of({0, 1, 2});
  std::vector<ReportRow> rows;

  auto emit = [&](const std::string& formulation, const std::vector<std::string>& labels,
                  const std::vector<double>& phi, int64_t rows_used,
                  double residual) {
    Attribution attribution{phi, formulation, AttributionMethod::kExactSubset};
    ReportRow row;
    row.Set("experiment", std::string("markov1"));
    row.Set("formulation", formulation);
    row.Set("n", rows_used);
    row.Set("seed", static_cast<int64_t>(seed));
    AddPhi(row, labels, phi);
    row.Set("top3", JoinLabels(labels, TopK(attribution, 3).selected));
    row.Set("rank_violation",
            int64_t{MarkovRankViolation(attribution, boundary)});
    row.Set("efficiency_residual", residual);
    rows.push_back(std::move(row));
  };

  if (Wants(formulations, "r2_population")) {
    Game game = R2GamePopulation(PopulationGaussMarkov());
    Attribution attr = ExactShapley(game);
    emit("r2_population", game.labels(), attr.phi, 0,
         EfficiencyResidual(game, attr));
  }
  const bool need_data = Wants(formulations, "r2_empirical") ||
                         Wants(formulations, "interventional_linear") ||
                         Wants(formulations, "mean_abs_linear_shap");
  if (!need_data) return rows;
  Dataset data = SampleGaussMarkov(n, seed);
  if (Wants(formulations, "r2_empirical")) {
    Game game = R2GameEmpirical(data);
    Attribution attr = ExactShapley(game);
    emit("r2_empirical", game.labels(), attr.phi, n,
         EfficiencyResidual(game, attr));
  }
  if (Wants(formulations, "interventional_linear") ||
      Wants(formulations, "mean_abs_linear_shap")) {
    LinearModel model = FitLinear(data);
    if (Wants(formulations, "interventional_linear")) {
      Game game = InterventionalLossGame(model, data, SquaredError{});
      Attribution attr = ExactShapley(game);
      emit("interventional_linear", game.labels(), attr.phi, n,
           EfficiencyResidual(game, attr));
    }
    if (Wants(formulations, "mean_abs_linear_shap")) {
      emit("mean_abs_linear_shap", data.names, MeanAbsLinearShap(model, data),
           n, kNan);
    }
  }
  return rows;
}

std::vector<ReportRow> RunMarkov2(double ell, int64_t n, uint64_t seed,
                                  const std::vector<std::string>& formulations) {
  if (!(ell > 0.0 && ell < 1.0)) {
    ThrowInvalidArgument("ell must lie in (0, 1), got " + FormatDouble(ell));
  }
  CheckFormulations(Experiment::kMarkov2, formulations);
  const Coalition boundary = Coalition::Of({1, 2});
  std::vector<ReportRow> rows;

  auto emit = [&](const std::string& formulation, const Game& game,
                  int64_t rows_used) {
    Attribution attr = ExactShapley(game);
    ReportRow row;
    row.Set("experiment", std::string("markov2"));
    row.Set("formulation", formulation);
    row.Set("ell", ell);
    row.Set("n", rows_used);
    row.Set("seed", static_cast<int64_t>(seed));
    AddPhi(row, game.labels(), attr.phi);
    AddThreePlayerColumns(row, &game, attr.phi);
    row.Set("rank_violation", int64_t{MarkovRankViolation(attr, boundary)});
    row.Set("efficiency_residual", EfficiencyResidual(game, attr));
    rows.push_back(std::move(row));
  };

  if (Wants(formulations, "bayes_accuracy_exact")) {
    emit("bayes_accuracy_exact", BayesAccuracyGame(JointDiscreteMarkov(ell)),
         0);
  }
  if (Wants(formulations, "interventional_table_crossentropy")) {
    RequireN(n, 100, "markov2");
    Dataset data = SampleDiscreteMarkov(ell, n, seed);
    ProbTableModel model = FitProbTable(data);
    emit("interventional_table_crossentropy",
         InterventionalLossGame(model, data, CrossEntropy{}), n);
  }
  return rows;
}

std::vector<ReportRow> RunSecret(double t1, double t2, int64_t n,
                                 uint64_t seed) {
  RequireN(n, 100, "secret");
  Dataset data = SampleSecret(t1, t2, n, seed);
  const std::vector<Coalition> terms = SecretModelTerms();
  Game game = LoglikGame(data, terms);
  Attribution attr = ExactShapley(game);
  ReportRow row;
  row.Set("experiment", std::string("secret"));
  row.Set("formulation", std::string("loglik"));
  row.Set("t1", t1);
  row.Set("t2", t2);
  row.Set("n", n);
  row.Set("seed", static_cast<int64_t>(seed));
  AddPhi(row, game.labels(), attr.phi);
  AddThreePlayerColumns(row, &game, attr.phi);
  row.Set("pathology_flag", int64_t{InteractionPathology(game, attr)});
  row.Set("efficiency_residual", EfficiencyResidual(game, attr));
  return {std::move(row)};
}

std::vector<ReportRow> RunTaxicab(const std::vector<double>& a, int64_t n,
                                  uint64_t seed) {
  RequireN(n, 100, "taxicab");
  Dataset data = SampleTaxicabMax(a, n, seed);
  Game game = MseSkillGame(data);
  Attribution attr = ExactShapley(game);
  Coalition flagged;
  for (const auto& flag : DetectTaxicab(game, attr)) {
    flagged = flagged.With(flag.player);
  }
  ReportRow row;
  row.Set("experiment", std::string("taxicab"));
  row.Set("formulation", std::string("mse_skill"));
  row.Set("a", JoinShifts(a));
  row.Set("n", n);
  row.Set("seed", static_cast<int64_t>(seed));
  AddPhi(row, game.labels(), attr.phi);
  if (game.num_players() == 3) AddThreePlayerColumns(row, &game, attr.phi);
  row.Set("C_full", game.value(game.full()));
  row.Set("taxicab_flags", JoinLabels(game.labels(), flagged));
  row.Set("selection_regret_k1", SelectionRegret(game, 1));
  row.Set("efficiency_waste", EfficiencyWaste(game));
  row.Set("efficiency_residual", EfficiencyResidual(game, attr));
  return {std::move(row)};
}

std::vector<ReportRow> RunExperiment(Experiment experiment,
                                     const ExperimentParams& params,
                                     int64_t n, uint64_t seed,
                                     const std::vector<std::string>& formulations) {
  if (n == 0) n = DefaultSampleSize(experiment);
  switch (experiment) {
    case Experiment::kMarkov1:
      return RunMarkov1(n, seed, formulations);
    case Experiment::kMarkov2:
      return RunMarkov2(params.ell, n, seed, formulations);
    case Experiment::kSecret:
      CheckFormulations(experiment, formulations);
      return RunSecret(params.t1, params.t2, n, seed);
    case Experiment::kTaxicab:
      CheckFormulations(experiment, formulations);
      return RunTaxicab(params.a, n, seed);
  }
  ThrowInvalidArgument("unknown experiment");
}

double GridAxis::At(int i) const {
  if (i == count - 1) return stop;
  return start + (stop - start) * static_cast<double>(i) / (count - 1);
}

std::vector<GridAxis> ParseGrid(std::string_view spec) {
  std::vector<GridAxis> axes;
  if (Trim(spec).empty()) ThrowInvalidArgument("empty grid spec");
  for (const std::string& item : Split(spec, ',')) {
    size_t eq = item.find('=');
    if (eq == std::string::npos) {
      ThrowInvalidArgument("grid axis \"" + item +
                           "\" is not name=start:stop:count");
    }
    GridAxis axis;
    axis.name = Trim(std::string_view(item).substr(0, eq));
    std::vector<std::string> parts =
        Split(std::string_view(item).substr(eq + 1), ':');
    if (axis.name.empty() || parts.size() != 3) {
      ThrowInvalidArgument("grid axis \"" + item +
                           "\" is not name=start:stop:count");
    }
    axis.start = ParseNumber(parts[0], axis.name);
    axis.stop = ParseNumber(parts[1], axis.name);
    axis.count = ParseCount(parts[2], axis.name);
    for (const auto& other : axes) {
      if (other.name == axis.name) {
        ThrowInvalidArgument("duplicate grid axis \"" + axis.name + "\"");
      }
    }
    axes.push_back(std::move(axis));
  }
  return axes;
}

std::vector<ReportRow> RunSweep(const SweepConfig& config) {
  if (config.jobs < 1) ThrowInvalidArgument("jobs must be at least 1");
  const int64_t n =
      config.n == 0 ? DefaultSampleSize(config.experiment) : config.n;

  // Each cell knows how to produce its rows.
  std::vector<std::function<std::vector<ReportRow>()>> cells;
  const auto& grid = config.grid;
  switch (config.experiment) {
    case Experiment::kMarkov2: {
      if (grid.size() != 1 || grid[0].name != "ell") {
        ThrowInvalidArgument("markov2 sweep needs exactly one axis named ell");
      }
      CheckFormulations(config.experiment, config.formulations);
      for (int i = 0; i < grid[0].count; ++i) {
        double ell = grid[0].At(i);
        if (!(ell > 0.0 && ell < 1.0)) {
          ThrowInvalidArgument("grid value ell=" + FormatDouble(ell) +
                               " lies outside (0, 1)");
        }
        uint64_t seed = DeriveSeed(config.base_seed, i, 0);
        cells.push_back([ell, n, seed, &config] {
          return RunMarkov2(ell, n, seed, config.formulations);
        });
      }
      break;
    }
    case Experiment::kSecret: {
      if (grid.size() != 2 ||
          !((grid[0].name == "t1" && grid[1].name == "t2") ||
            (grid[0].name == "t2" && grid[1].name == "t1"))) {
        ThrowInvalidArgument("secret sweep needs axes t1 and t2");
      }
      CheckFormulations(config.experiment, config.formulations);
      RequireN(n, 100, "secret");
      const bool t1_first = grid[0].name == "t1";
      for (int i = 0; i < grid[0].count; ++i) {
        for (int j = 0; j < grid[1].count; ++j) {
          int i1 = t1_first ? i : j;
          int i2 = t1_first ? j : i;
          double t1 = grid[t1_first ? 0 : 1].At(i1);
          double t2 = grid[t1_first ? 1 : 0].At(i2);
          uint64_t seed = DeriveSeed(config.base_seed, i1, i2);
          cells.push_back([t1, t2, n, seed] { return RunSecret(t1, t2, n, seed); });
        }
      }
      break;
    }
    default:
      ThrowInvalidArgument("sweeps support markov2 and secret only");
  }

  std::vector<std::vector<ReportRow>> results(cells.size());
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!failed.load()) {
      size_t k = next.fetch_add(1);
      if (k >= cells.size()) return;
      try {
        results[k] = cells[k]();
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  const size_t threads =
      std::min<size_t>(static_cast<size_t>(config.jobs), cells.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  std::vector<ReportRow> rows;
  for (auto& cell : results) {
    for (auto& row : cell) rows.push_back(std::move(row));
  }
  return rows;
}

int DefaultJobs() {
  const char* env = std::getenv("SHAPAUDIT_JOBS");
  if (env == nullptr) return 1;
  char* end = nullptr;
  long jobs = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || jobs < 1 || jobs > 1024) return 1;
  return static_cast<int>(jobs);
}

}  // namespace shapaudit
