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

#include "shapaudit/shapaudit.h"

#include <cstring>
#include <fstream>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/axiom_audit.h"
#include "core/dgp.h"
#include "core/error.h"
#include "core/experiments.h"
#include "core/game.h"
#include "core/report.h"
#include "core/selection.h"
#include "core/toy_games.h"

struct shapaudit_game {
  shapaudit::Game game;
};

struct shapaudit_attribution {
  shapaudit::Attribution attribution;
};

namespace {

thread_local std::string last_error;

shapaudit_status ToStatus(shapaudit::ErrorCode code) {
  switch (code) {
    case shapaudit::ErrorCode::kInvalidArgument:
      return SHAPAUDIT_INVALID_ARGUMENT;
    case shapaudit::ErrorCode::kCapacity:
      return SHAPAUDIT_CAPACITY;
    case shapaudit::ErrorCode::kValidation:
      return SHAPAUDIT_VALIDATION;
    case shapaudit::ErrorCode::kNumeric:
      return SHAPAUDIT_NUMERIC;
    case shapaudit::ErrorCode::kIo:
      return SHAPAUDIT_IO;
  }
  return SHAPAUDIT_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
shapaudit_status Guard(Body&& body) {
  last_error.clear();
  try {
    body();
    return SHAPAUDIT_OK;
  } catch (const shapaudit::Error& e) {
    last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SHAPAUDIT_CAPACITY;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SHAPAUDIT_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return SHAPAUDIT_INTERNAL;
  }
}

void RequireNonNull(const void* p, const char* what) {
  if (p == nullptr) {
    shapaudit::ThrowInvalidArgument(std::string(what) + " must not be null");
  }
}

shapaudit_game* Wrap(shapaudit::Game game) {
  return new shapaudit_game{std::move(game)};
}

char* CopyString(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

std::vector<std::string> SplitList(const char* list) {
  std::vector<std::string> out;
  if (list == nullptr) return out;
  std::string item;
  for (const char* p = list;; ++p) {
    if (*p == ',' || *p == '\0') {
      if (!item.empty()) out.push_back(item);
      item.clear();
      if (*p == '\0') break;
    } else if (*p != ' ') {
      item += *p;
    }
  }
  return out;
}

shapaudit::ReportFormat ToFormat(shapaudit_format format) {
  switch (format) {
    case SHAPAUDIT_FORMAT_CSV:
      return shapaudit::ReportFormat::kCsv;
    case SHAPAUDIT_FORMAT_JSON:
      return shapaudit::ReportFormat::kJson;
  }
  shapaudit::ThrowInvalidArgument("unknown report format");
}

}  // namespace

extern "C" {

const char* shapaudit_version(void) { return "0.1.0"; }

const char* shapaudit_last_error(void) { return last_error.c_str(); }

const char* shapaudit_status_name(shapaudit_status status) {
  switch (status) {
    case SHAPAUDIT_OK: return "ok";
    case SHAPAUDIT_INVALID_ARGUMENT: return "invalid_argument";
    case SHAPAUDIT_CAPACITY: return "capacity";
    case SHAPAUDIT_VALIDATION: return "validation";
    case SHAPAUDIT_NUMERIC: return "numeric";
    case SHAPAUDIT_IO: return "io";
    case SHAPAUDIT_INTERNAL: return "internal";
  }
  return "unknown";
}

shapaudit_status shapaudit_game_create(int num_players,
                                       const char* const* labels,
                                       const double* raw_values,
                                       size_t num_values,
                                       shapaudit_game** out) {
  return Guard([&] {
    RequireNonNull(out, "out");
    RequireNonNull(raw_values, "raw_values");
    if (num_players < 1 || num_players > shapaudit::Game::kMaxPlayers) {
      shapaudit::ThrowCapacity("player count must lie in [1, " +
                               std::to_string(shapaudit::Game::kMaxPlayers) +
                               "]");
    }
    if (num_values != (size_t{1} << num_players)) {
      shapaudit::ThrowValidation("expected " +
                                 std::to_string(size_t{1} << num_players) +
                                 " values, got " + std::to_string(num_values));
    }
    std::vector<double> raw(raw_values, raw_values + num_values);
    if (labels == nullptr) {
      *out = Wrap(shapaudit::Game::FromRaw(std::move(raw), "c_api"));
      return;
    }
    std::vector<std::string> names;
    for (int i = 0; i < num_players; ++i) {
      RequireNonNull(labels[i], "label");
      names.emplace_back(labels[i]);
    }
    *out = Wrap(
        shapaudit::Game::FromRaw(std::move(names), std::move(raw), "c_api"));
  });
}

shapaudit_status shapaudit_game_load(const char* path, shapaudit_game** out) {
  return Guard([&] {
    RequireNonNull(path, "path");
    RequireNonNull(out, "out");
    *out = Wrap(shapaudit::LoadGame(path));
  });
}

shapaudit_status shapaudit_game_save(const shapaudit_game* game,
                                     const char* path) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(path, "path");
    shapaudit::SaveGame(game->game, path);
  });
}

shapaudit_status shapaudit_game_builtin(const char* name,
                                        shapaudit_game** out) {
  return Guard([&] {
    RequireNonNull(name, "name");
    RequireNonNull(out, "out");
    std::string n(name);
    if (n == "taxicab") {
      *out = Wrap(shapaudit::TaxicabGame());
    } else if (n == "secret_holder") {
      *out = Wrap(shapaudit::SecretHolderGame());
    } else {
      shapaudit::ThrowInvalidArgument("unknown built-in game \"" + n + "\"");
    }
  });
}

void shapaudit_game_free(shapaudit_game* game) { delete game; }

int shapaudit_game_num_players(const shapaudit_game* game) {
  return game == nullptr ? 0 : game->game.num_players();
}

const char* shapaudit_game_label(const shapaudit_game* game, int player) {
  if (game == nullptr || player < 0 || player >= game->game.num_players()) {
    return nullptr;
  }
  return game->game.label(player).c_str();
}

shapaudit_status shapaudit_game_value(const shapaudit_game* game,
                                      shapaudit_coalition coalition,
                                      double* out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(out, "out");
    if (coalition >= game->game.num_coalitions()) {
      shapaudit::ThrowInvalidArgument("coalition has players outside the game");
    }
    *out = game->game.value(shapaudit::Coalition(coalition));
  });
}

double shapaudit_game_offset(const shapaudit_game* game) {
  return game == nullptr ? 0.0 : game->game.offset();
}

shapaudit_status shapaudit_game_add(const shapaudit_game* a,
                                    const shapaudit_game* b,
                                    shapaudit_game** out) {
  return Guard([&] {
    RequireNonNull(a, "a");
    RequireNonNull(b, "b");
    RequireNonNull(out, "out");
    *out = Wrap(shapaudit::AddGames(a->game, b->game));
  });
}

shapaudit_status shapaudit_game_scale(const shapaudit_game* game,
                                      double factor, shapaudit_game** out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(out, "out");
    *out = Wrap(shapaudit::ScaleGame(game->game, factor));
  });
}

shapaudit_status shapaudit_game_restrict(const shapaudit_game* game,
                                         int player, shapaudit_game** out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(out, "out");
    *out = Wrap(shapaudit::Restrict(game->game, player));
  });
}

shapaudit_status shapaudit_game_with_dummy(const shapaudit_game* game,
                                           const char* label,
                                           shapaudit_game** out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(label, "label");
    RequireNonNull(out, "out");
    *out = Wrap(shapaudit::WithDummy(game->game, label));
  });
}

shapaudit_status shapaudit_game_penalize(const shapaudit_game* game,
                                         double lambda, shapaudit_game** out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(out, "out");
    *out = Wrap(shapaudit::Penalize(game->game, lambda));
  });
}

shapaudit_status shapaudit_game_is_monotonic(const shapaudit_game* game,
                                             int* out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(out, "out");
    *out = shapaudit::CheckMonotonic(game->game).monotonic ? 1 : 0;
  });
}

shapaudit_status shapaudit_shapley_exact(const shapaudit_game* game,
                                         shapaudit_attribution** out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(out, "out");
    *out = new shapaudit_attribution{shapaudit::ExactShapley(game->game)};
  });
}

shapaudit_status shapaudit_shapley_permutation(const shapaudit_game* game,
                                               shapaudit_attribution** out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(out, "out");
    *out =
        new shapaudit_attribution{shapaudit::PermutationShapley(game->game)};
  });
}

void shapaudit_attribution_free(shapaudit_attribution* attr) { delete attr; }

int shapaudit_attribution_size(const shapaudit_attribution* attr) {
  return attr == nullptr ? 0 : attr->attribution.size();
}

const double* shapaudit_attribution_values(const shapaudit_attribution* attr) {
  return attr == nullptr ? nullptr : attr->attribution.phi.data();
}

shapaudit_status shapaudit_efficiency_residual(
    const shapaudit_game* game, const shapaudit_attribution* attr,
    double* out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(attr, "attribution");
    RequireNonNull(out, "out");
    *out = shapaudit::CheckEfficiency(game->game, attr->attribution);
  });
}

shapaudit_status shapaudit_audit_json(const shapaudit_game* game,
                                      const shapaudit_game* other, double tol,
                                      char** out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(out, "out");
    shapaudit::AxiomReport report = shapaudit::AuditAll(
        game->game, other == nullptr ? nullptr : &other->game, tol);
    *out = CopyString(shapaudit::ToJson(report, game->game).dump(2));
  });
}

shapaudit_status shapaudit_pathology_json(const shapaudit_game* game, int k,
                                          const shapaudit_coalition* boundary,
                                          double tol, char** out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(out, "out");
    std::optional<shapaudit::Coalition> b;
    if (boundary != nullptr) {
      if (*boundary >= game->game.num_coalitions()) {
        shapaudit::ThrowInvalidArgument("boundary has players outside the game");
      }
      b = shapaudit::Coalition(*boundary);
    }
    shapaudit::Attribution attr = shapaudit::ExactShapley(game->game);
    shapaudit::PathologyReport report =
        shapaudit::AnalyzePathologies(game->game, attr, k, b, tol);
    *out = CopyString(shapaudit::ToJson(report, game->game).dump(2));
  });
}

void shapaudit_string_free(char* text) { delete[] text; }

shapaudit_status shapaudit_top_k(const shapaudit_attribution* attr, int k,
                                 shapaudit_coalition* out) {
  return Guard([&] {
    RequireNonNull(attr, "attribution");
    RequireNonNull(out, "out");
    *out = shapaudit::TopK(attr->attribution, k).selected.bits();
  });
}

shapaudit_status shapaudit_threshold(const shapaudit_attribution* attr,
                                     double tau, shapaudit_coalition* out) {
  return Guard([&] {
    RequireNonNull(attr, "attribution");
    RequireNonNull(out, "out");
    *out = shapaudit::Threshold(attr->attribution, tau).selected.bits();
  });
}

shapaudit_status shapaudit_selection_regret(const shapaudit_game* game, int k,
                                            double* out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(out, "out");
    *out = shapaudit::SelectionRegret(game->game, k);
  });
}

shapaudit_status shapaudit_efficiency_waste(const shapaudit_game* game,
                                            double* out) {
  return Guard([&] {
    RequireNonNull(game, "game");
    RequireNonNull(out, "out");
    *out = shapaudit::EfficiencyWaste(game->game);
  });
}

shapaudit_status shapaudit_run_experiment(const char* experiment,
                                          const char* params, int64_t n,
                                          uint64_t seed,
                                          const char* formulations,
                                          shapaudit_format format,
                                          const char* out_path,
                                          size_t* rows_written) {
  return Guard([&] {
    RequireNonNull(experiment, "experiment");
    RequireNonNull(out_path, "out_path");
    if (n < 0) shapaudit::ThrowInvalidArgument("n must not be negative");
    shapaudit::ReportFormat report_format = ToFormat(format);
    std::vector<shapaudit::ReportRow> rows = shapaudit::RunExperiment(
        shapaudit::ParseExperiment(experiment),
        shapaudit::ParseParams(params == nullptr ? "" : params), n, seed,
        SplitList(formulations));
    shapaudit::WriteReport(rows, report_format, out_path);
    if (rows_written != nullptr) *rows_written = rows.size();
  });
}

shapaudit_status shapaudit_run_sweep(const char* experiment, const char* grid,
                                     int64_t n, uint64_t seed,
                                     const char* formulations, int jobs,
                                     shapaudit_format format,
                                     const char* out_path,
                                     size_t* rows_written) {
  return Guard([&] {
    RequireNonNull(experiment, "experiment");
    RequireNonNull(grid, "grid");
    RequireNonNull(out_path, "out_path");
    if (n < 0) shapaudit::ThrowInvalidArgument("n must not be negative");
    if (jobs < 0) shapaudit::ThrowInvalidArgument("jobs must not be negative");
    shapaudit::ReportFormat report_format = ToFormat(format);
    shapaudit::SweepConfig config;
    config.experiment = shapaudit::ParseExperiment(experiment);
    config.grid = shapaudit::ParseGrid(grid);
    config.base_seed = seed;
    config.n = n;
    config.formulations = SplitList(formulations);
    config.jobs = jobs == 0 ? shapaudit::DefaultJobs() : jobs;
    std::vector<shapaudit::ReportRow> rows = shapaudit::RunSweep(config);
    shapaudit::WriteReport(rows, report_format, out_path);
    if (rows_written != nullptr) *rows_written = rows.size();
  });
}

shapaudit_status shapaudit_sample_dataset(const char* experiment,
                                          const char* params, int64_t n,
                                          uint64_t seed,
                                          const char* out_path) {
  return Guard([&] {
    RequireNonNull(experiment, "experiment");
    RequireNonNull(out_path, "out_path");
    if (n < 0) shapaudit::ThrowInvalidArgument("n must not be negative");
    shapaudit::Experiment which = shapaudit::ParseExperiment(experiment);
    shapaudit::ExperimentParams p =
        shapaudit::ParseParams(params == nullptr ? "" : params);
    shapaudit::DgpSpec spec;
    spec.n = n == 0 ? shapaudit::DefaultSampleSize(which) : n;
    spec.seed = seed;
    switch (which) {
      case shapaudit::Experiment::kMarkov1:
        spec.variant = shapaudit::GaussMarkov{};
        break;
      case shapaudit::Experiment::kMarkov2:
        spec.variant = shapaudit::DiscreteMarkov{p.ell};
        break;
      case shapaudit::Experiment::kSecret:
        spec.variant = shapaudit::SecretInteraction{p.t1, p.t2};
        break;
      case shapaudit::Experiment::kTaxicab:
        spec.variant = shapaudit::TaxicabMax{p.a};
        break;
    }
    shapaudit::Dataset data = shapaudit::Sample(spec);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      shapaudit::ThrowIo(std::string("cannot open ") + out_path +
                         " for writing");
    }
    shapaudit::WriteDatasetCsv(data, out);
    out.flush();
    if (!out) shapaudit::ThrowIo(std::string("write failed for ") + out_path);
  });
}

}  // extern "C"
