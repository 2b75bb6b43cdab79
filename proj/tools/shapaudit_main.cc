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

// Command-line front end. Talks to the library through the C API only.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shapaudit/shapaudit.h"

namespace {

// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

struct GameDeleter {
  void operator()(shapaudit_game* g) const { shapaudit_game_free(g); }
};
struct AttributionDeleter {
  void operator()(shapaudit_attribution* a) const {
    shapaudit_attribution_free(a);
  }
};
struct StringDeleter {
  void operator()(char* s) const { shapaudit_string_free(s); }
};
using GamePtr = std::unique_ptr<shapaudit_game, GameDeleter>;
using AttributionPtr = std::unique_ptr<shapaudit_attribution, AttributionDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Carries a failed status out of a subcommand.
struct Failure {
  shapaudit_status status;
  std::string message;
};

void Check(shapaudit_status status) {
  if (status != SHAPAUDIT_OK) throw Failure{status, shapaudit_last_error()};
}

int ExitCodeFor(shapaudit_status status) {
  switch (status) {
    case SHAPAUDIT_OK:
      return kExitOk;
    case SHAPAUDIT_INVALID_ARGUMENT:
      return kExitUsage;
    case SHAPAUDIT_CAPACITY:
    case SHAPAUDIT_VALIDATION:
    case SHAPAUDIT_IO:
      return kExitData;
    case SHAPAUDIT_NUMERIC:
    case SHAPAUDIT_INTERNAL:
      return kExitNumeric;
  }
  return kExitNumeric;
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

GamePtr LoadGame(const std::string& path) {
  shapaudit_game* game = nullptr;
  Check(shapaudit_game_load(path.c_str(), &game));
  return GamePtr(game);
}

AttributionPtr Shapley(const shapaudit_game* game, bool permutation) {
  shapaudit_attribution* attr = nullptr;
  Check(permutation ? shapaudit_shapley_permutation(game, &attr)
                    : shapaudit_shapley_exact(game, &attr));
  return AttributionPtr(attr);
}

std::string Labels(const shapaudit_game* game, shapaudit_coalition s) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < shapaudit_game_num_players(game); ++i) {
    if ((s >> i) & 1) {
      if (!first) out += ",";
      out += shapaudit_game_label(game, i);
      first = false;
    }
  }
  return out + "}";
}

shapaudit_coalition ParseBoundary(const shapaudit_game* game,
                                  const std::string& spec) {
  shapaudit_coalition bits = 0;
  std::string item;
  auto flush = [&] {
    if (item.empty()) return;
    int found = -1;
    for (int i = 0; i < shapaudit_game_num_players(game); ++i) {
      if (item == shapaudit_game_label(game, i)) found = i;
    }
    if (found < 0) {
      throw Failure{SHAPAUDIT_INVALID_ARGUMENT,
                    "unknown player \"" + item + "\" in --boundary"};
    }
    bits |= shapaudit_coalition{1} << found;
    item.clear();
  };
  for (char c : spec) {
    if (c == ',') {
      flush();
    } else if (c != ' ') {
      item += c;
    }
  }
  flush();
  return bits;
}

shapaudit_format ParseFormat(const std::string& name) {
  return name == "json" ? SHAPAUDIT_FORMAT_JSON : SHAPAUDIT_FORMAT_CSV;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Shapley values and selection diagnostics for TU games",
               "shapaudit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", shapaudit_version());

  uint64_t seed = 42;
  double tol = 1e-9;
  app.add_option("--seed", seed, "Base random seed")->capture_default_str();
  app.add_option("--tol", tol, "Numerical tolerance")->capture_default_str();

  std::string game_path;
  std::string other_path;
  std::string method = "exact";
  std::string boundary;
  std::string out_path;
  std::string format = "csv";
  std::string params;
  std::string formulations;
  std::string grid;
  std::string name;
  int64_t n = 0;
  int k = 0;
  int top_k = 0;
  double threshold = 0.0;
  int jobs = 0;

  auto* shapley = app.add_subcommand("shapley", "Print Shapley values");
  shapley->add_option("--game", game_path, "Game JSON file")->required();
  shapley->add_option("--method", method, "exact or permutation")
      ->check(CLI::IsMember({"exact", "permutation"}))
      ->capture_default_str();

  auto* axioms = app.add_subcommand("axioms", "Audit the Shapley axioms");
  axioms->add_option("--game", game_path, "Game JSON file")->required();
  axioms->add_option("--with", other_path, "Second game for additivity");

  auto* select = app.add_subcommand("select", "Select players by Shapley value");
  select->add_option("--game", game_path, "Game JSON file")->required();
  auto* top_k_opt = select->add_option("--top-k", top_k, "Keep the k largest");
  auto* threshold_opt =
      select->add_option("--threshold", threshold, "Keep phi above this value");
  top_k_opt->excludes(threshold_opt);

  auto* pathology =
      app.add_subcommand("pathology", "Report selection pathologies");
  pathology->add_option("--game", game_path, "Game JSON file")->required();
  auto* k_opt =
      pathology->add_option("--k", k, "Selection size (default d - 1)");
  pathology->add_option("--boundary", boundary,
                        "Comma-separated labels of the Markov boundary");

  auto* experiment = app.add_subcommand("experiment", "Run one experiment");
  experiment->add_option("name", name, "markov1, markov2, secret or taxicab")
      ->required()
      ->check(CLI::IsMember({"markov1", "markov2", "secret", "taxicab"}));
  experiment->add_option("--n", n, "Sample size (0 = default)");
  experiment->add_option("--params", params, "e.g. ell=0.05 or t1=2,t2=2.2");
  experiment->add_option("--formulations", formulations,
                         "Comma-separated subset of formulations");
  experiment->add_option("--out", out_path, "Output path")->required();
  experiment->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("name", name, "markov2 or secret")
      ->required()
      ->check(CLI::IsMember({"markov2", "secret"}));
  sweep->add_option("--grid", grid, "e.g. t1=-2:2:81,t2=-2:2:81")->required();
  sweep->add_option("--n", n, "Sample size per cell (0 = default)");
  sweep->add_option("--formulations", formulations,
                    "Comma-separated subset of formulations");
  sweep->add_option("--jobs", jobs, "Worker threads (default SHAPAUDIT_JOBS)");
  sweep->add_option("--out", out_path, "Output path")->required();
  sweep->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  auto* sample = app.add_subcommand("sample", "Write a sampled dataset as CSV");
  sample->add_option("name", name, "markov1, markov2, secret or taxicab")
      ->required()
      ->check(CLI::IsMember({"markov1", "markov2", "secret", "taxicab"}));
  sample->add_option("--n", n, "Sample size (0 = default)");
  sample->add_option("--params", params, "Model parameters");
  sample->add_option("--out", out_path, "Output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*shapley) {
      GamePtr game = LoadGame(game_path);
      AttributionPtr attr = Shapley(game.get(), method == "permutation");
      const double* phi = shapaudit_attribution_values(attr.get());
      double full = 0.0;
      int d = shapaudit_game_num_players(game.get());
      Check(shapaudit_game_value(game.get(), (shapaudit_coalition{1} << d) - 1,
                                 &full));
      double residual = 0.0;
      Check(shapaudit_efficiency_residual(game.get(), attr.get(), &residual));
      double sum = 0.0;
      std::printf("player\tphi\n");
      for (int i = 0; i < d; ++i) {
        std::printf("%s\t%s\n", shapaudit_game_label(game.get(), i),
                    Num(phi[i]).c_str());
        sum += phi[i];
      }
      const bool ok = std::abs(residual) <= tol * std::max(1.0, std::abs(full));
      std::printf("sum_phi\t%s\nC(F)\t%s\nefficiency\t%s (residual %s)\n",
                  Num(sum).c_str(), Num(full).c_str(), ok ? "ok" : "FAILED",
                  Num(residual).c_str());
      if (!ok) return kExitNumeric;
    } else if (*axioms) {
      GamePtr game = LoadGame(game_path);
      GamePtr other;
      if (!other_path.empty()) other = LoadGame(other_path);
      char* json = nullptr;
      Check(shapaudit_audit_json(game.get(), other.get(), tol, &json));
      StringPtr text(json);
      std::printf("%s\n", text.get());
    } else if (*select) {
      if (!*top_k_opt && !*threshold_opt) {
        throw Failure{SHAPAUDIT_INVALID_ARGUMENT,
                      "select needs --top-k or --threshold"};
      }
      GamePtr game = LoadGame(game_path);
      AttributionPtr attr = Shapley(game.get(), false);
      shapaudit_coalition chosen = 0;
      if (*top_k_opt) {
        Check(shapaudit_top_k(attr.get(), top_k, &chosen));
      } else {
        Check(shapaudit_threshold(attr.get(), threshold, &chosen));
      }
      std::printf("%s\n", Labels(game.get(), chosen).c_str());
    } else if (*pathology) {
      GamePtr game = LoadGame(game_path);
      int kk = *k_opt ? k : shapaudit_game_num_players(game.get()) - 1;
      if (kk < 1) kk = 1;
      shapaudit_coalition b = 0;
      const bool has_boundary = !boundary.empty();
      if (has_boundary) b = ParseBoundary(game.get(), boundary);
      char* json = nullptr;
      Check(shapaudit_pathology_json(game.get(), kk,
                                     has_boundary ? &b : nullptr, tol, &json));
      StringPtr text(json);
      std::printf("%s\n", text.get());
    } else if (*experiment) {
      size_t rows = 0;
      Check(shapaudit_run_experiment(
          name.c_str(), params.c_str(), n, seed,
          formulations.empty() ? nullptr : formulations.c_str(),
          ParseFormat(format), out_path.c_str(), &rows));
      std::fprintf(stderr, "wrote %zu rows to %s\n", rows, out_path.c_str());
    } else if (*sweep) {
      size_t rows = 0;
      Check(shapaudit_run_sweep(
          name.c_str(), grid.c_str(), n, seed,
          formulations.empty() ? nullptr : formulations.c_str(), jobs,
          ParseFormat(format), out_path.c_str(), &rows));
      std::fprintf(stderr, "wrote %zu rows to %s\n", rows, out_path.c_str());
    } else if (*sample) {
      Check(shapaudit_sample_dataset(name.c_str(), params.c_str(), n, seed,
                                     out_path.c_str()));
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "shapaudit: %s error: %s\n",
                 shapaudit_status_name(f.status), f.message.c_str());
    return ExitCodeFor(f.status);
  }
  return kExitOk;
}
