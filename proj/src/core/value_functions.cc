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

#include "core/value_functions.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "core/compensated_sum.h"
#include "core/error.h"
#include "core/least_squares.h"

namespace shapaudit {
namespace {

std::vector<int> ColumnsOf(uint64_t mask) { return Coalition(mask).Members(); }

void CheckFeatureCount(int d) {
  if (d < 1) ThrowInvalidArgument("dataset has no features");
  if (d > Game::kMaxPlayers) {
    ThrowCapacity(std::to_string(d) + " features exceed the " +
                  std::to_string(Game::kMaxPlayers) + "-player lattice limit");
  }
}

Eigen::MatrixXd SelectColumns(const Eigen::MatrixXd& x,
                              const std::vector<int>& columns) {
  Eigen::MatrixXd out(x.rows(), static_cast<Eigen::Index>(columns.size()));
  for (size_t k = 0; k < columns.size(); ++k) out.col(k) = x.col(columns[k]);
  return out;
}

// Level index per (cell, feature) for a mixed-radix grid with feature 0
// varying fastest.
std::vector<std::vector<int>> CellLevels(
    const std::vector<std::vector<double>>& levels, size_t num_cells) {
  std::vector<std::vector<int>> out(num_cells,
                                    std::vector<int>(levels.size()));
  for (size_t c = 0; c < num_cells; ++c) {
    size_t rest = c;
    for (size_t f = 0; f < levels.size(); ++f) {
      out[c][f] = static_cast<int>(rest % levels[f].size());
      rest /= levels[f].size();
    }
  }
  return out;
}

// Mixed-radix key of a cell restricted to the features in `mask`.
struct Projection {
  std::vector<int> features;
  std::vector<size_t> strides;
  size_t size = 1;

  Projection(uint64_t mask, const std::vector<std::vector<double>>& levels)
      : features(ColumnsOf(mask)) {
    for (int f : features) {
      strides.push_back(size);
      size *= levels[f].size();
    }
  }

  size_t Key(const std::vector<int>& cell_levels) const {
    size_t key = 0;
    for (size_t k = 0; k < features.size(); ++k) {
      key += strides[k] * static_cast<size_t>(cell_levels[features[k]]);
    }
    return key;
  }
};

double PointLoss(const LossSpec& loss, double p, int y) {
  if (const auto* ce = std::get_if<CrossEntropy>(&loss)) {
    const double q = std::clamp(p, ce->clip, 1.0 - ce->clip);
    return y ? -std::log(q) : -std::log1p(-q);
  }
  if (std::holds_alternative<ZeroOne>(loss)) {
    return (p > 0.5 ? 1 : 0) != y ? 1.0 : 0.0;
  }
  const double e = y - p;
  return e * e;
}

std::string LossName(const LossSpec& loss) {
  if (std::holds_alternative<CrossEntropy>(loss)) return "cross_entropy";
  if (std::holds_alternative<ZeroOne>(loss)) return "zero_one";
  return "squared_error";
}

std::vector<double> LinearLosses(const LinearModel& model,
                                 const Dataset& data) {
  const int d = data.num_features();
  const int64_t n = data.num_rows();
  if (model.coefficients.size() != d || model.feature_means.size() != d) {
    ThrowInvalidArgument("linear model has " +
                         std::to_string(model.coefficients.size()) +
                         " coefficients for " + std::to_string(d) +
                         " features");
  }
  const double base =
      model.intercept + model.coefficients.dot(model.feature_means);
  // contribution(r, i) = theta_i (x_ri - mean_i): zero for a zero coefficient,
  // so such a feature leaves every prediction bit-identical.
  const Eigen::MatrixXd contribution =
      (data.x.rowwise() - model.feature_means.transpose()) *
      model.coefficients.asDiagonal();
  std::vector<double> losses(uint64_t{1} << d);
  for (uint64_t s = 0; s < losses.size(); ++s) {
    const std::vector<int> members = ColumnsOf(s);
    CompensatedSum total;
    for (int64_t r = 0; r < n; ++r) {
      double pred = base;
      for (int i : members) pred += contribution(r, i);
      const double e = data.y(r) - pred;
      total.Add(e * e);
    }
    losses[s] = total.Total() / static_cast<double>(n);
  }
  return losses;
}

std::vector<double> TableLosses(const ProbTableModel& model,
                                const Dataset& data, const LossSpec& loss) {
  const int d = data.num_features();
  const int64_t n = data.num_rows();
  if (static_cast<int>(model.levels.size()) != d) {
    ThrowInvalidArgument("probability table covers " +
                         std::to_string(model.levels.size()) +
                         " features, dataset has " + std::to_string(d));
  }
  const size_t cells = model.num_cells();
  std::vector<int64_t> ones(cells, 0), zeros(cells, 0);
  for (int64_t r = 0; r < n; ++r) {
    size_t cell = 0, stride = 1;
    for (int f = 0; f < d; ++f) {
      const auto& lv = model.levels[f];
      const auto it = std::lower_bound(lv.begin(), lv.end(), data.x(r, f));
      if (it == lv.end() || *it != data.x(r, f)) {
        ThrowValidation("feature " + data.names[f] + " value " +
                        std::to_string(data.x(r, f)) +
                        " was not seen when the table was fitted");
      }
      cell += stride * static_cast<size_t>(it - lv.begin());
      stride *= lv.size();
    }
    const double y = data.y(r);
    if (y == 1.0) {
      ++ones[cell];
    } else if (y == 0.0) {
      ++zeros[cell];
    } else {
      ThrowValidation("response must be binary for a probability table");
    }
  }

  const auto cell_levels = CellLevels(model.levels, cells);
  const uint64_t full = (uint64_t{1} << d) - 1;
  std::vector<double> losses(uint64_t{1} << d);
  for (uint64_t s = 0; s <= full; ++s) {
    const Projection kept(s, model.levels);
    const Projection removed(full & ~s, model.levels);
    std::vector<double> removed_marginal(removed.size, 0.0);
    for (size_t c = 0; c < cells; ++c) {
      removed_marginal[removed.Key(cell_levels[c])] +=
          static_cast<double>(ones[c] + zeros[c]) / static_cast<double>(n);
    }
    std::vector<double> imputed(kept.size, 0.0);
    for (size_t c = 0; c < cells; ++c) {
      imputed[kept.Key(cell_levels[c])] +=
          removed_marginal[removed.Key(cell_levels[c])] * model.prob_one[c];
    }
    CompensatedSum total;
    for (size_t c = 0; c < cells; ++c) {
      if (ones[c] + zeros[c] == 0) continue;
      const double p = imputed[kept.Key(cell_levels[c])];
      total.Add(static_cast<double>(ones[c]) * PointLoss(loss, p, 1));
      total.Add(static_cast<double>(zeros[c]) * PointLoss(loss, p, 0));
    }
    losses[s] = total.Total() / static_cast<double>(n);
  }
  return losses;
}

}  // namespace

Game R2GamePopulation(const CovarianceModel& population) {
  const int d = population.num_features();
  CheckFeatureCount(d);
  const Eigen::MatrixXd& cov = population.covariance;
  if (cov.rows() != d + 1 || cov.cols() != d + 1) {
    ThrowInvalidArgument("covariance must be (d+1)x(d+1) over features and "
                         "response");
  }
  if (!cov.isApprox(cov.transpose(), 1e-12) || !cov.allFinite()) {
    ThrowValidation("covariance must be finite and symmetric");
  }
  const double var_y = cov(d, d);
  if (!(var_y > 0)) ThrowNumeric("response variance must be positive");

  std::vector<double> raw(uint64_t{1} << d, 0.0);
  for (uint64_t s = 1; s < raw.size(); ++s) {
    const std::vector<int> idx = ColumnsOf(s);
    const Eigen::MatrixXd block = cov(idx, idx);
    const Eigen::VectorXd cross = cov(idx, d);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(block);
    auto usable = [&] {
      return ldlt.info() == Eigen::Success && ldlt.isPositive() &&
             ldlt.vectorD().minCoeff() > 0;
    };
    if (!usable()) {
      const double ridge =
          1e-12 * std::max(1.0, block.trace() / static_cast<double>(idx.size()));
      ldlt.compute(block +
                   ridge * Eigen::MatrixXd::Identity(block.rows(), block.cols()));
      if (!usable()) {
        ThrowNumeric("singular covariance block for coalition " +
                     FormatCoalition(Coalition(s)));
      }
    }
    raw[s] = cross.dot(ldlt.solve(cross)) / var_y;
  }
  return Game::FromRaw(population.names, std::move(raw), "r2_population");
}

Game R2GameEmpirical(const Dataset& data) {
  const int d = data.num_features();
  CheckFeatureCount(d);
  if (data.num_rows() <= d + 1) {
    ThrowInvalidArgument("need more than d+1 rows for an R^2 game");
  }
  std::vector<double> raw(uint64_t{1} << d, 0.0);
  const double tss = (data.y.array() - data.y.mean()).matrix().squaredNorm();
  if (tss > 0) {
    for (uint64_t s = 1; s < raw.size(); ++s) {
      const OlsFit fit = FitOls(SelectColumns(data.x, ColumnsOf(s)), data.y);
      raw[s] = 1.0 - fit.rss / fit.tss;
    }
  }
  return Game::FromRaw(data.names, std::move(raw), "r2_empirical");
}

Game BayesAccuracyGame(const JointTable& population) {
  const int d = population.num_features();
  CheckFeatureCount(d);
  size_t cells = 1;
  for (const auto& lv : population.levels) cells *= lv.size();
  if (population.levels.size() != static_cast<size_t>(d) ||
      population.probability.size() != 2 * cells) {
    ThrowValidation("joint table shape does not match its feature levels");
  }
  CompensatedSum mass;
  for (double p : population.probability) {
    if (!(p >= 0) || !std::isfinite(p)) {
      ThrowValidation("joint probabilities must be finite and non-negative");
    }
    mass.Add(p);
  }
  if (std::fabs(mass.Total() - 1.0) > 1e-12) {
    ThrowValidation("joint probabilities must sum to 1");
  }

  const auto cell_levels = CellLevels(population.levels, cells);
  std::vector<double> raw(uint64_t{1} << d);
  for (uint64_t s = 0; s < raw.size(); ++s) {
    const Projection kept(s, population.levels);
    std::vector<double> joint(2 * kept.size, 0.0);
    for (size_t c = 0; c < cells; ++c) {
      const size_t key = kept.Key(cell_levels[c]);
      joint[2 * key] += population.probability[2 * c];
      joint[2 * key + 1] += population.probability[2 * c + 1];
    }
    CompensatedSum accuracy;
    for (size_t key = 0; key < kept.size; ++key) {
      accuracy.Add(std::max(joint[2 * key], joint[2 * key + 1]));
    }
    raw[s] = accuracy.Total();
  }
  return Game::FromRaw(population.names, std::move(raw), "bayes_accuracy");
}

std::vector<Coalition> SecretModelTerms() {
  return {Coalition::Of({1}), Coalition::Of({2}), Coalition::Of({0, 1}),
          Coalition::Of({0, 2})};
}

Game LoglikGame(const Dataset& data, std::span<const Coalition> terms) {
  const int d = data.num_features();
  CheckFeatureCount(d);
  const int64_t n = data.num_rows();
  Eigen::MatrixXd term_columns(n, static_cast<Eigen::Index>(terms.size()));
  for (size_t t = 0; t < terms.size(); ++t) {
    if (terms[t].empty() || !terms[t].IsSubsetOf(Coalition::Full(d))) {
      ThrowInvalidArgument("model term " + FormatCoalition(terms[t]) +
                           " is not a non-empty set of dataset features");
    }
    term_columns.col(t).setOnes();
    for (int f : terms[t].Members()) {
      term_columns.col(t).array() *= data.x.col(f).array();
    }
  }
  const double tss = (data.y.array() - data.y.mean()).matrix().squaredNorm();
  if (!(tss > 0)) ThrowNumeric("response has zero variance");

  std::vector<double> raw(uint64_t{1} << d, 0.0);
  for (uint64_t s = 1; s < raw.size(); ++s) {
    std::vector<int> kept;
    for (size_t t = 0; t < terms.size(); ++t) {
      if (terms[t].IsSubsetOf(Coalition(s))) kept.push_back(static_cast<int>(t));
    }
    if (kept.empty()) continue;
    const OlsFit fit = FitOls(SelectColumns(term_columns, kept), data.y);
    if (!(fit.rss > 0)) {
      ThrowNumeric("non-positive residual sum of squares for coalition " +
                   FormatCoalition(Coalition(s)));
    }
    raw[s] = 0.5 * std::log(tss / fit.rss);
  }
  return Game::FromRaw(data.names, std::move(raw), "loglik");
}

Game MseSkillGame(const Dataset& data) {
  const int d = data.num_features();
  CheckFeatureCount(d);
  const int64_t n = data.num_rows();
  if (n < 1) ThrowInvalidArgument("dataset is empty");
  CompensatedSum y2;
  for (int64_t r = 0; r < n; ++r) y2.Add(data.y(r) * data.y(r));
  const double mse_zero = y2.Total() / static_cast<double>(n);

  std::vector<double> raw(uint64_t{1} << d, 0.0);
  for (uint64_t s = 1; s < raw.size(); ++s) {
    const std::vector<int> members = ColumnsOf(s);
    CompensatedSum sq;
    for (int64_t r = 0; r < n; ++r) {
      double best = data.x(r, members[0]);
      for (size_t k = 1; k < members.size(); ++k) {
        best = std::max(best, data.x(r, members[k]));
      }
      const double e = data.y(r) - best;
      sq.Add(e * e);
    }
    raw[s] = mse_zero - sq.Total() / static_cast<double>(n);
  }
  return Game::FromRaw(data.names, std::move(raw), "mse_skill");
}

LinearModel FitLinear(const Dataset& data) {
  CheckFeatureCount(data.num_features());
  if (data.num_rows() <= data.num_features() + 1) {
    ThrowInvalidArgument("need more than d+1 rows to fit a linear model");
  }
  const OlsFit fit = FitOls(data.x, data.y);
  LinearModel model;
  model.coefficients = fit.coefficients;
  model.intercept = fit.intercept;
  model.feature_means = data.x.colwise().mean().transpose();
  return model;
}

ProbTableModel FitProbTable(const Dataset& data) {
  const int d = data.num_features();
  CheckFeatureCount(d);
  const int64_t n = data.num_rows();
  ProbTableModel model;
  size_t cells = 1;
  for (int f = 0; f < d; ++f) {
    std::set<double> distinct;
    for (int64_t r = 0; r < n; ++r) {
      const double v = data.x(r, f);
      if (!std::isfinite(v)) ThrowValidation("feature values must be finite");
      distinct.insert(v);
      if (distinct.size() > kMaxProbTableCells) break;
    }
    cells *= std::max<size_t>(1, distinct.size());
    if (cells > kMaxProbTableCells) {
      ThrowInvalidArgument("feature grid exceeds " +
                           std::to_string(kMaxProbTableCells) +
                           " cells; features must be discrete");
    }
    model.levels.emplace_back(distinct.begin(), distinct.end());
  }
  std::vector<int64_t> ones(cells, 0);
  model.cell_counts.assign(cells, 0);
  for (int64_t r = 0; r < n; ++r) {
    const double y = data.y(r);
    if (y != 0.0 && y != 1.0) {
      ThrowInvalidArgument("response must be binary in {0, 1}");
    }
    size_t cell = 0, stride = 1;
    for (int f = 0; f < d; ++f) {
      const auto& lv = model.levels[f];
      cell += stride * static_cast<size_t>(
                           std::lower_bound(lv.begin(), lv.end(), data.x(r, f)) -
                           lv.begin());
      stride *= lv.size();
    }
    ++model.cell_counts[cell];
    if (y == 1.0) ++ones[cell];
  }
  model.prob_one.resize(cells);
  for (size_t c = 0; c < cells; ++c) {
    model.prob_one[c] =
        model.cell_counts[c] == 0
            ? 0.5
            : static_cast<double>(ones[c]) /
                  static_cast<double>(model.cell_counts[c]);
  }
  return model;
}

Game InterventionalLossGame(const FittedModel& model, const Dataset& data,
                            const LossSpec& loss) {
  CheckFeatureCount(data.num_features());
  if (data.num_rows() < 1) ThrowInvalidArgument("dataset is empty");
  if (const auto* ce = std::get_if<CrossEntropy>(&loss)) {
    if (!(ce->clip > 0 && ce->clip < 0.5)) {
      ThrowInvalidArgument("cross-entropy clip must lie in (0, 0.5)");
    }
  }
  std::vector<double> losses;
  if (const auto* linear = std::get_if<LinearModel>(&model)) {
    if (!std::holds_alternative<SquaredError>(loss)) {
      ThrowInvalidArgument("linear models support squared error only, got " +
                           LossName(loss));
    }
    losses = LinearLosses(*linear, data);
  } else {
    losses = TableLosses(std::get<ProbTableModel>(model), data, loss);
  }
  std::vector<double> raw(losses.size());
  for (size_t s = 0; s < raw.size(); ++s) raw[s] = losses[0] - losses[s];
  return Game::FromRaw(data.names, std::move(raw),
                       "interventional_" + LossName(loss));
}

std::vector<double> MeanAbsLinearShap(const LinearModel& model,
                                      const Dataset& data) {
  const int d = data.num_features();
  if (model.coefficients.size() != d || model.feature_means.size() != d) {
    ThrowInvalidArgument("linear model does not match the dataset width");
  }
  const int64_t n = data.num_rows();
  if (n < 1) ThrowInvalidArgument("dataset is empty");
  std::vector<double> out(d);
  for (int i = 0; i < d; ++i) {
    CompensatedSum sum;
    for (int64_t r = 0; r < n; ++r) {
      sum.Add(std::fabs(model.coefficients(i) *
                        (data.x(r, i) - model.feature_means(i))));
    }
    out[i] = sum.Total() / static_cast<double>(n);
  }
  return out;
}

}  // namespace shapaudit
