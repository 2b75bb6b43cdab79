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

#ifndef SHAPAUDIT_CORE_VALUE_FUNCTIONS_H_
#define SHAPAUDIT_CORE_VALUE_FUNCTIONS_H_

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "core/coalition.h"
#include "core/dgp.h"
#include "core/game.h"

namespace shapaudit {

struct LinearModel {
  Eigen::VectorXd coefficients;
  double intercept = 0.0;
  Eigen::VectorXd feature_means;
};

// Empirical P(Y = 1 | x) per cell of the discrete feature grid. Cells follow
// the JointTable layout (feature 0 varies fastest).
struct ProbTableModel {
  std::vector<std::vector<double>> levels;
  std::vector<double> prob_one;
  std::vector<int64_t> cell_counts;  // Zero marks a cell filled by smoothing.

  size_t num_cells() const { return prob_one.size(); }
};

using FittedModel = std::variant<LinearModel, ProbTableModel>;

struct SquaredError {};
struct CrossEntropy {
  double clip = 1e-6;  // Predictions are clipped to [clip, 1 - clip].
};
struct ZeroOne {};
using LossSpec = std::variant<SquaredError, CrossEntropy, ZeroOne>;

// Largest discrete grid FitProbTable accepts.
inline constexpr size_t kMaxProbTableCells = size_t{1} << 20;

// C(S) = sigma_SY' Sigma_SS^-1 sigma_SY / Var(Y): the population R^2 of the
// best linear predictor from S. Singular blocks get a 1e-12 relative ridge;
// failure after that raises kNumeric naming S.
Game R2GamePopulation(const CovarianceModel& population);

// C(S) = in-sample R^2 of OLS of y on the columns in S with an intercept.
// A constant response gives the zero game.
Game R2GameEmpirical(const Dataset& data);

// Raw m(S) = sum over x_S of max_y P(X_S = x_S, Y = y), the accuracy of the
// Bayes classifier using S; normalized so the offset is m(∅).
Game BayesAccuracyGame(const JointTable& population);

// The four interaction-model terms X2, X3, X1*X2, X1*X3 as variable sets.
std::vector<Coalition> SecretModelTerms();

// For each S, least-squares fit (with intercept) of the submodel keeping the
// product terms whose variables all lie in S; C(S) = ½ ln(RSS_∅ / RSS_S), the
// gain in maximized per-sample Gaussian log-likelihood over the intercept-only
// fit.
Game LoglikGame(const Dataset& data, std::span<const Coalition> terms);

// C(S) = mean(y²) - mean((y - max_{i ∈ S} x_i)²); C(∅) = 0.
Game MseSkillGame(const Dataset& data);

LinearModel FitLinear(const Dataset& data);

// Features must be discrete and y binary in {0, 1}. Empty cells are smoothed
// to (0 + 1) / (0 + 2) = 0.5.
ProbTableModel FitProbTable(const Dataset& data);

// C(S) = mean loss(f_∅, y) - mean loss(f_S, y) where f_S replaces features
// outside S by marginal imputation: their training means for a linear model,
// or an average over the empirical joint distribution of the removed features
// in `data` for a probability table. Linear models accept squared error only.
Game InterventionalLossGame(const FittedModel& model, const Dataset& data,
                            const LossSpec& loss);

// Mean over rows of |theta_i (x_i - mean_i)|, the exact interventional SHAP
// magnitude of a linear model.
std::vector<double> MeanAbsLinearShap(const LinearModel& model,
                                      const Dataset& data);

}  // namespace shapaudit

#endif  // SHAPAUDIT_CORE_VALUE_FUNCTIONS_H_
