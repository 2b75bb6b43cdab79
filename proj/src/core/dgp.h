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

#ifndef SHAPAUDIT_CORE_DGP_H_
#define SHAPAUDIT_CORE_DGP_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace shapaudit {

// X1, X2, X3 ~ N(0, 4) independent; Y = X1 + X2 + X3 + eps and
// Z = X1 + X2 + X3 + gamma with eps, gamma ~ N(0, 4). Features (X1, X2, X3, Z).
struct GaussMarkov {};

// X1 uniform on {1,2,3,4}; X2, X3 binary and independent given X1; Y binary
// and depending on (X2, X3) only. `ell` lies in (0, 1).
struct DiscreteMarkov {
  double ell = 0.05;
};

// X1, X2, X3 ~ N(0, 1) independent;
// Y = t1 (X2 + X3) + t2 (X1 X2 + X1 X3) + eps, eps ~ N(0, 1).
struct SecretInteraction {
  double t1 = 0.0;
  double t2 = 0.0;
};

// X_i = a_i + N(0, 1) with strictly increasing a; Y = max_i X_i + eps,
// eps ~ N(0, 1).
struct TaxicabMax {
  std::vector<double> a;
};

using DgpVariant =
    std::variant<GaussMarkov, DiscreteMarkov, SecretInteraction, TaxicabMax>;

struct DgpSpec {
  DgpVariant variant;
  int64_t n = 0;
  uint64_t seed = 0;
};

struct Dataset {
  Eigen::MatrixXd x;  // n x d
  Eigen::VectorXd y;
  std::vector<std::string> names;
  DgpSpec spec;

  int64_t num_rows() const { return x.rows(); }
  int num_features() const { return static_cast<int>(x.cols()); }
};

// Zero-mean Gaussian population: covariance over the features followed by the
// response in the last row/column.
struct CovarianceModel {
  std::vector<std::string> names;  // Feature names; the response is implicit.
  Eigen::MatrixXd covariance;

  int num_features() const { return static_cast<int>(names.size()); }
};

// Exact distribution over discrete features and a binary response.
// Cells enumerate feature values in mixed radix with feature 0 varying
// fastest; probability[2 * cell + y] = P(X = cell, Y = y).
struct JointTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> levels;  // Feature values per feature.
  std::vector<double> probability;

  int num_features() const { return static_cast<int>(names.size()); }
  size_t num_cells() const { return probability.size() / 2; }
  // Level index of `feature` in `cell`.
  int LevelOf(size_t cell, int feature) const;
};

using PopulationModel = std::variant<CovarianceModel, JointTable>;

Dataset SampleGaussMarkov(int64_t n, uint64_t seed);
CovarianceModel PopulationGaussMarkov();

JointTable JointDiscreteMarkov(double ell);
Dataset SampleDiscreteMarkov(double ell, int64_t n, uint64_t seed);

Dataset SampleSecret(double t1, double t2, int64_t n, uint64_t seed);

Dataset SampleTaxicabMax(const std::vector<double>& a, int64_t n,
                         uint64_t seed);

Dataset Sample(const DgpSpec& spec);

// Header = feature names + "y"; values at 17 significant digits.
void WriteDatasetCsv(const Dataset& data, std::ostream& out);

}  // namespace shapaudit

#endif  // SHAPAUDIT_CORE_DGP_H_
