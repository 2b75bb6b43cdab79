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

#ifndef SHAPAUDIT_CORE_LEAST_SQUARES_H_
#define SHAPAUDIT_CORE_LEAST_SQUARES_H_

#include <Eigen/Dense>

namespace shapaudit {

struct OlsFit {
  Eigen::VectorXd coefficients;
  double intercept = 0.0;
  double rss = 0.0;  // Residual sum of squares.
  double tss = 0.0;  // Total sum of squares about the mean of y.
};

// Ordinary least squares of y on the columns of `design` plus an intercept.
// Columns and response are centered, then solved with column-pivoting
// Householder QR. A design that QR reports as rank deficient raises kNumeric.
// A design with zero columns yields the intercept-only fit.
OlsFit FitOls(const Eigen::MatrixXd& design, const Eigen::VectorXd& y);

}  // namespace shapaudit

#endif  // SHAPAUDIT_CORE_LEAST_SQUARES_H_
