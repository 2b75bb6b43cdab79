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

#include "core/least_squares.h"

#include <string>

#include "core/error.h"

namespace shapaudit {

OlsFit FitOls(const Eigen::MatrixXd& design, const Eigen::VectorXd& y) {
  const Eigen::Index n = y.size();
  const Eigen::Index p = design.cols();
  if (design.rows() != n) {
    ThrowInvalidArgument("design has " + std::to_string(design.rows()) +
                         " rows but the response has " + std::to_string(n));
  }
  if (n < 1) ThrowInvalidArgument("cannot fit an empty sample");
  if (p + 1 > n) {
    ThrowNumeric("need more rows than parameters (" + std::to_string(n) +
                 " rows, " + std::to_string(p + 1) + " parameters)");
  }

  OlsFit fit;
  const double y_mean = y.mean();
  const Eigen::VectorXd yc = y.array() - y_mean;
  fit.tss = yc.squaredNorm();
  if (p == 0) {
    fit.intercept = y_mean;
    fit.rss = fit.tss;
    return fit;
  }

  const Eigen::RowVectorXd x_mean = design.colwise().mean();
  const Eigen::MatrixXd xc = design.rowwise() - x_mean;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xc);
  if (qr.rank() < p) {
    ThrowNumeric("rank-deficient design: rank " + std::to_string(qr.rank()) +
                 " for " + std::to_string(p) + " columns");
  }
  fit.coefficients = qr.solve(yc);
  fit.intercept = y_mean - x_mean.dot(fit.coefficients);
  fit.rss = (yc - xc * fit.coefficients).squaredNorm();
  return fit;
}

}  // namespace shapaudit
