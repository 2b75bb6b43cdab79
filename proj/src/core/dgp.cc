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

#include "core/dgp.h"

#include <cmath>
#include <string>

#include "core/csv.h"
#include "core/error.h"
#include "core/game.h"
#include "core/rng.h"

namespace shapaudit {
namespace {

// Stream tags keep the column streams of different generators disjoint.
constexpr uint64_t kGaussMarkovStreams = 0x474d;
constexpr uint64_t kDiscreteMarkovStreams = 0x444d;
constexpr uint64_t kSecretStreams = 0x5345;
constexpr uint64_t kTaxicabStreams = 0x5458;

RandomStream ColumnStream(uint64_t seed, uint64_t tag, uint64_t column) {
  return RandomStream(DeriveSeed(seed, tag, column));
}

void CheckRows(int64_t n) {
  if (n < 1) ThrowInvalidArgument("sample size must be at least 1");
}

void CheckEll(double ell) {
  if (!(ell > 0.0 && ell < 1.0)) {
    ThrowInvalidArgument("ell must lie in (0, 1), got " + std::to_string(ell));
  }
}

// P(X2 = 1 | X1 = x1) and P(X3 = 1 | X1 = x1) for x1 in 1..4.
double ProbX2(double ell, int x1) { return x1 <= 2 ? ell : 1.0 - ell; }
double ProbX3(double ell, int x1) {
  return (x1 == 1 || x1 == 3) ? ell : 1.0 - ell;
}
// P(Y = 1 | X2, X3).
double ProbY(int x2, int x3) {
  static constexpr double kTable[2][2] = {{0.9, 0.05}, {0.15, 0.9}};
  return kTable[x2][x3];
}

}  // namespace

int JointTable::LevelOf(size_t cell, int feature) const {
  for (int f = 0; f < feature; ++f) cell /= levels[f].size();
  return static_cast<int>(cell % levels[feature].size());
}

Dataset SampleGaussMarkov(int64_t n, uint64_t seed) {
  CheckRows(n);
  Dataset data;
  data.names = {"X1", "X2", "X3", "Z"};
  data.spec = {.variant = GaussMarkov{}, .n = n, .seed = seed};
  data.x.resize(n, 4);
  data.y.resize(n);
  for (int c = 0; c < 3; ++c) {
    RandomStream stream = ColumnStream(seed, kGaussMarkovStreams, c);
    for (int64_t r = 0; r < n; ++r) data.x(r, c) = 2.0 * stream.StandardNormal();
  }
  RandomStream gamma = ColumnStream(seed, kGaussMarkovStreams, 3);
  RandomStream eps = ColumnStream(seed, kGaussMarkovStreams, 4);
  for (int64_t r = 0; r < n; ++r) {
    const double signal = data.x(r, 0) + data.x(r, 1) + data.x(r, 2);
    data.x(r, 3) = signal + 2.0 * gamma.StandardNormal();
    data.y(r) = signal + 2.0 * eps.StandardNormal();
  }
  return data;
}

CovarianceModel PopulationGaussMarkov() {
  CovarianceModel model;
  model.names = {"X1", "X2", "X3", "Z"};
  Eigen::MatrixXd& cov = model.covariance;
  cov = Eigen::MatrixXd::Zero(5, 5);
  for (int i = 0; i < 3; ++i) {
    cov(i, i) = 4.0;
    cov(i, 3) = cov(3, i) = 4.0;
    cov(i, 4) = cov(4, i) = 4.0;
  }
  cov(3, 3) = cov(4, 4) = 16.0;
  cov(3, 4) = cov(4, 3) = 12.0;
  return model;
}

JointTable JointDiscreteMarkov(double ell) {
  CheckEll(ell);
  JointTable table;
  table.names = {"X1", "X2", "X3"};
  table.levels = {{1, 2, 3, 4}, {0, 1}, {0, 1}};
  table.probability.assign(2 * 16, 0.0);
  for (int x1 = 1; x1 <= 4; ++x1) {
    for (int x2 = 0; x2 <= 1; ++x2) {
      for (int x3 = 0; x3 <= 1; ++x3) {
        const double p2 = ProbX2(ell, x1);
        const double p3 = ProbX3(ell, x1);
        const double px = 0.25 * (x2 ? p2 : 1.0 - p2) * (x3 ? p3 : 1.0 - p3);
        const double py = ProbY(x2, x3);
        const size_t cell = (x1 - 1) + 4 * (x2 + 2 * x3);
        table.probability[2 * cell] = px * (1.0 - py);
        table.probability[2 * cell + 1] = px * py;
      }
    }
  }
  return table;
}

Dataset SampleDiscreteMarkov(double ell, int64_t n, uint64_t seed) {
  CheckEll(ell);
  CheckRows(n);
  Dataset data;
  data.names = {"X1", "X2", "X3"};
  data.spec = {.variant = DiscreteMarkov{ell}, .n = n, .seed = seed};
  data.x.resize(n, 3);
  data.y.resize(n);
  RandomStream s1 = ColumnStream(seed, kDiscreteMarkovStreams, 0);
  RandomStream s2 = ColumnStream(seed, kDiscreteMarkovStreams, 1);
  RandomStream s3 = ColumnStream(seed, kDiscreteMarkovStreams, 2);
  RandomStream sy = ColumnStream(seed, kDiscreteMarkovStreams, 3);
  for (int64_t r = 0; r < n; ++r) {
    const int x1 = 1 + s1.UniformInt(4);
    const int x2 = s2.Bernoulli(ProbX2(ell, x1)) ? 1 : 0;
    const int x3 = s3.Bernoulli(ProbX3(ell, x1)) ? 1 : 0;
    data.x(r, 0) = x1;
    data.x(r, 1) = x2;
    data.x(r, 2) = x3;
    data.y(r) = sy.Bernoulli(ProbY(x2, x3)) ? 1.0 : 0.0;
  }
  return data;
}

Dataset SampleSecret(double t1, double t2, int64_t n, uint64_t seed) {
  CheckRows(n);
  if (!std::isfinite(t1) || !std::isfinite(t2)) {
    ThrowInvalidArgument("t1 and t2 must be finite");
  }
  Dataset data;
  data.names = {"X1", "X2", "X3"};
  data.spec = {.variant = SecretInteraction{t1, t2}, .n = n, .seed = seed};
  data.x.resize(n, 3);
  data.y.resize(n);
  for (int c = 0; c < 3; ++c) {
    RandomStream stream = ColumnStream(seed, kSecretStreams, c);
    for (int64_t r = 0; r < n; ++r) data.x(r, c) = stream.StandardNormal();
  }
  RandomStream eps = ColumnStream(seed, kSecretStreams, 3);
  for (int64_t r = 0; r < n; ++r) {
    const double x1 = data.x(r, 0), x2 = data.x(r, 1), x3 = data.x(r, 2);
    data.y(r) = t1 * (x2 + x3) + t2 * (x1 * x2 + x1 * x3) + eps.StandardNormal();
  }
  return data;
}

Dataset SampleTaxicabMax(const std::vector<double>& a, int64_t n,
                         uint64_t seed) {
  CheckRows(n);
  const int d = static_cast<int>(a.size());
  if (d < 1 || d > Game::kMaxPlayers) {
    ThrowInvalidArgument("need between 1 and " +
                         std::to_string(Game::kMaxPlayers) + " shifts");
  }
  for (int i = 0; i < d; ++i) {
    if (!std::isfinite(a[i]) || (i > 0 && !(a[i] > a[i - 1]))) {
      ThrowInvalidArgument("shifts must be finite and strictly increasing");
    }
  }
  Dataset data;
  for (int i = 0; i < d; ++i) data.names.push_back("X" + std::to_string(i + 1));
  data.spec = {.variant = TaxicabMax{a}, .n = n, .seed = seed};
  data.x.resize(n, d);
  data.y.resize(n);
  for (int c = 0; c < d; ++c) {
    RandomStream stream = ColumnStream(seed, kTaxicabStreams, c);
    for (int64_t r = 0; r < n; ++r) data.x(r, c) = a[c] + stream.StandardNormal();
  }
  RandomStream eps = ColumnStream(seed, kTaxicabStreams, d);
  for (int64_t r = 0; r < n; ++r) {
    data.y(r) = data.x.row(r).maxCoeff() + eps.StandardNormal();
  }
  return data;
}

Dataset Sample(const DgpSpec& spec) {
  struct Visitor {
    const DgpSpec& spec;
    Dataset operator()(const GaussMarkov&) const {
      return SampleGaussMarkov(spec.n, spec.seed);
    }
    Dataset operator()(const DiscreteMarkov& v) const {
      return SampleDiscreteMarkov(v.ell, spec.n, spec.seed);
    }
    Dataset operator()(const SecretInteraction& v) const {
      return SampleSecret(v.t1, v.t2, spec.n, spec.seed);
    }
    Dataset operator()(const TaxicabMax& v) const {
      return SampleTaxicabMax(v.a, spec.n, spec.seed);
    }
  };
  return std::visit(Visitor{spec}, spec.variant);
}

void WriteDatasetCsv(const Dataset& data, std::ostream& out) {
  for (const auto& name : data.names) out << QuoteCsvField(name) << ',';
  out << "y\n";
  for (int64_t r = 0; r < data.num_rows(); ++r) {
    for (int c = 0; c < data.num_features(); ++c) {
      out << FormatDouble(data.x(r, c)) << ',';
    }
    out << FormatDouble(data.y(r)) << '\n';
  }
}

}  // namespace shapaudit
