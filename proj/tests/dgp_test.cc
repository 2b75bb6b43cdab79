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
#include <algorithm>
#include <numeric>
#include <sstream>

#include "core/error.h"
#include "core/rng.h"
#include "gtest/gtest.h"

namespace shapaudit {
namespace {

double Mean(const Eigen::VectorXd& v) { return v.mean(); }

double Var(const Eigen::VectorXd& v) {
  return (v.array() - v.mean()).square().mean();
}

double Corr(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double cov = ((a.array() - a.mean()) * (b.array() - b.mean())).mean();
  return cov / std::sqrt(Var(a) * Var(b));
}

TEST(RngTest, DeriveSeedIsDeterministicAndSpreads) {
  EXPECT_EQ(DeriveSeed(42, 1, 2), DeriveSeed(42, 1, 2));
  EXPECT_NE(DeriveSeed(42, 1, 2), DeriveSeed(42, 2, 1));
  EXPECT_NE(DeriveSeed(42, 0, 0), DeriveSeed(43, 0, 0));
  EXPECT_EQ(DeriveSeed(7, 3, 4), MixBits(MixBits(MixBits(7) ^ 3) ^ 4));
}

TEST(RngTest, MixBitsMatchesSplitMix64) {
  // First output of the reference SplitMix64 generator seeded with 0.
  EXPECT_EQ(MixBits(0), 0xe220a8397b1dcdafULL);
}

TEST(RngTest, StreamMoments) {
  RandomStream s(5);
  double sum = 0, sum2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    double z = s.StandardNormal();
    sum += z;
    sum2 += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sum2 / n, 1.0, 0.01);
  int counts[4] = {0, 0, 0, 0};
  for (int i = 0; i < 40000; ++i) ++counts[s.UniformInt(4)];
  for (int c : counts) EXPECT_NEAR(c / 40000.0, 0.25, 0.01);
}

TEST(GaussMarkovTest, PopulationCovariance) {
  CovarianceModel m = PopulationGaussMarkov();
  ASSERT_EQ(m.names, (std::vector<std::string>{"X1", "X2", "X3", "Z"}));
  EXPECT_DOUBLE_EQ(m.covariance(3, 4), 12.0);  // Cov(Z, Y)
  EXPECT_DOUBLE_EQ(m.covariance(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(m.covariance(4, 4), 16.0);
}

TEST(GaussMarkovTest, SampleMoments) {
  Dataset d = SampleGaussMarkov(1000000, 42);
  EXPECT_NEAR(Var(d.y), 16.0, 0.2);
  EXPECT_NEAR(Corr(d.y, d.x.col(3)), 0.75, 0.01);
}

TEST(GaussMarkovTest, Deterministic) {
  Dataset a = SampleGaussMarkov(1000, 9);
  Dataset b = SampleGaussMarkov(1000, 9);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.y, b.y);
  EXPECT_NE(a.y, SampleGaussMarkov(1000, 10).y);
}

TEST(DiscreteMarkovTest, JointTable) {
  for (double ell : {0.05, 0.3, 0.5, 0.9}) {
    JointTable t = JointDiscreteMarkov(ell);
    double total = 0, x23 = 0, y1 = 0;
    for (size_t cell = 0; cell < t.num_cells(); ++cell) {
      double p = t.probability[2 * cell] + t.probability[2 * cell + 1];
      total += p;
      if (t.LevelOf(cell, 1) == 1 && t.LevelOf(cell, 2) == 1) x23 += p;
      y1 += t.probability[2 * cell + 1];
    }
    EXPECT_NEAR(total, 1.0, 1e-12) << ell;
    EXPECT_NEAR(x23, 0.25, 1e-12) << ell;
    EXPECT_NEAR(y1, 0.5, 1e-12) << ell;
  }
}

TEST(DiscreteMarkovTest, SampleFrequencies) {
  Dataset d = SampleDiscreteMarkov(0.05, 1000000, 42);
  int64_t x1_is_3 = 0, x2_given = 0;
  for (int64_t r = 0; r < d.num_rows(); ++r) {
    if (d.x(r, 0) == 3.0) {
      ++x1_is_3;
      if (d.x(r, 1) == 1.0) ++x2_given;
    }
  }
  EXPECT_NEAR(static_cast<double>(x2_given) / x1_is_3, 0.95, 0.002);
  EXPECT_NEAR(Mean(d.y), 0.5, 0.002);
  EXPECT_EQ(d.y, SampleDiscreteMarkov(0.05, 1000000, 42).y);
}

TEST(DiscreteMarkovTest, RejectsBadEll) {
  EXPECT_THROW(JointDiscreteMarkov(0.0), Error);
  EXPECT_THROW(SampleDiscreteMarkov(1.0, 10, 1), Error);
}

TEST(SecretTest, NoiseOnly) {
  Dataset d = SampleSecret(0.0, 0.0, 100000, 1);
  EXPECT_NEAR(Var(d.y), 1.0, 0.03);
}

TEST(SecretTest, VarianceAndNoMainEffectOfX1) {
  const int64_t n = 1000000;
  Dataset d = SampleSecret(2.0, 2.2, n, 42);
  EXPECT_NEAR(Var(d.y), 18.68, 0.2);
  double sigma = std::sqrt(Var(d.y));
  EXPECT_NEAR((d.y.array() * d.x.col(0).array()).mean(), 0.0,
              3 * sigma / std::sqrt(static_cast<double>(n)));
}

TEST(TaxicabMaxTest, ThirdFeatureDominates) {
  Dataset d = SampleTaxicabMax({5, 10, 20}, 100000, 42);
  int64_t argmax3 = 0;
  for (int64_t r = 0; r < d.num_rows(); ++r) {
    Eigen::Index best;
    d.x.row(r).maxCoeff(&best);
    if (best == 2) ++argmax3;
  }
  EXPECT_GE(static_cast<double>(argmax3) / d.num_rows(), 1.0 - 1e-6);
  EXPECT_NEAR(Mean(d.y), 20.0, 0.02);
  EXPECT_EQ(d.x, SampleTaxicabMax({5, 10, 20}, 100000, 42).x);
}

TEST(TaxicabMaxTest, RejectsUnsortedShifts) {
  EXPECT_THROW(SampleTaxicabMax({5, 5, 20}, 10, 1), Error);
}

TEST(SampleTest, DispatchesAndWritesCsv) {
  DgpSpec spec{SecretInteraction{1.0, 2.0}, 3, 7};
  Dataset d = Sample(spec);
  EXPECT_EQ(d.x, SampleSecret(1.0, 2.0, 3, 7).x);
  std::ostringstream out;
  WriteDatasetCsv(d, out);
  std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "X1,X2,X3,y");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
}

}  // namespace
}  // namespace shapaudit
