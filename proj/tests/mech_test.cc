// Copyright 2026 The Duet Enclave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <vector>

#include "boost/multiprecision/cpp_dec_float.hpp"
#include "duet/mech/mechanisms.h"
#include "test_util.h"

namespace duet {
namespace {

using ::testing::DoubleNear;
using HighPrecision = boost::multiprecision::cpp_dec_float_50;

Decimal D(const char* text) { return Unwrap(Decimal::Parse(text)); }

// Independent 50-digit evaluation of the classical Gaussian calibration.
double SigmaOracle(const char* sens, const char* eps, const char* delta) {
  HighPrecision s(sens), e(eps), d(delta);
  HighPrecision sigma = s * sqrt(2 * log(HighPrecision("1.25") / d)) / e;
  return sigma.convert_to<double>();
}

TEST(LaplaceScaleTest, IsSensitivityOverEpsilon) {
  EXPECT_DOUBLE_EQ(Unwrap(LaplaceScale(D("1.0"), D("1.0"))), 1.0);
  EXPECT_DOUBLE_EQ(Unwrap(LaplaceScale(D("1.0"), D("0.5"))), 2.0);
  EXPECT_DOUBLE_EQ(Unwrap(LaplaceScale(D("2.5"), D("0.5"))), 5.0);
}

TEST(LaplaceScaleTest, RejectsNonPositiveEpsilon) {
  EXPECT_THAT(LaplaceScale(D("1.0"), D("0")), HasKind(ErrorKind::kDomainError));
  EXPECT_THAT(LaplaceScale(D("1.0"), D("-1")),
              HasKind(ErrorKind::kDomainError));
  EXPECT_THAT(LaplaceScale(D("-1.0"), D("1")),
              HasKind(ErrorKind::kDomainError));
}

TEST(GaussSigmaTest, MatchesHighPrecisionOracle) {
  double sigma = Unwrap(GaussSigma(D("1.0"), D("1.0"), D("0.001")));
  EXPECT_NEAR(sigma, SigmaOracle("1.0", "1.0", "0.001"), 1e-12);
  EXPECT_NEAR(sigma, 3.7765, 5e-5);
  double tight = Unwrap(GaussSigma(D("1.0"), D("1.0"), D("0.000001")));
  EXPECT_NEAR(tight, SigmaOracle("1.0", "1.0", "0.000001"), 1e-12);
  EXPECT_NEAR(tight, 5.2988, 5e-5);
  EXPECT_NEAR(Unwrap(GaussSigma(D("2.5"), D("0.3"), D("0.0001"))),
              SigmaOracle("2.5", "0.3", "0.0001"), 1e-12);
}

TEST(GaussSigmaTest, ZeroSensitivityNeedsNoNoise) {
  EXPECT_EQ(Unwrap(GaussSigma(D("0"), D("0.5"), D("0.001"))), 0.0);
}

TEST(GaussSigmaTest, DomainErrors) {
  EXPECT_THAT(GaussSigma(D("1"), D("0"), D("0.001")),
              HasKind(ErrorKind::kDomainError));
  EXPECT_THAT(GaussSigma(D("1"), D("1.5"), D("0.001")),
              HasKind(ErrorKind::kDomainError));
  EXPECT_THAT(GaussSigma(D("1"), D("1"), D("0")),
              HasKind(ErrorKind::kDomainError));
  EXPECT_THAT(GaussSigma(D("1"), D("1"), D("1")),
              HasKind(ErrorKind::kDomainError));
}

TEST(GaussSigmaTest, Monotone) {
  const char* sens[] = {"0.5", "1", "2", "3.5"};
  const char* eps[] = {"0.1", "0.3", "0.7", "1"};
  const char* delta[] = {"0.00001", "0.001", "0.01", "0.5"};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) {
        double base = Unwrap(GaussSigma(D(sens[i]), D(eps[j]), D(delta[k])));
        if (i + 1 < 4) {
          EXPECT_GE(Unwrap(GaussSigma(D(sens[i + 1]), D(eps[j]), D(delta[k]))),
                    base);
        }
        if (j + 1 < 4) {
          EXPECT_LE(Unwrap(GaussSigma(D(sens[i]), D(eps[j + 1]), D(delta[k]))),
                    base);
        }
        if (k + 1 < 4) {
          EXPECT_LE(Unwrap(GaussSigma(D(sens[i]), D(eps[j]), D(delta[k + 1]))),
                    base);
        }
      }
    }
  }
}

TEST(SamplerTest, ZeroScaleIsExactlyZero) {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(SampleLaplace(rng, 0), 0.0);
    EXPECT_EQ(SampleGauss(rng, 0), 0.0);
  }
}

TEST(SamplerTest, SeedDeterminism) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    double x = SampleLaplace(a, 1.0), y = SampleLaplace(b, 1.0);
    EXPECT_EQ(x, y);
    double g = SampleGauss(a, 2.0), h = SampleGauss(b, 2.0);
    EXPECT_EQ(g, h);
    differs |= SampleLaplace(c, 1.0) != x;
    SampleGauss(c, 2.0);
  }
  EXPECT_TRUE(differs);
}

TEST(SamplerTest, OpenUnitStaysInsideTheInterval) {
  Rng rng(8);
  for (int i = 0; i < 100000; ++i) {
    double u = rng.NextOpenUnit();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

struct Moments {
  double mean;
  double variance;
};

Moments SampleMoments(const std::vector<double>& xs) {
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= xs.size();
  double var = 0;
  for (double x : xs) var += (x - mean) * (x - mean);
  return {mean, var / (xs.size() - 1)};
}

constexpr int kSamples = 100000;

TEST(SamplerTest, LaplaceMomentsMatchClosedForm) {
  Rng rng(2024);
  std::vector<double> xs(kSamples);
  for (double& x : xs) x = SampleLaplace(rng, 1.0);
  Moments m = SampleMoments(xs);
  EXPECT_THAT(m.mean, DoubleNear(0.0, 0.02));
  // Var = 2 b^2.
  EXPECT_GE(m.variance, 2 * 0.95);
  EXPECT_LE(m.variance, 2 * 1.05);
}

TEST(SamplerTest, GaussStdWithinTwoPercent) {
  double sigma = SigmaOracle("1.0", "1.0", "0.001");
  Rng rng(77);
  std::vector<double> xs(kSamples);
  for (double& x : xs) x = SampleGauss(rng, sigma);
  Moments m = SampleMoments(xs);
  EXPECT_NEAR(std::sqrt(m.variance), sigma, 0.02 * sigma);
  EXPECT_NEAR(m.mean, 0.0, 4 * sigma / std::sqrt(kSamples));
}

// Two-sided Kolmogorov-Smirnov statistic against a continuous CDF.
template <typename Cdf>
double KsStatistic(std::vector<double> xs, Cdf cdf) {
  std::sort(xs.begin(), xs.end());
  double n = xs.size(), d = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double f = cdf(xs[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

// Asymptotic critical value at significance 0.001: sqrt(-ln(0.0005) / 2).
double KsCritical(int n) { return std::sqrt(-std::log(0.0005) / 2) / std::sqrt(n); }

TEST(SamplerTest, LaplacePassesKolmogorovSmirnov) {
  for (double b : {1.0, 2.5}) {
    Rng rng(1234);
    std::vector<double> xs(kSamples);
    for (double& x : xs) x = SampleLaplace(rng, b);
    double d = KsStatistic(xs, [b](double x) {
      return x < 0 ? 0.5 * std::exp(x / b) : 1 - 0.5 * std::exp(-x / b);
    });
    EXPECT_LT(d, KsCritical(kSamples)) << "b=" << b;
  }
}

TEST(SamplerTest, GaussPassesKolmogorovSmirnov) {
  double sigma = 3.7765;
  Rng rng(4321);
  std::vector<double> xs(kSamples);
  for (double& x : xs) x = SampleGauss(rng, sigma);
  double d = KsStatistic(xs, [sigma](double x) {
    return 0.5 * std::erfc(-x / (sigma * std::sqrt(2.0)));
  });
  EXPECT_LT(d, KsCritical(kSamples));
}

TEST(NoiseSourceTest, RngNoiseSourceMatchesDirectSampling) {
  RngNoiseSource source(Rng(9));
  Rng direct(9);
  EXPECT_EQ(source.Gauss(3.0), SampleGauss(direct, 3.0));
  EXPECT_EQ(source.Laplace(2.0), SampleLaplace(direct, 2.0));
}

}  // namespace
}  // namespace duet
