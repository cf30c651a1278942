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

#ifndef DUET_MECH_MECHANISMS_H_
#define DUET_MECH_MECHANISMS_H_

#include <cstdint>
#include <random>

#include "absl/status/statusor.h"
#include "duet/common/decimal.h"

namespace duet {

// Laplace scale b = sensitivity / epsilon. Requires epsilon > 0.
absl::StatusOr<double> LaplaceScale(const Decimal& sensitivity,
                                    const Decimal& epsilon);

// Classical Gaussian calibration
//   sigma = sensitivity * sqrt(2 ln(1.25 / delta)) / epsilon,
// valid for 0 < epsilon <= 1 and 0 < delta < 1.
absl::StatusOr<double> GaussSigma(const Decimal& sensitivity,
                                  const Decimal& epsilon,
                                  const Decimal& delta);

// Seedable 64-bit generator. The engine is fully specified by the standard,
// and sampling below uses only the raw 64-bit output, so a given seed
// produces the same samples on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}
  // Seeded from the operating system's CSPRNG.
  static Rng FromEntropy();

  uint64_t NextU64() { return engine_(); }
  // Uniform on the open interval (0, 1), 53 bits of resolution.
  double NextOpenUnit();

 private:
  std::mt19937_64 engine_;
};

// Zero-centred Laplace sample with scale b, by inverse CDF. b = 0 gives 0.
double SampleLaplace(Rng& rng, double scale);
// Zero-centred normal sample with standard deviation sigma (Box-Muller).
double SampleGauss(Rng& rng, double sigma);

// Where the interpreter gets its noise. Exactly one call per mechanism node
// evaluated.
class NoiseSource {
 public:
  virtual ~NoiseSource() = default;
  virtual double Laplace(double scale) = 0;
  virtual double Gauss(double sigma) = 0;
};

class RngNoiseSource : public NoiseSource {
 public:
  explicit RngNoiseSource(Rng rng) : rng_(rng) {}
  double Laplace(double scale) override { return SampleLaplace(rng_, scale); }
  double Gauss(double sigma) override { return SampleGauss(rng_, sigma); }

 private:
  Rng rng_;
};

}  // namespace duet

#endif  // DUET_MECH_MECHANISMS_H_
