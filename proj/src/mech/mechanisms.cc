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

#include "duet/mech/mechanisms.h"

#include <cmath>
#include <numbers>

#include "absl/strings/str_cat.h"
#include "duet/common/error.h"
#include "openssl/rand.h"

namespace duet {

absl::StatusOr<double> LaplaceScale(const Decimal& sensitivity,
                                    const Decimal& epsilon) {
  if (sensitivity.IsNegative()) {
    return MakeError(ErrorKind::kDomainError, "sensitivity must be >= 0");
  }
  if (epsilon.IsNegative() || epsilon.IsZero()) {
    return MakeError(ErrorKind::kDomainError,
                     absl::StrCat("epsilon must be > 0, got ",
                                  epsilon.ToString()));
  }
  return sensitivity.ToDouble() / epsilon.ToDouble();
}

absl::StatusOr<double> GaussSigma(const Decimal& sensitivity,
                                  const Decimal& epsilon,
                                  const Decimal& delta) {
  const Decimal one = Decimal::FromInt(1);
  if (sensitivity.IsNegative()) {
    return MakeError(ErrorKind::kDomainError, "sensitivity must be >= 0");
  }
  if (epsilon.IsNegative() || epsilon.IsZero() || epsilon > one) {
    return MakeError(ErrorKind::kDomainError,
                     absl::StrCat("gaussian calibration needs 0 < epsilon <= 1,"
                                  " got ",
                                  epsilon.ToString()));
  }
  if (delta.IsNegative() || delta.IsZero() || delta >= one) {
    return MakeError(ErrorKind::kDomainError,
                     absl::StrCat("gaussian calibration needs 0 < delta < 1, "
                                  "got ",
                                  delta.ToString()));
  }
  if (sensitivity.IsZero()) return 0.0;
  return sensitivity.ToDouble() *
         std::sqrt(2.0 * std::log(1.25 / delta.ToDouble())) /
         epsilon.ToDouble();
}

Rng Rng::FromEntropy() {
  uint64_t seed = 0;
  if (RAND_bytes(reinterpret_cast<unsigned char*>(&seed), sizeof(seed)) != 1) {
    seed = std::random_device{}();
  }
  return Rng(seed);
}

double Rng::NextOpenUnit() {
  return (static_cast<double>(NextU64() >> 11) + 0.5) * 0x1.0p-53;
}

double SampleLaplace(Rng& rng, double scale) {
  double u = rng.NextOpenUnit() - 0.5;
  if (scale == 0.0) return 0.0;
  double magnitude = -scale * std::log1p(-2.0 * std::fabs(u));
  return u < 0 ? -magnitude : magnitude;
}

double SampleGauss(Rng& rng, double sigma) {
  double u1 = rng.NextOpenUnit();
  double u2 = rng.NextOpenUnit();
  if (sigma == 0.0) return 0.0;
  return sigma * std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace duet
