// Copyright 2026 The zpdcert Authors
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

#ifndef ZPD_TYPES_HPP_
#define ZPD_TYPES_HPP_

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace zpd {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

enum class ErrorCode {
  kInvalidArgument = 1,
  kDimensionMismatch = 2,
  kConstruction = 3,
  kParse = 4,
  kIo = 5,
  kInternal = 6,
};

// All library failures are reported through this exception; the C layer maps
// code() onto zpd_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void RequireSameDim(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    Fail(ErrorCode::kDimensionMismatch, std::string(what) + ": expected dimension " +
                                            std::to_string(expected) + ", got " +
                                            std::to_string(actual));
  }
}

// splitmix64 step. Used both as the seed-derivation function for batch rows
// and as the bit source behind Rng.
inline std::uint64_t SplitMix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Row i of a batch run draws its seed from the i-th output of splitmix64
// started at the master seed.
inline std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t state = master;
  std::uint64_t out = 0;
  for (std::uint64_t i = 0; i <= index; ++i) out = SplitMix64(state);
  return out;
}

// Small deterministic generator with platform-independent output. The
// standard distributions are implementation-defined, so doubles are built
// directly from the top 53 bits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t NextU64() { return SplitMix64(state_); }

  // Uniform on [0, 1).
  double Uniform() { return static_cast<double>(NextU64() >> 11) * 0x1.0p-53; }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  std::size_t Index(std::size_t n) { return static_cast<std::size_t>(Uniform() * n) % n; }

  // Box-Muller; one draw per call is enough at this scale.
  double Gaussian() {
    double u1 = Uniform();
    while (u1 <= 0.0) u1 = Uniform();
    const double u2 = Uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  Complex ComplexGaussian() { return {Gaussian(), Gaussian()}; }

  CVector ComplexGaussianVector(Eigen::Index n) {
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = ComplexGaussian();
    return v;
  }

 private:
  std::uint64_t state_;
};

}  // namespace zpd

#endif  // ZPD_TYPES_HPP_
