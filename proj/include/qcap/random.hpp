// Copyright 2026 The qcap Authors
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

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include <vector>

#include "qcap/channels.hpp"
#include "qcap/linops.hpp"

namespace qcap {

/// SplitMix64 (Steele, Lea, Flood). The exact recurrence is part of the
/// reproducibility contract: state += 0x9E3779B97F4A7C15, then two
/// xor-shift-multiply rounds and a final xor-shift.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; consumes two draws per call (no caching).
  double normal() {
    double u1 = uniform();
    const double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

 private:
  std::uint64_t state_;
};

/// d x k matrix of iid complex Gaussian entries (row-major draw order).
inline ComplexMatrix random_ginibre(SplitMix64& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = rng.complex_normal();
  }
  return g;
}

/// Random density matrix G G^dag / tr with G of shape d x rank.
inline ComplexMatrix random_density_matrix(SplitMix64& rng, std::size_t d, std::size_t rank) {
  const ComplexMatrix g = random_ginibre(rng, d, rank);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

inline QuantumState random_state(SplitMix64& rng, const SubsystemShape& shape, std::size_t rank = 0) {
  const std::size_t d = shape.total_dim();
  return QuantumState(random_density_matrix(rng, d, rank == 0 ? d : rank), shape);
}

inline PureStateVector random_pure_state(SplitMix64& rng, const SubsystemShape& shape) {
  ComplexVector v = random_ginibre(rng, shape.total_dim(), 1).col(0);
  return PureStateVector(v / v.norm(), shape);
}

/// Haar-ish unitary from the QR decomposition of a Ginibre matrix.
inline ComplexMatrix random_unitary(SplitMix64& rng, std::size_t d) {
  const ComplexMatrix g = random_ginibre(rng, d, d);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  return qr.householderQ() * mat::identity(d);
}

/// Random channel din -> dout with `nkraus` operators, cut from the thin Q factor of a
/// (dout * nkraus) x din Ginibre matrix. Row k * dout + b of Q is row b of K_k.
inline KrausChannel random_channel(SplitMix64& rng, std::size_t din, std::size_t dout, std::size_t nkraus) {
  const auto rows = static_cast<Eigen::Index>(dout * nkraus);
  const auto cols = static_cast<Eigen::Index>(din);
  if (rows < cols) throw DimensionError("random_channel: dout * nkraus must be >= din");
  const ComplexMatrix g = random_ginibre(rng, dout * nkraus, din);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = 0; k < nkraus; ++k) kraus.push_back(q.middleRows(static_cast<Eigen::Index>(k * dout), static_cast<Eigen::Index>(dout)));
  return KrausChannel(std::move(kraus));
}

inline ComplexMatrix random_hermitian(SplitMix64& rng, std::size_t d) {
  const ComplexMatrix g = random_ginibre(rng, d, d);
  return (g + g.adjoint()) * 0.5;
}

}  // namespace qcap
