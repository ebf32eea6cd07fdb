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

// Maximization of coherent information over input states.
//
// Inputs are parameterized as rho = G G^dag / tr(G G^dag) with G an unconstrained
// complex din x din matrix, so every iterate is a valid density matrix. Ascent uses
// central finite differences on the 2 din^2 real parameters and a backtracking
// (halving) line search; the step doubles after each accepted move, up to max_step.
// Restart 0 starts at the maximally mixed state; restart r > 0 starts at the r-th
// Ginibre matrix drawn from SplitMix64(seed).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qcap/channels.hpp"
#include "qcap/information.hpp"
#include "qcap/random.hpp"

namespace qcap {

struct OptimizerConfig {
  std::size_t restarts = 32;
  std::size_t max_iters = 2000;
  double gradient_step = 1e-2;
  double fd_epsilon = 1e-6;
  double convergence_tol = 1e-9;
  /// Upper bound for the step, which doubles after each accepted move.
  double max_step = 1e3;
  std::uint64_t seed = 0x5EED;
  /// Worker threads for restarts; 0 reads QCAP_THREADS, else hardware concurrency.
  std::size_t threads = 0;

  void validate() const {
    if (restarts < 1) throw std::invalid_argument("OptimizerConfig: restarts must be >= 1");
    if (max_iters < 1) throw std::invalid_argument("OptimizerConfig: max_iters must be >= 1");
    if (!(gradient_step > 0) || !(fd_epsilon > 0) || !(convergence_tol > 0) || !(max_step >= gradient_step)) {
      throw std::invalid_argument("OptimizerConfig: step, epsilon and tolerance must be positive, max_step >= gradient_step");
    }
  }
};

struct OptimizationResult {
  double best_value = 0.0;
  QuantumState best_state;
  ComplexMatrix best_factor;  // G with best_state = G G^dag / tr
  std::size_t best_restart = 0;
  std::size_t iterations_used = 0;  // summed over restarts
  bool converged = false;           // of the winning restart
};

inline constexpr std::size_t kMaxOptimizerInputDim = 64;

/// Coherent-information objective in factor form.
class CoherentInformationObjective {
 public:
  explicit CoherentInformationObjective(const KrausChannel& c) : din_(c.din()), kraus_(c) {}

  std::size_t din() const { return din_; }

  double operator()(const ComplexMatrix& g) const {
    const double norm2 = g.squaredNorm();
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw std::runtime_error("objective: degenerate factor");
    const ComplexMatrix rho = (g * g.adjoint()) / norm2;
    const auto [out, env] = kraus_.marginals(rho);
    const double value = detail::matrix_entropy(out) - detail::matrix_entropy(env);
    if (!std::isfinite(value)) throw std::runtime_error("objective: non-finite coherent information");
    return value;
  }

  /// Central-difference gradient over (Re G_ij, Im G_ij), packed as a complex matrix.
  ComplexMatrix gradient(const ComplexMatrix& g, double eps) const {
    ComplexMatrix grad(g.rows(), g.cols());
    ComplexMatrix probe = g;
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      for (Eigen::Index i = 0; i < g.rows(); ++i) {
        const Complex orig = g(i, j);
        probe(i, j) = orig + eps;
        const double fp = (*this)(probe);
        probe(i, j) = orig - eps;
        const double fm = (*this)(probe);
        probe(i, j) = orig + Complex(0.0, eps);
        const double gp = (*this)(probe);
        probe(i, j) = orig - Complex(0.0, eps);
        const double gm = (*this)(probe);
        probe(i, j) = orig;
        grad(i, j) = Complex((fp - fm) / (2.0 * eps), (gp - gm) / (2.0 * eps));
      }
    }
    return grad;
  }

 private:
  std::size_t din_;
  detail::SparseKraus kraus_;
};

inline QuantumState state_from_factor(const ComplexMatrix& g) {
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return QuantumState::on(std::move(rho), "A");
}

namespace detail {

struct RestartOutcome {
  double value = -1e300;
  ComplexMatrix factor;
  std::size_t iterations = 0;
  bool converged = false;
};

inline RestartOutcome run_restart(const CoherentInformationObjective& f, ComplexMatrix g, const OptimizerConfig& cfg) {
  g /= g.norm();
  double value = f(g);
  double step = cfg.gradient_step;
  RestartOutcome out;
  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    out.iterations = it + 1;
    const ComplexMatrix grad = f.gradient(g, cfg.fd_epsilon);
    if (grad.norm() < 1e-12) {
      out.converged = true;
      break;
    }
    bool accepted = false;
    double eta = step;
    ComplexMatrix trial;
    double trial_value = value;
    while (eta > 1e-14) {
      trial = g + eta * grad;
      trial /= trial.norm();
      trial_value = f(trial);
      if (trial_value >= value) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) {
      out.converged = true;
      break;
    }
    const double gain = trial_value - value;
    g = std::move(trial);
    value = trial_value;
    step = std::min(2.0 * eta, cfg.max_step);
    if (gain < cfg.convergence_tol) {
      out.converged = true;
      break;
    }
  }
  out.value = value;
  out.factor = std::move(g);
  return out;
}

inline std::size_t resolve_threads(const OptimizerConfig& cfg) {
  std::size_t n = cfg.threads;
  if (n == 0) {
    if (const char* env = std::getenv("QCAP_THREADS")) {
      char* end = nullptr;
      const unsigned long v = std::strtoul(env, &end, 10);
      if (end != env && v > 0) n = v;
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return std::min(n, cfg.restarts);
}

}  // namespace detail

inline OptimizationResult maximize_coherent_information(const KrausChannel& c, const OptimizerConfig& cfg = {}) {
  cfg.validate();
  if (c.din() > kMaxOptimizerInputDim) {
    throw DimensionError("maximize_coherent_information: input dimension " + std::to_string(c.din()) + " exceeds " +
                         std::to_string(kMaxOptimizerInputDim));
  }
  const CoherentInformationObjective f(c);

  // Starting factors are drawn up front so results do not depend on scheduling.
  std::vector<ComplexMatrix> starts;
  starts.reserve(cfg.restarts);
  starts.push_back(mat::identity(c.din()));
  SplitMix64 rng(cfg.seed);
  for (std::size_t r = 1; r < cfg.restarts; ++r) starts.push_back(random_ginibre(rng, c.din(), c.din()));

  std::vector<detail::RestartOutcome> outcomes(cfg.restarts);
  const std::size_t nthreads = detail::resolve_threads(cfg);
  if (nthreads <= 1) {
    for (std::size_t r = 0; r < cfg.restarts; ++r) outcomes[r] = detail::run_restart(f, starts[r], cfg);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(nthreads);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t r = next++; r < cfg.restarts; r = next++) outcomes[r] = detail::run_restart(f, starts[r], cfg);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::size_t best = 0;
  std::size_t total_iters = 0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    total_iters += outcomes[r].iterations;
    if (outcomes[r].value > outcomes[best].value) best = r;
  }
  auto& win = outcomes[best];
  QuantumState state = state_from_factor(win.factor);
  const double value = coherent_information(c, state);
  return {value, std::move(state), win.factor, best, total_iters, win.converged};
}

struct ZeroCertificate {
  bool certified = false;
  double best_value = 0.0;
};

/// Numerical evidence (not proof) that Q1(c) <= tol.
inline ZeroCertificate certify_zero_q1(const KrausChannel& c, const OptimizerConfig& cfg = {}, double tol = 1e-6) {
  const auto res = maximize_coherent_information(c, cfg);
  return {res.best_value <= tol, res.best_value};
}

}  // namespace qcap
