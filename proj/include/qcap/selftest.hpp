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

// Invariant suites of every module, run by `qcap selftest`. Each check aggregates
// its trials and records the worst deviation it saw.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qcap/channels.hpp"
#include "qcap/constructions.hpp"
#include "qcap/information.hpp"
#include "qcap/linops.hpp"
#include "qcap/optimizer.hpp"
#include "qcap/random.hpp"

namespace qcap {

struct InvariantCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct InvariantSuite {
  std::string name;
  std::vector<InvariantCheck> checks;
  std::int64_t runtime_ms = 0;

  std::size_t passed_count() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.passed; }));
  }
  bool ok() const { return passed_count() == checks.size(); }
};

struct SelftestOptions {
  std::uint64_t seed = 0x5EED;
  /// Horodecki parameters used by every suite; a wrong q is the fault-injection hook.
  HorodeckiParams horodecki{};
  OptimizerConfig optimizer{};
};

namespace detail {

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

/// Running maximum of a deviation, compared against a tolerance at the end.
struct Worst {
  double value = 0.0;
  void see(double v) { value = std::max(value, std::isfinite(v) ? v : INFINITY); }
};

class SuiteRunner {
 public:
  explicit SuiteRunner(std::string name) { suite_.name = std::move(name); }

  /// Runs `body`, which returns (passed, detail); exceptions count as failures.
  void check(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    InvariantCheck c{name, false, {}};
    try {
      auto [ok, detail] = body();
      c.passed = ok;
      c.detail = std::move(detail);
    } catch (const std::exception& e) {
      c.detail = std::string("exception: ") + e.what();
    }
    suite_.checks.push_back(std::move(c));
  }

  /// Check that passes when the worst deviation is within tol.
  void within(const std::string& name, double tol, const std::function<void(Worst&)>& body) {
    check(name, [&] {
      Worst w;
      body(w);
      return std::pair{w.value <= tol, "max deviation " + sci(w.value) + " (tol " + sci(tol) + ")"};
    });
  }

  InvariantSuite take() { return std::move(suite_); }

 private:
  InvariantSuite suite_;
};

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return max_abs_entry(a - b); }

inline double spectrum_diff(std::vector<double> a, std::vector<double> b) {
  // Compare the nonzero parts; the shorter spectrum is padded with zeros.
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline double binary_entropy(double q) { return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q); }

struct NamedChannel {
  std::string name;
  KrausChannel channel;
};

inline std::vector<NamedChannel> selftest_channels(const SelftestOptions& opt) {
  SplitMix64 rng(opt.seed ^ 0xC4A77E15ULL);
  const KrausChannel nh = horodecki_channel_4(opt.horodecki);
  const KrausChannel ae = erasure_channel(4, 0.5);
  std::vector<NamedChannel> out;
  out.push_back({"identity(2)", identity_channel(2)});
  out.push_back({"depolarizing(3)", completely_depolarizing_channel(3)});
  out.push_back({"erasure(2,0.25)", erasure_channel(2, 0.25)});
  out.push_back({"erasure(3,0)", erasure_channel(3, 0.0)});
  out.push_back({"erasure(3,1)", erasure_channel(3, 1.0)});
  out.push_back({"erasure(4,0.5)", ae});
  out.push_back({"horodecki4", nh});
  out.push_back({"flagged_mixture(horodecki4,erasure,0.3)", flagged_mixture(nh, ae, 0.3)});
  out.push_back({"switch(horodecki4,erasure)", switch_channel(nh, ae)});
  out.push_back({"identity(2)xerasure(2,0.25)", tensor(identity_channel(2), erasure_channel(2, 0.25))});
  out.push_back({"random(2->3,k=3)", random_channel(rng, 2, 3, 3)});
  out.push_back({"random(3->2,k=4)", random_channel(rng, 3, 2, 4)});
  return out;
}

inline Ensemble random_two_state_ensemble(SplitMix64& rng, std::size_t d, std::size_t max_rank) {
  const double p = 0.1 + 0.8 * rng.uniform();
  std::vector<QuantumState> states;
  for (int x = 0; x < 2; ++x) {
    const std::size_t rank = 1 + static_cast<std::size_t>(rng.next() % max_rank);
    states.push_back(QuantumState::on(random_density_matrix(rng, d, rank), "A"));
  }
  return Ensemble({p, 1.0 - p}, std::move(states));
}

inline InvariantSuite linops_suite(const SelftestOptions& opt) {
  SuiteRunner s("linops");
  SplitMix64 rng(opt.seed ^ 0x11);
  s.within("partial_trace_of_product", 1e-10, [&](Worst& w) {
    for (int t = 0; t < 20; ++t) {
      const auto rho = random_state(rng, SubsystemShape::single(2 + t % 3, "P"));
      const auto sigma = random_state(rng, SubsystemShape::single(2 + (t / 3) % 3, "Q"));
      w.see(max_diff(partial_trace(tensor_product(rho, sigma), {"P"}).matrix(), rho.matrix()));
    }
  });
  s.within("state_spectrum_normalized", 1e-10, [&](Worst& w) {
    for (std::size_t d = 1; d <= 8; ++d) {
      const auto ev = hermitian_eigenvalues(random_state(rng, SubsystemShape::single(d, "A")).matrix());
      double sum = 0.0;
      for (double l : ev) {
        w.see(-l);
        sum += l;
      }
      w.see(std::abs(sum - 1.0));
    }
  });
  s.within("purify_round_trip", 1e-9, [&](Worst& w) {
    for (std::size_t rank = 1; rank <= 4; ++rank) {
      const auto st = random_state(rng, SubsystemShape::single(4, "A"), rank);
      const auto pure = purify(st);
      w.see(max_diff(partial_trace(pure, {"A"}).matrix(), st.matrix()));
      w.see(std::abs(static_cast<double>(pure.shape().dim_of("R")) - static_cast<double>(rank)));
    }
  });
  s.within("partial_transpose_involution", 1e-12, [&](Worst& w) {
    for (int t = 0; t < 10; ++t) {
      const SubsystemShape shape({2, 3}, {"A", "B"});
      const auto st = random_state(rng, shape);
      const ComplexMatrix once = partial_transpose(st, {"B"});
      w.see(max_diff(partial_transpose(once, shape, {"B"}), st.matrix()));
      w.see(std::abs(once.trace() - st.matrix().trace()));
      w.see(hermitian_drift(once));
    }
  });
  s.within("eigen_reconstruction", 1e-8, [&](Worst& w) {
    for (std::size_t d = 1; d <= 6; ++d) {
      const ComplexMatrix h = random_hermitian(rng, d);
      const auto es = hermitian_eigensystem(h);
      const Eigen::VectorXd lam = Eigen::Map<const Eigen::VectorXd>(es.values.data(), static_cast<Eigen::Index>(d));
      w.see(max_diff(es.vectors * lam.cast<Complex>().asDiagonal() * es.vectors.adjoint(), h));
    }
  });
  s.within("phi_plus_partial_transpose", 1e-10, [&](Worst& w) {
    const ComplexVector phi = mat::phi_plus();
    const QuantumState st(phi * phi.adjoint(), SubsystemShape({2, 2}, {"A", "B"}));
    w.see(std::abs(hermitian_eigenvalues(partial_transpose(st, {"B"})).front() + 0.5));
  });
  return s.take();
}

inline InvariantSuite entropy_suite(const SelftestOptions& opt) {
  SuiteRunner s("entropy");
  SplitMix64 rng(opt.seed ^ 0x22);
  s.within("entropy_bounds", 1e-9, [&](Worst& w) {
    for (std::size_t d = 1; d <= 8; ++d) {
      for (std::size_t rank = 1; rank <= d; ++rank) {
        const double h = von_neumann_entropy(random_state(rng, SubsystemShape::single(d, "A"), rank));
        w.see(-h);
        w.see(h - std::log2(static_cast<double>(d)));
        w.see(h - std::log2(static_cast<double>(rank)));
      }
    }
  });
  s.within("entropy_additivity", 1e-9, [&](Worst& w) {
    for (int t = 0; t < 20; ++t) {
      const auto a = random_state(rng, SubsystemShape::single(2 + t % 3, "A"));
      const auto b = random_state(rng, SubsystemShape::single(2 + (t / 3) % 3, "B"));
      w.see(std::abs(von_neumann_entropy(tensor_product(a, b)) - von_neumann_entropy(a) - von_neumann_entropy(b)));
    }
  });
  s.within("entropy_unitary_invariance", 1e-9, [&](Worst& w) {
    for (std::size_t d = 2; d <= 6; ++d) {
      const auto st = random_state(rng, SubsystemShape::single(d, "A"));
      const ComplexMatrix u = random_unitary(rng, d);
      w.see(std::abs(von_neumann_entropy(QuantumState::on(u * st.matrix() * u.adjoint())) - von_neumann_entropy(st)));
    }
  });
  s.within("pure_state_marginals", 1e-9, [&](Worst& w) {
    for (const auto& shape : {SubsystemShape({2, 3}, {"A", "B"}), SubsystemShape({4, 4}, {"A", "B"}),
                              SubsystemShape({2, 2, 2}, {"A", "B", "C"})}) {
      for (int t = 0; t < 10; ++t) {
        const auto v = random_pure_state(rng, shape);
        LabelSet rest(shape.labels().begin() + 1, shape.labels().end());
        w.see(std::abs(entropy_of(v.density(), {"A"}) - entropy_of(v.density(), rest)));
        w.see(std::abs(entropy_of(v, {"A"}) - entropy_of(v, rest)));
      }
    }
  });
  s.within("binary_entropy_closed_form", 1e-12, [&](Worst& w) {
    for (double q : {0.1, 0.25, 0.5, std::sqrt(2.0) / (1.0 + std::sqrt(2.0)), 0.9}) {
      ComplexMatrix m = ComplexMatrix::Zero(2, 2);
      m(0, 0) = q;
      m(1, 1) = 1.0 - q;
      w.see(std::abs(von_neumann_entropy(QuantumState::on(m)) - binary_entropy(q)));
    }
  });
  return s.take();
}

inline InvariantSuite channels_suite(const SelftestOptions& opt) {
  SuiteRunner s("channels");
  SplitMix64 rng(opt.seed ^ 0x33);
  const auto channels = selftest_channels(opt);
  s.within("kraus_completeness", 1e-10, [&](Worst& w) {
    for (const auto& [name, c] : channels) {
      ComplexMatrix sum = ComplexMatrix::Zero(static_cast<Eigen::Index>(c.din()), static_cast<Eigen::Index>(c.din()));
      for (const auto& K : c.kraus()) sum += K.adjoint() * K;
      w.see(max_diff(sum, mat::identity(c.din())));
      const auto v = stinespring(c).matrix;
      w.see(max_diff(v.adjoint() * v, mat::identity(c.din())));
    }
  });
  s.within("output_trace_and_psd", 1e-10, [&](Worst& w) {
    for (const auto& [name, c] : channels) {
      for (int t = 0; t < 100; ++t) {
        const auto rho = random_state(rng, SubsystemShape::single(c.din(), "A"), 1 + static_cast<std::size_t>(t) % c.din());
        const auto out = output_state(c, rho);  // validates Hermiticity, trace and PSD
        w.see(std::abs(out.matrix().trace() - 1.0));
        w.see(-hermitian_eigenvalues(out.matrix()).front());
      }
    }
  });
  s.within("purity_law", 1e-9, [&](Worst& w) {
    for (const auto& [name, c] : channels) {
      for (int t = 0; t < 10; ++t) {
        const auto rho = random_state(rng, SubsystemShape::single(c.din(), "A"), 1);
        w.see(std::abs(von_neumann_entropy(output_state(c, rho)) - von_neumann_entropy(environment_state(c, rho))));
      }
    }
  });
  s.within("coherent_information_range", 1e-9, [&](Worst& w) {
    for (const auto& [name, c] : channels) {
      for (int t = 0; t < 10; ++t) {
        const double ic = coherent_information(c, random_state(rng, SubsystemShape::single(c.din(), "A")));
        w.see(ic - std::log2(static_cast<double>(c.dout())));
        w.see(-std::log2(static_cast<double>(c.denv())) - ic);
      }
    }
  });
  s.within("erasure_complement_spectrum", 1e-9, [&](Worst& w) {
    for (std::size_t d = 2; d <= 4; ++d) {
      for (int t = 0; t < 5; ++t) {
        const double p = rng.uniform();
        const auto rho = random_state(rng, SubsystemShape::single(d, "A"));
        w.see(spectrum_diff(hermitian_eigenvalues(environment_state(erasure_channel(d, p), rho).matrix()),
                            hermitian_eigenvalues(output_state(erasure_channel(d, 1.0 - p), rho).matrix())));
      }
    }
  });
  s.within("choi_of_tensor_spectrum", 1e-9, [&](Worst& w) {
    const std::vector<std::pair<KrausChannel, KrausChannel>> pairs = {
        {identity_channel(2), erasure_channel(2, 0.25)},
        {random_channel(rng, 2, 2, 2), random_channel(rng, 2, 3, 2)},
    };
    for (const auto& [c1, c2] : pairs) {
      w.see(spectrum_diff(hermitian_eigenvalues(choi_matrix(tensor(c1, c2)).matrix()),
                          hermitian_eigenvalues(tensor_product(choi_matrix(c1).matrix(), choi_matrix(c2).matrix()))));
    }
  });
  s.check("horodecki_choi_ppt", [&] {
    const auto r = is_ppt(choi_matrix(horodecki_channel_4(opt.horodecki)), {"R"});
    return std::pair{r.ppt, "min partial-transpose eigenvalue " + sci(r.min_eigenvalue)};
  });
  s.check("identity_choi_not_ppt", [&] {
    const auto r = is_ppt(choi_matrix(identity_channel(2)), {"R"});
    return std::pair{!r.ppt && std::abs(r.min_eigenvalue + 0.5) <= 1e-10, "min partial-transpose eigenvalue " + sci(r.min_eigenvalue)};
  });
  return s.take();
}

inline InvariantSuite information_suite(const SelftestOptions& opt) {
  SuiteRunner s("information");
  SplitMix64 rng(opt.seed ^ 0x44);
  s.check("strong_subadditivity", [&] {
    double worst = INFINITY;
    const SubsystemShape shape({2, 2, 2}, {"X", "B", "C"});
    for (int t = 0; t < 100; ++t) {
      const auto v = random_pure_state(rng, shape);
      worst = std::min(worst, conditional_mutual_information(v, {"X"}, {"B"}, {"C"}));
      const auto mixed = random_state(rng, shape, 2);
      worst = std::min(worst, conditional_mutual_information(mixed, {"X"}, {"B"}, {"C"}));
    }
    return std::pair{worst >= -1e-9, "min I(X;B|C) " + sci(worst)};
  });
  s.within("holevo_bounds", 1e-9, [&](Worst& w) {
    for (int t = 0; t < 20; ++t) {
      const auto e = random_two_state_ensemble(rng, 3, 3);
      const double chi = holevo_information(e, [](const QuantumState& st) { return st; });
      w.see(-chi);
      w.see(chi - shannon_entropy(e.probabilities()));
    }
  });
  s.within("cq_state_matches_holevo", 1e-9, [&](Worst& w) {
    for (int t = 0; t < 20; ++t) {
      const auto e = random_two_state_ensemble(rng, 3, 3);
      const double chi = holevo_information(e, [](const QuantumState& st) { return st; });
      w.see(std::abs(mutual_information(cq_state(e), {"X"}, {"A"}) - chi));
    }
  });
  s.within("pure_ensemble_private_equals_coherent", 1e-9, [&](Worst& w) {
    for (const auto& [name, c] : selftest_channels(opt)) {
      const auto e = random_two_state_ensemble(rng, c.din(), 1);
      w.see(std::abs(private_information_value(c, e) - coherent_information(c, e.average())));
    }
  });
  s.within("assisted_rate_with_trivial_c", 1e-9, [&](Worst& w) {
    for (int t = 0; t < 5; ++t) {
      const KrausChannel c = random_channel(rng, 2, 2, 2);
      const auto e = random_two_state_ensemble(rng, 2, 2);
      const auto xac = tensor_product(cq_state(e), QuantumState(ComplexMatrix::Ones(1, 1), SubsystemShape::single(1, "C")));
      w.see(std::abs(assisted_rate_lower_bound(c, xac) - 0.5 * private_information_value(c, e)));
    }
  });
  return s.take();
}

inline InvariantSuite constructions_suite(const SelftestOptions& opt) {
  SuiteRunner s("constructions");
  SplitMix64 rng(opt.seed ^ 0x55);
  const KrausChannel nh = horodecki_channel_4(opt.horodecki);
  const KrausChannel ae = erasure_channel(4, 0.5);
  s.check("private_information_exceeds_0.02", [&] {
    const double v = private_information_value(nh, paper_ensemble_h4());
    return std::pair{v > 0.02, "value " + sci(v)};
  });
  s.within("halving_identity_paper_instance", 1e-9, [&](Worst& w) { w.see(verify_halving_identity(nh, paper_ensemble_h4()).abs_diff); });
  s.within("halving_identity_random_instances", 1e-9, [&](Worst& w) {
    for (int t = 0; t < 5; ++t) {
      const KrausChannel c = random_channel(rng, 2, 2, 1 + static_cast<std::size_t>(t) % 3);
      w.see(verify_halving_identity(c, random_two_state_ensemble(rng, 2, 2)).abs_diff);
    }
  });
  s.within("rho_ac_matches_symmetric_form", 1e-12, [&](Worst& w) {
    w.see(max_diff(superactivation_input(paper_ensemble_h4()).rho_ac.matrix(), rho_ac_symmetric().matrix()));
  });
  s.within("rho_ac_swap_invariance", 1e-12, [&](Worst& w) {
    const auto rho = rho_ac_symmetric();
    w.see(max_diff(permute_subsystems(rho, {"C", "A"}).matrix(), rho.matrix()));
  });
  s.check("horodecki_pair_nonpositive", [&] {
    const double v = coherent_information(tensor(nh, nh), rho_ac_symmetric());
    const double floor = -2.0 * std::log2(static_cast<double>(nh.denv()));
    return std::pair{v <= 1e-9 && v >= floor, "I_c " + sci(v)};
  });
  s.within("decomposition_identity", 1e-8, [&](Worst& w) {
    for (const auto& smp : nonconvexity_analysis({0.0, 0.001, 0.002, 0.004, 0.0041, 0.008, 1.0}, nh).samples) {
      w.see(std::abs(smp.direct - smp.decomposition));
    }
  });
  s.within("gap_pair_reduces_to_superactivation", 1e-9, [&](Worst& w) {
    const KrausChannel m = switch_channel(nh, ae);
    w.see(std::abs(coherent_information(tensor(m, m), gap_routed_input()) - coherent_information(tensor(nh, ae), rho_ac_symmetric())));
  });
  return s.take();
}

inline InvariantSuite optimizer_suite(const SelftestOptions& opt) {
  SuiteRunner s("optimizer");
  const OptimizerConfig& cfg = opt.optimizer;
  s.check("identity_qubit_optimum", [&] {
    const auto r = maximize_coherent_information(identity_channel(2), cfg);
    return std::pair{std::abs(r.best_value - 1.0) <= 1e-6, "best " + sci(r.best_value)};
  });
  s.check("erasure_closed_form", [&] {
    const auto r = maximize_coherent_information(erasure_channel(2, 0.25), cfg);
    return std::pair{std::abs(r.best_value - 0.5) <= 1e-3, "best " + sci(r.best_value)};
  });
  s.check("symmetric_erasure_certified_zero", [&] {
    const auto z = certify_zero_q1(erasure_channel(4, 0.5), cfg);
    return std::pair{z.certified && z.best_value >= -1e-6, "best " + sci(z.best_value)};
  });
  s.check("horodecki_certified_zero", [&] {
    const auto z = certify_zero_q1(horodecki_channel_4(opt.horodecki), cfg);
    return std::pair{z.certified, "best " + sci(z.best_value)};
  });
  s.check("reevaluation_consistent", [&] {
    const KrausChannel c = erasure_channel(2, 0.25);
    const auto r = maximize_coherent_information(c, cfg);
    const double direct = CoherentInformationObjective(c)(r.best_factor);
    const double diff = std::abs(direct - r.best_value);
    return std::pair{diff <= 1e-10, "diff " + sci(diff)};
  });
  s.check("stationary_or_plateau", [&] {
    double worst = 0.0;
    for (const auto& c : {identity_channel(2), erasure_channel(2, 0.25), erasure_channel(3, 0.5)}) {
      const auto r = maximize_coherent_information(c, cfg);
      const double g = CoherentInformationObjective(c).gradient(r.best_factor, cfg.fd_epsilon).norm();
      if (std::abs(r.best_value) > 1e-6) worst = std::max(worst, g);
    }
    return std::pair{worst <= 1e-4, "max gradient norm " + sci(worst)};
  });
  s.check("deterministic_across_threads", [&] {
    OptimizerConfig a = cfg;
    a.restarts = 6;
    a.threads = 1;
    OptimizerConfig b = a;
    b.threads = 3;
    const KrausChannel c = erasure_channel(2, 0.25);
    const auto ra = maximize_coherent_information(c, a);
    const auto rb = maximize_coherent_information(c, b);
    return std::pair{ra.best_value == rb.best_value && ra.best_restart == rb.best_restart, "values " + sci(ra.best_value) + ", " + sci(rb.best_value)};
  });
  s.check("superadditive_on_small_pair", [&] {
    OptimizerConfig small = cfg;
    small.restarts = 4;
    const KrausChannel c1 = identity_channel(2), c2 = erasure_channel(2, 0.25);
    const double pair = maximize_coherent_information(tensor(c1, c2), small).best_value;
    const double sum = maximize_coherent_information(c1, small).best_value + maximize_coherent_information(c2, small).best_value;
    return std::pair{pair >= sum - 1e-6, "pair " + sci(pair) + ", sum " + sci(sum)};
  });
  return s.take();
}

}  // namespace detail

inline std::vector<InvariantSuite> run_selftest(const SelftestOptions& opt = {}) {
  using Suite = InvariantSuite (*)(const SelftestOptions&);
  const Suite suites[] = {detail::linops_suite,      detail::entropy_suite,       detail::channels_suite,
                          detail::information_suite, detail::constructions_suite, detail::optimizer_suite};
  std::vector<InvariantSuite> out;
  for (const Suite run : suites) {
    const auto start = std::chrono::steady_clock::now();
    out.push_back(run(opt));
    out.back().runtime_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  }
  return out;
}

}  // namespace qcap
