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

// Report-producing commands behind the qcap executable.
//
// Reference values that have a closed form are recomputed here rather than typed
// in: I(X;B) - I(X;E) for the Horodecki key ensemble equals 1 - h2(q).

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "qcap/channel_io.hpp"
#include "qcap/channels.hpp"
#include "qcap/constructions.hpp"
#include "qcap/format.hpp"
#include "qcap/information.hpp"
#include "qcap/optimizer.hpp"
#include "qcap/report.hpp"
#include "qcap/selftest.hpp"

namespace qcap {

/// Tolerances and thresholds used by the commands.
namespace cmd_tol {
inline constexpr double kHalvingDiff = 1e-9;
inline constexpr double kClosedForm = 1e-8;
inline constexpr double kPStar = 5e-5;
inline constexpr double kZeroCapacity = 1e-6;
}  // namespace cmd_tol

inline std::vector<double> default_nonconvexity_p() { return {0.001, 0.002, 0.004, 0.0041, 0.008}; }

/// 1 - h2(q) at the Horodecki q.
inline double horodecki_key_rate_closed_form(const HorodeckiParams& params = {}) {
  const double q = params.q;
  return 1.0 + q * std::log2(q) + (1.0 - q) * std::log2(1.0 - q);
}

inline std::vector<ReproReport> cmd_superactivation(const HorodeckiParams& params = {}) {
  std::vector<ReproReport> out;
  const KrausChannel nh = horodecki_channel_4(params);
  const Ensemble ensemble = paper_ensemble_h4();
  const double closed_form = horodecki_key_rate_closed_form(params);

  Stopwatch t_priv;
  const double priv = private_information_value(nh, ensemble);
  const auto ms_priv = t_priv.elapsed_ms();
  out.push_back(make_report("private_information", priv, greater_than(0.02), ms_priv));
  out.push_back(make_report("private_information_vs_1-h2(q)", priv, equal_to(closed_form, cmd_tol::kClosedForm), ms_priv));

  Stopwatch t_halving;
  const HalvingReport h = verify_halving_identity(nh, ensemble);
  const auto ms_halving = t_halving.elapsed_ms();
  out.push_back(make_report("halving_lhs_coherent_information", h.lhs, greater_than(0.01), ms_halving));
  out.push_back(make_report("halving_lhs_vs_(1-h2(q))/2", h.lhs, equal_to(0.5 * closed_form, cmd_tol::kClosedForm), ms_halving));
  out.push_back(make_report("halving_rhs_half_private_information", h.rhs, greater_than(0.01), ms_halving));
  out.push_back(make_report("halving_abs_diff", h.abs_diff, less_than(cmd_tol::kHalvingDiff), ms_halving));
  out.back().details.push_back({"erasure_input_dim", std::to_string(h.erasure_input_dim)});

  Stopwatch t_assist;
  const double assisted = assisted_rate_lower_bound(nh, superactivation_input(ensemble).pure);
  out.push_back(make_report("assisted_rate_lower_bound", assisted, greater_than(0.01), t_assist.elapsed_ms()));

  Stopwatch t_ppt;
  const PptResult ppt = is_ppt(choi_matrix(nh), {"R"});
  out.push_back(make_report("horodecki_choi_min_pt_eigenvalue", ppt.min_eigenvalue, greater_than(-tol::kState), t_ppt.elapsed_ms()));
  return out;
}

inline std::vector<ReproReport> cmd_nonconvexity(const std::vector<double>& p_list = default_nonconvexity_p()) {
  std::vector<ReproReport> out;
  Stopwatch t;
  const NonconvexityReport r = nonconvexity_analysis(p_list);
  const auto ms = t.elapsed_ms();

  out.push_back(make_report("c_bound_log2_denv", r.c_bound, equal_to(std::log2(6.0), 1e-12), ms));
  out.push_back(make_report("i1_coherent_information_nh_ae", r.i1, greater_than(0.01), ms));
  out.push_back(make_report("p_star", r.p_star, equal_to(0.0041, cmd_tol::kPStar), ms, "threshold rounded to 0.0041"));
  out.push_back(make_report("ic_nh_nh", r.ic_nh_nh, less_than(1e-9), ms));
  out.push_back(make_report("ic_ae_ae", r.ic_ae_ae, equal_to(0.0, 1e-9), ms));
  for (const auto& s : r.samples) {
    char tag[48];
    std::snprintf(tag, sizeof(tag), "[p=%g]", s.p);
    auto agree = make_report(std::string("decomposition_abs_diff") + tag, std::abs(s.direct - s.decomposition),
                             less_than(cmd_tol::kClosedForm), ms);
    agree.details.push_back({"direct", json_real(s.direct)});
    agree.details.push_back({"decomposition", json_real(s.decomposition)});
    out.push_back(std::move(agree));
    const bool guaranteed = s.p > 0.0 && s.p < r.p_star;
    out.push_back(guaranteed ? make_report(std::string("ic_mp_pair") + tag, s.direct, greater_than(0.0), ms)
                             : make_report(std::string("ic_mp_pair") + tag, s.direct, no_claim(), ms, "outside guaranteed region"));
  }
  return out;
}

inline std::vector<ReproReport> cmd_gap(const OptimizerConfig& cfg = {}, double zero_tol = cmd_tol::kZeroCapacity) {
  std::vector<ReproReport> out;
  Stopwatch t;
  const GapReport g = gap_analysis(cfg);
  const auto ms = t.elapsed_ms();
  auto single = make_report("q1_single_bound", g.q1_single_bound, less_than(zero_tol), ms, "numerical certification");
  single.details.push_back({"best_restart", std::to_string(g.optimization.best_restart)});
  single.details.push_back({"iterations_used", std::to_string(g.optimization.iterations_used)});
  out.push_back(std::move(single));
  out.push_back(make_report("q1_pair_value", g.q1_pair_value, greater_than(0.0), ms));
  out.push_back(make_report("q1_pair_value_vs_(1-h2(q))/2", g.q1_pair_value, equal_to(0.5 * horodecki_key_rate_closed_form(), cmd_tol::kClosedForm), ms));
  out.push_back(make_report("switch_din", static_cast<double>(g.din), equal_to(8.0, 0.0), ms));
  out.push_back(make_report("switch_dout", static_cast<double>(g.dout), equal_to(10.0, 0.0), ms));
  out.push_back(make_report("switch_denv", static_cast<double>(g.denv), equal_to(11.0, 0.0), ms));
  return out;
}

/// Maximizes coherent information of a loaded channel. With a tolerance the value is
/// checked as a zero-capacity certificate; without one it is reported only.
inline std::vector<ReproReport> cmd_maximize(const KrausChannel& c, const OptimizerConfig& cfg = {}, const double* zero_tol = nullptr) {
  Stopwatch t;
  const OptimizationResult r = maximize_coherent_information(c, cfg);
  const auto ms = t.elapsed_ms();
  auto rep = zero_tol ? make_report("best_value", r.best_value, less_than(*zero_tol), ms, "numerical certification")
                      : make_report("best_value", r.best_value, no_claim(), ms);
  auto ev = hermitian_eigenvalues(r.best_state.matrix());
  rep.details.push_back({"best_state_eigenvalues", json_real_array(ev)});
  rep.details.push_back({"best_restart", std::to_string(r.best_restart)});
  rep.details.push_back({"iterations_used", std::to_string(r.iterations_used)});
  rep.details.push_back({"converged", r.converged ? "true" : "false"});
  rep.details.push_back({"din", std::to_string(c.din())});
  rep.details.push_back({"dout", std::to_string(c.dout())});
  rep.details.push_back({"denv", std::to_string(c.denv())});
  return {std::move(rep)};
}

/// One report per suite: computed value = checks passed, bound = checks run.
/// Failing checks are listed in the note.
inline std::vector<ReproReport> cmd_selftest(const SelftestOptions& opt = {}) {
  std::vector<ReproReport> out;
  for (const auto& suite : run_selftest(opt)) {
    ReproReport r = make_report("selftest/" + suite.name, static_cast<double>(suite.passed_count()),
                                equal_to(static_cast<double>(suite.checks.size()), 0.0), suite.runtime_ms);
    std::string failing;
    for (const auto& c : suite.checks) {
      r.details.push_back({c.name, json_string((c.passed ? "pass: " : "FAIL: ") + c.detail)});
      if (!c.passed) failing += (failing.empty() ? "failing: " : ", ") + c.name;
    }
    r.note = failing;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace qcap
