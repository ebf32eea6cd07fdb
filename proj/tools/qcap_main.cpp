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

// qcap: reproduces the superactivation, nonconvexity and Q1-gap numbers and runs the
// invariant suites. Exit status: 0 if every report passed, 1 if any failed, 2 on
// invalid input (bad flags, unreadable or malformed channel).

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcap/commands.hpp"

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitInvalidInput = 2;

// q used by --corrupt-horodecki; the Choi matrix is not PPT at this value.
constexpr double kCorruptedHorodeckiQ = 0.6;

void print_selftest_text(const std::vector<qcap::ReproReport>& reports) {
  std::size_t passed = 0, total = 0;
  for (const auto& r : reports) {
    const auto checks = r.details.size();
    const auto ok = static_cast<std::size_t>(r.computed_value);
    passed += ok;
    total += checks;
    std::printf("%s %-14s %zu/%zu checks passed  %lld ms\n", r.passed ? "[PASS]" : "[FAIL]", r.quantity_name.c_str(), ok, checks,
                static_cast<long long>(r.runtime_ms));
    for (const auto& [name, detail] : r.details) {
      // detail is a JSON string literal "pass: ..." or "FAIL: ..."
      const std::string text = detail.size() >= 2 ? detail.substr(1, detail.size() - 2) : detail;
      std::printf("    %-40s %s\n", name.c_str(), text.c_str());
    }
  }
  std::printf("%zu/%zu invariant checks passed\n", passed, total);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcap: coherent and private information of Kraus channels, superactivation and capacity-gap reproductions"};
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(
      "Default tolerances: halving identity |lhs - rhs| < 1e-9; closed-form comparisons 1e-8; p_star within 5e-5 of 0.0041;\n"
      "zero-capacity certification best value < 1e-6 (--tol). Optimizer defaults: 32 restarts, 2000 iterations,\n"
      "step 1e-2, finite-difference epsilon 1e-6, convergence 1e-9, seed 0x5EED. QCAP_THREADS caps worker threads.\n"
      "Exit status: 0 all reports passed, 1 some report failed, 2 invalid input.");

  bool json = false;
  std::uint64_t seed = qcap::OptimizerConfig{}.seed;
  std::size_t restarts = qcap::OptimizerConfig{}.restarts;
  double tol = qcap::cmd_tol::kZeroCapacity;
  std::vector<double> p_values;
  std::string channel_spec;
  bool corrupt_horodecki = false;

  app.add_flag("--json", json, "Emit a JSON array of reports");
  app.add_option("--seed", seed, "Optimizer seed")->capture_default_str();
  app.add_option("--restarts", restarts, "Optimizer restarts")->capture_default_str()->check(CLI::PositiveNumber);
  auto* tol_opt = app.add_option("--tol", tol, "Zero-capacity certification tolerance (gap, maximize)")->capture_default_str();
  app.add_option("--p", p_values, "Mixing probability for nonconvexity; repeatable")->check(CLI::Range(0.0, 1.0));
  app.add_option("--channel", channel_spec, "Channel JSON file or builtin:horodecki4 | builtin:erasure:d:p | builtin:identity:d |"
                                            " builtin:depolarizing:d | builtin:gap-switch");
  app.add_flag("--corrupt-horodecki", corrupt_horodecki, "Test hook: build the Horodecki channel with a wrong q")->group("");

  auto* superactivation = app.add_subcommand("superactivation", "Private information, halving identity, PPT of the Horodecki channel");
  auto* nonconvexity = app.add_subcommand("nonconvexity", "Threshold p_star and I_c of M_p (x) M_p at sampled p");
  auto* gap = app.add_subcommand("gap", "Q1 certification of the switch channel and the routed pair value");
  auto* maximize = app.add_subcommand("maximize", "Maximize coherent information of --channel");
  auto* selftest = app.add_subcommand("selftest", "Run the invariant suites of every module");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  }

  qcap::OptimizerConfig cfg;
  cfg.seed = seed;
  cfg.restarts = restarts;
  qcap::HorodeckiParams horodecki;
  if (corrupt_horodecki) horodecki.q = kCorruptedHorodeckiQ;

  std::vector<qcap::ReproReport> reports;
  try {
    if (superactivation->parsed()) {
      reports = qcap::cmd_superactivation(horodecki);
    } else if (nonconvexity->parsed()) {
      reports = qcap::cmd_nonconvexity(p_values.empty() ? qcap::default_nonconvexity_p() : p_values);
    } else if (gap->parsed()) {
      reports = qcap::cmd_gap(cfg, tol);
    } else if (maximize->parsed()) {
      if (channel_spec.empty()) {
        std::cerr << "maximize: --channel is required\n";
        return kExitInvalidInput;
      }
      const qcap::KrausChannel channel = qcap::load_channel(channel_spec);
      reports = qcap::cmd_maximize(channel, cfg, tol_opt->count() > 0 ? &tol : nullptr);
    } else if (selftest->parsed()) {
      qcap::SelftestOptions opt;
      opt.seed = seed;
      opt.horodecki = horodecki;
      opt.optimizer = cfg;
      reports = qcap::cmd_selftest(opt);
      if (!json) {
        print_selftest_text(reports);
        return qcap::all_passed(reports) ? 0 : kExitFailed;
      }
    }
  } catch (const qcap::ChannelFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }

  std::cout << (json ? qcap::render_json(reports) : qcap::render_text(reports));
  return qcap::all_passed(reports) ? 0 : kExitFailed;
}
