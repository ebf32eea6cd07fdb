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

// Named quantities checked against reference bounds, with text and JSON rendering.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qcap/format.hpp"

namespace qcap {

/// kGreater and kLess are strict. kEqual passes within `tolerance`. kNone records a
/// value without a claim and always passes.
enum class BoundDirection { kGreater, kLess, kEqual, kNone };

inline const char* direction_symbol(BoundDirection d) {
  switch (d) {
    case BoundDirection::kGreater: return ">";
    case BoundDirection::kLess: return "<";
    case BoundDirection::kEqual: return "=";
    case BoundDirection::kNone: return "none";
  }
  return "?";
}

struct ReferenceBound {
  double value = 0.0;
  BoundDirection direction = BoundDirection::kNone;
  double tolerance = 0.0;

  bool satisfied_by(double x) const {
    if (!std::isfinite(x)) return false;
    switch (direction) {
      case BoundDirection::kGreater: return x > value;
      case BoundDirection::kLess: return x < value;
      case BoundDirection::kEqual: return std::abs(x - value) <= tolerance;
      case BoundDirection::kNone: return true;
    }
    return false;
  }
};

struct ReproReport {
  std::string quantity_name;
  double computed_value = 0.0;
  ReferenceBound paper_bound;
  bool passed = false;
  std::int64_t runtime_ms = 0;
  std::string note;
  /// Extra key/value pairs; values are rendered JSON fragments.
  std::vector<std::pair<std::string, std::string>> details;
};

inline ReproReport make_report(std::string name, double value, ReferenceBound bound, std::int64_t runtime_ms, std::string note = {}) {
  ReproReport r;
  r.quantity_name = std::move(name);
  r.computed_value = value;
  r.paper_bound = bound;
  r.passed = bound.satisfied_by(value);
  r.runtime_ms = runtime_ms;
  r.note = std::move(note);
  return r;
}

inline ReferenceBound greater_than(double v) { return {v, BoundDirection::kGreater, 0.0}; }
inline ReferenceBound less_than(double v) { return {v, BoundDirection::kLess, 0.0}; }
inline ReferenceBound equal_to(double v, double tol) { return {v, BoundDirection::kEqual, tol}; }
inline ReferenceBound no_claim() { return {0.0, BoundDirection::kNone, 0.0}; }

inline bool all_passed(const std::vector<ReproReport>& reports) {
  for (const auto& r : reports) {
    if (!r.passed) return false;
  }
  return true;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline std::string render_text(const ReproReport& r) {
  char value[64];
  std::snprintf(value, sizeof(value), "%.10g", r.computed_value);
  std::ostringstream os;
  os << (r.passed ? "[PASS] " : "[FAIL] ") << r.quantity_name << " = " << value;
  if (r.paper_bound.direction != BoundDirection::kNone) {
    char bound[64];
    std::snprintf(bound, sizeof(bound), "%.10g", r.paper_bound.value);
    os << "  (bound " << direction_symbol(r.paper_bound.direction) << ' ' << bound;
    if (r.paper_bound.direction == BoundDirection::kEqual) {
      char tol[32];
      std::snprintf(tol, sizeof(tol), "%.1e", r.paper_bound.tolerance);
      os << " +/- " << tol;
    }
    os << ')';
  }
  os << "  " << r.runtime_ms << " ms";
  if (!r.note.empty()) os << "  [" << r.note << ']';
  for (const auto& [k, v] : r.details) os << "\n    " << k << ": " << v;
  return os.str();
}

inline std::string render_text(const std::vector<ReproReport>& reports) {
  std::string out;
  std::size_t passed = 0;
  for (const auto& r : reports) {
    out += render_text(r) + "\n";
    passed += r.passed ? 1 : 0;
  }
  out += std::to_string(passed) + "/" + std::to_string(reports.size()) + " checks passed\n";
  return out;
}

inline std::string render_json(const ReproReport& r) {
  std::ostringstream os;
  os << "{\"quantity_name\": " << json_string(r.quantity_name) << ", \"computed_value\": " << json_real(r.computed_value)
     << ", \"paper_bound\": {\"value\": " << json_real(r.paper_bound.value)
     << ", \"direction\": " << json_string(direction_symbol(r.paper_bound.direction))
     << ", \"tolerance\": " << json_real(r.paper_bound.tolerance) << "}, \"passed\": " << (r.passed ? "true" : "false")
     << ", \"runtime_ms\": " << r.runtime_ms;
  if (!r.note.empty()) os << ", \"note\": " << json_string(r.note);
  if (!r.details.empty()) {
    os << ", \"details\": {";
    for (std::size_t i = 0; i < r.details.size(); ++i) {
      if (i > 0) os << ", ";
      os << json_string(r.details[i].first) << ": " << r.details[i].second;
    }
    os << '}';
  }
  os << '}';
  return os.str();
}

inline std::string render_json(const std::vector<ReproReport>& reports) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out += "  " + render_json(reports[i]);
    out += (i + 1 < reports.size()) ? ",\n" : "\n";
  }
  return out + "]\n";
}

}  // namespace qcap
