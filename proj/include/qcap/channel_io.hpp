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

// Channel JSON format:
//   {"din": 2, "dout": 3, "kraus": [K_0, K_1, ...]}
// where each K_k is an array of dout rows, each row an array of din [re, im] pairs.
// denv is the number of Kraus operators; an optional "denv" field must agree.
//
// Built-in channels are addressable by name instead of a file path:
//   builtin:horodecki4       four-dimensional private Horodecki channel
//   builtin:erasure:d:p      erasure channel on d levels with probability p
//   builtin:identity:d       identity channel on d levels
//   builtin:depolarizing:d   completely depolarizing channel on d levels
//   builtin:gap-switch       switch channel of builtin:horodecki4 and builtin:erasure:4:0.5

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "json.hpp"
#include "qcap/channels.hpp"
#include "qcap/format.hpp"

namespace qcap {

/// Malformed channel description (syntax, missing field, wrong shape, unknown builtin).
class ChannelFormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::size_t read_dim_field(const nlohmann::json& j, const char* field) {
  const auto it = j.find(field);
  if (it == j.end()) throw ChannelFormatError(std::string("field '") + field + "': missing");
  if (!it->is_number_integer() || it->get<long long>() < 1) {
    throw ChannelFormatError(std::string("field '") + field + "': expected a positive integer, got " + it->dump());
  }
  return it->get<std::size_t>();
}

inline std::string kraus_field(std::size_t k) { return "field 'kraus[" + std::to_string(k) + "]'"; }

template <typename T>
T parse_number(std::string_view text, const std::string& what) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ChannelFormatError("builtin channel: cannot parse " + what + " '" + std::string(text) + "'");
  return value;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace detail

/// Builds a channel from parsed JSON. Shape errors name the field, Kraus index and row.
inline KrausChannel channel_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ChannelFormatError("channel JSON: expected an object at the top level");
  const std::size_t din = detail::read_dim_field(j, "din");
  const std::size_t dout = detail::read_dim_field(j, "dout");
  const auto kit = j.find("kraus");
  if (kit == j.end()) throw ChannelFormatError("field 'kraus': missing");
  if (!kit->is_array() || kit->empty()) throw ChannelFormatError("field 'kraus': expected a nonempty array of matrices");

  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = 0; k < kit->size(); ++k) {
    const auto& m = (*kit)[k];
    if (!m.is_array()) throw ChannelFormatError(detail::kraus_field(k) + ": expected an array of rows");
    if (m.size() != dout) {
      throw ChannelFormatError(detail::kraus_field(k) + ": expected dout = " + std::to_string(dout) + " rows, found " +
                               std::to_string(m.size()));
    }
    ComplexMatrix K(static_cast<Eigen::Index>(dout), static_cast<Eigen::Index>(din));
    for (std::size_t r = 0; r < dout; ++r) {
      const auto& row = m[r];
      if (!row.is_array() || row.size() != din) {
        throw ChannelFormatError(detail::kraus_field(k) + " row " + std::to_string(r) + ": expected din = " + std::to_string(din) +
                                 " entries, found " + (row.is_array() ? std::to_string(row.size()) : std::string("a non-array")));
      }
      for (std::size_t col = 0; col < din; ++col) {
        const auto& e = row[col];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
          throw ChannelFormatError(detail::kraus_field(k) + " row " + std::to_string(r) + " column " + std::to_string(col) +
                                   ": expected a [re, im] pair of numbers, got " + e.dump());
        }
        K(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) = Complex(e[0].get<double>(), e[1].get<double>());
      }
    }
    kraus.push_back(std::move(K));
  }
  if (const auto dit = j.find("denv"); dit != j.end()) {
    if (!dit->is_number_integer() || dit->get<long long>() != static_cast<long long>(kraus.size())) {
      throw ChannelFormatError("field 'denv': " + dit->dump() + " does not match the " + std::to_string(kraus.size()) +
                               " Kraus operators");
    }
  }
  return KrausChannel(std::move(kraus));
}

inline KrausChannel parse_channel_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ChannelFormatError(std::string("channel JSON: syntax error: ") + e.what());
  }
  return channel_from_json(j);
}

/// Serializes with 17 significant digits, one matrix row per line.
inline std::string channel_to_json(const KrausChannel& c) {
  std::ostringstream os;
  os << "{\n  \"din\": " << c.din() << ",\n  \"dout\": " << c.dout() << ",\n  \"kraus\": [\n";
  for (std::size_t k = 0; k < c.denv(); ++k) {
    const auto& K = c.kraus()[k];
    os << "    [\n";
    for (Eigen::Index r = 0; r < K.rows(); ++r) {
      os << "      [";
      for (Eigen::Index col = 0; col < K.cols(); ++col) {
        if (col > 0) os << ", ";
        os << '[' << json_real(K(r, col).real()) << ", " << json_real(K(r, col).imag()) << ']';
      }
      os << (r + 1 < K.rows() ? "],\n" : "]\n");
    }
    os << (k + 1 < c.denv() ? "    ],\n" : "    ]\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

/// Resolves a builtin:... name.
inline KrausChannel builtin_channel(std::string_view name) {
  constexpr std::string_view prefix = "builtin:";
  if (name.substr(0, prefix.size()) != prefix) throw ChannelFormatError("not a builtin channel name: '" + std::string(name) + "'");
  const auto parts = detail::split(name.substr(prefix.size()), ':');
  const auto& kind = parts[0];
  auto expect_args = [&](std::size_t n) {
    if (parts.size() != n + 1) {
      throw ChannelFormatError("builtin channel '" + std::string(kind) + "' takes " + std::to_string(n) + " argument(s), got " +
                               std::to_string(parts.size() - 1));
    }
  };
  auto dim_arg = [&](std::size_t i) {
    const auto d = detail::parse_number<std::size_t>(parts[i], "dimension");
    if (d < 1) throw ChannelFormatError("builtin channel: dimension must be positive");
    return d;
  };
  if (kind == "horodecki4") {
    expect_args(0);
    return horodecki_channel_4();
  }
  if (kind == "gap-switch") {
    expect_args(0);
    return switch_channel(horodecki_channel_4(), erasure_channel(4, 0.5));
  }
  if (kind == "identity") {
    expect_args(1);
    return identity_channel(dim_arg(1));
  }
  if (kind == "depolarizing") {
    expect_args(1);
    return completely_depolarizing_channel(dim_arg(1));
  }
  if (kind == "erasure") {
    expect_args(2);
    const double p = detail::parse_number<double>(parts[2], "probability");
    if (!(p >= 0.0 && p <= 1.0)) throw ChannelFormatError("builtin channel: erasure probability " + std::string(parts[2]) + " outside [0, 1]");
    return erasure_channel(dim_arg(1), p);
  }
  throw ChannelFormatError("unknown builtin channel '" + std::string(kind) + "'");
}

/// Loads a channel from a JSON file path or a builtin:... name.
inline KrausChannel load_channel(const std::string& spec) {
  if (spec.rfind("builtin:", 0) == 0) return builtin_channel(spec);
  std::ifstream in(spec);
  if (!in) throw ChannelFormatError("cannot open channel file '" + spec + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_channel_json(buf.str());
}

}  // namespace qcap
