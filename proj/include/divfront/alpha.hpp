// Copyright 2026 The divfront Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include "divfront/errors.hpp"

namespace divfront {

/// Order of a Renyi divergence. The limits and the KL order are tags of their
/// own so that every code path dispatches on them explicitly.
class Alpha {
 public:
  enum class Kind { Zero, Finite, One, Infinity };

  static constexpr Alpha zero() noexcept { return Alpha(Kind::Zero, 0.0); }
  static constexpr Alpha one() noexcept { return Alpha(Kind::One, 1.0); }
  static constexpr Alpha infinity() noexcept {
    return Alpha(Kind::Infinity, std::numeric_limits<double>::infinity());
  }

  /// Finite order in (0,1) or (1,inf). Use `from_value` to map 0, 1 and inf
  /// onto their tags.
  static Alpha finite(double value) {
    if (!(value > 0.0) || value == 1.0 || !std::isfinite(value)) {
      throw DomainError("finite Renyi order must lie in (0,1) or (1,inf), got " +
                        std::to_string(value));
    }
    return Alpha(Kind::Finite, value);
  }

  static Alpha from_value(double value) {
    if (value == 0.0) return zero();
    if (value == 1.0) return one();
    if (std::isinf(value) && value > 0.0) return infinity();
    return finite(value);
  }

  /// Accepts "0", "1", "inf" (also "infinity") and positive decimals.
  static Alpha parse(std::string_view text) {
    if (text == "inf" || text == "Inf" || text == "infinity" || text == "+inf") {
      return infinity();
    }
    std::string s(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw DomainError("cannot parse Renyi order '" + s + "'");
    }
    if (used != s.size() || v < 0.0 || std::isnan(v)) {
      throw DomainError("cannot parse Renyi order '" + s + "'");
    }
    return from_value(v);
  }

  constexpr Kind kind() const noexcept { return kind_; }
  constexpr double value() const noexcept { return value_; }

  constexpr bool is_zero() const noexcept { return kind_ == Kind::Zero; }
  constexpr bool is_one() const noexcept { return kind_ == Kind::One; }
  constexpr bool is_infinity() const noexcept { return kind_ == Kind::Infinity; }
  constexpr bool is_finite() const noexcept { return kind_ == Kind::Finite; }

  std::string to_string() const {
    switch (kind_) {
      case Kind::Zero: return "0";
      case Kind::One: return "1";
      case Kind::Infinity: return "inf";
      case Kind::Finite: break;
    }
    std::string s = std::to_string(value_);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  }

  friend constexpr bool operator==(const Alpha&, const Alpha&) = default;

 private:
  constexpr Alpha(Kind kind, double value) noexcept : kind_(kind), value_(value) {}

  Kind kind_;
  double value_;
};

}  // namespace divfront
