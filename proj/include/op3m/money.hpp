// Copyright 2026 The op3m Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace op3m {

/// Signed currency amount held as an exact count of minor units.
///
/// All profit arithmetic (transaction profit, period totals, list sums) is
/// done on these integers so that independently computed totals compare
/// equal bit for bit. One unit of currency is kScale minor units.
class Money {
 public:
  static constexpr std::int64_t kScale = 10000;
  static constexpr int kDecimals = 4;

  constexpr Money() = default;

  static constexpr Money from_minor(std::int64_t minor) { return Money(minor); }
  static constexpr Money from_units(std::int64_t units) { return Money(units * kScale); }

  /// Parses "12", "-2", "+3.5", "0.0001". Throws std::invalid_argument on
  /// anything else, including more than kDecimals fractional digits.
  static Money parse(std::string_view text);

  constexpr std::int64_t minor() const { return minor_; }
  double to_double() const { return static_cast<double>(minor_) / kScale; }

  /// Shortest exact decimal rendering: "67", "-4", "3.25".
  std::string to_string() const;

  constexpr Money& operator+=(Money o) {
    minor_ += o.minor_;
    return *this;
  }
  constexpr Money& operator-=(Money o) {
    minor_ -= o.minor_;
    return *this;
  }
  friend constexpr Money operator+(Money a, Money b) { return Money(a.minor_ + b.minor_); }
  friend constexpr Money operator-(Money a, Money b) { return Money(a.minor_ - b.minor_); }
  friend constexpr Money operator-(Money a) { return Money(-a.minor_); }
  friend constexpr Money operator*(Money a, std::int64_t k) { return Money(a.minor_ * k); }
  friend constexpr Money operator*(std::int64_t k, Money a) { return Money(a.minor_ * k); }

  friend constexpr auto operator<=>(Money, Money) = default;
  friend constexpr bool operator==(Money, Money) = default;

  constexpr bool positive() const { return minor_ > 0; }
  constexpr bool negative() const { return minor_ < 0; }

 private:
  constexpr explicit Money(std::int64_t minor) : minor_(minor) {}
  std::int64_t minor_ = 0;
};

/// A user threshold such as minfre or minpro, kept as an exact decimal
/// fraction num / den with den a power of ten.
struct Threshold {
  std::int64_t num = 0;
  std::int64_t den = 1;

  /// Parses a plain decimal ("0.4", "-0.25", "2", ".5"). Throws
  /// std::invalid_argument for malformed text or more than 12 decimals.
  static Threshold parse(std::string_view text);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;
};

/// True iff value >= t * base, evaluated exactly. The caller picks the sign
/// convention: for ratios value/base with base > 0 this is value/base >= t.
bool at_least(std::int64_t value, Threshold t, std::int64_t base);

/// Exact ratio of two integers (profits in minor units or counts).
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double to_double() const;
  /// num/den >= t, exact. A zero denominator never satisfies.
  bool at_least(Threshold t) const;
  /// Rounded half away from zero to `places` decimals; "nan" when den == 0.
  std::string to_fixed(int places) const;

  /// Same rational value (cross-multiplied), or both undefined.
  bool same_value(const Fraction& o) const;
};

}  // namespace op3m
