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

#include "op3m/money.hpp"

#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace op3m {
namespace {

using Wide = __int128;

struct Decimal {
  bool negative = false;
  Wide integral = 0;
  Wide fraction = 0;
  int fraction_digits = 0;
};

// sign? digits* ('.' digits*)?, at least one digit overall.
Decimal parse_decimal(std::string_view text, int max_fraction_digits) {
  Decimal d;
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    d.negative = text[i] == '-';
    ++i;
  }
  int digits = 0;
  for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i, ++digits) {
    d.integral = d.integral * 10 + (text[i] - '0');
    if (d.integral > std::numeric_limits<std::int64_t>::max())
      throw std::invalid_argument("number out of range: " + std::string(text));
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i, ++digits) {
      if (d.fraction_digits == max_fraction_digits)
        throw std::invalid_argument("too many decimal places: " + std::string(text));
      d.fraction = d.fraction * 10 + (text[i] - '0');
      ++d.fraction_digits;
    }
  }
  if (digits == 0 || i != text.size())
    throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
  return d;
}

Wide pow10(int n) {
  Wide r = 1;
  while (n-- > 0) r *= 10;
  return r;
}

std::int64_t narrow(Wide v, std::string_view text) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw std::invalid_argument("number out of range: " + std::string(text));
  return static_cast<std::int64_t>(v);
}

std::string wide_to_string(Wide v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  if (neg) v = -v;
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  if (neg) s.insert(s.begin(), '-');
  return s;
}

}  // namespace

Money Money::parse(std::string_view text) {
  Decimal d = parse_decimal(text, kDecimals);
  Wide minor = d.integral * kScale + d.fraction * pow10(kDecimals - d.fraction_digits);
  if (d.negative) minor = -minor;
  return Money(narrow(minor, text));
}

std::string Money::to_string() const {
  std::int64_t abs = minor_ < 0 ? -minor_ : minor_;
  std::string out = minor_ < 0 ? "-" : "";
  out += std::to_string(abs / kScale);
  std::int64_t frac = abs % kScale;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, static_cast<std::size_t>(kDecimals) - digits.size(), '0');
    while (digits.back() == '0') digits.pop_back();
    out += '.';
    out += digits;
  }
  return out;
}

Threshold Threshold::parse(std::string_view text) {
  Decimal d = parse_decimal(text, 12);
  Wide den = pow10(d.fraction_digits);
  Wide num = d.integral * den + d.fraction;
  if (d.negative) num = -num;
  Threshold t;
  t.num = narrow(num, text);
  t.den = narrow(den, text);
  return t;
}

std::string Threshold::to_string() const {
  Fraction f{num, den};
  // den is a power of ten, so its digit count bounds the decimals needed.
  int places = static_cast<int>(std::to_string(den).size()) - 1;
  std::string s = f.to_fixed(places);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

bool at_least(std::int64_t value, Threshold t, std::int64_t base) {
  return static_cast<Wide>(value) * t.den >= static_cast<Wide>(t.num) * base;
}

double Fraction::to_double() const {
  return static_cast<double>(num) / static_cast<double>(den);
}

bool Fraction::at_least(Threshold t) const {
  if (den == 0) return false;
  Wide n = num, d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  return n * t.den >= static_cast<Wide>(t.num) * d;
}

std::string Fraction::to_fixed(int places) const {
  if (den == 0) return "nan";
  Wide n = num, d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  bool neg = n < 0;
  if (neg) n = -n;
  Wide scale = pow10(places);
  Wide q = (n * scale * 2 + d) / (2 * d);
  std::string digits = wide_to_string(q);
  if (places > 0) {
    if (static_cast<int>(digits.size()) <= places)
      digits.insert(0, static_cast<std::size_t>(places + 1) - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  if (neg && q != 0) digits.insert(digits.begin(), '-');
  return digits;
}

bool Fraction::same_value(const Fraction& o) const {
  if (den == 0 || o.den == 0) return den == 0 && o.den == 0;
  return static_cast<Wide>(num) * o.den == static_cast<Wide>(o.num) * den;
}

}  // namespace op3m
