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

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace op3m {

/// Bitset over dense period indices (see Database::period_index).
class PeriodSet {
 public:
  PeriodSet() = default;
  explicit PeriodSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const { return universe_; }

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const {
    return i < universe_ && (words_[i / 64] >> (i % 64) & 1U) != 0;
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  PeriodSet& operator&=(const PeriodSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= k < o.words_.size() ? o.words_[k] : 0;
    return *this;
  }
  friend PeriodSet operator&(PeriodSet a, const PeriodSet& b) { return a &= b; }

  friend bool operator==(const PeriodSet& a, const PeriodSet& b) {
    std::size_t n = std::max(a.words_.size(), b.words_.size());
    for (std::size_t k = 0; k < n; ++k) {
      std::uint64_t x = k < a.words_.size() ? a.words_[k] : 0;
      std::uint64_t y = k < b.words_.size() ? b.words_[k] : 0;
      if (x != y) return false;
    }
    return true;
  }

  /// Calls fn(index) for each member in ascending order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w != 0) {
        fn(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace op3m
