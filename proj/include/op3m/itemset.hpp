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
#include <compare>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "op3m/database.hpp"

namespace op3m {

/// Duplicate-free set of items in ascending id order.
class ItemSet {
 public:
  ItemSet() = default;
  ItemSet(std::initializer_list<ItemId> items) : ItemSet(std::vector<ItemId>(items)) {}
  /// Sorts; throws std::invalid_argument on duplicates.
  explicit ItemSet(std::vector<ItemId> items) : items_(std::move(items)) {
    std::sort(items_.begin(), items_.end());
    if (std::adjacent_find(items_.begin(), items_.end()) != items_.end())
      throw std::invalid_argument("duplicate item in itemset");
  }

  std::span<const ItemId> items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  bool contains(ItemId i) const { return std::binary_search(items_.begin(), items_.end(), i); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  /// "1 3 5"
  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < items_.size(); ++k) {
      if (k > 0) s += ' ';
      s += std::to_string(items_[k]);
    }
    return s;
  }

  friend bool operator==(const ItemSet&, const ItemSet&) = default;
  friend auto operator<=>(const ItemSet& a, const ItemSet& b) { return a.items_ <=> b.items_; }

 private:
  std::vector<ItemId> items_;
};

/// The mining total order: non-negative items first, then negative items;
/// RTWU ascending within each class, ties by ascending item id.
class ItemOrder {
 public:
  ItemOrder() = default;
  /// `ordered` lists items first to last.
  explicit ItemOrder(std::vector<ItemId> ordered) : ordered_(std::move(ordered)) {
    for (std::size_t r = 0; r < ordered_.size(); ++r) rank_.emplace(ordered_[r], static_cast<std::uint32_t>(r));
  }

  std::span<const ItemId> ordered() const { return ordered_; }
  std::size_t size() const { return ordered_.size(); }
  bool contains(ItemId i) const { return rank_.contains(i); }
  /// Throws std::out_of_range for items outside the order.
  std::uint32_t rank(ItemId i) const { return rank_.at(i); }
  bool precedes(ItemId a, ItemId b) const { return rank(a) < rank(b); }

 private:
  std::vector<ItemId> ordered_;
  std::unordered_map<ItemId, std::uint32_t> rank_;
};

}  // namespace op3m
