// Copyright 2026 The mrtk Authors.
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

#ifndef MRTK_ORDERED_MAP_H_
#define MRTK_ORDERED_MAP_H_

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mrtk {

// Insertion-ordered map keyed by the value's `id` member. Iteration yields
// values in insertion order; lookup is O(1); erase is O(n).
template <typename T>
class OrderedMap {
 public:
  using const_iterator = typename std::vector<T>::const_iterator;
  using iterator = typename std::vector<T>::iterator;

  // Returns false (and leaves the map unchanged) if the id already exists.
  bool insert(T value) {
    if (index_.count(value.id) > 0) return false;
    index_.emplace(value.id, items_.size());
    items_.push_back(std::move(value));
    return true;
  }

  bool erase(const std::string &id) {
    auto it = index_.find(id);
    if (it == index_.end()) return false;
    items_.erase(items_.begin() + it->second);
    Reindex();
    return true;
  }

  // Removes every value matching the predicate; returns the number removed.
  template <typename Pred>
  size_t erase_if(Pred pred) {
    size_t before = items_.size();
    std::erase_if(items_, pred);
    if (items_.size() != before) Reindex();
    return before - items_.size();
  }

  const T *find(const std::string &id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &items_[it->second];
  }
  T *find(const std::string &id) {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &items_[it->second];
  }
  bool contains(const std::string &id) const { return index_.count(id) > 0; }

  // Position of the id in insertion order, or -1.
  int position(const std::string &id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : static_cast<int>(it->second);
  }

  size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const T &operator[](size_t i) const { return items_[i]; }
  T &operator[](size_t i) { return items_[i]; }

  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }
  iterator begin() { return items_.begin(); }
  iterator end() { return items_.end(); }

  bool operator==(const OrderedMap &other) const {
    return items_ == other.items_;
  }

 private:
  void Reindex() {
    index_.clear();
    for (size_t i = 0; i < items_.size(); ++i) index_.emplace(items_[i].id, i);
  }

  std::vector<T> items_;
  std::unordered_map<std::string, size_t> index_;
};

}  // namespace mrtk

#endif  // MRTK_ORDERED_MAP_H_
