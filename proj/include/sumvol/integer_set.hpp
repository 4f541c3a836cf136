/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SUMVOL_INTEGER_SET_HPP
#define SUMVOL_INTEGER_SET_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "sumvol/rational.hpp"

namespace sumvol {

/// Finite set of integers, sorted strictly increasing. Empty only as a
/// truncation result, never as a sumset operand.
class IntegerSet {
 public:
  IntegerSet() = default;

  static IntegerSet from_elements(std::vector<Integer> raw) {
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    IntegerSet out;
    out.elems_ = std::move(raw);
    return out;
  }

  bool empty() const { return elems_.empty(); }
  std::size_t cardinality() const { return elems_.size(); }
  const std::vector<Integer>& elements() const { return elems_; }

  const Integer& min() const { return nonempty().elems_.front(); }
  const Integer& max() const { return nonempty().elems_.back(); }

  bool contains(const Integer& x) const {
    return std::binary_search(elems_.begin(), elems_.end(), x);
  }

  friend bool operator==(const IntegerSet&, const IntegerSet&) = default;

  const IntegerSet& nonempty() const {
    if (elems_.empty()) throw input_error("operation requires a nonempty integer set");
    return *this;
  }

 private:
  std::vector<Integer> elems_;
};

/// Exact sumset {a + b}: merge of |A| shifted copies of B.
inline IntegerSet sumset(const IntegerSet& a, const IntegerSet& b) {
  a.nonempty();
  b.nonempty();
  std::vector<Integer> raw;
  raw.reserve(a.cardinality() * b.cardinality());
  for (const auto& x : a.elements())
    for (const auto& y : b.elements()) raw.push_back(x + y);
  return IntegerSet::from_elements(std::move(raw));
}

inline IntegerSet translate(const IntegerSet& a, const Integer& shift) {
  std::vector<Integer> raw;
  raw.reserve(a.cardinality());
  for (const auto& x : a.elements()) raw.push_back(x + shift);
  return IntegerSet::from_elements(std::move(raw));
}

/// Increment of A when it is an arithmetic progression {a, a+r, ..., a+kr}
/// with k >= 1; 0 for singletons (a degenerate progression of every
/// increment); nullopt otherwise.
inline std::optional<Integer> arithmetic_progression_increment(const IntegerSet& a) {
  a.nonempty();
  if (a.cardinality() == 1) return Integer(0);
  const Integer step = a.elements()[1] - a.elements()[0];
  for (std::size_t i = 2; i < a.cardinality(); ++i)
    if (a.elements()[i] - a.elements()[i - 1] != step) return std::nullopt;
  return step;
}

/// A ∩ (lo, hi]: exact half-open truncation (no closed-hull convention needed
/// over the integers).
inline IntegerSet truncate(const IntegerSet& a, const Integer& lo, const Integer& hi) {
  if (lo > hi) throw input_error("truncation window has lo > hi");
  std::vector<Integer> raw;
  for (const auto& x : a.elements())
    if (lo < x && x <= hi) raw.push_back(x);
  return IntegerSet::from_elements(std::move(raw));
}

inline IntegerSet intersect(const IntegerSet& a, const IntegerSet& b) {
  std::vector<Integer> raw;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(),
                        b.elements().end(), std::back_inserter(raw));
  return IntegerSet::from_elements(std::move(raw));
}

inline bool subset_of(const IntegerSet& a, const IntegerSet& b) {
  return std::includes(b.elements().begin(), b.elements().end(), a.elements().begin(),
                       a.elements().end());
}

}  // namespace sumvol

#endif  // SUMVOL_INTEGER_SET_HPP
