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

#ifndef SUMVOL_SUBSET_HPP
#define SUMVOL_SUBSET_HPP

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sumvol/rational.hpp"

namespace sumvol {

/// Subset of the ground set {1,...,M} as a bitmask; element e occupies bit
/// e-1. M is capped at 16 by this representation.
using SubsetMask = std::uint32_t;

inline constexpr int kMaxGround = 16;

inline void check_ground_size(int m) {
  if (m < 1 || m > kMaxGround)
    throw input_error("ground size must be in [1, 16], got " + std::to_string(m));
}

inline SubsetMask full_mask(int m) {
  check_ground_size(m);
  return (SubsetMask{1} << m) - 1;
}

inline bool mask_contains(SubsetMask s, int element) {
  return (s >> (element - 1)) & 1u;
}

inline SubsetMask element_mask(int element) { return SubsetMask{1} << (element - 1); }

inline int mask_size(SubsetMask s) { return std::popcount(s); }

/// Elements of the mask, 1-based, ascending.
inline std::vector<int> mask_elements(SubsetMask s) {
  std::vector<int> out;
  for (int e = 1; s != 0; ++e, s >>= 1)
    if (s & 1u) out.push_back(e);
  return out;
}

inline SubsetMask mask_from_elements(std::span<const int> elements, int m) {
  SubsetMask s = 0;
  for (int e : elements) {
    if (e < 1 || e > m)
      throw input_error("element " + std::to_string(e) + " outside ground set [1, " +
                        std::to_string(m) + "]");
    s |= element_mask(e);
  }
  return s;
}

/// All 2^M subsets in increasing mask order, empty set first.
inline std::vector<SubsetMask> all_subsets(int m) {
  check_ground_size(m);
  std::vector<SubsetMask> out(std::size_t{1} << m);
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = static_cast<SubsetMask>(s);
  return out;
}

/// "[1,3,4]"; "[]" for the empty set.
inline std::string mask_to_string(SubsetMask s) {
  std::string out = "[";
  bool first = true;
  for (int e : mask_elements(s)) {
    if (!first) out += ',';
    out += std::to_string(e);
    first = false;
  }
  out += ']';
  return out;
}

inline SubsetMask parse_mask(std::string_view text, int m) {
  std::string_view body = text;
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    throw input_error("malformed subset '" + std::string(text) + "', expected e.g. [1,3]");
  body = body.substr(1, body.size() - 2);
  std::vector<int> elements;
  while (!body.empty()) {
    const auto comma = body.find(',');
    const std::string_view tok = body.substr(0, comma);
    try {
      elements.push_back(std::stoi(std::string(tok)));
    } catch (const std::exception&) {
      throw input_error("malformed subset element '" + std::string(tok) + "'");
    }
    body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
  }
  return mask_from_elements(elements, m);
}

}  // namespace sumvol

#endif  // SUMVOL_SUBSET_HPP
