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

#ifndef SUMVOL_TESTS_HELPERS_HPP
#define SUMVOL_TESTS_HELPERS_HPP

#include <random>
#include <vector>

#include "sumvol/box_union.hpp"
#include "sumvol/integer_set.hpp"
#include "sumvol/interval_union.hpp"
#include "sumvol/polygon.hpp"
#include "sumvol/rational.hpp"

namespace sumvol::testing {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int num_lo = -8, int num_hi = 8, int den_hi = 4) {
  std::uniform_int_distribution<int> num(num_lo, num_hi);
  std::uniform_int_distribution<int> den(1, den_hi);
  return Rational(num(rng)) / den(rng);
}

inline Rational random_nonneg_rational(Rng& rng, int num_hi = 8, int den_hi = 4) {
  return random_rational(rng, 0, num_hi, den_hi);
}

inline IntervalUnion random_interval_union(Rng& rng, int max_parts = 4) {
  std::uniform_int_distribution<int> parts(1, max_parts);
  const int n = parts(rng);
  std::vector<IntervalUnion::Interval> raw;
  for (int i = 0; i < n; ++i) {
    Rational lo = random_rational(rng);
    Rational len = random_nonneg_rational(rng, 4, 4);
    raw.push_back({lo, lo + len});
  }
  return IntervalUnion::from_intervals(std::move(raw));
}

inline IntegerSet random_integer_set(Rng& rng, int max_elems = 5, int lo = -10, int hi = 10) {
  std::uniform_int_distribution<int> count(1, max_elems);
  std::uniform_int_distribution<int> value(lo, hi);
  std::vector<Integer> raw;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) raw.push_back(Integer(value(rng)));
  return IntegerSet::from_elements(std::move(raw));
}

inline BoxUnion random_box_union(Rng& rng, int dim, int max_boxes = 2) {
  std::uniform_int_distribution<int> count(1, max_boxes);
  std::vector<Box> boxes;
  const int n = count(rng);
  for (int b = 0; b < n; ++b) {
    Box box;
    for (int ax = 0; ax < dim; ++ax) {
      Rational lo = random_rational(rng, -4, 4, 2);
      Rational len = random_nonneg_rational(rng, 3, 2);
      box.push_back({lo, lo + len});
    }
    boxes.push_back(std::move(box));
  }
  return BoxUnion::from_boxes(dim, std::move(boxes));
}

inline ConvexPolygon random_polygon(Rng& rng, int max_points = 7) {
  std::uniform_int_distribution<int> count(3, max_points);
  std::vector<Point2> pts;
  const int n = count(rng);
  for (int i = 0; i < n; ++i)
    pts.push_back({random_rational(rng, -6, 6, 3), random_rational(rng, -6, 6, 3)});
  return ConvexPolygon::from_points(std::move(pts));
}

/// Exact union volume by inclusion-exclusion over all box subsets; an
/// independent (exponential) oracle for the compression algorithm.
inline Rational union_volume_by_inclusion_exclusion(const BoxUnion& a) {
  const auto& boxes = a.boxes();
  if (boxes.size() > 15) throw input_error("oracle limited to 15 boxes");
  Rational total(0);
  for (std::size_t subset = 1; subset < (std::size_t{1} << boxes.size()); ++subset) {
    Box common;
    bool empty = false;
    for (int ax = 0; ax < a.dim() && !empty; ++ax) {
      Rational lo, hi;
      bool first = true;
      for (std::size_t b = 0; b < boxes.size(); ++b) {
        if (!((subset >> b) & 1)) continue;
        const auto& side = boxes[b][static_cast<std::size_t>(ax)];
        if (first) {
          lo = side.lo;
          hi = side.hi;
          first = false;
        } else {
          lo = std::max(lo, side.lo);
          hi = std::min(hi, side.hi);
        }
      }
      if (lo > hi) empty = true;
      common.push_back({lo, hi});
    }
    if (empty) continue;
    Rational vol(1);
    for (const auto& side : common) vol *= side.hi - side.lo;
    const int bits = std::popcount(subset);
    total += (bits % 2 == 1 ? vol : -vol);
  }
  return total;
}

}  // namespace sumvol::testing

#endif  // SUMVOL_TESTS_HELPERS_HPP
