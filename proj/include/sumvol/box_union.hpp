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

#ifndef SUMVOL_BOX_UNION_HPP
#define SUMVOL_BOX_UNION_HPP

#include <algorithm>
#include <vector>

#include "sumvol/rational.hpp"

namespace sumvol {

/// Axis extent of one box; lo == hi encodes a degenerate (flat) axis, used
/// for lower-dimensional pieces and point sets.
struct AxisRange {
  Rational lo, hi;
  friend bool operator==(const AxisRange&, const AxisRange&) = default;
};

using Box = std::vector<AxisRange>;

/// Compact subset of R^d as a finite union of axis-aligned rational boxes.
/// Boxes may overlap; the volume is always that of the union, computed
/// exactly by coordinate compression. Intended for desk-scale verification:
/// the compressed grid has O((2n)^d) cells, so keep n below ~32 boxes in
/// d = 3.
class BoxUnion {
 public:
  explicit BoxUnion(int dim = 1) : dim_(dim) {
    if (dim < 1) throw input_error("box dimension must be >= 1");
  }

  static BoxUnion from_boxes(int dim, std::vector<Box> raw) {
    BoxUnion out(dim);
    for (const auto& box : raw) {
      if (static_cast<int>(box.size()) != dim) throw input_error("box with wrong dimension");
      for (const auto& side : box)
        if (side.lo > side.hi) throw input_error("box side with lo > hi");
    }
    out.boxes_ = std::move(raw);
    return out;
  }

  static BoxUnion cube(int dim, const Rational& lo, const Rational& hi) {
    return from_boxes(dim, {Box(static_cast<std::size_t>(dim), AxisRange{lo, hi})});
  }

  static BoxUnion point(const std::vector<Rational>& coords) {
    Box box;
    for (const auto& c : coords) box.push_back({c, c});
    return from_boxes(static_cast<int>(coords.size()), {std::move(box)});
  }

  int dim() const { return dim_; }
  bool empty() const { return boxes_.empty(); }
  const std::vector<Box>& boxes() const { return boxes_; }
  std::size_t box_count() const { return boxes_.size(); }

  void append(const BoxUnion& other) {
    if (other.dim_ != dim_) throw input_error("box dimension mismatch");
    boxes_.insert(boxes_.end(), other.boxes_.begin(), other.boxes_.end());
  }

  /// Smallest value of the chosen coordinate attained by the union.
  const Rational& pi_min(int axis = 0) const {
    return nonempty().boxes_[min_pi_box_index(axis)][static_cast<std::size_t>(axis)].lo;
  }

  /// Largest value of the chosen coordinate attained by the union.
  const Rational& pi_max(int axis = 0) const {
    return nonempty().boxes_[max_pi_box_index(axis)][static_cast<std::size_t>(axis)].hi;
  }

  /// A point of the set attaining pi_min: the lower corner of a box whose
  /// chosen coordinate reaches the minimum.
  std::vector<Rational> min_pi_point(int axis = 0) const {
    const Box& box = nonempty().boxes_[min_pi_box_index(axis)];
    std::vector<Rational> p;
    for (const auto& side : box) p.push_back(side.lo);
    return p;
  }

  /// A point of the set attaining pi_max: the upper corner of a box whose
  /// chosen coordinate reaches the maximum.
  std::vector<Rational> max_pi_point(int axis = 0) const {
    const Box& box = nonempty().boxes_[max_pi_box_index(axis)];
    std::vector<Rational> p;
    for (const auto& side : box) p.push_back(side.hi);
    return p;
  }

  friend bool operator==(const BoxUnion&, const BoxUnion&) = default;

  const BoxUnion& nonempty() const {
    if (boxes_.empty()) throw input_error("operation requires a nonempty box union");
    return *this;
  }

 private:
  std::size_t min_pi_box_index(int axis) const {
    check_axis(axis);
    const auto a = static_cast<std::size_t>(axis);
    std::size_t best = 0;
    for (std::size_t i = 1; i < boxes_.size(); ++i)
      if (boxes_[i][a].lo < boxes_[best][a].lo) best = i;
    return best;
  }
  std::size_t max_pi_box_index(int axis) const {
    check_axis(axis);
    const auto a = static_cast<std::size_t>(axis);
    std::size_t best = 0;
    for (std::size_t i = 1; i < boxes_.size(); ++i)
      if (boxes_[i][a].hi > boxes_[best][a].hi) best = i;
    return best;
  }
  void check_axis(int axis) const {
    if (axis < 0 || axis >= dim_) throw input_error("axis index out of range");
  }

  int dim_;
  std::vector<Box> boxes_;
};

/// Exact Minkowski sum: all pairwise box sums (axis-wise interval sums).
inline BoxUnion box_minkowski_sum(const BoxUnion& a, const BoxUnion& b) {
  if (a.dim() != b.dim()) throw input_error("box dimension mismatch");
  a.nonempty();
  b.nonempty();
  std::vector<Box> raw;
  raw.reserve(a.box_count() * b.box_count());
  for (const auto& x : a.boxes())
    for (const auto& y : b.boxes()) {
      Box sum;
      sum.reserve(x.size());
      for (std::size_t ax = 0; ax < x.size(); ++ax)
        sum.push_back({x[ax].lo + y[ax].lo, x[ax].hi + y[ax].hi});
      raw.push_back(std::move(sum));
    }
  return BoxUnion::from_boxes(a.dim(), std::move(raw));
}

inline BoxUnion translate(const BoxUnion& a, const std::vector<Rational>& shift) {
  if (static_cast<int>(shift.size()) != a.dim()) throw input_error("shift dimension mismatch");
  std::vector<Box> raw = a.boxes();
  for (auto& box : raw)
    for (std::size_t ax = 0; ax < box.size(); ++ax) {
      box[ax].lo += shift[ax];
      box[ax].hi += shift[ax];
    }
  return BoxUnion::from_boxes(a.dim(), std::move(raw));
}

/// Exact d-dimensional Lebesgue measure of the union, by coordinate
/// compression: distinct endpoints per axis cut space into cells; a cell is
/// covered iff some box spans it on every axis.
inline Rational union_volume(const BoxUnion& a) {
  if (a.empty()) return Rational(0);
  const int d = a.dim();
  std::vector<std::vector<Rational>> values(static_cast<std::size_t>(d));
  for (int ax = 0; ax < d; ++ax) {
    auto& vals = values[static_cast<std::size_t>(ax)];
    for (const auto& box : a.boxes()) {
      vals.push_back(box[static_cast<std::size_t>(ax)].lo);
      vals.push_back(box[static_cast<std::size_t>(ax)].hi);
    }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  }

  std::size_t cell_total = 1;
  for (int ax = 0; ax < d; ++ax) {
    const std::size_t slots = values[static_cast<std::size_t>(ax)].size() - 1;
    if (slots == 0) return Rational(0);  // every box degenerate on this axis
    cell_total *= slots;
    if (cell_total > (std::size_t{1} << 27))
      throw input_error("box union too large for exact compression");
  }

  // Per-box index ranges in the compressed grid.
  std::vector<char> covered(cell_total, 0);
  std::vector<std::size_t> stride(static_cast<std::size_t>(d), 1);
  for (int ax = d - 2; ax >= 0; --ax)
    stride[static_cast<std::size_t>(ax)] =
        stride[static_cast<std::size_t>(ax) + 1] * (values[static_cast<std::size_t>(ax) + 1].size() - 1);

  std::vector<std::size_t> lo_idx(static_cast<std::size_t>(d)), hi_idx(static_cast<std::size_t>(d));
  for (const auto& box : a.boxes()) {
    bool degenerate = false;
    for (int ax = 0; ax < d; ++ax) {
      const auto& vals = values[static_cast<std::size_t>(ax)];
      const auto& side = box[static_cast<std::size_t>(ax)];
      lo_idx[static_cast<std::size_t>(ax)] = static_cast<std::size_t>(
          std::lower_bound(vals.begin(), vals.end(), side.lo) - vals.begin());
      hi_idx[static_cast<std::size_t>(ax)] = static_cast<std::size_t>(
          std::lower_bound(vals.begin(), vals.end(), side.hi) - vals.begin());
      if (lo_idx[static_cast<std::size_t>(ax)] == hi_idx[static_cast<std::size_t>(ax)])
        degenerate = true;
    }
    if (degenerate) continue;
    // Odometer over the box's cell range.
    std::vector<std::size_t> idx(lo_idx);
    while (true) {
      std::size_t flat = 0;
      for (int ax = 0; ax < d; ++ax)
        flat += idx[static_cast<std::size_t>(ax)] * stride[static_cast<std::size_t>(ax)];
      covered[flat] = 1;
      int ax = d - 1;
      for (; ax >= 0; --ax) {
        if (++idx[static_cast<std::size_t>(ax)] < hi_idx[static_cast<std::size_t>(ax)]) break;
        idx[static_cast<std::size_t>(ax)] = lo_idx[static_cast<std::size_t>(ax)];
      }
      if (ax < 0) break;
    }
  }

  Rational total(0);
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  for (std::size_t flat = 0; flat < cell_total; ++flat) {
    if (covered[flat]) {
      std::size_t rem = flat;
      Rational cell(1);
      for (int ax = 0; ax < d; ++ax) {
        const std::size_t i = rem / stride[static_cast<std::size_t>(ax)];
        rem %= stride[static_cast<std::size_t>(ax)];
        const auto& vals = values[static_cast<std::size_t>(ax)];
        cell *= vals[i + 1] - vals[i];
      }
      total += cell;
    }
  }
  return total;
}

/// A ∩ {x : x_axis in (t1, t2]} as a closed representative; a box left with a
/// degenerate slab axis exactly at the open endpoint t1 is dropped.
inline BoxUnion slab_truncate(const BoxUnion& a, const Rational& t1, const Rational& t2,
                              int axis = 0) {
  if (t1 > t2) throw input_error("slab window has t1 > t2");
  if (axis < 0 || axis >= a.dim()) throw input_error("axis index out of range");
  const auto ax = static_cast<std::size_t>(axis);
  std::vector<Box> raw;
  for (const auto& box : a.boxes()) {
    Rational lo = std::max(box[ax].lo, t1);
    Rational hi = std::min(box[ax].hi, t2);
    if (lo > hi) continue;
    if (lo == hi && lo == t1) continue;
    Box clipped = box;
    clipped[ax] = {std::move(lo), std::move(hi)};
    raw.push_back(std::move(clipped));
  }
  return BoxUnion::from_boxes(a.dim(), std::move(raw));
}

inline BoxUnion union_of(const BoxUnion& a, const BoxUnion& b) {
  BoxUnion out = a;
  out.append(b);
  return out;
}

/// |A ∩ B| through volumes of the parts: |A| + |B| - |A ∪ B|.
inline Rational intersection_volume(const BoxUnion& a, const BoxUnion& b) {
  return union_volume(a) + union_volume(b) - union_volume(union_of(a, b));
}

/// Containment up to Lebesgue-null difference: |A ∪ B| == |B|.
inline bool subset_up_to_null(const BoxUnion& a, const BoxUnion& b) {
  return union_volume(union_of(a, b)) == union_volume(b);
}

}  // namespace sumvol

#endif  // SUMVOL_BOX_UNION_HPP
