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

#ifndef SUMVOL_INTERVAL_UNION_HPP
#define SUMVOL_INTERVAL_UNION_HPP

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "sumvol/rational.hpp"

namespace sumvol {

/// Compact subset of the real line: a finite union of closed rational
/// intervals, kept sorted and pairwise separated (hi_k < lo_{k+1}) after
/// normalization. A degenerate interval lo == hi encodes a point.
///
/// Half-open truncation windows (t1, t2] are represented by their closed
/// hulls; single points are Lebesgue-null, so measures are unaffected and
/// disjointness of truncated pieces is asserted as measure-zero overlap.
class IntervalUnion {
 public:
  struct Interval {
    Rational lo, hi;
    friend bool operator==(const Interval&, const Interval&) = default;
  };

  IntervalUnion() = default;  // empty set; valid only as a truncation result

  static IntervalUnion from_intervals(std::vector<Interval> raw) {
    for (const auto& iv : raw)
      if (iv.lo > iv.hi)
        throw input_error("malformed interval [" + to_string(iv.lo) + ", " +
                          to_string(iv.hi) + "]");
    std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
      return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    IntervalUnion out;
    for (auto& iv : raw) {
      if (!out.parts_.empty() && iv.lo <= out.parts_.back().hi) {
        if (iv.hi > out.parts_.back().hi) out.parts_.back().hi = std::move(iv.hi);
      } else {
        out.parts_.push_back(std::move(iv));
      }
    }
    return out;
  }

  static IntervalUnion segment(Rational lo, Rational hi) {
    return from_intervals({{std::move(lo), std::move(hi)}});
  }

  static IntervalUnion point(Rational x) {
    Rational y = x;
    return from_intervals({{std::move(x), std::move(y)}});
  }

  bool empty() const { return parts_.empty(); }
  const std::vector<Interval>& intervals() const { return parts_; }

  const Rational& min() const { return nonempty().parts_.front().lo; }
  const Rational& max() const { return nonempty().parts_.back().hi; }

  Rational measure() const {
    Rational total(0);
    for (const auto& iv : parts_) total += iv.hi - iv.lo;
    return total;
  }

  bool contains(const Rational& x) const {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                               [](const Rational& v, const Interval& iv) { return v < iv.lo; });
    return it != parts_.begin() && x <= std::prev(it)->hi;
  }

  std::size_t part_count() const { return parts_.size(); }

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

  const IntervalUnion& nonempty() const {
    if (parts_.empty()) throw input_error("operation requires a nonempty set");
    return *this;
  }

 private:
  std::vector<Interval> parts_;
};

/// Exact sumset {a + b}. Pairwise interval sums, then normalization.
inline IntervalUnion minkowski_sum(const IntervalUnion& a, const IntervalUnion& b) {
  a.nonempty();
  b.nonempty();
  std::vector<IntervalUnion::Interval> raw;
  raw.reserve(a.intervals().size() * b.intervals().size());
  for (const auto& x : a.intervals())
    for (const auto& y : b.intervals()) raw.push_back({x.lo + y.lo, x.hi + y.hi});
  return IntervalUnion::from_intervals(std::move(raw));
}

/// Image under x -> scale*x + shift; requires scale > 0.
inline IntervalUnion translate_scale(const IntervalUnion& a, const Rational& shift,
                                     const Rational& scale) {
  if (scale <= 0) throw input_error("scale factor must be positive");
  std::vector<IntervalUnion::Interval> raw;
  raw.reserve(a.intervals().size());
  for (const auto& iv : a.intervals()) raw.push_back({scale * iv.lo + shift, scale * iv.hi + shift});
  return IntervalUnion::from_intervals(std::move(raw));
}

inline IntervalUnion translate(const IntervalUnion& a, const Rational& shift) {
  return translate_scale(a, shift, Rational(1));
}

/// A ∩ (lo, hi] as a closed representative: pieces are clipped to [lo, hi] and
/// an isolated point left exactly at the open endpoint lo is dropped.
inline IntervalUnion truncate(const IntervalUnion& a, const Rational& lo, const Rational& hi) {
  if (lo > hi) throw input_error("truncation window has lo > hi");
  std::vector<IntervalUnion::Interval> raw;
  for (const auto& iv : a.intervals()) {
    Rational l = std::max(iv.lo, lo);
    Rational h = std::min(iv.hi, hi);
    if (l > h) continue;
    if (l == h && l == lo) continue;
    raw.push_back({std::move(l), std::move(h)});
  }
  return IntervalUnion::from_intervals(std::move(raw));
}

inline IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<IntervalUnion::Interval> raw;
  std::size_t i = 0, j = 0;
  while (i < a.intervals().size() && j < b.intervals().size()) {
    const auto& x = a.intervals()[i];
    const auto& y = b.intervals()[j];
    Rational l = std::max(x.lo, y.lo);
    Rational h = std::min(x.hi, y.hi);
    if (l <= h) raw.push_back({std::move(l), std::move(h)});
    if (x.hi < y.hi)
      ++i;
    else
      ++j;
  }
  return IntervalUnion::from_intervals(std::move(raw));
}

/// Exact containment of closed sets (componentwise, both normalized).
inline bool subset_of(const IntervalUnion& a, const IntervalUnion& b) {
  std::size_t j = 0;
  for (const auto& x : a.intervals()) {
    while (j < b.intervals().size() && b.intervals()[j].hi < x.lo) ++j;
    if (j == b.intervals().size()) return false;
    const auto& y = b.intervals()[j];
    if (!(y.lo <= x.lo && x.hi <= y.hi)) return false;
  }
  return true;
}

namespace detail {

inline void or_shifted(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src,
                       std::size_t shift) {
  const std::size_t word = shift / 64, bit = shift % 64;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] == 0) continue;
    dst[i + word] |= src[i] << bit;
    if (bit != 0) dst[i + word + 1] |= src[i] >> (64 - bit);
  }
}

/// Marks cell k (width h, anchored at `origin`) for every cell touching A.
inline std::vector<std::uint64_t> rasterize(const IntervalUnion& a, const Rational& origin,
                                            const Rational& h, std::size_t cells) {
  std::vector<std::uint64_t> bits(cells / 64 + 2, 0);
  for (const auto& iv : a.intervals()) {
    const std::size_t i0 = to_index(rational_floor((iv.lo - origin) / h));
    const std::size_t i1 = to_index(rational_floor((iv.hi - origin) / h));
    for (std::size_t i = i0; i <= i1; ++i) bits[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return bits;
}

}  // namespace detail

/// Independent rasterized estimate of |A + B|: both sets are over-covered by
/// cells of width h = span/N (span = span of A+B), cell indices are summed by
/// shifted word-ORs, and the covered length is returned. The estimate never
/// undershoots, and
///
///     0 <= grid_oracle(A, B, N) - |A + B| <= 4 * span * n_A * n_B / N,
///
/// where n_A, n_B are the interval counts of the operands.
inline Rational grid_oracle(const IntervalUnion& a, const IntervalUnion& b, std::uint32_t n) {
  if (n == 0) throw input_error("grid resolution must be positive");
  a.nonempty();
  b.nonempty();
  const Rational span = (a.max() + b.max()) - (a.min() + b.min());
  if (span == 0) return Rational(0);
  const Rational h = span / Rational(n);

  const auto bits_a = detail::rasterize(a, a.min(), h, n + 1);
  const auto bits_b = detail::rasterize(b, b.min(), h, n + 1);

  std::vector<std::uint64_t> sum(bits_a.size() + bits_b.size() + 1, 0);
  for (std::size_t w = 0; w < bits_a.size(); ++w) {
    std::uint64_t bitsw = bits_a[w];
    while (bitsw != 0) {
      const int tz = std::countr_zero(bitsw);
      bitsw &= bitsw - 1;
      detail::or_shifted(sum, bits_b, 64 * w + static_cast<std::size_t>(tz));
    }
  }
  // Each marked pair (i, j) covers two cells of the sum grid: i+j and i+j+1.
  std::vector<std::uint64_t> covered(sum.size() + 1, 0);
  for (std::size_t i = 0; i < sum.size(); ++i) covered[i] |= sum[i];
  detail::or_shifted(covered, sum, 1);

  std::uint64_t count = 0;
  for (std::uint64_t w : covered) count += static_cast<std::uint64_t>(std::popcount(w));
  return Rational(count) * h;
}

}  // namespace sumvol

#endif  // SUMVOL_INTERVAL_UNION_HPP
