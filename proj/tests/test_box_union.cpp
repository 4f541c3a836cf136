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

#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "sumvol/box_union.hpp"

using namespace sumvol;

namespace {

Box box2(const char* xlo, const char* xhi, const char* ylo, const char* yhi) {
  return {AxisRange{parse_rational(xlo), parse_rational(xhi)},
          AxisRange{parse_rational(ylo), parse_rational(yhi)}};
}

}  // namespace

TEST_CASE("box sums distribute over unions", "[box_sets]") {
  const auto unit = BoxUnion::cube(2, Rational(0), Rational(1));
  CHECK(box_minkowski_sum(unit, unit) == BoxUnion::cube(2, Rational(0), Rational(2)));

  // Two flat boxes summing to the solid square.
  const auto horizontal = BoxUnion::from_boxes(2, {box2("0", "1", "0", "0")});
  const auto vertical = BoxUnion::from_boxes(2, {box2("0", "0", "0", "1")});
  const auto sum = box_minkowski_sum(horizontal, vertical);
  CHECK(union_volume(sum) == 1);
  CHECK(sum == BoxUnion::from_boxes(2, {box2("0", "1", "0", "1")}));

  const auto two = BoxUnion::from_boxes(2, {box2("0", "1", "0", "1"), box2("2", "3", "0", "1")});
  const auto spread = box_minkowski_sum(two, unit);
  CHECK(spread.box_count() == 2);
  CHECK(union_volume(spread) == 8);
  CHECK_THROWS_AS(box_minkowski_sum(unit, BoxUnion::cube(3, Rational(0), Rational(1))),
                  input_error);
}

TEST_CASE("union volume by coordinate compression", "[box_sets]") {
  CHECK(union_volume(BoxUnion::cube(2, Rational(0), Rational(1))) == 1);
  const auto overlapping =
      BoxUnion::from_boxes(2, {box2("0", "1", "0", "1"), box2("1/2", "3/2", "0", "1")});
  CHECK(union_volume(overlapping) == parse_rational("3/2"));
  CHECK(union_volume(BoxUnion::from_boxes(2, {box2("0", "1", "0", "0")})) == 0);
  CHECK(union_volume(BoxUnion(2)) == 0);
}

TEST_CASE("slab truncation clips the first axis", "[box_sets]") {
  const auto big = BoxUnion::cube(2, Rational(0), Rational(2));
  const auto clipped = slab_truncate(big, Rational(0), Rational(1));
  CHECK(clipped == BoxUnion::from_boxes(2, {box2("0", "1", "0", "2")}));
  CHECK(union_volume(clipped) == 2);

  CHECK(slab_truncate(BoxUnion::cube(2, Rational(0), Rational(1)), Rational(2), Rational(3)).empty());

  const auto two = BoxUnion::from_boxes(2, {box2("0", "1", "0", "1"), box2("2", "3", "0", "1")});
  const auto mid = slab_truncate(two, parse_rational("1/2"), parse_rational("5/2"));
  CHECK(mid == BoxUnion::from_boxes(2, {box2("1/2", "1", "0", "1"), box2("2", "5/2", "0", "1")}));
  CHECK(union_volume(mid) == 1);
  CHECK_THROWS_AS(slab_truncate(big, Rational(2), Rational(1)), input_error);
}

TEST_CASE("compression agrees with inclusion-exclusion on random unions", "[box_sets][property]") {
  testing::Rng rng(0x5eed0005);
  for (int trial = 0; trial < 120; ++trial) {
    const int dim = 2 + static_cast<int>(trial % 2);
    const auto a = testing::random_box_union(rng, dim, 3);
    CHECK(union_volume(a) == testing::union_volume_by_inclusion_exclusion(a));
  }
}

TEST_CASE("box-union sums against a rasterized spot check", "[box_sets][property]") {
  // Coarse d-dimensional rasterization of the sum's own box list; the cells
  // over-cover each box by at most one cell per face.
  testing::Rng rng(0x5eed0006);
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = trial < 6 ? 2 : 3;
    const auto a = testing::random_box_union(rng, dim, 2);
    const auto b = testing::random_box_union(rng, dim, 2);
    const auto sum = box_minkowski_sum(a, b);
    const Rational exact = union_volume(sum);

    const int n = 64;
    Rational lo_corner(0), hi_corner(0);
    std::vector<Rational> lo(static_cast<std::size_t>(dim)), hi(static_cast<std::size_t>(dim));
    for (int ax = 0; ax < dim; ++ax) {
      lo[ax] = sum.boxes()[0][ax].lo;
      hi[ax] = sum.boxes()[0][ax].hi;
      for (const auto& box : sum.boxes()) {
        lo[ax] = std::min(lo[ax], box[ax].lo);
        hi[ax] = std::max(hi[ax], box[ax].hi);
      }
    }
    std::vector<std::size_t> cells(static_cast<std::size_t>(dim));
    std::vector<Rational> step(static_cast<std::size_t>(dim));
    std::size_t total_cells = 1;
    bool degenerate = false;
    for (int ax = 0; ax < dim; ++ax) {
      if (hi[ax] == lo[ax]) degenerate = true;
      cells[ax] = n;
      step[ax] = (hi[ax] - lo[ax]) / n;
      total_cells *= n;
    }
    if (degenerate) {
      CHECK(exact == 0);
      continue;
    }
    std::size_t covered = 0;
    std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
    for (std::size_t flat = 0; flat < total_cells; ++flat) {
      // Cell [lo + i*step, lo + (i+1)*step) meets a box iff intervals overlap.
      bool hit = false;
      for (const auto& box : sum.boxes()) {
        bool inside = true;
        std::size_t rem = flat;
        for (int ax = dim - 1; ax >= 0; --ax) {
          const std::size_t i = rem % n;
          rem /= n;
          const Rational cell_lo = lo[ax] + step[ax] * static_cast<long>(i);
          const Rational cell_hi = cell_lo + step[ax];
          if (box[ax].lo >= cell_hi || box[ax].hi <= cell_lo) {
            inside = false;
            break;
          }
        }
        if (inside) {
          hit = true;
          break;
        }
      }
      if (hit) ++covered;
    }
    Rational cell_volume(1);
    for (int ax = 0; ax < dim; ++ax) cell_volume *= step[ax];
    const Rational estimate = cell_volume * static_cast<long>(covered);
    // Over-cover bound: each box gains at most one cell along each face.
    Rational bound(0);
    for (const auto& box : sum.boxes()) {
      Rational per_box(0);
      for (int ax = 0; ax < dim; ++ax) {
        Rational face(2);
        for (int other = 0; other < dim; ++other)
          if (other != ax) face *= (box[other].hi - box[other].lo) + 2 * step[other];
        per_box += face * step[ax];
      }
      bound += per_box;
    }
    CHECK(estimate >= exact);
    CHECK(estimate - exact <= bound);
  }
}

TEST_CASE("d-dimensional Brunn-Minkowski in floating point", "[box_sets][property]") {
  testing::Rng rng(0x5eed0007);
  for (int trial = 0; trial < 60; ++trial) {
    const int dim = 2 + static_cast<int>(trial % 2);
    const auto a = testing::random_box_union(rng, dim, 2);
    const auto b = testing::random_box_union(rng, dim, 2);
    const double va = union_volume(a).convert_to<double>();
    const double vb = union_volume(b).convert_to<double>();
    const double vs = union_volume(box_minkowski_sum(a, b)).convert_to<double>();
    const double inv = 1.0 / dim;
    CHECK(std::pow(vs, inv) + 1e-9 >= std::pow(va, inv) + std::pow(vb, inv));
  }
}

TEST_CASE("slab additivity over a partition of the axis", "[box_sets][property]") {
  testing::Rng rng(0x5eed0008);
  for (int trial = 0; trial < 60; ++trial) {
    const int dim = 2 + static_cast<int>(trial % 2);
    const auto a = testing::random_box_union(rng, dim, 3);
    const Rational lo = a.pi_min();
    const Rational hi = a.pi_max();
    // Cuts at random points plus the extremes; consecutive half-open slabs
    // (t_i, t_{i+1}] tile (lo, hi], and the face at lo is Lebesgue-null.
    std::vector<Rational> cuts{lo, hi};
    for (int i = 0; i < 3; ++i) cuts.push_back(testing::random_rational(rng, -4, 7, 2));
    std::sort(cuts.begin(), cuts.end());
    Rational covered(0);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      covered += union_volume(slab_truncate(a, cuts[i], cuts[i + 1]));
    CHECK(covered == union_volume(a));
  }
}

TEST_CASE("extreme points along the slab coordinate", "[box_sets]") {
  const auto two = BoxUnion::from_boxes(
      2, {box2("0", "1", "2", "3"), box2("5", "6", "0", "1")});
  CHECK(two.pi_min() == 0);
  CHECK(two.pi_max() == 6);
  CHECK(two.min_pi_point() == std::vector<Rational>{Rational(0), Rational(2)});
  CHECK(two.max_pi_point() == std::vector<Rational>{Rational(6), Rational(1)});
  CHECK(two.pi_min(1) == 0);
  CHECK(two.pi_max(1) == 3);
}
