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

// Integration acceptance suite: one pass/fail line per criterion, nonzero
// exit if anything fails. Everything except the d-th-root comparisons runs
// in exact rational arithmetic.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "sumvol/sumvol.hpp"

using namespace sumvol;
using sumvol::testing::Rng;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, const std::function<bool()>& body) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note = std::string(" (") + e.what() + ")";
  }
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
          .count();
  std::printf("criterion %2d: %s  %s [%lld ms]%s\n", number, ok ? "PASS" : "FAIL", label.c_str(),
              static_cast<long long>(ms), note.c_str());
  if (!ok) ++failures;
}

IntervalUnion iu(std::initializer_list<std::pair<const char*, const char*>> parts) {
  std::vector<IntervalUnion::Interval> raw;
  for (const auto& [lo, hi] : parts) raw.push_back({parse_rational(lo), parse_rational(hi)});
  return IntervalUnion::from_intervals(std::move(raw));
}

std::vector<IntervalUnion> nu_fixture_tuple() {
  return {iu({{"0", "0"}, {"1", "1"}}), iu({{"0", "1"}}), iu({{"0", "1"}})};
}

const std::vector<FractionalPartition>& extremes(int m) {
  static std::map<int, std::vector<FractionalPartition>> cache;
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, extreme_partitions(m)).first;
  return it->second;
}

bool criterion1() {
  const auto bumps = iu({{"0", "1/2"}, {"1", "3/2"}});
  const auto cert = certify_1d({bumps, bumps, bumps}, leave_one_out(3));
  return cert.fractional_lhs == parse_rational("9/2") &&
         cert.fractional_rhs == parse_rational("9/2") && cert.slack == 0 &&
         cert.equality_condition == true;
}

bool criterion2() {
  const auto nu = nu_vector(nu_fixture_tuple());
  const SubsetMask ab = parse_mask("[1,2]", 3), ac = parse_mask("[1,3]", 3);
  const bool values_ok = nu.values[full_mask(3)] + nu.values[parse_mask("[1]", 3)] == 3 &&
                         nu.values[ab] + nu.values[ac] == 4;
  const auto sm = is_supermodular(nu.as_set_function());
  const bool witness_ok = !sm.supermodular && sm.s == ab && sm.t == ac && sm.lhs == 3 && sm.rhs == 4;
  return values_ok && witness_ok && fsa_check_core(nu.as_set_function()).fsa;
}

bool criterion3() {
  const auto report = counterexample_supermodularity_cubes(3, 2);
  const auto& nu = report.nu.values;
  return nu[full_mask(3)] == 25 && nu[parse_mask("[1]", 3)] == 0 &&
         nu[parse_mask("[1,2]", 3)] == 16 && nu[parse_mask("[1,3]", 3)] == 16 &&
         report.lhs == 25 && report.rhs == 32 && report.lhs < report.rhs;
}

bool criterion4() {
  std::map<SubsetMask, Rational> thirds;
  const std::vector<SubsetMask> sets{parse_mask("[2,3]", 5), parse_mask("[1,2,4]", 5),
                                     parse_mask("[1,2,4,5]", 5), parse_mask("[1,3,5]", 5),
                                     parse_mask("[3,4,5]", 5)};
  for (SubsetMask s : sets) thirds[s] = parse_rational("1/3");
  // Expansion clears denominators to q = 3 and keeps the same five sets
  // (in ascending mask order, which is what the expansion promises).
  const auto expanded = to_regular_cover(validate_partition(thirds, full_mask(5), 5));
  auto sorted_sets = sets;
  std::sort(sorted_sets.begin(), sorted_sets.end());
  if (expanded.q != 3 || expanded.sets != sorted_sets) return false;
  // The h tables are pinned to the published order of the five sets; certify
  // accepts the explicit order directly.
  const RegularCover cover{5, full_mask(5), 3, sets};

  const auto h = cover_functions(cover);
  const int expect_h1[] = {2, 1, 1, 2, 3};
  const int expect_h2[] = {3, 2, 4, 3, 4};
  const int expect_h3[] = {4, 3, 5, 5, 5};
  for (int i = 1; i <= 5; ++i) {
    if (h.h(1, i) != expect_h1[i - 1]) return false;
    if (h.h(2, i) != expect_h2[i - 1]) return false;
    if (h.h(3, i) != expect_h3[i - 1]) return false;
  }

  const auto unit = iu({{"0", "1"}});
  const auto cert = certify_1d({unit, unit, unit, unit, unit}, cover);
  return cert.lhs == 15 && cert.rhs == 15 && cert.slack == 0;
}

bool criterion5() {
  Rng rng(0xacce5501);
  const int plan[][2] = {{2, 100}, {3, 175}, {4, 175}, {5, 50}};  // 500 tuples
  for (const auto& [m, count] : plan) {
    for (int trial = 0; trial < count; ++trial) {
      std::vector<IntervalUnion> tuple;
      for (int i = 0; i < m; ++i) tuple.push_back(testing::random_interval_union(rng, 4));
      const auto table = subset_sums_1d(tuple);
      for (const auto& partition : extremes(m)) {
        const auto cert = certify_1d(tuple, partition, 1, &table);
        if (cert.slack < 0) return false;
        if (cert.equality_condition == true && cert.slack != 0) return false;
      }
    }
  }
  return true;
}

bool criterion6() {
  Rng rng(0xacce5502);
  std::uniform_int_distribution<int> dim(2, 4);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = dim(rng);
    std::vector<IntegerSet> tuple;
    for (int i = 0; i < m; ++i) tuple.push_back(testing::random_integer_set(rng));
    const auto& pool = extremes(m);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    const auto cert = certify_int(tuple, pool[pick(rng)]);
    if (cert.slack < 0) return false;
    if (cert.equality_condition == true && cert.slack != 0) return false;
  }
  // Constructed arithmetic-progression sub-suite: common increment, slack 0.
  std::uniform_int_distribution<int> rho_pick(1, 5), len_pick(1, 4), start_pick(-6, 6);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = dim(rng);
    const Integer rho(rho_pick(rng));
    std::vector<IntegerSet> tuple;
    for (int i = 0; i < m; ++i) {
      std::vector<Integer> elems;
      const Integer start(start_pick(rng));
      const int len = len_pick(rng);
      for (int t = 0; t <= len; ++t) elems.push_back(start + rho * t);
      tuple.push_back(IntegerSet::from_elements(std::move(elems)));
    }
    const auto& pool = extremes(m);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    const auto cert = certify_int(tuple, pool[pick(rng)]);
    if (cert.equality_condition != true || cert.slack != 0) return false;
    if (!cert.common_increment || *cert.common_increment != rho) return false;
  }
  return true;
}

bool criterion7() {
  Rng rng(0xacce5503);
  const int plan[][2] = {{2, 100}, {3, 50}};  // dimension -> instances
  for (const auto& [dim, count] : plan) {
    for (int trial = 0; trial < count; ++trial) {
      const int m = 2 + static_cast<int>(trial % 2);
      std::vector<BoxUnion> tuple;
      for (int i = 0; i < m; ++i) tuple.push_back(testing::random_box_union(rng, dim, 2));
      const auto& pool = extremes(m);
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      const auto cert = certify_boxes(tuple, pool[pick(rng)]);
      if (cert.slack < 0) return false;
    }
  }
  return true;
}

bool criterion8() {
  Rng rng(0xacce5504);
  std::uniform_int_distribution<int> dim(2, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = dim(rng);
    SetFunction v = SetFunction::zero(m);
    for (SubsetMask s = 1; s <= full_mask(m); ++s)
      v.at(s) = testing::random_nonneg_rational(rng, 12, 4);
    const auto core = fsa_check_core(v);
    const auto by_enum = fsa_check_enum(v);
    if (core.fsa != by_enum.fsa) return false;
    if (!core.fsa) {
      bool found_violation = false;
      for (const auto& sub : core.subgames) {
        if (sub.balanced) continue;
        Rational value(0);
        for (const auto& [mask, beta] : sub.violating.weights) value += beta * v.at(mask);
        if (value <= v.at(sub.ground)) return false;
        found_violation = true;
      }
      if (!found_violation) return false;
    }
  }
  return true;
}

bool criterion9() {
  const auto nu = nu_vector(nu_fixture_tuple()).as_set_function();
  for (SubsetMask t = 0; t <= full_mask(3); ++t) {
    std::vector<Rational> x(3, Rational(0));
    for (int i = 1; i <= 3; ++i)
      if (mask_contains(t, i)) x[static_cast<std::size_t>(i) - 1] = 1;
    if (concave_extension_eval(nu, x) != nu.at(t)) return false;
  }
  Rng rng(0xacce5505);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> x, y;
    for (int i = 0; i < 3; ++i) {
      x.push_back(testing::random_nonneg_rational(rng, 6, 3));
      y.push_back(testing::random_nonneg_rational(rng, 6, 3));
    }
    const Rational lambda = testing::random_nonneg_rational(rng, 5, 3) + parse_rational("1/9");
    std::vector<Rational> lx, mid;
    for (int i = 0; i < 3; ++i) {
      lx.push_back(lambda * x[static_cast<std::size_t>(i)]);
      mid.push_back((x[static_cast<std::size_t>(i)] + y[static_cast<std::size_t>(i)]) / 2);
    }
    if (concave_extension_eval(nu, lx) != lambda * concave_extension_eval(nu, x)) return false;
    if (concave_extension_eval(nu, mid) * 2 <
        concave_extension_eval(nu, x) + concave_extension_eval(nu, y))
      return false;
  }
  SetFunction bad = SetFunction::zero(3);
  for (SubsetMask s = 1; s <= full_mask(3); ++s)
    bad.at(s) = mask_size(s) == 1 ? parse_rational("1/2")
                                  : (mask_size(s) == 2 ? parse_rational("5/2") : Rational(3));
  const Rational grand = concave_extension_eval(bad, {Rational(1), Rational(1), Rational(1)});
  return grand == parse_rational("15/4") && grand > bad.at(full_mask(3));
}

bool criterion10() {
  Rng rng(0xacce5506);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + static_cast<int>(trial % 3);
    Rational alpha = testing::random_nonneg_rational(rng, 4, 2);
    Rational beta = testing::random_nonneg_rational(rng, 4, 2);
    if (alpha == 0 && beta == 0 && d == 1) alpha = Rational(1) / 2;
    Rational c = rational_pow(alpha + beta, d) + testing::random_nonneg_rational(rng, 8, 2);
    if (alpha == 0 && beta == 0 && c == 0) c = 1;
    const auto [a1, a2] = realize_two(alpha, beta, c, d);
    if (union_volume(a1) != rational_pow(alpha, d)) return false;
    if (union_volume(a2) != rational_pow(beta, d)) return false;
    if (union_volume(box_minkowski_sum(a1, a2)) != c) return false;
  }
  return true;
}

bool criterion11() {
  Rng rng(0xacce5507);
  for (int trial = 0; trial < 50; ++trial) {  // polygon x 1-D mixed factors
    const int m = 2 + static_cast<int>(trial % 2);
    ProductTuple tuple;
    tuple.M = m;
    for (int i = 0; i < m; ++i)
      tuple.factors.push_back({ProductFactor(testing::random_polygon(rng, 6)),
                               ProductFactor(testing::random_interval_union(rng, 3))});
    const auto& pool = extremes(m);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    if (!verify_product(tuple, pool[pick(rng)]).holds) return false;
  }
  for (int trial = 0; trial < 50; ++trial) {  // all factors convex
    const int m = 2 + static_cast<int>(trial % 2);
    ProductTuple tuple;
    tuple.M = m;
    for (int i = 0; i < m; ++i)
      tuple.factors.push_back({ProductFactor(testing::random_polygon(rng, 6)),
                               ProductFactor(testing::random_box_union(rng, 2, 1))});
    const auto& pool = extremes(m);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    if (!verify_product(tuple, pool[pick(rng)]).holds) return false;
  }
  return true;
}

bool criterion12() {
  Rng rng(0xacce5508);
  const std::uint32_t n = 1 << 14;
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = testing::random_interval_union(rng, 4);
    const auto b = testing::random_interval_union(rng, 4);
    const auto exact = minkowski_sum(a, b);
    const Rational est = grid_oracle(a, b, n);
    if (est < exact.measure()) return false;
    const Rational span = exact.max() - exact.min();
    const Rational bound =
        Rational(4) * span * static_cast<long>(a.intervals().size() * b.intervals().size()) / n;
    if (est - exact.measure() > bound) return false;
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "equality fixture: leave-one-out on [0,1/2] u [1,3/2] gives 9/2 = 9/2", criterion1);
  criterion(2, "supermodularity counterexample: 3 < 4, witness ([1,2],[1,3]), still FSA",
            criterion2);
  criterion(3, "cube counterexample at k=3, d=2: 25 < 32 via box-union volumes", criterion3);
  criterion(4, "five-set 3-regular cover: q, h tables, and 15 = 15 with unit intervals",
            criterion4);
  criterion(5, "1-D certificates: 500 random tuples x every extreme partition", criterion5);
  criterion(6, "integer certificates: 500 random tuples + 50 arithmetic progressions",
            criterion6);
  criterion(7, "box certificates: 100 random tuples in d=2 and 50 in d=3", criterion7);
  criterion(8, "Bondareva-Shapley cross-validation on 200 random set functions", criterion8);
  criterion(9, "concave extension: indicators, homogeneity, midpoint concavity, 15/4 > 3",
            criterion9);
  criterion(10, "realizations: 100 random (alpha, beta, c) in d = 1, 2, 3", criterion10);
  criterion(11, "product/Hoelder: 50 mixed + 50 all-convex instances within 1e-9", criterion11);
  criterion(12, "grid oracle agreement at N = 2^14 on 200 random sums", criterion12);
  if (failures != 0) std::printf("%d criterion(s) FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
