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

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "sumvol/integer_set.hpp"

using namespace sumvol;

namespace {

IntegerSet zs(std::initializer_list<long> values) {
  std::vector<Integer> raw;
  for (long v : values) raw.push_back(Integer(v));
  return IntegerSet::from_elements(std::move(raw));
}

}  // namespace

TEST_CASE("sumsets deduplicate and sort", "[integer_sets]") {
  CHECK(sumset(zs({0, 1}), zs({0, 1})) == zs({0, 1, 2}));
  CHECK(sumset(zs({0, 2}), zs({0, 3})) == zs({0, 2, 3, 5}));
  CHECK(sumset(zs({0, 1, 2}), zs({0, 5})) == zs({0, 1, 2, 5, 6, 7}));
  CHECK_THROWS_AS(sumset(IntegerSet{}, zs({0})), input_error);
}

TEST_CASE("cardinality", "[integer_sets]") {
  CHECK(zs({0, 1, 2}).cardinality() == 3);
  CHECK(zs({7}).cardinality() == 1);
  CHECK(sumset(zs({0, 2}), zs({0, 3})).cardinality() == 4);
}

TEST_CASE("arithmetic progression detection", "[integer_sets]") {
  CHECK(arithmetic_progression_increment(zs({0, 2, 4})) == Integer(2));
  CHECK(!arithmetic_progression_increment(zs({0, 1, 3})).has_value());
  // Singleton convention: a degenerate progression of every increment.
  CHECK(arithmetic_progression_increment(zs({5})) == Integer(0));
  CHECK(arithmetic_progression_increment(zs({3, 10})) == Integer(7));
}

TEST_CASE("half-open truncation over the integers", "[integer_sets]") {
  CHECK(truncate(zs({0, 1, 2, 3}), Integer(0), Integer(2)) == zs({1, 2}));
  CHECK(truncate(zs({0, 5}), Integer(5), Integer(9)).empty());
  CHECK_THROWS_AS(truncate(zs({0}), Integer(3), Integer(1)), input_error);
}

TEST_CASE("sumset properties on random sets", "[integer_sets][property]") {
  testing::Rng rng(0x5eed0004);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = testing::random_integer_set(rng);
    const auto b = testing::random_integer_set(rng);
    const auto ab = sumset(a, b);
    // Cauchy-Davenport-style superadditivity over Z.
    CHECK(ab.cardinality() + 1 >= a.cardinality() + b.cardinality());
    CHECK(ab.min() == a.min() + b.min());
    CHECK(ab.max() == a.max() + b.max());
    CHECK(ab == sumset(b, a));
  }
}
