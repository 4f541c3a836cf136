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

#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "sumvol/region.hpp"

using namespace sumvol;

namespace {

IntervalUnion iu(std::initializer_list<std::pair<const char*, const char*>> parts) {
  std::vector<IntervalUnion::Interval> raw;
  for (const auto& [lo, hi] : parts) raw.push_back({parse_rational(lo), parse_rational(hi)});
  return IntervalUnion::from_intervals(std::move(raw));
}

std::vector<IntervalUnion> nu_fixture_tuple() {
  return {iu({{"0", "0"}, {"1", "1"}}), iu({{"0", "1"}}), iu({{"0", "1"}})};
}

}  // namespace

TEST_CASE("nu vectors of the named tuples", "[region]") {
  const auto nu = nu_vector(nu_fixture_tuple());
  CHECK(nu.values ==
        std::vector<Rational>{Rational(0), Rational(0), Rational(1), Rational(2), Rational(1),
                              Rational(2), Rational(2), Rational(3)});

  const std::vector<IntervalUnion> points{iu({{"2", "2"}}), iu({{"-3", "-3"}}), iu({{"0", "0"}})};
  for (const auto& v : nu_vector(points).values) CHECK(v == 0);

  const std::vector<IntervalUnion> units{iu({{"0", "1"}}), iu({{"0", "1"}}), iu({{"0", "1"}})};
  const auto cube_nu = nu_vector(units);
  for (SubsetMask s = 0; s <= full_mask(3); ++s) CHECK(cube_nu.values[s] == mask_size(s));
}

TEST_CASE("direct FSA verification", "[region]") {
  const auto bumps = iu({{"0", "1/2"}, {"1", "3/2"}});
  const auto equality = verify_fsa({bumps, bumps, bumps}, leave_one_out(3));
  CHECK(equality.slack == 0);
  CHECK(equality.equality_condition_met);

  const auto fixture = verify_fsa(nu_fixture_tuple(), leave_one_out(3));
  CHECK(fixture.lhs == 3);
  CHECK(fixture.rhs == 3);
  CHECK(fixture.slack == 0);
}

TEST_CASE("FSA holds for random tuples against every extreme partition", "[region][property]") {
  testing::Rng rng(0x5eed0015);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 2 + static_cast<int>(trial % 3);
    std::vector<IntervalUnion> tuple;
    for (int i = 0; i < m; ++i) tuple.push_back(testing::random_interval_union(rng, 3));
    const auto nu = nu_vector(tuple);
    for (const auto& p : extreme_partitions(m)) CHECK(verify_fsa(nu, p).slack >= 0);
  }
}

TEST_CASE("realizations of two-set volume triples", "[region]") {
  // d = 1, alpha = beta = 1, c = 3: A2 = [-1,0] u {1}.
  const auto [a1, a2] = realize_two(Rational(1), Rational(1), Rational(3), 1);
  CHECK(union_volume(a1) == 1);
  CHECK(union_volume(a2) == 1);
  CHECK(union_volume(box_minkowski_sum(a1, a2)) == 3);

  const auto [b1, b2] = realize_two(Rational(1), Rational(0), Rational(2), 2);
  CHECK(union_volume(b1) == 1);
  CHECK(union_volume(b2) == 0);
  CHECK(union_volume(box_minkowski_sum(b1, b2)) == 2);

  const auto [c1, c2] = realize_two(Rational(0), Rational(0), Rational(1), 2);
  CHECK(union_volume(c1) == 0);
  CHECK(union_volume(c2) == 0);
  CHECK(union_volume(box_minkowski_sum(c1, c2)) == 1);

  CHECK_THROWS_AS(realize_two(Rational(1), Rational(1), Rational(1), 1), input_error);
  CHECK_THROWS_AS(realize_two(Rational(0), Rational(0), Rational(1), 1), input_error);
}

TEST_CASE("realizations hit the requested volumes exactly", "[region][property]") {
  testing::Rng rng(0x5eed0016);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + static_cast<int>(trial % 3);
    Rational alpha = testing::random_nonneg_rational(rng, 4, 2);
    Rational beta = testing::random_nonneg_rational(rng, 4, 2);
    if (alpha == 0 && beta == 0 && d == 1) alpha = 1;
    const Rational c = rational_pow(alpha + beta, d) + testing::random_nonneg_rational(rng, 9, 2);
    if (alpha == 0 && beta == 0 && c == 0) continue;
    const auto [a1, a2] = realize_two(alpha, beta, c, d);
    CHECK(union_volume(a1) == rational_pow(alpha, d));
    CHECK(union_volume(a2) == rational_pow(beta, d));
    CHECK(union_volume(box_minkowski_sum(a1, a2)) == c);
  }
}

TEST_CASE("cone and permutation invariance of the nu vector", "[region][property]") {
  testing::Rng rng(0x5eed0017);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + static_cast<int>(trial % 3);
    std::vector<IntervalUnion> tuple;
    for (int i = 0; i < m; ++i) tuple.push_back(testing::random_interval_union(rng, 3));
    const auto nu = nu_vector(tuple);

    // Scaling every summand by lambda scales every entry by lambda (d = 1).
    const Rational lambda = testing::random_nonneg_rational(rng, 5, 3) + parse_rational("1/5");
    std::vector<IntervalUnion> scaled;
    for (const auto& a : tuple) scaled.push_back(translate_scale(a, Rational(0), lambda));
    const auto nu_scaled = nu_vector(scaled);
    for (SubsetMask s = 0; s <= full_mask(m); ++s)
      CHECK(nu_scaled.values[s] == lambda * nu.values[s]);

    // Permutation equivariance: nu_{pi(A)}(S) = nu_A(pi^{-1}(S)).
    std::vector<int> perm(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<IntervalUnion> permuted;
    for (int i = 0; i < m; ++i) permuted.push_back(tuple[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
    const auto nu_perm = nu_vector(permuted);
    for (SubsetMask s = 0; s <= full_mask(m); ++s) {
      SubsetMask preimage = 0;
      for (int i = 1; i <= m; ++i)
        if (mask_contains(s, i)) preimage |= element_mask(perm[static_cast<std::size_t>(i) - 1] + 1);
      CHECK(nu_perm.values[s] == nu.values[preimage]);
    }

    // Every nu vector is FSA (Theorem-backed) though not always supermodular.
    CHECK(fsa_check_core(nu.as_set_function()).fsa);
  }
}

TEST_CASE("d-dimensional cone property under scaling", "[region][property]") {
  testing::Rng rng(0x5eed0018);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2;
    std::vector<BoxUnion> tuple;
    for (int i = 0; i < 3; ++i) tuple.push_back(testing::random_box_union(rng, dim, 2));
    const auto nu = nu_vector(tuple);
    const Rational lambda(1 + static_cast<int>(trial % 3));
    std::vector<BoxUnion> scaled;
    for (const auto& a : tuple) {
      std::vector<Box> boxes = a.boxes();
      for (auto& box : boxes)
        for (auto& side : box) {
          side.lo *= lambda;
          side.hi *= lambda;
        }
      scaled.push_back(BoxUnion::from_boxes(dim, std::move(boxes)));
    }
    const auto nu_scaled = nu_vector(scaled);
    const Rational factor = rational_pow(lambda, dim);
    for (SubsetMask s = 0; s <= full_mask(3); ++s)
      CHECK(nu_scaled.values[s] == factor * nu.values[s]);
  }
}

TEST_CASE("product verification", "[region]") {
  // All factors unit squares: equality in the convex fractional inequality.
  ProductTuple squares;
  squares.M = 3;
  for (int i = 0; i < 3; ++i)
    squares.factors.push_back({ProductFactor(BoxUnion::cube(2, Rational(0), Rational(1)))});
  const auto report = verify_product(squares, leave_one_out(3));
  CHECK(report.total_dim == 2);
  CHECK(report.holds);
  CHECK(std::abs(report.lhs - 3.0) < 1e-9);
  CHECK(std::abs(report.rhs - 3.0) < 1e-9);

  // Polygon x 1-D factor per index.
  ProductTuple mixed;
  mixed.M = 3;
  const auto tri = ConvexPolygon::from_points(
      {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
  const auto gappy = iu({{"0", "0"}, {"1", "2"}});
  for (int i = 0; i < 3; ++i)
    mixed.factors.push_back({ProductFactor(tri), ProductFactor(gappy)});
  const auto mixed_report = verify_product(mixed, leave_one_out(3));
  CHECK(mixed_report.total_dim == 3);
  CHECK(mixed_report.holds);

  // A single 1-D factor degenerates to the plain FSA check.
  ProductTuple single;
  single.M = 3;
  for (int i = 0; i < 3; ++i) single.factors.push_back({ProductFactor(gappy)});
  const auto single_report = verify_product(single, leave_one_out(3));
  CHECK(single_report.total_dim == 1);
  CHECK(single_report.holds);
  const auto direct = verify_fsa({gappy, gappy, gappy}, leave_one_out(3));
  CHECK(std::abs(single_report.lhs - direct.lhs.convert_to<double>()) < 1e-12);

  // Signature mismatches are rejected.
  ProductTuple ragged = mixed;
  ragged.factors[2] = {ProductFactor(tri)};
  CHECK_THROWS_AS(verify_product(ragged, leave_one_out(3)), input_error);
}

TEST_CASE("counterexamples evaluate to the published comparisons", "[region]") {
  const auto one_d = counterexample_supermodularity_1d();
  CHECK(one_d.lhs == 3);
  CHECK(one_d.rhs == 4);
  CHECK(!is_supermodular(one_d.nu.as_set_function()).supermodular);
  CHECK(fsa_check_core(one_d.nu.as_set_function()).fsa);

  const auto cubes = counterexample_supermodularity_cubes(3, 2);
  CHECK(cubes.lhs == 25);
  CHECK(cubes.rhs == 32);
  CHECK(cubes.nu.values[parse_mask("[1]", 3)] == 0);
  CHECK(cubes.nu.values[parse_mask("[1,2]", 3)] == 16);
  CHECK(cubes.nu.values[full_mask(3)] == 25);

  // In d = 1 the same lattice-vs-cube shape stays supermodular for k = 1
  // (3 = |A+B+C| + |A| vs 4 = |A+B| + |A+C| needs the gap), so only check
  // parameter validation here.
  CHECK_THROWS_AS(counterexample_supermodularity_cubes(0, 2), input_error);

  const auto [alpha, beta] = alpha_beta_fixtures(4);
  CHECK(alpha.at(full_mask(4)) == 4);
  CHECK(beta.at(full_mask(4)) == 5);
  for (SubsetMask s = 1; s < full_mask(4); ++s) CHECK(alpha.at(s) == beta.at(s));
}
