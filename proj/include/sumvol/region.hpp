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

#ifndef SUMVOL_REGION_HPP
#define SUMVOL_REGION_HPP

#include <cmath>
#include <optional>
#include <variant>
#include <vector>

#include "sumvol/box_union.hpp"
#include "sumvol/decomposition.hpp"
#include "sumvol/integer_set.hpp"
#include "sumvol/interval_union.hpp"
#include "sumvol/partition.hpp"
#include "sumvol/polygon.hpp"
#include "sumvol/rational.hpp"
#include "sumvol/set_function.hpp"
#include "sumvol/subset.hpp"

namespace sumvol {

/// The set function nu_A(S) = |sum_{i in S} A_i| of a tuple, indexed by mask;
/// dim 0 marks the integer (cardinality) kind.
struct NuVector {
  int M = 0;
  int dim = 1;
  std::vector<Rational> values;  // size 1 << M, values[0] = 0

  SetFunction as_set_function() const { return {M, values}; }
};

inline NuVector nu_vector(const std::vector<IntervalUnion>& tuple) {
  NuVector nu{static_cast<int>(tuple.size()), 1, {}};
  const auto sums = subset_sums_1d(tuple);
  nu.values.assign(sums.size(), Rational(0));
  for (SubsetMask mask = 1; mask < sums.size(); ++mask) nu.values[mask] = sums[mask].measure();
  return nu;
}

inline NuVector nu_vector(const std::vector<BoxUnion>& tuple) {
  NuVector nu{static_cast<int>(tuple.size()), tuple.empty() ? 1 : tuple.front().dim(), {}};
  const auto sums = subset_sums_boxes(tuple);
  nu.values.assign(sums.size(), Rational(0));
  for (SubsetMask mask = 1; mask < sums.size(); ++mask) nu.values[mask] = union_volume(sums[mask]);
  return nu;
}

/// Integer kind: cardinalities rather than volumes.
inline NuVector nu_vector(const std::vector<IntegerSet>& tuple) {
  NuVector nu{static_cast<int>(tuple.size()), 0, {}};
  const auto sums = subset_sums_int(tuple);
  nu.values.assign(sums.size(), Rational(0));
  for (SubsetMask mask = 1; mask < sums.size(); ++mask)
    nu.values[mask] = Rational(static_cast<long>(sums[mask].cardinality()));
  return nu;
}

struct FsaVerifyReport {
  Rational lhs, rhs, slack;
  bool equality_condition_met = false;
};

/// Direct (certificate-free) evaluation of |sum_{[M]} A| >= sum beta_S
/// |sum_S A| from a nu table. In d = 1 this is also the d-th-root form of the
/// fractional inequality, the two being identical there.
inline FsaVerifyReport verify_fsa(const NuVector& nu, const FractionalPartition& p) {
  if (p.M != nu.M || p.ground != full_mask(nu.M))
    throw input_error("partition must cover the full tuple ground set");
  FsaVerifyReport report;
  report.lhs = nu.values[full_mask(nu.M)];
  report.rhs = 0;
  for (const auto& [mask, beta] : p.weights) report.rhs += beta * nu.values[mask];
  report.slack = report.lhs - report.rhs;
  return report;
}

inline FsaVerifyReport verify_fsa(const std::vector<IntervalUnion>& tuple,
                                  const FractionalPartition& p) {
  const auto sums = subset_sums_1d(tuple);
  NuVector nu{static_cast<int>(tuple.size()), 1, {}};
  nu.values.assign(sums.size(), Rational(0));
  for (SubsetMask mask = 1; mask < sums.size(); ++mask) nu.values[mask] = sums[mask].measure();
  FsaVerifyReport report = verify_fsa(nu, p);
  report.equality_condition_met = true;
  for (const auto& [mask, beta] : p.weights)
    if (sums[mask].part_count() != 1) report.equality_condition_met = false;
  return report;
}

/// Realizes a point of the two-set region: a pair A_1, A_2 in R^d with
/// |A_1| = alpha^d, |A_2| = beta^d and |A_1 + A_2| = c, parametrized by side
/// lengths so that everything stays rational. Requires c >= (alpha + beta)^d;
/// the (0, 0, c) case needs d >= 2 (two degenerate boxes), as no finite
/// interval union manages it on the line.
inline std::pair<BoxUnion, BoxUnion> realize_two(const Rational& alpha, const Rational& beta,
                                                 const Rational& c, int d) {
  if (d < 1) throw input_error("dimension must be >= 1");
  if (alpha < 0 || beta < 0) throw input_error("side lengths must be nonnegative");
  const Rational floor_volume = rational_pow(alpha + beta, d);
  if (c < floor_volume)
    throw input_error("target |A+B| below the Brunn-Minkowski floor (" +
                      to_string(floor_volume) + ")");
  if (alpha == 0 && beta > 0) {
    auto [b, a] = realize_two(beta, alpha, c, d);
    return {std::move(a), std::move(b)};
  }
  if (alpha == 0 && beta == 0) {
    if (c == 0) {
      const std::vector<Rational> origin(static_cast<std::size_t>(d), Rational(0));
      return {BoxUnion::point(origin), BoxUnion::point(origin)};
    }
    if (d == 1)
      throw input_error(
          "(0, 0, c) is not realizable by finite interval unions in dimension 1");
    // Two flat boxes of measure zero whose sum is a solid slab of volume c.
    Box first(static_cast<std::size_t>(d), AxisRange{Rational(0), Rational(0)});
    first[0] = {Rational(0), c};
    Box second(static_cast<std::size_t>(d), AxisRange{Rational(0), Rational(1)});
    second[0] = {Rational(0), Rational(0)};
    return {BoxUnion::from_boxes(d, {first}), BoxUnion::from_boxes(d, {second})};
  }

  // alpha > 0: c - (alpha+beta)^d = (q alpha + r) alpha^{d-1}, 0 <= r < alpha.
  const Rational spread = (c - floor_volume) / rational_pow(alpha, d - 1);
  const Integer q = rational_floor(spread / alpha);
  const Rational r = spread - Rational(q) * alpha;

  const BoxUnion a1 = BoxUnion::cube(d, Rational(0), alpha);
  std::vector<Box> parts{Box(static_cast<std::size_t>(d), AxisRange{-beta, Rational(0)})};
  auto point_on_axis = [&](const Rational& x) {
    Box b(static_cast<std::size_t>(d), AxisRange{Rational(0), Rational(0)});
    b[0] = {x, x};
    return b;
  };
  for (Integer i = 1; i <= q; ++i) parts.push_back(point_on_axis(Rational(i) * alpha));
  parts.push_back(point_on_axis(Rational(q) * alpha + r));
  return {a1, BoxUnion::from_boxes(d, std::move(parts))};
}

// ---------------------------------------------------------------------------
// Cartesian products
// ---------------------------------------------------------------------------

/// One coordinate factor of a product set: a convex polygon (d = 2), a single
/// box (convex, any dimension), or an arbitrary 1-D compact set.
using ProductFactor = std::variant<ConvexPolygon, BoxUnion, IntervalUnion>;

struct ProductTuple {
  int M = 0;
  std::vector<std::vector<ProductFactor>> factors;  // factors[i] for index i+1
};

struct ProductReport {
  int total_dim = 0;
  double lhs = 0, rhs = 0, slack = 0;  // d-th roots, floating point
  double tolerance = 1e-9;
  bool holds = false;
  std::vector<Rational> factor_volumes_total;  // per factor, exact
};

namespace detail {

inline int factor_dim(const ProductFactor& f) {
  if (std::holds_alternative<ConvexPolygon>(f)) return 2;
  if (std::holds_alternative<BoxUnion>(f)) return std::get<BoxUnion>(f).dim();
  return 1;
}

inline void check_signature(const ProductTuple& tuple) {
  if (tuple.M < 1 || tuple.factors.size() != static_cast<std::size_t>(tuple.M))
    throw input_error("product tuple must provide factors for every index");
  const auto& first = tuple.factors.front();
  if (first.empty()) throw input_error("product tuple needs at least one factor");
  for (const auto& row : tuple.factors) {
    if (row.size() != first.size()) throw input_error("factor signature mismatch");
    for (std::size_t f = 0; f < row.size(); ++f) {
      if (row[f].index() != first[f].index()) throw input_error("factor signature mismatch");
      if (factor_dim(row[f]) != factor_dim(first[f]))
        throw input_error("factor dimension mismatch");
      if (const auto* box = std::get_if<BoxUnion>(&row[f]); box && box->box_count() != 1)
        throw input_error("box factors must be single (convex) boxes");
    }
  }
}

inline ProductFactor factor_sum(const ProductFactor& a, const ProductFactor& b) {
  if (std::holds_alternative<ConvexPolygon>(a))
    return polygon_minkowski_sum(std::get<ConvexPolygon>(a), std::get<ConvexPolygon>(b));
  if (std::holds_alternative<BoxUnion>(a))
    return box_minkowski_sum(std::get<BoxUnion>(a), std::get<BoxUnion>(b));
  return minkowski_sum(std::get<IntervalUnion>(a), std::get<IntervalUnion>(b));
}

inline Rational factor_volume(const ProductFactor& f) {
  if (std::holds_alternative<ConvexPolygon>(f)) return std::get<ConvexPolygon>(f).area();
  if (std::holds_alternative<BoxUnion>(f)) return union_volume(std::get<BoxUnion>(f));
  return std::get<IntervalUnion>(f).measure();
}

}  // namespace detail

/// Verifies the d-th-root fractional inequality for product sets
/// A_i = C_{1,i} x ... x C_{L,i}: subset sums factor across the product, so
/// each |sum_S A| is an exact rational product of per-factor volumes; only
/// the final d-th roots are floating point (tolerance 1e-9).
inline ProductReport verify_product(const ProductTuple& tuple, const FractionalPartition& p,
                                    double tolerance = 1e-9) {
  detail::check_signature(tuple);
  if (p.M != tuple.M || p.ground != full_mask(tuple.M))
    throw input_error("partition must cover the full tuple ground set");

  const std::size_t nfactors = tuple.factors.front().size();
  ProductReport report;
  report.tolerance = tolerance;
  for (std::size_t f = 0; f < nfactors; ++f)
    report.total_dim += detail::factor_dim(tuple.factors.front()[f]);

  // Per-factor subset sums, then exact product volumes per subset.
  const SubsetMask full = full_mask(tuple.M);
  std::vector<Rational> volume(std::size_t{1} << tuple.M, Rational(0));
  for (SubsetMask mask = 1; mask <= full; ++mask) {
    Rational product(1);
    for (std::size_t f = 0; f < nfactors; ++f) {
      std::optional<ProductFactor> sum;
      for (int e : mask_elements(mask)) {
        const auto& factor = tuple.factors[static_cast<std::size_t>(e) - 1][f];
        sum = sum ? detail::factor_sum(*sum, factor) : factor;
      }
      product *= detail::factor_volume(*sum);
      if (mask == full) report.factor_volumes_total.push_back(detail::factor_volume(*sum));
    }
    volume[mask] = product;
  }

  const double inv_d = 1.0 / report.total_dim;
  report.lhs = std::pow(volume[full].convert_to<double>(), inv_d);
  report.rhs = 0;
  for (const auto& [mask, beta] : p.weights)
    report.rhs += beta.convert_to<double>() * std::pow(volume[mask].convert_to<double>(), inv_d);
  report.slack = report.lhs - report.rhs;
  report.holds = report.slack >= -tolerance;
  return report;
}

// ---------------------------------------------------------------------------
// Counterexamples
// ---------------------------------------------------------------------------

struct CounterexampleReport {
  NuVector nu;
  Rational lhs, rhs;  // v(S u T) + v(S n T) vs v(S) + v(T) at the witness
  SubsetMask s = 0, t = 0;
};

/// A = {0, 1}, B = C = [0, 1]: |A+B+C| + |A| = 3 < 4 = |A+B| + |A+C|, so
/// volume is not supermodular on the line.
inline CounterexampleReport counterexample_supermodularity_1d() {
  const std::vector<IntervalUnion> tuple{
      IntervalUnion::from_intervals({{Rational(0), Rational(0)}, {Rational(1), Rational(1)}}),
      IntervalUnion::segment(Rational(0), Rational(1)),
      IntervalUnion::segment(Rational(0), Rational(1))};
  CounterexampleReport report;
  report.nu = nu_vector(tuple);
  report.s = parse_mask("[1,2]", 3);
  report.t = parse_mask("[1,3]", 3);
  report.lhs = report.nu.values[report.s | report.t] + report.nu.values[report.s & report.t];
  report.rhs = report.nu.values[report.s] + report.nu.values[report.t];
  return report;
}

/// A = {0..k}^d (a lattice of degenerate boxes), B = C = [0,1]^d:
/// |A+B+C| + |A| = (k+2)^d < 2 (k+1)^d = |A+B| + |A+C| for k large enough.
inline CounterexampleReport counterexample_supermodularity_cubes(int k, int d) {
  if (k < 1 || d < 1) throw input_error("cube counterexample needs k >= 1 and d >= 1");
  if (d > 3 || k > 10) throw input_error("cube counterexample capped at d <= 3, k <= 10");
  std::vector<Box> lattice;
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  while (true) {
    Box b;
    for (int c : idx) b.push_back({Rational(c), Rational(c)});
    lattice.push_back(std::move(b));
    int ax = d - 1;
    for (; ax >= 0; --ax) {
      if (++idx[static_cast<std::size_t>(ax)] <= k) break;
      idx[static_cast<std::size_t>(ax)] = 0;
    }
    if (ax < 0) break;
  }
  const std::vector<BoxUnion> tuple{BoxUnion::from_boxes(d, std::move(lattice)),
                                    BoxUnion::cube(d, Rational(0), Rational(1)),
                                    BoxUnion::cube(d, Rational(0), Rational(1))};
  CounterexampleReport report;
  report.nu = nu_vector(tuple);
  report.s = parse_mask("[1,2]", 3);
  report.t = parse_mask("[1,3]", 3);
  report.lhs = report.nu.values[report.s | report.t] + report.nu.values[report.s & report.t];
  report.rhs = report.nu.values[report.s] + report.nu.values[report.t];
  return report;
}

/// The two supermodular set functions showing that volumes of partial sums
/// cannot reach the whole supermodular cone: alpha(S) = |S|, and beta = alpha
/// except beta([M]) = M + 1.
inline std::pair<SetFunction, SetFunction> alpha_beta_fixtures(int m) {
  if (m < 3) throw input_error("fixtures need M >= 3");
  SetFunction alpha = SetFunction::zero(m);
  for (SubsetMask s = 1; s <= full_mask(m); ++s) alpha.at(s) = mask_size(s);
  SetFunction beta = alpha;
  beta.at(full_mask(m)) = m + 1;
  return {std::move(alpha), std::move(beta)};
}

}  // namespace sumvol

#endif  // SUMVOL_REGION_HPP
