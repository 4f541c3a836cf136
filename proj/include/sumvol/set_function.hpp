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

#ifndef SUMVOL_SET_FUNCTION_HPP
#define SUMVOL_SET_FUNCTION_HPP

#include <map>
#include <optional>
#include <vector>

#include "sumvol/lp.hpp"
#include "sumvol/partition.hpp"
#include "sumvol/rational.hpp"
#include "sumvol/subset.hpp"

namespace sumvol {

/// Rational set function v on 2^[M] with v(empty) = 0, indexed by subset
/// mask. Values may be negative for abstract inputs; the core-based FSA check
/// requires nonnegative values and says so.
struct SetFunction {
  int M = 0;
  std::vector<Rational> values;  // size 1 << M

  static SetFunction zero(int m) {
    check_ground_size(m);
    return {m, std::vector<Rational>(std::size_t{1} << m, Rational(0))};
  }

  const Rational& at(SubsetMask s) const { return values[s]; }
  Rational& at(SubsetMask s) { return values[s]; }

  void validate() const {
    check_ground_size(M);
    if (values.size() != (std::size_t{1} << M))
      throw input_error("set function table must have 2^M entries");
    if (values[0] != 0) throw input_error("set function must vanish on the empty set");
  }

  bool nonnegative() const {
    for (const auto& v : values)
      if (v < 0) return false;
    return true;
  }
};

struct SupermodularityReport {
  bool supermodular = true;
  SubsetMask s = 0, t = 0;  // witness pair when not supermodular
  Rational lhs, rhs;        // v(S u T) + v(S n T) vs v(S) + v(T)
};

/// Checks v(S u T) + v(S n T) >= v(S) + v(T) for all pairs, through the
/// equivalent local criterion on S, S+i, S+j, S+i+j; a violation is reported
/// as the pair (S+i, S+j).
inline SupermodularityReport is_supermodular(const SetFunction& v) {
  v.validate();
  const SubsetMask full = full_mask(v.M);
  for (SubsetMask base = 0; base <= full; ++base) {
    for (int i = 1; i <= v.M; ++i) {
      if (mask_contains(base, i)) continue;
      for (int j = i + 1; j <= v.M; ++j) {
        if (mask_contains(base, j)) continue;
        const SubsetMask si = base | element_mask(i);
        const SubsetMask sj = base | element_mask(j);
        const Rational lhs = v.at(si | sj) + v.at(base);
        const Rational rhs = v.at(si) + v.at(sj);
        if (lhs < rhs) return {false, si, sj, lhs, rhs};
      }
    }
  }
  return {};
}

/// Outcome of the core LP for one subgame T: either a core allocation t with
/// t >= 0, sum_{i in S} t_i >= v(S) and sum_{i in T} t_i = v(T), or a
/// fractional partition of T whose weighted sum strictly exceeds v(T).
struct CoreCertificate {
  SubsetMask ground = 0;
  bool balanced = false;
  Rational lp_value;                  // min sum_{i in T} t_i
  std::vector<Rational> allocation;   // indexed 0..M-1; zero outside T
  FractionalPartition violating;      // populated when unbalanced
  Rational violation_value;           // sum beta_S v(S) for the witness
};

struct FsaCoreReport {
  bool fsa = true;
  std::vector<CoreCertificate> subgames;  // one per nonempty T, ascending mask
};

namespace detail {

inline CoreCertificate core_check_subgame(const SetFunction& v, SubsetMask t_mask) {
  const auto elements = mask_elements(t_mask);
  const std::size_t m = elements.size();

  std::vector<SubsetMask> columns;  // nonempty subsets of T, ascending
  for (SubsetMask s = 1; s <= t_mask; ++s)
    if ((s & ~t_mask) == 0) columns.push_back(s);

  // Dual of the core LP: max sum y_S v(S) with sum_{S contains i} y_S <= 1.
  const std::size_t ncols = columns.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(ncols + m, Rational(0)));
  std::vector<Rational> b(m, Rational(1));
  std::vector<Rational> c(ncols + m, Rational(0));
  for (std::size_t row = 0; row < m; ++row) {
    for (std::size_t col = 0; col < ncols; ++col)
      if (mask_contains(columns[col], elements[row])) a[row][col] = 1;
    a[row][ncols + row] = 1;  // slack
  }
  for (std::size_t col = 0; col < ncols; ++col) c[col] = v.at(columns[col]);

  const LpResult lp = solve_lp_max(std::move(a), std::move(b), std::move(c));
  if (lp.status != LpStatus::optimal)
    throw verification_error("core LP did not solve to optimality");

  CoreCertificate cert;
  cert.ground = t_mask;
  cert.lp_value = lp.objective;
  cert.balanced = (lp.objective == v.at(t_mask));
  if (cert.balanced) {
    cert.allocation.assign(static_cast<std::size_t>(v.M), Rational(0));
    for (std::size_t row = 0; row < m; ++row)
      cert.allocation[static_cast<std::size_t>(elements[row]) - 1] = lp.duals[row];
  } else {
    // Dual optimum completed with singleton weights makes a genuine
    // fractional partition of T; with v >= 0 its value only grows.
    std::map<SubsetMask, Rational> weights;
    for (std::size_t col = 0; col < ncols; ++col)
      if (lp.x[col] > 0) weights[columns[col]] += lp.x[col];
    for (std::size_t row = 0; row < m; ++row)
      if (lp.x[ncols + row] > 0) weights[element_mask(elements[row])] += lp.x[ncols + row];
    cert.violating = validate_partition(weights, t_mask, v.M);
    cert.violation_value = 0;
    for (const auto& [mask, beta] : cert.violating.weights)
      cert.violation_value += beta * v.at(mask);
  }
  return cert;
}

}  // namespace detail

/// Bondareva-Shapley route: for every nonempty T the exact LP
/// min sum t_i s.t. t >= 0, sum_{i in S} t_i >= v(S) for S within T is solved;
/// v is fractionally superadditive iff every optimum equals v(T). Requires
/// v >= 0 (the volume setting).
inline FsaCoreReport fsa_check_core(const SetFunction& v) {
  v.validate();
  if (!v.nonnegative())
    throw input_error("fsa_check_core requires a nonnegative set function");
  FsaCoreReport report;
  const SubsetMask full = full_mask(v.M);
  for (SubsetMask t = 1; t <= full; ++t) {
    report.subgames.push_back(detail::core_check_subgame(v, t));
    if (!report.subgames.back().balanced) report.fsa = false;
  }
  return report;
}

struct FsaEnumReport {
  bool fsa = true;
  SubsetMask ground = 0;           // first violated subgame
  FractionalPartition witness;     // violating extreme partition
  Rational bound;                  // sum beta_S v(S) > v(T)
};

/// Independent route: tests inequality v(T) >= sum beta_S v(S) against every
/// extreme partition of every subgame T. Capped at M <= 6 by the extreme
/// enumeration.
inline FsaEnumReport fsa_check_enum(const SetFunction& v) {
  v.validate();
  if (v.M > 6) throw input_error("fsa_check_enum is capped at M <= 6");
  std::map<int, std::vector<FractionalPartition>> cache;
  FsaEnumReport report;
  const SubsetMask full = full_mask(v.M);
  for (SubsetMask t = 1; t <= full; ++t) {
    const int size = mask_size(t);
    auto it = cache.find(size);
    if (it == cache.end()) it = cache.emplace(size, extreme_partitions(size)).first;
    for (const auto& base : it->second) {
      const FractionalPartition p = relabel_partition(base, t, v.M);
      Rational bound(0);
      for (const auto& [mask, beta] : p.weights) bound += beta * v.at(mask);
      if (bound > v.at(t)) return {false, t, p, bound};
    }
  }
  return report;
}

/// Value of the 1-homogeneous concave extension
/// F(x) = max { sum beta_S f(1_S) : beta >= 0, sum beta_S 1_S = x } at a
/// nonnegative rational point, by exact LP. F(0) = 0; when f is fractionally
/// superadditive, F agrees with f on every indicator vector.
inline Rational concave_extension_eval(const SetFunction& f, const std::vector<Rational>& x) {
  f.validate();
  if (x.size() != static_cast<std::size_t>(f.M))
    throw input_error("extension point has wrong dimension");
  for (const auto& xi : x)
    if (xi < 0) throw input_error("extension point must be componentwise nonnegative");

  const SubsetMask full = full_mask(f.M);
  std::vector<SubsetMask> columns;
  for (SubsetMask s = 1; s <= full; ++s) columns.push_back(s);
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(f.M),
                                       std::vector<Rational>(columns.size(), Rational(0)));
  std::vector<Rational> c(columns.size());
  for (std::size_t col = 0; col < columns.size(); ++col) {
    for (int i = 1; i <= f.M; ++i)
      if (mask_contains(columns[col], i)) a[static_cast<std::size_t>(i) - 1][col] = 1;
    c[col] = f.at(columns[col]);
  }
  const LpResult lp = solve_lp_max(std::move(a), x, std::move(c));
  if (lp.status == LpStatus::infeasible)
    throw input_error("extension point admits no fractional decomposition");
  if (lp.status != LpStatus::optimal)
    throw verification_error("extension LP did not solve to optimality");
  return lp.objective;
}

}  // namespace sumvol

#endif  // SUMVOL_SET_FUNCTION_HPP
