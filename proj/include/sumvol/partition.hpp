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

#ifndef SUMVOL_PARTITION_HPP
#define SUMVOL_PARTITION_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <thread>
#include <vector>

#include "sumvol/rational.hpp"
#include "sumvol/subset.hpp"

namespace sumvol {

/// Fractional partition (G, beta) of a ground set T: nonnegative weights on
/// nonempty subsets of T with sum_{S contains i} beta_S = 1 for every i in T.
/// Only strictly positive weights are stored.
struct FractionalPartition {
  int M = 0;
  SubsetMask ground = 0;
  std::map<SubsetMask, Rational> weights;

  friend bool operator==(const FractionalPartition&, const FractionalPartition&) = default;
};

/// Per-element coverage defect sum_{S contains i} beta_S - 1; empty iff the
/// weights form a fractional partition of the ground set.
inline std::map<int, Rational> partition_defects(const std::map<SubsetMask, Rational>& weights,
                                                 SubsetMask ground) {
  std::map<int, Rational> defects;
  for (int e : mask_elements(ground)) {
    Rational covered(0);
    for (const auto& [mask, beta] : weights)
      if (mask_contains(mask, e)) covered += beta;
    if (covered != 1) defects[e] = covered - 1;
  }
  return defects;
}

inline FractionalPartition validate_partition(const std::map<SubsetMask, Rational>& raw,
                                              SubsetMask ground, int m) {
  check_ground_size(m);
  if (ground == 0 || (ground & ~full_mask(m)) != 0)
    throw input_error("partition ground set must be a nonempty subset of [1, M]");
  FractionalPartition out{m, ground, {}};
  for (const auto& [mask, beta] : raw) {
    if (mask == 0) throw input_error("partition weight on the empty set");
    if ((mask & ~ground) != 0)
      throw input_error("partition weight on " + mask_to_string(mask) +
                        " outside the ground set " + mask_to_string(ground));
    if (beta < 0)
      throw input_error("negative weight " + to_string(beta) + " on " + mask_to_string(mask));
    if (beta > 0) out.weights.emplace(mask, beta);
  }
  const auto defects = partition_defects(out.weights, ground);
  if (!defects.empty()) {
    std::string msg = "coverage defect:";
    for (const auto& [e, d] : defects)
      msg += " element " + std::to_string(e) + " off by " + to_string(d) + ";";
    throw input_error(msg);
  }
  return out;
}

/// All (M-1)-subsets of [M] with weight 1/(M-1).
inline FractionalPartition leave_one_out(int m) {
  if (m < 2) throw input_error("leave-one-out partition needs M >= 2");
  const SubsetMask full = full_mask(m);
  std::map<SubsetMask, Rational> weights;
  for (int e = 1; e <= m; ++e) weights.emplace(full & ~element_mask(e), Rational(1) / (m - 1));
  return validate_partition(weights, full, m);
}

inline FractionalPartition singleton_partition(int m) {
  const SubsetMask full = full_mask(m);
  std::map<SubsetMask, Rational> weights;
  for (int e = 1; e <= m; ++e) weights.emplace(element_mask(e), Rational(1));
  return validate_partition(weights, full, m);
}

/// Ordered sequence S_1..S_s of subsets covering every ground element exactly
/// q times. The order is significant: it pins down the cover functions h_k and
/// with them the whole decomposition certificate.
struct RegularCover {
  int M = 0;
  SubsetMask ground = 0;
  int q = 0;
  std::vector<SubsetMask> sets;

  friend bool operator==(const RegularCover&, const RegularCover&) = default;
};

inline void validate_cover(const RegularCover& cover) {
  check_ground_size(cover.M);
  if (cover.ground == 0 || (cover.ground & ~full_mask(cover.M)) != 0)
    throw input_error("cover ground set must be a nonempty subset of [1, M]");
  if (cover.q < 1) throw input_error("cover multiplicity q must be positive");
  for (SubsetMask s : cover.sets) {
    if (s == 0) throw input_error("cover contains the empty set");
    if ((s & ~cover.ground) != 0)
      throw input_error("cover set " + mask_to_string(s) + " outside the ground set");
  }
  for (int e : mask_elements(cover.ground)) {
    int times = 0;
    for (SubsetMask s : cover.sets)
      if (mask_contains(s, e)) ++times;
    if (times != cover.q)
      throw input_error("element " + std::to_string(e) + " covered " + std::to_string(times) +
                        " times, expected q = " + std::to_string(cover.q));
  }
}

/// Clears denominators: q = lcm of the weight denominators, each set repeated
/// q*beta_S times, sets in ascending mask order with repeats adjacent.
inline RegularCover to_regular_cover(const FractionalPartition& p) {
  if (p.weights.empty()) throw input_error("cannot expand an empty partition");
  Integer q(1);
  for (const auto& [mask, beta] : p.weights) q = lcm(q, denominator(beta));
  if (q > 1000000) throw input_error("cover multiplicity q too large: " + to_string(q));
  RegularCover cover{p.M, p.ground, static_cast<int>(q.convert_to<long>()), {}};
  for (const auto& [mask, beta] : p.weights) {
    const Integer times = numerator(beta) * (q / denominator(beta));
    for (Integer i = 0; i < times; ++i) cover.sets.push_back(mask);
  }
  validate_cover(cover);
  return cover;
}

/// Re-aggregates a cover into the fractional partition with weights
/// multiplicity / q (inverse of to_regular_cover up to set order).
inline FractionalPartition cover_to_partition(const RegularCover& cover) {
  validate_cover(cover);
  std::map<SubsetMask, Rational> weights;
  for (SubsetMask s : cover.sets) weights[s] += Rational(1) / cover.q;
  return validate_partition(weights, cover.ground, cover.M);
}

/// The q functions h_1 < h_2 < ... < h_q: for each ground element i, h_k(i)
/// is the k-th smallest 1-based index of a cover set containing i.
class CoverFunctions {
 public:
  explicit CoverFunctions(const RegularCover& cover) : q_(cover.q) {
    validate_cover(cover);
    for (int e : mask_elements(cover.ground)) {
      auto& slots = by_element_[e];
      for (std::size_t j = 0; j < cover.sets.size(); ++j)
        if (mask_contains(cover.sets[j], e)) slots.push_back(static_cast<int>(j) + 1);
    }
  }

  int q() const { return q_; }

  int h(int k, int element) const {
    if (k < 1 || k > q_) throw input_error("layer index k out of [1, q]");
    const auto it = by_element_.find(element);
    if (it == by_element_.end()) throw input_error("element outside the cover ground set");
    return it->second[static_cast<std::size_t>(k) - 1];
  }

  /// h_k^{-1}([1, j]) as a mask; empty for j <= 0.
  SubsetMask preimage_upto(int k, int j) const {
    SubsetMask out = 0;
    for (const auto& [e, slots] : by_element_)
      if (slots[static_cast<std::size_t>(k) - 1] <= j) out |= element_mask(e);
    return out;
  }

  const std::map<int, std::vector<int>>& table() const { return by_element_; }

 private:
  int q_;
  std::map<int, std::vector<int>> by_element_;
};

inline CoverFunctions cover_functions(const RegularCover& cover) { return CoverFunctions(cover); }

namespace detail {

// Exact solve of columns * beta = 1 over int64 by fraction-free Gauss-Jordan
// (Bareiss) elimination. Every intermediate entry is a bordered minor of the
// 0/1 incidence system with a 0/1 right-hand side, so for m <= 16 ground
// elements and t <= m columns the values stay minuscule for int64; the
// exact-division step is asserted. Returns false when the all-ones vector is
// not in the span of the columns; otherwise fills beta (as reduced int64
// fractions) in column order. Columns are assumed linearly independent.
struct CoverSolution {
  long long num[kMaxGround];
  long long den[kMaxGround];
  int size = 0;

  bool strictly_positive() const {
    for (int c = 0; c < size; ++c)
      if (num[c] <= 0) return false;
    return true;
  }
};

inline bool solve_cover_equation(const std::vector<SubsetMask>& columns, int m,
                                 CoverSolution& out) {
  const int t = static_cast<int>(columns.size());
  long long a[kMaxGround][kMaxGround + 1];  // m rows, t + 1 columns (rhs last)
  for (int row = 0; row < m; ++row) {
    for (int c = 0; c < t; ++c)
      a[row][c] = mask_contains(columns[static_cast<std::size_t>(c)], row + 1) ? 1 : 0;
    a[row][t] = 1;
  }
  int pivot_row[kMaxGround];
  long long prev = 1;
  int rank = 0;
  for (int c = 0; c < t; ++c) {
    int pr = rank;
    while (pr < m && a[pr][c] == 0) ++pr;
    if (pr == m) return false;  // dependent columns: not a caller's case
    for (int cc = 0; cc <= t; ++cc) std::swap(a[rank][cc], a[pr][cc]);
    for (int r = 0; r < m; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      for (int cc = 0; cc <= t; ++cc) {
        const long long cross = a[r][cc] * a[rank][c] - a[r][c] * a[rank][cc];
        if (cross % prev != 0) throw verification_error("fraction-free elimination not exact");
        a[r][cc] = cross / prev;
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    pivot_row[c] = rank;
    ++rank;
  }
  for (int r = rank; r < m; ++r)
    if (a[r][t] != 0) return false;  // inconsistent
  out.size = t;
  for (int c = 0; c < t; ++c) {
    long long num = a[pivot_row[c]][t];
    long long den = a[pivot_row[c]][c];
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    out.num[c] = num / g;
    out.den[c] = den / g;
  }
  return true;
}

}  // namespace detail

namespace detail {

// Depth-first enumeration state for one slice of the support search: an
// incremental integer echelon of the selected incidence columns plus the
// reduced all-ones target. Vectors are gcd-normalized after each reduction
// and the cross-products ride through __int128, so the machine-integer
// arithmetic is exact by construction.
class VertexSearch {
 public:
  explicit VertexSearch(int m) : m_(m), full_(full_mask(m)), ncols_(static_cast<int>(full_)) {
    for (int i = 0; i < m_; ++i) target_[static_cast<std::size_t>(i)] = 1;
  }

  /// Explores all supports whose smallest column is root_col.
  void run(int root_col) { step(root_col, root_col); }

  std::vector<FractionalPartition>& found() { return found_; }

 private:
  using Vec = std::array<long long, kMaxGround>;

  static void normalize(Vec& v, int m) {
    long long g = 0;
    for (int i = 0; i < m; ++i) g = std::gcd(g, v[static_cast<std::size_t>(i)]);
    if (g > 1)
      for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i)] /= g;
  }

  static void combine(Vec& v, const Vec& pivot, int pos, int m) {
    const __int128 scale = pivot[static_cast<std::size_t>(pos)];
    const __int128 factor = v[static_cast<std::size_t>(pos)];
    for (int i = 0; i < m; ++i) {
      const __int128 next = scale * v[static_cast<std::size_t>(i)] -
                            factor * pivot[static_cast<std::size_t>(i)];
      if (next > std::numeric_limits<long long>::max() ||
          next < std::numeric_limits<long long>::min())
        throw verification_error("vertex search overflow");
      v[static_cast<std::size_t>(i)] = static_cast<long long>(next);
    }
  }

  void step(int col_from, int col_to_explore_first) {
    for (int col = col_to_explore_first; col <= ncols_; ++col) {
      const SubsetMask mask = static_cast<SubsetMask>(col);
      Vec v{};
      for (int i = 0; i < m_; ++i)
        v[static_cast<std::size_t>(i)] = mask_contains(mask, i + 1) ? 1 : 0;
      for (std::size_t p = 0; p < pivots_.size(); ++p)
        if (v[static_cast<std::size_t>(pivot_pos_[p])] != 0) {
          combine(v, pivots_[p], pivot_pos_[p], m_);
          normalize(v, m_);
        }
      int pos = -1;
      for (int i = 0; i < m_; ++i)
        if (v[static_cast<std::size_t>(i)] != 0) {
          pos = i;
          break;
        }
      if (pos < 0) continue;  // dependent on the current support

      const Vec saved_target = target_;
      const SubsetMask saved_covered = covered_;
      pivots_.push_back(v);
      pivot_pos_.push_back(pos);
      selected_.push_back(mask);
      covered_ |= mask;
      if (target_[static_cast<std::size_t>(pos)] != 0) {
        combine(target_, v, pos, m_);
        normalize(target_, m_);
      }
      accept_if_vertex();
      if (static_cast<int>(selected_.size()) < m_) step(col_from, col + 1);
      selected_.pop_back();
      pivots_.pop_back();
      pivot_pos_.pop_back();
      target_ = saved_target;
      covered_ = saved_covered;
      if (col == col_from) break;  // the root column is fixed for this slice
    }
  }

  void accept_if_vertex() {
    if (covered_ != full_) return;  // some element uncovered: no positive solution
    for (int i = 0; i < m_; ++i)
      if (target_[static_cast<std::size_t>(i)] != 0) return;  // 1 not in the span
    CoverSolution sol;
    if (!solve_cover_equation(selected_, m_, sol) || !sol.strictly_positive()) return;
    FractionalPartition p{m_, full_, {}};
    for (std::size_t c = 0; c < selected_.size(); ++c)
      p.weights.emplace(selected_[c], make_rational(Integer(sol.num[c]), Integer(sol.den[c])));
    found_.push_back(std::move(p));
  }

  int m_;
  SubsetMask full_;
  int ncols_;
  std::vector<FractionalPartition> found_;
  std::vector<SubsetMask> selected_;
  std::vector<Vec> pivots_;
  std::vector<int> pivot_pos_;
  Vec target_{};
  SubsetMask covered_ = 0;
};

}  // namespace detail

/// All vertices of the polytope of fractional partitions of [M],
/// F_M = { beta >= 0 : sum_{S contains i} beta_S = 1 for all i }, by
/// depth-first enumeration of independent column supports with an exact
/// solve per feasible support. The search is sliced by smallest support
/// column and the slices run on a few threads; the returned list is sorted
/// and deduplicated, so it is deterministic regardless of scheduling.
/// Capped at M <= 6 (the M = 6 enumeration visits tens of millions of
/// supports and takes a couple of minutes).
inline std::vector<FractionalPartition> extreme_partitions(int m) {
  if (m < 1 || m > 6) throw input_error("extreme partition enumeration is capped at M <= 6");
  const int ncols = static_cast<int>(full_mask(m));

  std::vector<FractionalPartition> out;
  if (m >= 6) {
    const unsigned nthreads =
        std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
    std::atomic<int> next_root{1};
    std::vector<std::vector<FractionalPartition>> slices(nthreads);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nthreads; ++w) {
      pool.emplace_back([&, w] {
        detail::VertexSearch search(m);
        for (int root = next_root.fetch_add(1); root <= ncols; root = next_root.fetch_add(1))
          search.run(root);
        slices[w] = std::move(search.found());
      });
    }
    for (auto& t : pool) t.join();
    for (auto& slice : slices)
      for (auto& p : slice) out.push_back(std::move(p));
  } else {
    detail::VertexSearch search(m);
    for (int root = 1; root <= ncols; ++root) search.run(root);
    out = std::move(search.found());
  }

  std::sort(out.begin(), out.end(), [](const FractionalPartition& a, const FractionalPartition& b) {
    if (a.weights.size() != b.weights.size()) return a.weights.size() < b.weights.size();
    return std::lexicographical_compare(
        a.weights.begin(), a.weights.end(), b.weights.begin(), b.weights.end(),
        [](const auto& x, const auto& y) {
          if (x.first != y.first) return x.first < y.first;
          return x.second < y.second;
        });
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Transplants a partition of [|T|] onto the ground set T (ascending element
/// order); used to test subgames on their own ground sets.
inline FractionalPartition relabel_partition(const FractionalPartition& p, SubsetMask target,
                                             int m) {
  const auto elements = mask_elements(target);
  if (static_cast<int>(elements.size()) != p.M)
    throw input_error("relabel target size does not match the partition ground");
  std::map<SubsetMask, Rational> weights;
  for (const auto& [mask, beta] : p.weights) {
    SubsetMask mapped = 0;
    for (int e : mask_elements(mask)) mapped |= element_mask(elements[static_cast<std::size_t>(e) - 1]);
    weights.emplace(mapped, beta);
  }
  return validate_partition(weights, target, m);
}

}  // namespace sumvol

#endif  // SUMVOL_PARTITION_HPP
