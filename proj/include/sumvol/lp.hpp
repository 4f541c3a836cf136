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

#ifndef SUMVOL_LP_HPP
#define SUMVOL_LP_HPP

#include <vector>

#include "sumvol/rational.hpp"

namespace sumvol {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational objective;
  std::vector<Rational> x;      // primal solution, one entry per column
  std::vector<Rational> duals;  // row prices pi = c_B B^{-1}
};

/// Exact two-phase primal simplex with Bland's anti-cycling rule for
///
///     max c^T x   subject to   A x = b,  x >= 0.
///
/// Everything is arbitrary-precision rational: verdicts are exact, never
/// tolerance-based, which is what makes equality cases of the volume
/// inequalities decidable at all. Dense tableau; fine at the problem sizes
/// this library meets (tens of rows, up to a few thousand columns).
class SimplexSolver {
 public:
  SimplexSolver(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                std::vector<Rational> c)
      : rows_(a.size()), cols_(c.size()), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    for (const auto& row : a_)
      if (row.size() != cols_) throw input_error("LP matrix shape mismatch");
    if (b_.size() != rows_) throw input_error("LP rhs shape mismatch");
    for (std::size_t r = 0; r < rows_; ++r)
      if (b_[r] < 0) {
        for (auto& v : a_[r]) v = -v;
        b_[r] = -b_[r];
      }
  }

  LpResult solve() {
    // Tableau columns: structural | artificial | rhs.
    const std::size_t width = cols_ + rows_ + 1;
    tab_.assign(rows_, std::vector<Rational>(width, Rational(0)));
    basis_.resize(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) tab_[r][c] = a_[r][c];
      tab_[r][cols_ + r] = 1;
      tab_[r][width - 1] = b_[r];
      basis_[r] = cols_ + r;
    }

    // Phase 1: minimize the sum of artificials.
    std::vector<Rational> phase1(cols_ + rows_, Rational(0));
    for (std::size_t c = cols_; c < cols_ + rows_; ++c) phase1[c] = -1;
    run(phase1, /*allow_artificial=*/true);
    if (objective_value(phase1) != 0) return {LpStatus::infeasible, Rational(0), {}, {}};
    drive_out_artificials();

    std::vector<Rational> phase2(cols_ + rows_, Rational(0));
    for (std::size_t c = 0; c < cols_; ++c) phase2[c] = c_[c];
    if (!run(phase2, /*allow_artificial=*/false))
      return {LpStatus::unbounded, Rational(0), {}, {}};

    LpResult res;
    res.status = LpStatus::optimal;
    res.x.assign(cols_, Rational(0));
    for (std::size_t r = 0; r < rows_; ++r)
      if (basis_[r] < cols_) res.x[basis_[r]] = tab_[r][width - 1];
    res.objective = objective_value(phase2);
    // The artificial block started as the identity, so it now holds B^{-1};
    // pi = c_B B^{-1} falls out of it column by column.
    res.duals.assign(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t r = 0; r < rows_; ++r)
        res.duals[i] += phase2[basis_[r]] * tab_[r][cols_ + i];
    return res;
  }

 private:
  Rational objective_value(const std::vector<Rational>& cost) const {
    Rational v(0);
    for (std::size_t r = 0; r < rows_; ++r) v += cost[basis_[r]] * tab_[r].back();
    return v;
  }

  // Bland's rule: entering = lowest-index column with positive reduced cost,
  // leaving = lowest basis index among the ratio-test minimizers.
  bool run(const std::vector<Rational>& cost, bool allow_artificial) {
    const std::size_t ncols = cols_ + (allow_artificial ? rows_ : 0);
    while (true) {
      std::size_t enter = ncols;
      for (std::size_t c = 0; c < ncols; ++c) {
        Rational reduced = cost[c];
        for (std::size_t r = 0; r < rows_; ++r)
          if (cost[basis_[r]] != 0) reduced -= cost[basis_[r]] * tab_[r][c];
        if (reduced > 0) {
          enter = c;
          break;
        }
      }
      if (enter == ncols) return true;  // optimal

      std::size_t leave = rows_;
      Rational best;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (tab_[r][enter] <= 0) continue;
        const Rational ratio = tab_[r].back() / tab_[r][enter];
        if (leave == rows_ || ratio < best ||
            (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == rows_) return false;  // unbounded
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational p = tab_[row][col];
    for (auto& v : tab_[row]) v /= p;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || tab_[r][col] == 0) continue;
      const Rational f = tab_[r][col];
      for (std::size_t c = 0; c < tab_[r].size(); ++c) tab_[r][c] -= f * tab_[row][c];
    }
    basis_[row] = col;
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < cols_) continue;
      std::size_t c = 0;
      while (c < cols_ && tab_[r][c] == 0) ++c;
      if (c < cols_) pivot(r, c);
      // else: redundant row; the zero artificial stays basic, harmlessly.
    }
  }

  std::size_t rows_, cols_;
  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> b_;
  std::vector<Rational> c_;
  std::vector<std::vector<Rational>> tab_;
  std::vector<std::size_t> basis_;
};

inline LpResult solve_lp_max(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                             std::vector<Rational> c) {
  return SimplexSolver(std::move(a), std::move(b), std::move(c)).solve();
}

}  // namespace sumvol

#endif  // SUMVOL_LP_HPP
