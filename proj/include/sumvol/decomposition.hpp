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

#ifndef SUMVOL_DECOMPOSITION_HPP
#define SUMVOL_DECOMPOSITION_HPP

#include <bit>
#include <future>
#include <optional>
#include <variant>
#include <vector>

#include "sumvol/box_union.hpp"
#include "sumvol/integer_set.hpp"
#include "sumvol/interval_union.hpp"
#include "sumvol/partition.hpp"
#include "sumvol/rational.hpp"
#include "sumvol/subset.hpp"

namespace sumvol {

enum class SetKind { one_d, integer, boxes };

using SetVariant = std::variant<IntervalUnion, IntegerSet, BoxUnion>;

/// All 2^M - 1 subset sums, indexed by mask; built by adding one index at a
/// time so every partial sum is computed once.
template <class SetT, class SumOp>
std::vector<SetT> subset_sum_table(const std::vector<SetT>& sets, SumOp op) {
  const int m = static_cast<int>(sets.size());
  check_ground_size(m);
  std::vector<SetT> table(std::size_t{1} << m);
  for (SubsetMask mask = 1; mask < table.size(); ++mask) {
    const int low = std::countr_zero(mask);
    const SubsetMask rest = mask & (mask - 1);
    table[mask] = rest == 0 ? sets[static_cast<std::size_t>(low)]
                            : op(table[rest], sets[static_cast<std::size_t>(low)]);
  }
  return table;
}

inline std::vector<IntervalUnion> subset_sums_1d(const std::vector<IntervalUnion>& sets) {
  return subset_sum_table(sets, [](const IntervalUnion& a, const IntervalUnion& b) {
    return minkowski_sum(a, b);
  });
}

inline std::vector<IntegerSet> subset_sums_int(const std::vector<IntegerSet>& sets) {
  return subset_sum_table(sets, [](const IntegerSet& a, const IntegerSet& b) {
    return sumset(a, b);
  });
}

inline std::vector<BoxUnion> subset_sums_boxes(const std::vector<BoxUnion>& sets) {
  return subset_sum_table(sets, [](const BoxUnion& a, const BoxUnion& b) {
    return box_minkowski_sum(a, b);
  });
}

/// One truncated, translated subset sum of the layer decomposition:
/// (sum_{S_j} A + sum_{translator} a) ∩ (window_lo ; window_hi].
struct PieceDescriptor {
  int k = 0;                  // layer in [1, q]
  int j = 0;                  // cover set index in [1, s]
  SubsetMask translator = 0;  // h_k^{-1}([1, j-1]) \ S_j
  Rational window_lo, window_hi;
  SetVariant piece;
};

/// The full constructive proof object for one tuple and one cover: all layer
/// pieces, the verified identities and the two sides of the inequality.
struct Certificate {
  SetKind kind = SetKind::one_d;
  int M = 0;
  int dim = 1;   // boxes only
  int axis = 1;  // boxes only: slab coordinate
  RegularCover cover;
  bool from_partition = false;
  FractionalPartition partition;  // meaningful when from_partition

  std::vector<SetVariant> normalized;            // translated summands
  std::vector<std::vector<Rational>> offsets;    // shift applied per summand
  std::vector<Rational> extents;                 // a_i (pi(a_i) for boxes)
  std::vector<std::vector<Rational>> extent_points;  // boxes: max-pi point per summand

  std::vector<PieceDescriptor> pieces;       // all layers, k-major then j
  std::vector<Rational> recollected;         // per j: sum_k |piece_{k,j}|
  std::vector<Rational> subset_sum_values;   // per j: |sum_{S_j} A|
  Rational total_value;                      // |sum_{[M]} A|

  Rational lhs, rhs, slack;                              // q-scaled inequality
  Rational fractional_lhs, fractional_rhs, fractional_slack;
  std::optional<bool> equality_condition;    // 1d / integer sufficient condition
  std::optional<Integer> common_increment;   // integer kind, when condition met
};

namespace detail {

inline Rational extent_sum(const std::vector<Rational>& extents, SubsetMask mask) {
  Rational total(0);
  for (int e : mask_elements(mask)) total += extents[static_cast<std::size_t>(e) - 1];
  return total;
}

inline void finish_sides(Certificate& cert) {
  cert.slack = cert.lhs - cert.rhs;
  if (cert.slack < 0)
    throw verification_error("certificate slack is negative; this is a bug");
  cert.fractional_slack = cert.fractional_lhs - cert.fractional_rhs;
  if (cert.from_partition) {
    // The fractional sides must be exactly the q-scaled sides divided by q.
    if (cert.fractional_rhs * cert.cover.q != cert.rhs ||
        cert.fractional_lhs * cert.cover.q != cert.lhs)
      throw verification_error("fractional and q-scaled sides disagree");
  }
}

template <class Fn>
void for_each_layer(int q, int jobs, Fn&& fn) {
  if (jobs <= 1 || q <= 1) {
    for (int k = 1; k <= q; ++k) fn(k);
    return;
  }
  std::vector<std::future<void>> running;
  for (int k = 1; k <= q; ++k)
    running.push_back(std::async(std::launch::async, [&fn, k] { fn(k); }));
  for (auto& f : running) f.get();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Real line
// ---------------------------------------------------------------------------

struct NormalizedTuple1D {
  std::vector<IntervalUnion> sets;      // min A_i = 0
  std::vector<Rational> offsets;        // shift applied: A_i -> A_i + offset
  std::vector<Rational> extents;        // a_i = max of the translated set
};

inline NormalizedTuple1D normalize_tuple(const std::vector<IntervalUnion>& tuple) {
  NormalizedTuple1D out;
  for (const auto& a : tuple) {
    a.nonempty();
    const Rational shift = -a.min();
    out.sets.push_back(translate(a, shift));
    out.offsets.push_back(shift);
    out.extents.push_back(out.sets.back().max());
  }
  return out;
}

struct NormalizedTupleInt {
  std::vector<IntegerSet> sets;
  std::vector<Integer> offsets;
  std::vector<Integer> extents;
};

inline NormalizedTupleInt normalize_tuple(const std::vector<IntegerSet>& tuple) {
  NormalizedTupleInt out;
  for (const auto& a : tuple) {
    a.nonempty();
    const Integer shift = -a.min();
    out.sets.push_back(translate(a, shift));
    out.offsets.push_back(shift);
    out.extents.push_back(out.sets.back().max());
  }
  return out;
}

struct NormalizedTupleBoxes {
  std::vector<BoxUnion> sets;                      // 0 in A_i, min pi = 0
  std::vector<std::vector<Rational>> offsets;      // shift vector applied
  std::vector<std::vector<Rational>> extent_points;  // a_i, a max-pi point of A_i
  std::vector<Rational> extents;                   // pi(a_i)
};

/// Translates a minimizing corner of the slab coordinate to the origin (so
/// the origin is a point of each summand) and records a maximizing corner as
/// the translation point a_i. `axis` is 1-based.
inline NormalizedTupleBoxes normalize_tuple(const std::vector<BoxUnion>& tuple, int axis = 1) {
  NormalizedTupleBoxes out;
  for (const auto& a : tuple) {
    a.nonempty();
    if (axis < 1 || axis > a.dim()) throw input_error("slab axis out of range");
    auto corner = a.min_pi_point(axis - 1);
    for (auto& c : corner) c = -c;
    out.sets.push_back(translate(a, corner));
    out.offsets.push_back(std::move(corner));
    out.extent_points.push_back(out.sets.back().max_pi_point(axis - 1));
    out.extents.push_back(out.extent_points.back()[static_cast<std::size_t>(axis) - 1]);
  }
  return out;
}

namespace detail {

inline std::vector<PieceDescriptor> layer_pieces_1d(const std::vector<IntervalUnion>& sums,
                                                    const RegularCover& cover,
                                                    const CoverFunctions& h,
                                                    const std::vector<Rational>& extents, int k) {
  std::vector<PieceDescriptor> out;
  const int s = static_cast<int>(cover.sets.size());
  SubsetMask pre_prev = 0;  // h_k^{-1}([1, j-1])
  for (int j = 1; j <= s; ++j) {
    const SubsetMask pre_cur = h.preimage_upto(k, j);
    const SubsetMask set_j = cover.sets[static_cast<std::size_t>(j) - 1];
    PieceDescriptor piece;
    piece.k = k;
    piece.j = j;
    piece.translator = pre_prev & ~set_j;
    piece.window_lo = extent_sum(extents, pre_prev);
    piece.window_hi = extent_sum(extents, pre_cur);
    const IntervalUnion shifted =
        translate(sums[set_j], extent_sum(extents, piece.translator));
    piece.piece = truncate(shifted, piece.window_lo, piece.window_hi);
    out.push_back(std::move(piece));
    pre_prev = pre_cur;
  }
  return out;
}

}  // namespace detail

/// The layer-k decomposition of Lemma (U1) for a normalized 1-D tuple: for
/// each cover set S_j, the translated subset sum clipped to the layer window.
/// Empty windows (j outside the range of h_k) yield empty pieces.
inline std::vector<PieceDescriptor> pieces_1d(const NormalizedTuple1D& tuple,
                                              const RegularCover& cover, int k) {
  const CoverFunctions h(cover);
  if (k < 1 || k > h.q()) throw input_error("layer index k out of [1, q]");
  if (static_cast<int>(tuple.sets.size()) != cover.M ||
      cover.ground != full_mask(cover.M))
    throw input_error("cover must be over the full tuple ground set");
  const auto sums = subset_sums_1d(tuple.sets);
  return detail::layer_pieces_1d(sums, cover, h, tuple.extents, k);
}

namespace detail {

struct CoverInput {
  RegularCover cover;
  bool from_partition = false;
  FractionalPartition partition;
};

inline CoverInput resolve_cover(const FractionalPartition& p, int m) {
  if (p.M != m || p.ground != full_mask(m))
    throw input_error("partition must cover the full tuple ground set");
  return {to_regular_cover(p), true, p};
}

inline CoverInput resolve_cover(const RegularCover& cover, int m) {
  if (cover.M != m || cover.ground != full_mask(m))
    throw input_error("cover must be over the full tuple ground set");
  validate_cover(cover);
  return {cover, false, {}};
}

inline Certificate certify_1d_impl(const std::vector<IntervalUnion>& tuple, CoverInput input,
                                   int jobs, const std::vector<IntervalUnion>* sum_table) {
  const int m = static_cast<int>(tuple.size());
  check_ground_size(m);
  const NormalizedTuple1D normalized = normalize_tuple(tuple);
  const std::vector<IntervalUnion> sums =
      sum_table != nullptr ? std::vector<IntervalUnion>() : subset_sums_1d(normalized.sets);
  // When a caller supplies the subset sums of the *original* tuple we shift
  // them here; sums of translates are translates of sums.
  std::vector<IntervalUnion> shifted_sums;
  const std::vector<IntervalUnion>* sums_ptr = &sums;
  if (sum_table != nullptr) {
    shifted_sums.resize(sum_table->size());
    for (SubsetMask mask = 1; mask < sum_table->size(); ++mask) {
      Rational shift(0);
      for (int e : mask_elements(mask)) shift += normalized.offsets[static_cast<std::size_t>(e) - 1];
      shifted_sums[mask] = translate((*sum_table)[mask], shift);
    }
    sums_ptr = &shifted_sums;
  }

  Certificate cert;
  cert.kind = SetKind::one_d;
  cert.M = m;
  cert.cover = std::move(input.cover);
  cert.from_partition = input.from_partition;
  cert.partition = std::move(input.partition);
  for (const auto& a : normalized.sets) cert.normalized.push_back(a);
  for (const auto& t : normalized.offsets) cert.offsets.push_back({t});
  cert.extents = normalized.extents;

  const CoverFunctions h(cert.cover);
  const int q = h.q();
  const int s = static_cast<int>(cert.cover.sets.size());
  const SubsetMask full = full_mask(m);
  const IntervalUnion& total = (*sums_ptr)[full];
  cert.total_value = total.measure();

  std::vector<std::vector<PieceDescriptor>> layers(static_cast<std::size_t>(q));
  for_each_layer(q, jobs, [&](int k) {
    auto pieces = layer_pieces_1d(*sums_ptr, cert.cover, h, cert.extents, k);
    // Inclusion in the total sum and disjointness within the layer: the
    // pieces must tile without positive overlap.
    Rational piece_sum(0);
    std::vector<IntervalUnion::Interval> pooled;
    for (const auto& piece : pieces) {
      const auto& set = std::get<IntervalUnion>(piece.piece);
      if (!subset_of(set, total))
        throw verification_error("layer piece escapes the total sumset");
      piece_sum += set.measure();
      for (const auto& iv : set.intervals()) pooled.push_back(iv);
    }
    if (IntervalUnion::from_intervals(pooled).measure() != piece_sum)
      throw verification_error("layer pieces overlap with positive measure");
    if (piece_sum > cert.total_value)
      throw verification_error("layer pieces exceed the total measure");
    layers[static_cast<std::size_t>(k) - 1] = std::move(pieces);
  });

  // Window monotonicity along each layer.
  for (const auto& layer : layers)
    for (int j = 0; j < s; ++j) {
      if (layer[static_cast<std::size_t>(j)].window_lo > layer[static_cast<std::size_t>(j)].window_hi)
        throw verification_error("window endpoints out of order");
      if (j + 1 < s &&
          layer[static_cast<std::size_t>(j)].window_hi !=
              layer[static_cast<std::size_t>(j) + 1].window_lo)
        throw verification_error("layer windows do not abut");
    }

  // Recollection: for each j the q window restrictions of sum_{S_j} A tile
  // (0, sum_{S_j} a] up to measure zero, so their lengths add up to the full
  // subset-sum measure; each restriction must also match its translated
  // layer piece in measure.
  cert.recollected.assign(static_cast<std::size_t>(s), Rational(0));
  cert.subset_sum_values.assign(static_cast<std::size_t>(s), Rational(0));
  cert.rhs = 0;
  for (int j = 1; j <= s; ++j) {
    const SubsetMask set_j = cert.cover.sets[static_cast<std::size_t>(j) - 1];
    const IntervalUnion& x = (*sums_ptr)[set_j];
    const Rational x_measure = x.measure();
    Rational collected(0);
    for (int k = 1; k <= q; ++k) {
      const Rational w_lo = extent_sum(cert.extents, h.preimage_upto(k, j - 1) & set_j);
      const Rational w_hi = extent_sum(cert.extents, h.preimage_upto(k, j) & set_j);
      const Rational restricted = truncate(x, w_lo, w_hi).measure();
      const auto& piece =
          std::get<IntervalUnion>(layers[static_cast<std::size_t>(k) - 1][static_cast<std::size_t>(j) - 1].piece);
      if (piece.measure() != restricted)
        throw verification_error("piece measure differs from its window restriction");
      collected += restricted;
    }
    if (collected != x_measure)
      throw verification_error("recollection identity failed");
    cert.recollected[static_cast<std::size_t>(j) - 1] = collected;
    cert.subset_sum_values[static_cast<std::size_t>(j) - 1] = x_measure;
    cert.rhs += x_measure;
  }

  for (auto& layer : layers)
    for (auto& piece : layer) cert.pieces.push_back(std::move(piece));

  cert.lhs = Rational(q) * cert.total_value;
  cert.fractional_lhs = cert.total_value;
  cert.fractional_rhs = cert.rhs / q;

  bool all_intervals = true;
  for (SubsetMask set_j : cert.cover.sets)
    if ((*sums_ptr)[set_j].part_count() != 1) all_intervals = false;
  cert.equality_condition = all_intervals;
  finish_sides(cert);
  if (all_intervals && cert.slack != 0)
    throw verification_error("equality condition met but slack is nonzero");
  return cert;
}

inline Certificate certify_int_impl(const std::vector<IntegerSet>& tuple, CoverInput input,
                                    int jobs) {
  const int m = static_cast<int>(tuple.size());
  check_ground_size(m);
  const NormalizedTupleInt normalized = normalize_tuple(tuple);
  const auto sums = subset_sums_int(normalized.sets);

  Certificate cert;
  cert.kind = SetKind::integer;
  cert.M = m;
  cert.cover = std::move(input.cover);
  cert.from_partition = input.from_partition;
  cert.partition = std::move(input.partition);
  std::vector<Rational> extents;
  for (std::size_t i = 0; i < normalized.sets.size(); ++i) {
    cert.normalized.push_back(normalized.sets[i]);
    cert.offsets.push_back({Rational(normalized.offsets[i])});
    extents.push_back(Rational(normalized.extents[i]));
  }
  cert.extents = extents;

  const CoverFunctions h(cert.cover);
  const int q = h.q();
  const int s = static_cast<int>(cert.cover.sets.size());
  const IntegerSet& total = sums[full_mask(m)];
  cert.total_value = Rational(static_cast<long>(total.cardinality()));

  auto int_extent_sum = [&](SubsetMask mask) {
    Integer out(0);
    for (int e : mask_elements(mask)) out += normalized.extents[static_cast<std::size_t>(e) - 1];
    return out;
  };

  std::vector<std::vector<PieceDescriptor>> layers(static_cast<std::size_t>(q));
  for_each_layer(q, jobs, [&](int k) {
    std::vector<PieceDescriptor> pieces;
    SubsetMask pre_prev = 0;
    std::size_t piece_total = 0;
    std::vector<Integer> pooled;
    for (int j = 1; j <= s; ++j) {
      const SubsetMask pre_cur = h.preimage_upto(k, j);
      const SubsetMask set_j = cert.cover.sets[static_cast<std::size_t>(j) - 1];
      PieceDescriptor piece;
      piece.k = k;
      piece.j = j;
      piece.translator = pre_prev & ~set_j;
      const Integer w_lo = int_extent_sum(pre_prev);
      const Integer w_hi = int_extent_sum(pre_cur);
      piece.window_lo = Rational(w_lo);
      piece.window_hi = Rational(w_hi);
      const IntegerSet shifted = translate(sums[set_j], int_extent_sum(piece.translator));
      IntegerSet realized = truncate(shifted, w_lo, w_hi);
      if (realized.contains(0))
        throw verification_error("integer piece contains the minimal element 0");
      if (!subset_of(realized, total))
        throw verification_error("layer piece escapes the total sumset");
      piece_total += realized.cardinality();
      for (const auto& e : realized.elements()) pooled.push_back(e);
      piece.piece = std::move(realized);
      pieces.push_back(std::move(piece));
      pre_prev = pre_cur;
    }
    if (IntegerSet::from_elements(pooled).cardinality() != piece_total)
      throw verification_error("layer pieces are not disjoint");
    if (piece_total + 1 > total.cardinality())
      throw verification_error("layer pieces exceed |total| - 1");
    layers[static_cast<std::size_t>(k) - 1] = std::move(pieces);
  });

  cert.recollected.assign(static_cast<std::size_t>(s), Rational(0));
  cert.subset_sum_values.assign(static_cast<std::size_t>(s), Rational(0));
  cert.rhs = 0;
  for (int j = 1; j <= s; ++j) {
    const SubsetMask set_j = cert.cover.sets[static_cast<std::size_t>(j) - 1];
    const IntegerSet& x = sums[set_j];
    Rational collected(0);
    for (int k = 1; k <= q; ++k) {
      const Integer w_lo = int_extent_sum(h.preimage_upto(k, j - 1) & set_j);
      const Integer w_hi = int_extent_sum(h.preimage_upto(k, j) & set_j);
      const std::size_t restricted = truncate(x, w_lo, w_hi).cardinality();
      const auto& piece =
          std::get<IntegerSet>(layers[static_cast<std::size_t>(k) - 1][static_cast<std::size_t>(j) - 1].piece);
      if (piece.cardinality() != restricted)
        throw verification_error("piece cardinality differs from its window restriction");
      collected += Rational(static_cast<long>(restricted));
    }
    if (collected != Rational(static_cast<long>(x.cardinality())) - 1)
      throw verification_error("integer recollection identity failed");
    cert.recollected[static_cast<std::size_t>(j) - 1] = collected;
    cert.subset_sum_values[static_cast<std::size_t>(j) - 1] =
        Rational(static_cast<long>(x.cardinality()));
    cert.rhs += collected;  // |sum_{S_j} A| - 1
  }

  for (auto& layer : layers)
    for (auto& piece : layer) cert.pieces.push_back(std::move(piece));

  cert.lhs = Rational(q) * (cert.total_value - 1);
  cert.fractional_lhs = cert.total_value - 1;
  cert.fractional_rhs = cert.rhs / q;

  // Sufficient equality condition: a common increment rho for all covered
  // subset sums; singletons are degenerate progressions of every increment.
  std::optional<Integer> common;
  bool compatible = true;
  for (SubsetMask set_j : cert.cover.sets) {
    const auto inc = arithmetic_progression_increment(sums[set_j]);
    if (!inc) {
      compatible = false;
      break;
    }
    if (*inc == 0) continue;
    if (common && *common != *inc) {
      compatible = false;
      break;
    }
    common = *inc;
  }
  cert.equality_condition = compatible;
  if (compatible) cert.common_increment = common.value_or(Integer(0));
  finish_sides(cert);
  if (compatible && cert.slack != 0)
    throw verification_error("equality condition met but slack is nonzero");
  return cert;
}

inline Certificate certify_boxes_impl(const std::vector<BoxUnion>& tuple, CoverInput input,
                                      int jobs, int axis) {
  const int m = static_cast<int>(tuple.size());
  check_ground_size(m);
  const int dim = tuple.empty() ? 1 : tuple.front().dim();
  for (const auto& a : tuple)
    if (a.dim() != dim) throw input_error("box summands must share one dimension");
  const int ax = axis - 1;
  const NormalizedTupleBoxes normalized = normalize_tuple(tuple, axis);
  const auto sums = subset_sums_boxes(normalized.sets);

  Certificate cert;
  cert.kind = SetKind::boxes;
  cert.M = m;
  cert.dim = dim;
  cert.axis = axis;
  cert.cover = std::move(input.cover);
  cert.from_partition = input.from_partition;
  cert.partition = std::move(input.partition);
  for (std::size_t i = 0; i < normalized.sets.size(); ++i) {
    cert.normalized.push_back(normalized.sets[i]);
    cert.offsets.push_back(normalized.offsets[i]);
  }
  cert.extents = normalized.extents;
  cert.extent_points = normalized.extent_points;

  const CoverFunctions h(cert.cover);
  const int q = h.q();
  const int s = static_cast<int>(cert.cover.sets.size());
  const BoxUnion& total = sums[full_mask(m)];
  cert.total_value = union_volume(total);

  auto vector_extent_sum = [&](SubsetMask mask) {
    std::vector<Rational> out(static_cast<std::size_t>(dim), Rational(0));
    for (int e : mask_elements(mask))
      for (int c = 0; c < dim; ++c)
        out[static_cast<std::size_t>(c)] +=
            normalized.extent_points[static_cast<std::size_t>(e) - 1][static_cast<std::size_t>(c)];
    return out;
  };

  std::vector<std::vector<PieceDescriptor>> layers(static_cast<std::size_t>(q));
  std::vector<Rational> layer_sums(static_cast<std::size_t>(q));
  for_each_layer(q, jobs, [&](int k) {
    std::vector<PieceDescriptor> pieces;
    SubsetMask pre_prev = 0;
    Rational piece_sum(0);
    BoxUnion pooled(dim);
    for (int j = 1; j <= s; ++j) {
      const SubsetMask pre_cur = h.preimage_upto(k, j);
      const SubsetMask set_j = cert.cover.sets[static_cast<std::size_t>(j) - 1];
      PieceDescriptor piece;
      piece.k = k;
      piece.j = j;
      piece.translator = pre_prev & ~set_j;
      piece.window_lo = extent_sum(cert.extents, pre_prev);
      piece.window_hi = extent_sum(cert.extents, pre_cur);
      const BoxUnion shifted = translate(sums[set_j], vector_extent_sum(piece.translator));
      BoxUnion realized = slab_truncate(shifted, piece.window_lo, piece.window_hi, ax);
      // Structural slab containment makes the within-layer disjointness a
      // certainty up to the null boundary hyperplanes.
      for (const auto& box : realized.boxes())
        if (box[static_cast<std::size_t>(ax)].lo < piece.window_lo ||
            box[static_cast<std::size_t>(ax)].hi > piece.window_hi)
          throw verification_error("slab piece escapes its window");
      piece_sum += union_volume(realized);
      pooled.append(realized);
      piece.piece = std::move(realized);
      pieces.push_back(std::move(piece));
      pre_prev = pre_cur;
    }
    if (!subset_up_to_null(pooled, total))
      throw verification_error("layer pieces escape the total sumset");
    if (union_volume(pooled) != piece_sum)
      throw verification_error("layer pieces overlap with positive volume");
    if (piece_sum > cert.total_value)
      throw verification_error("layer pieces exceed the total volume");
    layer_sums[static_cast<std::size_t>(k) - 1] = piece_sum;
    layers[static_cast<std::size_t>(k) - 1] = std::move(pieces);
  });

  cert.recollected.assign(static_cast<std::size_t>(s), Rational(0));
  cert.subset_sum_values.assign(static_cast<std::size_t>(s), Rational(0));
  cert.rhs = 0;
  for (int j = 1; j <= s; ++j) {
    const SubsetMask set_j = cert.cover.sets[static_cast<std::size_t>(j) - 1];
    const BoxUnion& x = sums[set_j];
    const Rational x_volume = union_volume(x);
    Rational collected(0);
    for (int k = 1; k <= q; ++k) {
      const Rational w_lo = extent_sum(cert.extents, h.preimage_upto(k, j - 1) & set_j);
      const Rational w_hi = extent_sum(cert.extents, h.preimage_upto(k, j) & set_j);
      const Rational restricted = union_volume(slab_truncate(x, w_lo, w_hi, ax));
      const auto& piece =
          std::get<BoxUnion>(layers[static_cast<std::size_t>(k) - 1][static_cast<std::size_t>(j) - 1].piece);
      if (union_volume(piece) != restricted)
        throw verification_error("piece volume differs from its slab restriction");
      collected += restricted;
    }
    if (collected != x_volume)
      throw verification_error("slab recollection identity failed");
    cert.recollected[static_cast<std::size_t>(j) - 1] = collected;
    cert.subset_sum_values[static_cast<std::size_t>(j) - 1] = x_volume;
    cert.rhs += x_volume;
  }

  for (auto& layer : layers)
    for (auto& piece : layer) cert.pieces.push_back(std::move(piece));

  cert.lhs = Rational(q) * cert.total_value;
  cert.fractional_lhs = cert.total_value;
  cert.fractional_rhs = cert.rhs / q;
  cert.equality_condition = std::nullopt;  // no sufficient condition in d >= 2
  finish_sides(cert);
  return cert;
}

}  // namespace detail

/// Certifies q |sum_{[M]} A| >= sum_j |sum_{S_j} A| by building and checking
/// all layer decompositions; for fractional input the cover is the
/// denominator-cleared expansion and the fractional sides are the q-divided
/// ones. Throws verification_error if any internal identity fails (a bug,
/// not a possible mathematical outcome).
inline Certificate certify_1d(const std::vector<IntervalUnion>& tuple,
                              const FractionalPartition& partition, int jobs = 1,
                              const std::vector<IntervalUnion>* sum_table = nullptr) {
  return detail::certify_1d_impl(
      tuple, detail::resolve_cover(partition, static_cast<int>(tuple.size())), jobs, sum_table);
}

inline Certificate certify_1d(const std::vector<IntervalUnion>& tuple, const RegularCover& cover,
                              int jobs = 1,
                              const std::vector<IntervalUnion>* sum_table = nullptr) {
  return detail::certify_1d_impl(
      tuple, detail::resolve_cover(cover, static_cast<int>(tuple.size())), jobs, sum_table);
}

/// Integer analogue with cardinalities: q (|sum A| - 1) >= sum_j (|sum_{S_j} A| - 1).
inline Certificate certify_int(const std::vector<IntegerSet>& tuple,
                               const FractionalPartition& partition, int jobs = 1) {
  return detail::certify_int_impl(
      tuple, detail::resolve_cover(partition, static_cast<int>(tuple.size())), jobs);
}

inline Certificate certify_int(const std::vector<IntegerSet>& tuple, const RegularCover& cover,
                               int jobs = 1) {
  return detail::certify_int_impl(
      tuple, detail::resolve_cover(cover, static_cast<int>(tuple.size())), jobs);
}

/// d-dimensional version: windows become slabs of the chosen coordinate
/// (any axis works by symmetry; 1 by default).
inline Certificate certify_boxes(const std::vector<BoxUnion>& tuple,
                                 const FractionalPartition& partition, int jobs = 1,
                                 int axis = 1) {
  return detail::certify_boxes_impl(
      tuple, detail::resolve_cover(partition, static_cast<int>(tuple.size())), jobs, axis);
}

inline Certificate certify_boxes(const std::vector<BoxUnion>& tuple, const RegularCover& cover,
                                 int jobs = 1, int axis = 1) {
  return detail::certify_boxes_impl(
      tuple, detail::resolve_cover(cover, static_cast<int>(tuple.size())), jobs, axis);
}

}  // namespace sumvol

#endif  // SUMVOL_DECOMPOSITION_HPP
