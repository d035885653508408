#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "orthojoin/core.hpp"

namespace orthojoin {

/// Rows sufficient for every compatible pair between unions of cliques.
inline constexpr int kDefaultMaxRows = 4;

/// V is a multiplicity matrix for the union of cliques m: column i sums to
/// m_i, and a column for a clique with m_i >= 2 has at least two nonzero
/// entries. Throws std::invalid_argument when V.cols != m.length.
bool is_multiplicity_matrix_for(const MultiplicityMatrix& v, const SizeTuple& m);

/// Middle row sums agree and every entry of middle(V)^T middle(W) is positive.
/// Throws std::invalid_argument when the row counts differ.
bool is_compatible(const MultiplicityMatrix& v, const MultiplicityMatrix& w);

/// Some b with 1 <= b_i <= caps_i and sum(b) == target, or nullopt when
/// target lies outside [len(caps), sum(caps)]. Fills greedily from the left.
std::optional<std::vector<int>> compose_bounded(int target, std::span<const int> caps);

/// 2 x t nonnegative table with row sums (r1, r2) and the given column sums,
/// filled greedily left to right. nullopt when r1 + r2 != sum(col_sums).
std::optional<IntMatrix> fill_two_row_table(int r1, int r2, std::span<const int> col_sums);

/// Valid columns of height `rows` for a clique of order `order`, in
/// descending lexicographic order.
std::vector<std::vector<int>> multiplicity_columns(int order, int rows);

/// Calls `visit` with every r x k multiplicity matrix for m, each exactly
/// once. Order: descending lexicographic on the column-major flattening, so
/// the first column varies slowest. Stops early when `visit` returns false.
void for_each_multiplicity_matrix(const SizeTuple& m, int rows,
                                  const std::function<bool(const MultiplicityMatrix&)>& visit);

/// All matrices from for_each_multiplicity_matrix, collected.
std::vector<MultiplicityMatrix> enumerate_multiplicity_matrices(const SizeTuple& m, int rows);

/// Distinct middles of the multiplicity matrices for one tuple at one row
/// count, bucketed by middle row-sum vector. Compatibility depends only on
/// the middle, so one representative per middle is enough for pair search.
/// Matrices with a zero middle column are dropped: they have no partner.
struct MiddleIndex {
    struct Entry {
        MultiplicityMatrix representative;  // first matrix with this middle
        IntMatrix middle;
        std::size_t order = 0;  // enumeration position of the representative
    };
    int rows = 0;
    /// Keyed by middle row sums; entries within a bucket keep enumeration order.
    std::map<std::vector<int>, std::vector<Entry>> buckets;
};

MiddleIndex build_middle_index(const SizeTuple& m, int rows);

/// middle(V)^T middle(W) > 0 for two middles with equal row counts.
bool middles_cross_positive(const IntMatrix& mid_v, const IntMatrix& mid_w);

/// First compatible pair (V for m, W for n) with a common row count in
/// [3, max_rows]. Smaller row counts are tried first; within a row count the
/// pair is the first in (V order, W order). nullopt when none exists.
std::optional<std::pair<MultiplicityMatrix, MultiplicityMatrix>>
compatible_pair_exists(const SizeTuple& m, const SizeTuple& n, int max_rows = kDefaultMaxRows);

}  // namespace orthojoin
