#include "orthojoin/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace orthojoin {

bool is_multiplicity_matrix_for(const MultiplicityMatrix& v, const SizeTuple& m) {
    if (v.cols() != m.length()) {
        throw std::invalid_argument("multiplicity matrix has " + std::to_string(v.cols()) + " columns but the tuple has " +
                                    std::to_string(m.length()) + " components");
    }
    for (int c = 0; c < v.cols(); ++c) {
        int sum = 0;
        int nonzero = 0;
        for (int r = 0; r < v.rows(); ++r) {
            sum += v(r, c);
            if (v(r, c) != 0) ++nonzero;
        }
        if (sum != m[c]) return false;
        if (m[c] >= 2 && nonzero < 2) return false;
    }
    return true;
}

bool middles_cross_positive(const IntMatrix& mid_v, const IntMatrix& mid_w) {
    for (int i = 0; i < mid_v.cols(); ++i) {
        for (int j = 0; j < mid_w.cols(); ++j) {
            bool positive = false;
            for (int s = 0; s < mid_v.rows() && !positive; ++s) positive = mid_v(s, i) > 0 && mid_w(s, j) > 0;
            if (!positive) return false;
        }
    }
    return true;
}

bool is_compatible(const MultiplicityMatrix& v, const MultiplicityMatrix& w) {
    if (v.rows() != w.rows()) {
        throw std::invalid_argument("compatibility needs equal row counts, got " + std::to_string(v.rows()) + " and " +
                                    std::to_string(w.rows()));
    }
    const IntMatrix mv = v.middle();
    const IntMatrix mw = w.middle();
    if (mv.row_sums() != mw.row_sums()) return false;
    return middles_cross_positive(mv, mw);
}

std::optional<std::vector<int>> compose_bounded(int target, std::span<const int> caps) {
    if (caps.empty()) throw std::invalid_argument("compose_bounded needs at least one cap");
    if (std::any_of(caps.begin(), caps.end(), [](int c) { return c < 1; })) {
        throw std::invalid_argument("compose_bounded caps must be positive");
    }
    const long slots = static_cast<long>(caps.size());
    const long capacity = std::accumulate(caps.begin(), caps.end(), 0L);
    if (target < slots || target > capacity) return std::nullopt;

    std::vector<int> b(caps.size(), 1);
    int remaining = target - static_cast<int>(slots);
    for (std::size_t i = 0; i < caps.size() && remaining > 0; ++i) {
        const int extra = std::min(remaining, caps[i] - 1);
        b[i] += extra;
        remaining -= extra;
    }
    return b;
}

std::optional<IntMatrix> fill_two_row_table(int r1, int r2, std::span<const int> col_sums) {
    if (r1 < 0 || r2 < 0 || std::any_of(col_sums.begin(), col_sums.end(), [](int c) { return c < 0; })) {
        return std::nullopt;
    }
    if (static_cast<long>(r1) + r2 != std::accumulate(col_sums.begin(), col_sums.end(), 0L)) return std::nullopt;

    IntMatrix y(2, static_cast<int>(col_sums.size()));
    int left = r1;
    for (int j = 0; j < y.cols(); ++j) {
        const int c = col_sums[static_cast<std::size_t>(j)];
        y(0, j) = std::min(left, c);
        y(1, j) = c - y(0, j);
        left -= y(0, j);
    }
    return y;
}

namespace {

void compositions_desc(int remaining, int slot, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (slot + 1 == static_cast<int>(cur.size())) {
        cur[static_cast<std::size_t>(slot)] = remaining;
        out.push_back(cur);
        return;
    }
    for (int x = remaining; x >= 0; --x) {
        cur[static_cast<std::size_t>(slot)] = x;
        compositions_desc(remaining - x, slot + 1, cur, out);
    }
}

}  // namespace

std::vector<std::vector<int>> multiplicity_columns(int order, int rows) {
    if (order < 1) throw std::invalid_argument("clique order must be positive");
    if (rows < 1) throw std::invalid_argument("row count must be positive");
    std::vector<std::vector<int>> all;
    std::vector<int> cur(static_cast<std::size_t>(rows), 0);
    compositions_desc(order, 0, cur, all);
    if (order == 1) return all;
    std::vector<std::vector<int>> valid;
    for (auto& col : all) {
        if (std::count_if(col.begin(), col.end(), [](int x) { return x > 0; }) >= 2) valid.push_back(std::move(col));
    }
    return valid;
}

void for_each_multiplicity_matrix(const SizeTuple& m, int rows,
                                  const std::function<bool(const MultiplicityMatrix&)>& visit) {
    if (rows < 3) throw std::invalid_argument("multiplicity matrices need at least 3 rows");
    const int k = m.length();
    std::vector<std::vector<std::vector<int>>> choices;
    choices.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) choices.push_back(multiplicity_columns(m[i], rows));
    if (std::any_of(choices.begin(), choices.end(), [](const auto& c) { return c.empty(); })) return;

    // Odometer with the last column fastest.
    std::vector<std::size_t> pick(static_cast<std::size_t>(k), 0);
    IntMatrix data(rows, k);
    while (true) {
        for (int i = 0; i < k; ++i) {
            const auto& col = choices[static_cast<std::size_t>(i)][pick[static_cast<std::size_t>(i)]];
            for (int r = 0; r < rows; ++r) data(r, i) = col[static_cast<std::size_t>(r)];
        }
        if (!visit(MultiplicityMatrix(data))) return;
        int i = k - 1;
        while (i >= 0) {
            auto& p = pick[static_cast<std::size_t>(i)];
            if (++p < choices[static_cast<std::size_t>(i)].size()) break;
            p = 0;
            --i;
        }
        if (i < 0) return;
    }
}

std::vector<MultiplicityMatrix> enumerate_multiplicity_matrices(const SizeTuple& m, int rows) {
    std::vector<MultiplicityMatrix> out;
    for_each_multiplicity_matrix(m, rows, [&](const MultiplicityMatrix& v) {
        out.push_back(v);
        return true;
    });
    return out;
}

MiddleIndex build_middle_index(const SizeTuple& m, int rows) {
    MiddleIndex index;
    index.rows = rows;
    std::map<std::vector<int>, bool> seen;  // keyed by flattened middle
    std::size_t position = 0;
    for_each_multiplicity_matrix(m, rows, [&](const MultiplicityMatrix& v) {
        const std::size_t here = position++;
        IntMatrix mid = v.middle();
        std::vector<int> flat;
        flat.reserve(static_cast<std::size_t>(mid.rows() * mid.cols()));
        for (int c = 0; c < mid.cols(); ++c) {
            int col = 0;
            for (int r = 0; r < mid.rows(); ++r) {
                flat.push_back(mid(r, c));
                col += mid(r, c);
            }
            if (col == 0) return true;
        }
        if (!seen.emplace(std::move(flat), true).second) return true;
        index.buckets[mid.row_sums()].push_back(MiddleIndex::Entry{v, std::move(mid), here});
        return true;
    });
    return index;
}

std::optional<std::pair<MultiplicityMatrix, MultiplicityMatrix>>
compatible_pair_exists(const SizeTuple& m, const SizeTuple& n, int max_rows) {
    if (max_rows < 3) throw std::invalid_argument("max_rows must be at least 3");
    for (int rows = 3; rows <= max_rows; ++rows) {
        const MiddleIndex vi = build_middle_index(m, rows);
        const MiddleIndex wi = build_middle_index(n, rows);
        const MiddleIndex::Entry* best_v = nullptr;
        const MiddleIndex::Entry* best_w = nullptr;
        for (const auto& [key, vs] : vi.buckets) {
            auto it = wi.buckets.find(key);
            if (it == wi.buckets.end()) continue;
            for (const auto& ve : vs) {
                if (best_v && ve.order > best_v->order) break;
                for (const auto& we : it->second) {
                    if (best_v && ve.order == best_v->order && we.order >= best_w->order) break;
                    if (middles_cross_positive(ve.middle, we.middle)) {
                        best_v = &ve;
                        best_w = &we;
                        break;
                    }
                }
            }
        }
        if (best_v) return std::make_pair(best_v->representative, best_w->representative);
    }
    return std::nullopt;
}

}  // namespace orthojoin
