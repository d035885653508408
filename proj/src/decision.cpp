#include "orthojoin/decision.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "orthojoin/combinatorics.hpp"

namespace orthojoin {

namespace {

// The characterisation is stated for k <= l; everything below works on the
// oriented pair and maps back at the end.
struct Oriented {
    const SizeTuple& g;  // fewer components
    const SizeTuple& h;
    bool swapped;
};

Oriented orient(const SizeTuple& m, const SizeTuple& n) {
    if (m.length() > n.length()) return {n, m, true};
    return {m, n, false};
}

Rule oriented_rule(const SizeTuple& g, const SizeTuple& h) {
    const int k = g.length();
    const int l = h.length();
    if (g.iso() == 0 && h.iso() == 0) return l <= g.total() ? Rule::g1 : Rule::none;
    if (g.iso() > 0) return k + l <= g.total() + g.iso() ? Rule::g2 : Rule::none;
    const bool ok = k + l <= g.total() || (2 * k <= l && l <= g.total()) || (l <= 2 * k && 2 * k <= h.total());
    return ok ? Rule::g3 : Rule::none;
}

int oriented_mu(const SizeTuple& g, const SizeTuple& h) {
    const int k = g.length();
    const int l = h.length();
    if (g.total() + g.iso() - k < l && l < 2 * k) return 2 * k;
    return l;
}

MultiplicityMatrix from_rows(int rows, int cols, const std::vector<std::vector<int>>& cols_data) {
    IntMatrix data(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) data(r, c) = cols_data[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
    return MultiplicityMatrix(std::move(data));
}

// Three rows: V = (m - t; t; 0), W = (n - 1; 1; 0) with sum(t) = l.
Witness three_row(const SizeTuple& g, const SizeTuple& h) {
    std::vector<int> caps;
    for (int x : g.entries()) caps.push_back(std::max(1, x - 1));
    const auto t = compose_bounded(h.length(), caps);
    if (!t) throw std::logic_error("three-row construction: no admissible split");
    std::vector<std::vector<int>> vc, wc;
    for (int i = 0; i < g.length(); ++i) vc.push_back({g[i] - (*t)[static_cast<std::size_t>(i)], (*t)[static_cast<std::size_t>(i)], 0});
    for (int x : h.entries()) wc.push_back({x - 1, 1, 0});
    return {from_rows(3, g.length(), vc), from_rows(3, h.length(), wc), "three-row"};
}

// No isolated vertices on either side, k <= l < 2k: V = (m - 2; 1; 1; 0), W
// spreads the first 2k - l columns over both middle rows.
Witness four_row_no_isolated(const SizeTuple& g, const SizeTuple& h) {
    const int k = g.length();
    const int l = h.length();
    const int both = 2 * k - l;
    std::vector<std::vector<int>> vc, wc;
    for (int x : g.entries()) vc.push_back({x - 2, 1, 1, 0});
    for (int j = 0; j < l; ++j) {
        const int x = h[j];
        if (j < both) {
            wc.push_back({x - 2, 1, 1, 0});
        } else if (j < k) {
            wc.push_back({x - 1, 1, 0, 0});
        } else {
            wc.push_back({x - 1, 0, 1, 0});
        }
    }
    return {from_rows(4, k, vc), from_rows(4, l, wc), "four-row-no-isolated"};
}

// g has no isolated vertices and l <= 2k <= |h|. Shrink h to p <= h with
// |p| = 2k, build the pair for p, then put the deficit h - p into the first
// row of W (the middle is unchanged, so compatibility is preserved).
Witness four_row_shrink_and_lift(const SizeTuple& g, const SizeTuple& h) {
    const int k = g.length();
    const int l = h.length();
    const auto p = compose_bounded(2 * k, h.entries());
    if (!p) throw std::logic_error("shrink-and-lift construction: no admissible p");

    std::vector<int> big, ones;
    for (int j = 0; j < l; ++j) ((*p)[static_cast<std::size_t>(j)] >= 2 ? big : ones).push_back(j);
    const int t = static_cast<int>(big.size());
    const int a = static_cast<int>(ones.size()) / 2;
    const int b = static_cast<int>(ones.size()) % 2;

    std::vector<int> col_sums;
    for (int j : big) col_sums.push_back((*p)[static_cast<std::size_t>(j)] - 2);
    const auto y = fill_two_row_table(k - t - a - b, k - t - a, col_sums);
    if (!y) throw std::logic_error("shrink-and-lift construction: row sums infeasible");

    std::vector<std::vector<int>> vc, wc(static_cast<std::size_t>(l));
    for (int x : g.entries()) vc.push_back({x - 2, 1, 1, 0});
    for (int idx = 0; idx < t; ++idx) wc[static_cast<std::size_t>(big[static_cast<std::size_t>(idx)])] = {0, (*y)(0, idx) + 1, (*y)(1, idx) + 1, 0};
    for (int idx = 0; idx < static_cast<int>(ones.size()); ++idx) {
        const bool upper = idx < a + b;
        wc[static_cast<std::size_t>(ones[static_cast<std::size_t>(idx)])] = {0, upper ? 1 : 0, upper ? 0 : 1, 0};
    }
    for (int j = 0; j < l; ++j) wc[static_cast<std::size_t>(j)][0] += h[j] - (*p)[static_cast<std::size_t>(j)];
    return {from_rows(4, k, vc), from_rows(4, l, wc), "four-row-shrink-and-lift"};
}

// g has no isolated vertices and 2k <= l <= |g|: V = (m - r - 1; 1; r; 0) with
// sum(r) = l - k; W puts its first k columns in the first middle row and the
// rest in the second.
Witness four_row_spread(const SizeTuple& g, const SizeTuple& h) {
    const int k = g.length();
    const int l = h.length();
    std::vector<int> caps;
    for (int x : g.entries()) caps.push_back(x - 1);
    const auto r = compose_bounded(l - k, caps);
    if (!r) throw std::logic_error("spread construction: no admissible split");
    std::vector<std::vector<int>> vc, wc;
    for (int i = 0; i < k; ++i) {
        const int ri = (*r)[static_cast<std::size_t>(i)];
        vc.push_back({g[i] - ri - 1, 1, ri, 0});
    }
    for (int j = 0; j < l; ++j) {
        if (j < k) {
            wc.push_back({h[j] - 1, 1, 0, 0});
        } else {
            wc.push_back({h[j] - 1, 0, 1, 0});
        }
    }
    return {from_rows(4, k, vc), from_rows(4, l, wc), "four-row-spread"};
}

Witness oriented_witness(const SizeTuple& g, const SizeTuple& h) {
    const int k = g.length();
    const int l = h.length();
    if (k + l <= std::min(g.total() + g.iso(), h.total() + h.iso())) return three_row(g, h);
    if (g.iso() == 0 && h.iso() == 0 && l < 2 * k) return four_row_no_isolated(g, h);
    if (g.iso() == 0 && l <= 2 * k && 2 * k <= h.total()) return four_row_shrink_and_lift(g, h);
    if (g.iso() == 0 && 2 * k <= l && l <= g.total()) return four_row_spread(g, h);
    throw std::logic_error("no witness construction applies to " + g.to_string() + " | " + h.to_string());
}

void require_q2(const SizeTuple& m, const SizeTuple& n) {
    if (formula_q(m, n) != 2) {
        throw NotRealizable("q(" + m.to_string() + " | " + n.to_string() + ") = 3: no compatible multiplicity matrices");
    }
}

}  // namespace

Rule decision_rule(const SizeTuple& m, const SizeTuple& n) {
    const auto o = orient(m, n);
    return oriented_rule(o.g, o.h);
}

int formula_q(const SizeTuple& m, const SizeTuple& n) { return decision_rule(m, n) == Rule::none ? 3 : 2; }

Witness construct_witness(const SizeTuple& m, const SizeTuple& n) {
    require_q2(m, n);
    const auto o = orient(m, n);
    Witness w = oriented_witness(o.g, o.h);
    if (o.swapped) std::swap(w.v, w.w);
    return w;
}

int mu(const SizeTuple& m, const SizeTuple& n) {
    require_q2(m, n);
    const auto o = orient(m, n);
    return oriented_mu(o.g, o.h);
}

std::pair<int, int> iplus_range(const SizeTuple& m, const SizeTuple& n) {
    const int value = mu(m, n);
    return {value, m.total() + n.total() - value};
}

DecisionReport decide_q(const SizeTuple& m, const SizeTuple& n) {
    DecisionReport report{m, n, 3, Rule::none, false, std::nullopt, std::nullopt, std::nullopt};
    const auto o = orient(m, n);
    report.swapped = o.swapped;
    report.rule = oriented_rule(o.g, o.h);
    if (report.rule == Rule::none) {
        report.q = 3;
        return report;
    }
    report.q = 2;
    report.witness = construct_witness(m, n);
    report.mu = oriented_mu(o.g, o.h);
    report.iplus_range = std::make_pair(*report.mu, m.total() + n.total() - *report.mu);
    return report;
}

std::pair<MultiplicityMatrix, MultiplicityMatrix>
witness_same_size_components(const SizeTuple& sizes_g, const SizeTuple& sizes_h, int base) {
    if (sizes_g.length() != sizes_h.length()) throw std::invalid_argument("both graphs need the same number of components");
    if (sizes_g.length() < 2) throw std::invalid_argument("construction needs at least two components per graph");
    if (base < 1) throw std::invalid_argument("base order must be positive");
    const int k = sizes_g.length();
    const int rows = base + 2;
    auto build = [&](const SizeTuple& sizes) {
        IntMatrix data(rows, k);
        for (int i = 0; i < k; ++i) {
            const int excess = sizes[i] - base;
            if (excess < 0 || excess > 2) {
                throw std::invalid_argument("component order " + std::to_string(sizes[i]) + " not in {" +
                                            std::to_string(base) + ", " + std::to_string(base + 1) + ", " +
                                            std::to_string(base + 2) + "}");
            }
            data(0, i) = std::min(1, excess);
            for (int r = 1; r <= base; ++r) data(r, i) = 1;
            data(rows - 1, i) = excess - data(0, i);
        }
        return MultiplicityMatrix(std::move(data));
    };
    return {build(sizes_g), build(sizes_h)};
}

std::pair<MultiplicityMatrix, MultiplicityMatrix> witness_connected_vs_cliques(int m, const SizeTuple& n) {
    const int l = n.length();
    if (m < l || m > l + 2) {
        throw std::invalid_argument("connected order " + std::to_string(m) + " must be in [" + std::to_string(l) + ", " +
                                    std::to_string(l + 2) + "]");
    }
    IntMatrix v(l + 2, 1);
    v(0, 0) = m - l >= 1 ? 1 : 0;
    for (int r = 1; r <= l; ++r) v(r, 0) = 1;
    v(l + 1, 0) = m - l == 2 ? 1 : 0;

    IntMatrix w(l + 2, l);
    for (int j = 0; j < l; ++j) {
        w(0, j) = n[j] - 1;
        w(j + 1, j) = 1;
    }
    return {MultiplicityMatrix(std::move(v)), MultiplicityMatrix(std::move(w))};
}

}  // namespace orthojoin
