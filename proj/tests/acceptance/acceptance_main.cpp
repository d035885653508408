// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "orthojoin/combinatorics.hpp"
#include "orthojoin/decision.hpp"
#include "orthojoin/fixtures.hpp"
#include "orthojoin/oracle.hpp"
#include "orthojoin/realization.hpp"

using namespace orthojoin;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

SizeTuple repeated(int value, int count) { return SizeTuple(std::vector<int>(static_cast<std::size_t>(count), value)); }

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

// Canonical tuples (descending) with entries in [1, max_entry] and total <= max_total.
std::vector<SizeTuple> canonical_tuples(int max_entry, int max_total) {
    std::vector<SizeTuple> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int cap) {
        if (!cur.empty()) out.emplace_back(cur);
        for (int p = std::min(left, cap); p >= 1; --p) {
            cur.push_back(p);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    rec(max_total, max_entry);
    return out;
}

Outcome ac1() {
    struct Case {
        SizeTuple m, n;
        int q;
    };
    const std::vector<Case> cases{{{2, 2}, {1, 1, 1}, 3}, {{2, 2}, {1, 1}, 2}, {{2, 2}, {1, 1, 1, 1}, 2}};
    bool ok = true;
    double worst = 0.0;
    std::ostringstream os;
    for (const auto& c : cases) {
        const auto t0 = Clock::now();
        const auto r = decide_q(c.m, c.n);
        const double ms = seconds_since(t0) * 1e3;
        worst = std::max(worst, ms);
        ok = ok && r.q == c.q && ms < 1.0;
        os << "q(" << c.m.to_string() << "|" << c.n.to_string() << ")=" << r.q << " ";
    }
    os << "slowest=" << std::fixed << std::setprecision(4) << worst << "ms";
    return {ok, os.str()};
}

Outcome ac2() {
    int checked = 0, wrong = 0;
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> entry(1, 4);
    for (int m = 1; m <= 8; ++m) {
        for (int l = 1; l <= 8; ++l) {
            for (int mask = 0; mask < (1 << l); ++mask) {
                std::vector<int> n(static_cast<std::size_t>(l));
                for (int j = 0; j < l; ++j) n[static_cast<std::size_t>(j)] = (mask >> j & 1) ? 2 : 1;
                ++checked;
                if ((decide_q(SizeTuple{m}, SizeTuple(n)).q == 2) != (l <= m)) ++wrong;
            }
            for (int sample = 0; sample < 200; ++sample) {
                std::vector<int> n(static_cast<std::size_t>(l));
                for (int& x : n) x = entry(rng);
                ++checked;
                if ((decide_q(SizeTuple{m}, SizeTuple(n)).q == 2) != (l <= m)) ++wrong;
            }
        }
    }
    return {wrong == 0, std::to_string(checked) + " joins, " + std::to_string(wrong) + " disagree with q=2 iff l<=m"};
}

Outcome ac3() {
    const auto t0 = Clock::now();
    int cells = 0, wrong = 0;
    for (int s = 1; s <= 4; ++s)
        for (int a = 1; a <= 4; ++a)
            for (int b = 1; b <= 12; ++b) {
                const bool expect = s == 2 ? (b == a || b == 2 * a) : (a <= b && b <= s * a);
                ++cells;
                if ((decide_q(repeated(s, a), repeated(1, b)).q == 2) != expect) ++wrong;
            }
    const double secs = seconds_since(t0);
    std::ostringstream os;
    os << cells << " cells, " << wrong << " mismatches, " << std::fixed << std::setprecision(4) << secs << "s";
    return {wrong == 0 && secs < 1.0, os.str()};
}

Outcome ac4() {
    CrossCheckOptions opt;
    opt.limit = 6;
    opt.r_max = 4;
    const auto r = cross_check(opt);
    std::ostringstream os;
    os << r.cells.size() << " pairs, " << r.q2_cells << " with q=2, " << r.counterexamples().size()
       << " disagreements, " << std::fixed << std::setprecision(2) << r.seconds << "s";
    return {r.ok() && r.cells.size() == 841 && r.seconds < 60.0, os.str()};
}

Outcome ac5() {
    const SizeTuple a{3, 2}, b{2, 1, 1}, c{2, 2};
    const int f1 = mu(a, b), f2 = mu(c, b);
    const int b1 = brute_force_mu(a, b), b2 = brute_force_mu(c, b);
    std::ostringstream os;
    os << "mu((3,2),(2,1,1))=" << f1 << "/" << b1 << " mu((2,2),(2,1,1))=" << f2 << "/" << b2 << " (formula/brute)";
    return {f1 == 3 && b1 == 3 && f2 == 4 && b2 == 4, os.str()};
}

Outcome ac6() {
    const auto f = cycles_fixture();
    RealizationConfig cfg;
    const auto r = verify_realization(f.x, f.pattern, cfg);
    bool unit = true;
    for (double e : r.eigenvalues) unit = unit && std::abs(std::abs(e) - 1.0) <= 1e-12;
    std::ostringstream os;
    os << "residual=" << std::scientific << std::setprecision(2) << r.residual << " symmetric=" << r.symmetric
       << " pattern_ok=" << r.pattern_ok << " spectrum=(+1:" << r.iplus << ", -1:" << r.iminus << ")";
    return {r.passed() && r.residual <= 1e-12 && unit, os.str()};
}

Outcome ac7() {
    const auto t0 = Clock::now();
    const auto tuples = canonical_tuples(3, 13);
    int pairs = 0, first_seed = 0, rescued = 0, failed = 0, bad_result = 0, retries = 0;
    std::ostringstream log;
    for (const auto& m : tuples) {
        for (const auto& n : tuples) {
            if (m.total() + n.total() > 14 || formula_q(m, n) != 2) continue;
            ++pairs;
            const auto range = iplus_range(m, n);
            auto accept = [&](const RealizationResult& res) {
                const bool good = res.verification.passed() && res.residual <= 1e-9 &&
                                  res.verification.iplus >= range.first && res.verification.iplus <= range.second &&
                                  res.verification.iplus == res.iplus;
                if (!good) ++bad_result;
                return good;
            };
            RealizationConfig cfg;
            cfg.seed = 0;
            try {
                const auto res = realize(m, n, cfg);
                retries += res.retries_used;
                if (accept(res)) ++first_seed;
                continue;
            } catch (const RetryExhausted& e) {
                log << " seed 0 exhausted for " << m.to_string() << "|" << n.to_string() << ";";
            }
            bool ok = false;
            for (std::uint64_t seed = 1; seed <= 8 && !ok; ++seed) {
                cfg.seed = seed;
                try {
                    ok = accept(realize(m, n, cfg));
                } catch (const RetryExhausted&) {
                }
            }
            ok ? ++rescued : ++failed;
        }
    }
    const double rate = pairs ? static_cast<double>(first_seed) / pairs : 0.0;
    std::ostringstream os;
    os << pairs << " q=2 pairs, first-seed success " << first_seed << " (" << std::fixed << std::setprecision(2)
       << 100.0 * rate << "%), rescued " << rescued << ", failed " << failed << ", invalid results " << bad_result
       << ", extra attempts " << retries << ", " << std::setprecision(1) << seconds_since(t0) << "s" << log.str();
    return {pairs > 0 && rate >= 0.99 && failed == 0 && bad_result == 0, os.str()};
}

Outcome ac8() {
    const auto f = rank_two_fixture(3);
    RealizationConfig cfg;
    const auto r = verify_realization(f.x, f.pattern, cfg);
    std::vector<double> nonzero;
    for (double e : r.eigenvalues)
        if (std::abs(e) > 1e-10) nonzero.push_back(e);
    const bool spectrum = nonzero.size() == 2 && std::abs(nonzero[0] + 1.0) <= 1e-10 && std::abs(nonzero[1] - 1.0) <= 1e-10;
    std::ostringstream os;
    os << "rank=" << r.rank << " nonzero eigenvalues=";
    for (double e : nonzero) os << std::setprecision(12) << e << " ";
    os << "pattern_ok=" << r.pattern_ok;
    return {r.rank == 2 && spectrum && r.pattern_ok, os.str()};
}

Outcome ac9() {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> len(1, 6), entry(1, 4), bump(0, 2), coin(0, 1);
    auto random_tuple = [&] {
        std::vector<int> v(static_cast<std::size_t>(len(rng)));
        for (int& x : v) x = entry(rng);
        return v;
    };

    int mono_q2 = 0, mono_bad = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const auto a = random_tuple(), b = random_tuple();
        auto a2 = a, b2 = b;
        for (int& x : a2) x += bump(rng);
        for (int& x : b2) x += bump(rng);
        if (formula_q(SizeTuple(a), SizeTuple(b)) != 2) continue;
        ++mono_q2;
        if (formula_q(SizeTuple(a2), SizeTuple(b2)) != 2) ++mono_bad;
    }

    int perm_bad = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        auto a = random_tuple(), b = random_tuple();
        const SizeTuple m(a), n(b);
        const auto r = decide_q(m, n);
        std::shuffle(a.begin(), a.end(), rng);
        std::shuffle(b.begin(), b.end(), rng);
        const SizeTuple pm(a), pn(b);
        const auto r2 = coin(rng) ? decide_q(pn, pm) : decide_q(pm, pn);
        if (r.q != r2.q || r.mu != r2.mu) ++perm_bad;
    }

    RealizationConfig cfg;
    auto srng = attempt_rng(77, 0);
    std::uniform_int_distribution<int> dim(1, 6);
    double worst = 0.0;
    int basis_bad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int d = dim(srng);
        const Eigen::MatrixXd q = haar_orthogonal(8, srng).leftCols(d);
        try {
            const Eigen::MatrixXd b = nowhere_zero_orthonormal_basis(q, cfg);
            const double diff = max_abs(b * b.transpose() - q * q.transpose());
            worst = std::max(worst, diff);
            if (diff > 1e-10 || b.cwiseAbs().minCoeff() < cfg.tol_nonzero * b.cwiseAbs().maxCoeff()) ++basis_bad;
        } catch (const std::exception&) {
            ++basis_bad;
        }
    }
    std::ostringstream os;
    os << "monotonicity: " << mono_bad << "/" << mono_q2 << " violations; permutation/swap: " << perm_bad
       << "/10000; bases: " << basis_bad << "/1000 bad, worst projector diff " << std::scientific << std::setprecision(2)
       << worst;
    return {mono_bad == 0 && mono_q2 > 1000 && perm_bad == 0 && basis_bad == 0, os.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
        {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9},
    };
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::cout << name << ' ' << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
