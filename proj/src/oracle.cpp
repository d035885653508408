#include "orthojoin/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "orthojoin/decision.hpp"

namespace orthojoin {

namespace {

struct Outcome {
    bool found = false;
    int mu = 0;
};

// Meet in the middle on the row-sum vector of the middle block.
Outcome join_indices(const MiddleIndex& vi, const MiddleIndex& wi, bool want_mu, int best_mu) {
    Outcome out;
    out.mu = best_mu;
    for (const auto& [key, vs] : vi.buckets) {
        const int mass = std::accumulate(key.begin(), key.end(), 0);
        if (out.found && !want_mu) break;
        if (want_mu && out.found && mass >= out.mu) continue;
        auto it = wi.buckets.find(key);
        if (it == wi.buckets.end()) continue;
        bool hit = false;
        for (const auto& ve : vs) {
            for (const auto& we : it->second) {
                if (middles_cross_positive(ve.middle, we.middle)) {
                    hit = true;
                    break;
                }
            }
            if (hit) break;
        }
        if (hit && (!out.found || mass < out.mu)) {
            out.found = true;
            out.mu = mass;
        }
    }
    return out;
}

struct TupleIndex {
    std::vector<MiddleIndex> by_rows;  // rows 3..r_max
};

TupleIndex index_tuple(const SizeTuple& m, int r_max) {
    TupleIndex t;
    for (int rows = 3; rows <= r_max; ++rows) t.by_rows.push_back(build_middle_index(m, rows));
    return t;
}

Outcome search(const TupleIndex& a, const TupleIndex& b, bool want_mu) {
    Outcome best;
    for (std::size_t i = 0; i < a.by_rows.size(); ++i) {
        Outcome o = join_indices(a.by_rows[i], b.by_rows[i], want_mu, best.mu);
        if (o.found && (!best.found || o.mu < best.mu)) best = o;
        if (best.found && !want_mu) break;
    }
    return best;
}

void check_rows(int r_max) {
    if (r_max < 3) throw std::invalid_argument("r_max must be at least 3");
}

void partitions_rec(int remaining, int max_part, std::vector<int>& cur, std::vector<SizeTuple>& out) {
    if (remaining == 0) {
        out.emplace_back(cur);
        return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(remaining - p, p, cur, out);
        cur.pop_back();
    }
}

std::string csv_tuple(const SizeTuple& t) { return "\"" + t.to_string() + "\""; }

std::string opt_text(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }

}  // namespace

int brute_force_q(const SizeTuple& m, const SizeTuple& n, int r_max) {
    check_rows(r_max);
    return search(index_tuple(m, r_max), index_tuple(n, r_max), false).found ? 2 : 3;
}

int brute_force_mu(const SizeTuple& m, const SizeTuple& n, int r_max) {
    check_rows(r_max);
    const Outcome o = search(index_tuple(m, r_max), index_tuple(n, r_max), true);
    if (!o.found) throw std::domain_error("no compatible pair for " + m.to_string() + " | " + n.to_string() + ": mu undefined");
    return o.mu;
}

std::vector<SizeTuple> partitions(int n) {
    if (n < 1) throw std::invalid_argument("partitions need n >= 1");
    std::vector<SizeTuple> out;
    std::vector<int> cur;
    partitions_rec(n, n, cur, out);
    return out;
}

OracleCache::OracleCache(std::filesystem::path path) : path_(std::move(path)) {
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            Entry e;
            e.q = j.at("q").get<int>();
            if (j.contains("mu") && !j.at("mu").is_null()) e.mu = j.at("mu").get<int>();
            entries_.emplace(j.at("key").get<std::string>(), e);
        } catch (const std::exception&) {
            continue;
        }
    }
}

std::string OracleCache::key(const SizeTuple& m, const SizeTuple& n, int r_max) {
    return m.canonical().to_string() + "|" + n.canonical().to_string() + "|r" + std::to_string(r_max);
}

std::optional<OracleCache::Entry> OracleCache::lookup(const SizeTuple& m, const SizeTuple& n, int r_max) const {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(key(m, n, r_max));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

bool OracleCache::store(const SizeTuple& m, const SizeTuple& n, int r_max, const Entry& entry) {
    const std::string k = key(m, n, r_max);
    std::lock_guard lock(mutex_);
    if (!entries_.emplace(k, entry).second) return false;
    nlohmann::json record{{"key", k},
                          {"q", entry.q},
                          {"mu", entry.mu ? nlohmann::json(*entry.mu) : nlohmann::json(nullptr)},
                          {"r_max", r_max},
                          {"timestamp", std::chrono::duration_cast<std::chrono::seconds>(
                                            std::chrono::system_clock::now().time_since_epoch())
                                            .count()}};
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot append to oracle cache " + path_.string());
    out << record.dump() << '\n';
    return true;
}

std::size_t OracleCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

std::vector<CrossCheckCell> CrossCheckReport::counterexamples() const {
    std::vector<CrossCheckCell> out;
    std::copy_if(cells.begin(), cells.end(), std::back_inserter(out), [](const auto& c) { return !c.agree; });
    return out;
}

std::string CrossCheckReport::to_csv() const {
    std::ostringstream out;
    out << "m,n,q_formula,q_brute,mu_formula,mu_brute,agree\n";
    for (const auto& c : cells) {
        out << csv_tuple(c.m) << ',' << csv_tuple(c.n) << ',' << c.q_formula << ',' << c.q_brute << ','
            << opt_text(c.mu_formula) << ',' << opt_text(c.mu_brute) << ',' << (c.agree ? "true" : "false") << '\n';
    }
    return out.str();
}

void to_json(nlohmann::json& j, const CrossCheckCell& c) {
    auto opt = [](const std::optional<int>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    j = nlohmann::json{{"m", c.m},
                       {"n", c.n},
                       {"q_formula", c.q_formula},
                       {"q_brute", c.q_brute},
                       {"mu_formula", opt(c.mu_formula)},
                       {"mu_brute", opt(c.mu_brute)},
                       {"agree", c.agree}};
}

void to_json(nlohmann::json& j, const CrossCheckReport& r) {
    j = nlohmann::json{{"limit", r.limit},
                       {"r_max", r.r_max},
                       {"checked_mu", r.checked_mu},
                       {"cells", r.cells.size()},
                       {"q2_cells", r.q2_cells},
                       {"cache_hits", r.cache_hits},
                       {"seconds", r.seconds},
                       {"counterexamples", r.counterexamples()},
                       {"ok", r.ok()}};
}

CrossCheckReport cross_check(const CrossCheckOptions& options) {
    if (options.limit < 2) throw std::invalid_argument("cross-check limit must be at least 2");
    check_rows(options.r_max);
    const auto start = std::chrono::steady_clock::now();

    std::vector<SizeTuple> tuples;
    for (int total = 1; total <= options.limit; ++total) {
        auto p = partitions(total);
        tuples.insert(tuples.end(), p.begin(), p.end());
    }
    const std::size_t count = tuples.size();

    CrossCheckReport report;
    report.limit = options.limit;
    report.r_max = options.r_max;
    report.checked_mu = options.check_mu;
    for (const auto& m : tuples)
        for (const auto& n : tuples) report.cells.push_back(CrossCheckCell{m, n, 3, 3, std::nullopt, std::nullopt, true});

    int threads = options.threads > 0 ? options.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, threads);

    std::vector<std::optional<TupleIndex>> indices(count);
    std::vector<std::once_flag> built(count);
    auto index_of = [&](std::size_t i) -> const TupleIndex& {
        std::call_once(built[i], [&] { indices[i] = index_tuple(tuples[i], options.r_max); });
        return *indices[i];
    };

    std::atomic<std::size_t> next{0};
    std::atomic<int> hits{0};
    auto worker = [&] {
        for (std::size_t cell = next++; cell < report.cells.size(); cell = next++) {
            auto& c = report.cells[cell];
            c.q_formula = formula_q(c.m, c.n);
            if (c.q_formula == 2 && options.check_mu) c.mu_formula = mu(c.m, c.n);

            std::optional<OracleCache::Entry> cached;
            if (options.cache) cached = options.cache->lookup(c.m, c.n, options.r_max);
            if (cached && (!options.check_mu || cached->q == 3 || cached->mu)) {
                ++hits;
            } else {
                const Outcome o = search(index_of(cell / count), index_of(cell % count), options.check_mu);
                OracleCache::Entry e;
                e.q = o.found ? 2 : 3;
                if (o.found && options.check_mu) e.mu = o.mu;
                if (options.cache) options.cache->store(c.m, c.n, options.r_max, e);
                cached = e;
            }
            c.q_brute = cached->q;
            if (options.check_mu) c.mu_brute = cached->mu;
            c.agree = c.q_formula == c.q_brute && (!options.check_mu || c.mu_formula == c.mu_brute);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    report.cache_hits = hits;
    report.q2_cells = static_cast<int>(std::count_if(report.cells.begin(), report.cells.end(),
                                                     [](const auto& c) { return c.q_brute == 2; }));
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace orthojoin
