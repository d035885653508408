#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "orthojoin/combinatorics.hpp"
#include "orthojoin/core.hpp"

namespace orthojoin {

/// 2 when a compatible pair with at most r_max rows exists, else 3.
/// Throws std::invalid_argument for r_max < 3.
int brute_force_q(const SizeTuple& m, const SizeTuple& n, int r_max = kDefaultMaxRows);

/// Smallest middle mass over all compatible pairs with at most r_max rows.
/// Throws std::domain_error when no compatible pair exists.
int brute_force_mu(const SizeTuple& m, const SizeTuple& n, int r_max = kDefaultMaxRows);

/// Integer partitions of n, each sorted descending, listed in descending
/// lexicographic order.
std::vector<SizeTuple> partitions(int n);

/// Append-only JSONL store of oracle results keyed by canonical tuples and
/// r_max. Each key is written at most once; concurrent callers are
/// serialised by an internal mutex. Malformed lines are skipped on load.
class OracleCache {
public:
    struct Entry {
        int q = 3;
        std::optional<int> mu;
    };

    explicit OracleCache(std::filesystem::path path);

    static std::string key(const SizeTuple& m, const SizeTuple& n, int r_max);

    std::optional<Entry> lookup(const SizeTuple& m, const SizeTuple& n, int r_max) const;
    /// Returns false when the key was already present.
    bool store(const SizeTuple& m, const SizeTuple& n, int r_max, const Entry& entry);

    std::size_t size() const;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    mutable std::mutex mutex_;
    std::map<std::string, Entry> entries_;
};

struct CrossCheckOptions {
    int limit = 6;
    int r_max = kDefaultMaxRows;
    bool check_mu = true;
    OracleCache* cache = nullptr;
    /// 0 picks the hardware concurrency.
    int threads = 0;
};

struct CrossCheckCell {
    SizeTuple m;
    SizeTuple n;
    int q_formula = 3;
    int q_brute = 3;
    std::optional<int> mu_formula;
    std::optional<int> mu_brute;
    bool agree = true;
};

struct CrossCheckReport {
    int limit = 0;
    int r_max = 0;
    bool checked_mu = false;
    std::vector<CrossCheckCell> cells;
    int q2_cells = 0;
    int cache_hits = 0;
    double seconds = 0.0;

    std::vector<CrossCheckCell> counterexamples() const;
    bool ok() const { return counterexamples().empty(); }
    std::string to_csv() const;
};

void to_json(nlohmann::json& j, const CrossCheckCell& cell);
void to_json(nlohmann::json& j, const CrossCheckReport& report);

/// Compares formula_q and mu against the brute-force oracle on every ordered
/// pair of partitions (m, n) with |m|, |n| <= limit. Cells come back in a
/// fixed order regardless of thread count.
/// Throws std::invalid_argument for limit < 2 or r_max < 3.
CrossCheckReport cross_check(const CrossCheckOptions& options);

}  // namespace orthojoin
