#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "orthojoin/combinatorics.hpp"
#include "orthojoin/decision.hpp"
#include "orthojoin/fixtures.hpp"
#include "orthojoin/oracle.hpp"
#include "orthojoin/realization.hpp"

namespace orthojoin::cli {

namespace {

// Input problems that are the caller's fault map to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SizeTuple parse_tuple(const std::string& text) {
    try {
        return SizeTuple::parse(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError("bad size tuple '" + text + "': " + e.what());
    }
}

ZeroPattern parse_graph(const std::string& token) {
    if (!token.empty() && (token[0] == 'c' || token[0] == 'C')) {
        try {
            std::size_t used = 0;
            const int order = std::stoi(token.substr(1), &used);
            if (used + 1 != token.size()) throw std::invalid_argument("trailing characters");
            return ZeroPattern::cycle(order);
        } catch (const std::exception& e) {
            throw UsageError("bad cycle '" + token + "': " + e.what());
        }
    }
    return ZeroPattern::cliques(parse_tuple(token));
}

std::string rows_text(const MultiplicityMatrix& v) {
    std::ostringstream os;
    for (const auto& row : v.data().to_rows()) {
        os << "  ";
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << std::setw(2) << row[i];
        os << '\n';
    }
    return os.str();
}

// Re-validates a decision before anything is printed.
void self_check(const DecisionReport& r) {
    if (r.q != formula_q(r.m, r.n)) throw std::logic_error("self-check: q disagrees with the rule");
    if (r.q == 3) {
        if (r.witness) throw std::logic_error("self-check: witness reported for q = 3");
        return;
    }
    if (!r.witness || !r.mu || !r.iplus_range) throw std::logic_error("self-check: q = 2 report is incomplete");
    const auto& w = *r.witness;
    if (!is_multiplicity_matrix_for(w.v, r.m) || !is_multiplicity_matrix_for(w.w, r.n)) {
        throw std::logic_error("self-check: witness is not a multiplicity matrix pair");
    }
    if (!is_compatible(w.v, w.w)) throw std::logic_error("self-check: witness pair is not compatible");
    if (w.v.middle_mass() != *r.mu) throw std::logic_error("self-check: witness middle mass differs from mu");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
            if (used != item.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw UsageError("bad number '" + item + "' in eigenvalue list");
        }
    }
    return out;
}

// "a=1..4" or "a=3"
std::map<std::string, std::pair<int, int>> parse_params(const std::string& text) {
    std::map<std::string, std::pair<int, int>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("bad parameter '" + item + "', expected key=value");
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        try {
            const auto dots = value.find("..");
            std::size_t u1 = 0, u2 = 0;
            int lo = 0, hi = 0;
            if (dots == std::string::npos) {
                lo = hi = std::stoi(value, &u1);
                if (u1 != value.size()) throw std::invalid_argument("trailing");
            } else {
                const std::string a = value.substr(0, dots);
                const std::string b = value.substr(dots + 2);
                lo = std::stoi(a, &u1);
                hi = std::stoi(b, &u2);
                if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument("trailing");
            }
            if (lo < 1 || hi < lo) throw std::invalid_argument("empty range");
            out[key] = {lo, hi};
        } catch (const std::exception&) {
            throw UsageError("bad value for parameter '" + key + "': " + value);
        }
    }
    return out;
}

std::pair<int, int> param(const std::map<std::string, std::pair<int, int>>& p, const std::string& key,
                          std::optional<int> fallback = std::nullopt) {
    auto it = p.find(key);
    if (it != p.end()) return it->second;
    if (fallback) return {*fallback, *fallback};
    throw UsageError("missing parameter '" + key + "'");
}

SizeTuple repeated(int value, int count) { return SizeTuple(std::vector<int>(static_cast<std::size_t>(count), value)); }

// Subcommand handlers ---------------------------------------------------------

struct DecideArgs {
    std::string m, n;
    bool json = false, witness = false, mu = false;
};

int cmd_decide(const DecideArgs& a, std::ostream& out) {
    const DecisionReport r = decide_q(parse_tuple(a.m), parse_tuple(a.n));
    self_check(r);
    if (a.json) {
        out << nlohmann::json(r).dump() << '\n';
        return kOk;
    }
    out << "q=" << r.q;
    if (a.mu && r.q == 2) out << " mu=" << *r.mu << " iplus=[" << r.iplus_range->first << ',' << r.iplus_range->second << ']';
    out << '\n' << "rule=" << rule_name(r.rule) << '\n';
    if (a.witness && r.witness) {
        out << "branch=" << r.witness->branch << '\n';
        out << "V (" << r.witness->v.rows() << "x" << r.witness->v.cols() << "):\n" << rows_text(r.witness->v);
        out << "W (" << r.witness->w.rows() << "x" << r.witness->w.cols() << "):\n" << rows_text(r.witness->w);
    }
    return kOk;
}

struct RealizeArgs {
    std::string m, n;
    std::uint64_t seed = 0;
    std::string lambda;
    double tol = 1e-9;
    int retries = 64;
    std::string out_path;
    std::string format = "json";
};

int cmd_realize(const RealizeArgs& a, std::ostream& out, std::ostream& err) {
    const SizeTuple m = parse_tuple(a.m);
    const SizeTuple n = parse_tuple(a.n);
    if (formula_q(m, n) != 2) {
        err << "q=3: no realization exists for " << m.to_string() << " | " << n.to_string() << '\n';
        return kNotRealizable;
    }
    RealizationConfig cfg;
    cfg.seed = a.seed;
    cfg.tol_residual = a.tol;
    cfg.max_retries = a.retries;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const Witness witness = construct_witness(m, n);
    std::optional<EigenvalueList> lambda;
    if (!a.lambda.empty()) {
        try {
            lambda = EigenvalueList::with_interior(parse_doubles(a.lambda));
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("bad eigenvalue list: ") + e.what());
        }
        if (lambda->length() != witness.v.rows()) {
            throw UsageError("the witness has " + std::to_string(witness.v.rows() - 2) + " interior eigenvalues, --lambda gave " +
                             std::to_string(lambda->length() - 2));
        }
    }

    RealizationResult result = [&] {
        const EigenvalueList list = lambda ? *lambda : EigenvalueList::default_for_rows(witness.v.rows());
        return assemble_join(witness.v, witness.w, m, n, list, cfg);
    }();

    const VerificationReport check = verify_realization(result.x.matrix(), m, n, cfg);
    if (!check.passed()) {
        err << "internal error: assembled matrix failed verification\n";
        return kFailure;
    }
    const auto range = iplus_range(m, n);
    if (check.iplus != result.iplus || check.iplus < range.first || check.iplus > range.second) {
        err << "internal error: i+ = " << check.iplus << " outside [" << range.first << ',' << range.second << "]\n";
        return kFailure;
    }

    std::string payload;
    if (a.format == "json") {
        nlohmann::json j{{"m", m},
                         {"n", n},
                         {"seed", cfg.seed},
                         {"lambda", std::vector<double>(result.lambda.values().begin(), result.lambda.values().end())},
                         {"branch", witness.branch},
                         {"V", witness.v},
                         {"W", witness.w},
                         {"retries_used", result.retries_used},
                         {"iplus", result.iplus},
                         {"x", matrix_to_json(result.x.matrix())},
                         {"verification", check}};
        payload = j.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "# " << m.to_string() << " | " << n.to_string() << " seed=" << cfg.seed << " retries=" << result.retries_used
           << " residual=" << check.residual << " iplus=" << check.iplus << '\n';
        os << matrix_to_text(result.x.matrix());
        payload = os.str();
    }
    if (a.out_path.empty()) {
        out << payload;
    } else {
        write_file(a.out_path, payload);
        out << "verified residual=" << check.residual << " retries=" << result.retries_used << " iplus=" << check.iplus
            << " -> " << a.out_path << '\n';
    }
    return kOk;
}

struct VerifyArgs {
    std::string file, g, h;
    bool json = false;
    double tol = 1e-9;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(a.file));
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("cannot parse " + a.file + ": " + e.what());
    }
    Eigen::MatrixXd x;
    try {
        x = matrix_from_json(doc.contains("x") ? doc.at("x") : doc);
    } catch (const std::exception& e) {
        throw UsageError("bad matrix in " + a.file + ": " + e.what());
    }
    const ZeroPattern pattern = ZeroPattern::join(parse_graph(a.g), parse_graph(a.h));
    if (pattern.order() != x.rows()) {
        throw UsageError("matrix is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) + " but the join has " +
                         std::to_string(pattern.order()) + " vertices");
    }
    RealizationConfig cfg;
    cfg.tol_residual = a.tol;
    const VerificationReport r = verify_realization(x, pattern, cfg);
    if (a.json) {
        out << nlohmann::json(r).dump(2) << '\n';
        return r.passed() ? kOk : kFailure;
    }
    out << (r.passed() ? "pass" : "fail") << " residual=" << r.residual << " symmetry_defect=" << r.symmetry_defect
        << " iplus=" << r.iplus << " iminus=" << r.iminus << '\n';
    if (!r.symmetric) out << "not symmetric\n";
    if (!r.orthogonal) out << "X^2 != I\n";
    if (!r.spectrum_ok) out << "eigenvalues are not all +-1 with both signs\n";
    for (const auto& v : r.pattern_violations) {
        out << "pattern violation at (" << v.i << "," << v.j << "): value=" << v.value << ", expected "
            << (v.expected_nonzero ? "nonzero" : "zero") << '\n';
    }
    if (r.pattern_violation_count > static_cast<int>(r.pattern_violations.size())) {
        out << "... " << r.pattern_violation_count - static_cast<int>(r.pattern_violations.size()) << " more violations\n";
    }
    return r.passed() ? kOk : kFailure;
}

struct CrossArgs {
    int limit = 6;
    int rmax = kDefaultMaxRows;
    std::string cache, csv;
    bool json = false, no_mu = false;
    int threads = 0;
};

int cmd_crosscheck(const CrossArgs& a, std::ostream& out) {
    std::string cache_path = a.cache;
    if (cache_path.empty()) {
        if (const char* env = std::getenv("ORTHOJOIN_CACHE")) cache_path = env;
    }
    std::optional<OracleCache> cache;
    if (!cache_path.empty()) cache.emplace(cache_path);

    CrossCheckOptions opt;
    opt.limit = a.limit;
    opt.r_max = a.rmax;
    opt.check_mu = !a.no_mu;
    opt.cache = cache ? &*cache : nullptr;
    opt.threads = a.threads;
    CrossCheckReport report;
    try {
        report = cross_check(opt);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (!a.csv.empty()) write_file(a.csv, report.to_csv());
    const auto bad = report.counterexamples();
    if (a.json) {
        out << nlohmann::json(report).dump(2) << '\n';
    } else {
        out << "cells=" << report.cells.size() << " q2=" << report.q2_cells << " counterexamples=" << bad.size()
            << " cache_hits=" << report.cache_hits << " seconds=" << std::fixed << std::setprecision(2) << report.seconds
            << '\n';
        for (const auto& c : bad) {
            out << "counterexample m=" << c.m.to_string() << " n=" << c.n.to_string() << " q_formula=" << c.q_formula
                << " q_brute=" << c.q_brute;
            if (c.mu_formula || c.mu_brute) {
                out << " mu_formula=" << (c.mu_formula ? std::to_string(*c.mu_formula) : "-")
                    << " mu_brute=" << (c.mu_brute ? std::to_string(*c.mu_brute) : "-");
            }
            out << '\n';
        }
    }
    return bad.empty() ? kOk : kFailure;
}

nlohmann::json batch_line(const std::string& line) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) throw std::invalid_argument("blank line");
    const auto j = nlohmann::json::parse(line);
    if (!j.is_object() || !j.contains("m") || !j.contains("n")) throw std::invalid_argument("expected {\"m\": [...], \"n\": [...]}");
    const auto m = j.at("m").get<SizeTuple>();
    const auto n = j.at("n").get<SizeTuple>();
    const DecisionReport r = decide_q(m, n);
    self_check(r);
    return nlohmann::json(r);
}

int cmd_batch(const std::string& in_path, const std::string& out_path, std::ostream& out) {
    std::ifstream in(in_path);
    if (!in) throw UsageError("cannot read " + in_path);
    std::ofstream dst(out_path);
    if (!dst) throw UsageError("cannot write " + out_path);
    std::string line;
    int number = 0, errors = 0;
    while (std::getline(in, line)) {
        ++number;
        nlohmann::json result;
        try {
            result = batch_line(line);
        } catch (const std::exception& e) {
            ++errors;
            result = {{"line", number}, {"error", e.what()}};
        }
        dst << result.dump() << '\n';
    }
    out << "lines=" << number << " errors=" << errors << '\n';
    return errors == 0 ? kOk : kBatchPartial;
}

int cmd_table(const std::string& example, const std::string& params_text, std::ostream& out) {
    const auto p = parse_params(params_text);
    int mismatches = 0;
    auto cell = [&](const SizeTuple& m, const SizeTuple& n, bool expect_two) {
        const int q = decide_q(m, n).q;
        const bool ok = (q == 2) == expect_two;
        if (!ok) ++mismatches;
        return std::string(ok ? " " : "*") + std::to_string(q);
    };

    if (example == "km-connected") {
        const auto [m_lo, m_hi] = param(p, "m");
        const auto [l_lo, l_hi] = param(p, "l");
        const auto [nj_lo, nj_hi] = param(p, "nj", 2);
        out << "K_m v union of l cliques of order nj; q=2 iff l <= m\n";
        out << std::setw(12) << "l:";
        for (int l = l_lo; l <= l_hi; ++l) out << std::setw(4) << l;
        out << '\n';
        for (int m = m_lo; m <= m_hi; ++m) {
            for (int nj = nj_lo; nj <= nj_hi; ++nj) {
                std::ostringstream label;
                label << "m=" << m << " nj=" << nj;
                out << std::setw(12) << label.str();
                for (int l = l_lo; l <= l_hi; ++l) out << std::setw(4) << cell(SizeTuple{m}, repeated(nj, l), l <= m);
                out << '\n';
            }
        }
    } else if (example == "discrete") {
        const auto [s_lo, s_hi] = param(p, "s");
        const auto [a_lo, a_hi] = param(p, "a");
        const auto [b_lo, b_hi] = param(p, "b");
        out << "aK_s v bK_1; q=2 iff (s=2 and b in {a,2a}) or (s!=2 and a <= b <= sa)\n";
        out << std::setw(10) << "b:";
        for (int b = b_lo; b <= b_hi; ++b) out << std::setw(4) << b;
        out << '\n';
        for (int s = s_lo; s <= s_hi; ++s) {
            for (int a = a_lo; a <= a_hi; ++a) {
                std::ostringstream label;
                label << "s=" << s << " a=" << a;
                out << std::setw(10) << label.str();
                for (int b = b_lo; b <= b_hi; ++b) {
                    const bool expect = s == 2 ? (b == a || b == 2 * a) : (a <= b && b <= s * a);
                    out << std::setw(4) << cell(repeated(s, a), repeated(1, b), expect);
                }
                out << '\n';
            }
        }
    } else {
        throw UsageError("unknown example '" + example + "' (expected km-connected or discrete)");
    }
    out << "mismatches=" << mismatches << '\n';
    return mismatches == 0 ? kOk : kFailure;
}

int cmd_fixture(const std::string& name, const std::string& out_path, int m, double lambda, std::ostream& out) {
    JoinFixture f = [&] {
        if (name == "cycles") return cycles_fixture();
        if (name == "rank-two") {
            try {
                return rank_two_fixture(m, lambda);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        }
        throw UsageError("unknown fixture '" + name + "' (expected cycles or rank-two)");
    }();
    const std::string payload = matrix_to_json(f.x).dump(2) + "\n";
    if (out_path.empty()) {
        out << payload;
    } else {
        write_file(out_path, payload);
        out << "wrote " << f.x.rows() << "x" << f.x.cols() << " matrix -> " << out_path << '\n';
    }
    return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Orthogonal symmetric realizations of joins of unions of cliques"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    DecideArgs decide;
    auto* sc_decide = app.add_subcommand("decide", "Decide q for K_m v K_n");
    sc_decide->add_option("M", decide.m, "component orders of the first graph, e.g. 2,2")->required();
    sc_decide->add_option("N", decide.n, "component orders of the second graph")->required();
    sc_decide->add_flag("--json", decide.json, "print the decision report as JSON");
    sc_decide->add_flag("--witness", decide.witness, "print the witness pair (V, W)");
    sc_decide->add_flag("--mu", decide.mu, "print mu and the range of i+");

    RealizeArgs realize_args;
    auto* sc_realize = app.add_subcommand("realize", "Build and verify an orthogonal symmetric matrix in S(K_m v K_n)");
    sc_realize->add_option("M", realize_args.m)->required();
    sc_realize->add_option("N", realize_args.n)->required();
    sc_realize->add_option("--seed", realize_args.seed, "master seed")->capture_default_str();
    sc_realize->add_option("--lambda", realize_args.lambda, "interior eigenvalues, comma separated, strictly increasing in (-1,1)");
    sc_realize->add_option("--tol", realize_args.tol, "tolerance for X^2 - I")->capture_default_str();
    sc_realize->add_option("--retries", realize_args.retries, "attempt budget")->capture_default_str();
    sc_realize->add_option("--out", realize_args.out_path, "write the result to FILE");
    sc_realize->add_option("--format", realize_args.format)->check(CLI::IsMember({"json", "text"}))->capture_default_str();

    VerifyArgs verify;
    auto* sc_verify = app.add_subcommand("verify", "Check a stored matrix against the pattern of G v H");
    sc_verify->add_option("FILE", verify.file, "matrix JSON {\"n\", \"data\"}")->required();
    sc_verify->add_option("G", verify.g, "clique orders like 2,2 or a cycle like c8")->required();
    sc_verify->add_option("H", verify.h)->required();
    sc_verify->add_option("--tol", verify.tol)->capture_default_str();
    sc_verify->add_flag("--json", verify.json);

    CrossArgs cross;
    auto* sc_cross = app.add_subcommand("crosscheck", "Compare the closed form with brute force");
    sc_cross->add_option("--limit", cross.limit, "largest order of either graph")->capture_default_str();
    sc_cross->add_option("--rmax", cross.rmax, "largest row count searched")->capture_default_str();
    sc_cross->add_option("--cache", cross.cache, "JSONL result cache (default $ORTHOJOIN_CACHE)");
    sc_cross->add_option("--csv", cross.csv, "write the per-cell table");
    sc_cross->add_option("--threads", cross.threads)->capture_default_str();
    sc_cross->add_flag("--json", cross.json);
    sc_cross->add_flag("--no-mu", cross.no_mu, "compare q only");

    std::string batch_in, batch_out;
    auto* sc_batch = app.add_subcommand("batch", "Decide every {\"m\", \"n\"} line of a JSONL file");
    sc_batch->add_option("--in", batch_in)->required();
    sc_batch->add_option("--out", batch_out)->required();

    std::string table_example, table_params;
    auto* sc_table = app.add_subcommand("table", "Print a family of decisions next to its closed form");
    sc_table->add_option("--example", table_example)->required()->check(CLI::IsMember({"km-connected", "discrete"}));
    sc_table->add_option("--params", table_params, "e.g. s=2,a=1..4,b=1..8")->required();

    std::string fixture_name, fixture_out;
    int fixture_m = 3;
    double fixture_lambda = 1.0;
    auto* sc_fixture = app.add_subcommand("fixture", "Write an exact reference matrix");
    sc_fixture->add_option("NAME", fixture_name, "cycles or rank-two")->required();
    sc_fixture->add_option("--out", fixture_out);
    sc_fixture->add_option("--m", fixture_m, "independent vertices for rank-two")->capture_default_str();
    sc_fixture->add_option("--lambda", fixture_lambda, "lambda for rank-two")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kParseError;
    }

    try {
        if (sc_decide->parsed()) return cmd_decide(decide, out);
        if (sc_realize->parsed()) return cmd_realize(realize_args, out, err);
        if (sc_verify->parsed()) return cmd_verify(verify, out);
        if (sc_cross->parsed()) return cmd_crosscheck(cross, out);
        if (sc_batch->parsed()) return cmd_batch(batch_in, batch_out, out);
        if (sc_table->parsed()) return cmd_table(table_example, table_params, out);
        if (sc_fixture->parsed()) return cmd_fixture(fixture_name, fixture_out, fixture_m, fixture_lambda, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    } catch (const RetryExhausted& e) {
        err << "inconclusive: " << e.what() << '\n';
        return kInconclusive;
    } catch (const NotRealizable& e) {
        err << e.what() << '\n';
        return kNotRealizable;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kFailure;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"orthojoin"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace orthojoin::cli
