#include "orthojoin/realization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "orthojoin/combinatorics.hpp"
#include "orthojoin/decision.hpp"

namespace orthojoin {

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool nowhere_zero(const Eigen::MatrixXd& m, double tol) {
    const double scale = max_abs(m);
    if (scale == 0.0) return false;
    return m.cwiseAbs().minCoeff() >= tol * scale;
}

bool off_diagonal_nonzero(const Eigen::MatrixXd& a, double tol) {
    const double threshold = tol * max_abs(a);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (i != j && !(std::abs(a(i, j)) >= threshold && std::abs(a(i, j)) > 0.0)) return false;
    return true;
}

void check_clique_vector(std::span<const int> v, const EigenvalueList& lambda) {
    if (static_cast<int>(v.size()) != lambda.length()) {
        throw std::invalid_argument("multiplicity vector length " + std::to_string(v.size()) +
                                    " differs from eigenvalue list length " + std::to_string(lambda.length()));
    }
    int total = 0;
    int nonzero = 0;
    for (int x : v) {
        if (x < 0) throw std::invalid_argument("multiplicity vector has a negative entry");
        total += x;
        if (x > 0) ++nonzero;
    }
    if (total == 0) throw std::invalid_argument("multiplicity vector is zero");
    if (total >= 2 && nonzero < 2) {
        throw std::invalid_argument("a clique of order " + std::to_string(total) +
                                    " needs at least two distinct eigenvalues");
    }
}

Eigen::MatrixXd block_diagonal(const std::vector<Eigen::MatrixXd>& blocks) {
    Eigen::Index n = 0;
    for (const auto& b : blocks) n += b.rows();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    Eigen::Index at = 0;
    for (const auto& b : blocks) {
        out.block(at, at, b.rows(), b.cols()) = b;
        at += b.rows();
    }
    return out;
}

// For each eigenvalue index s, the positions (in block-diagonal eigen
// coordinates) whose diagonal entry is lambda_s.
std::vector<std::vector<int>> eigen_positions(const MultiplicityMatrix& v) {
    std::vector<std::vector<int>> pos(static_cast<std::size_t>(v.rows()));
    int at = 0;
    for (int c = 0; c < v.cols(); ++c)
        for (int s = 0; s < v.rows(); ++s)
            for (int t = 0; t < v(s, c); ++t) pos[static_cast<std::size_t>(s)].push_back(at++);
    return pos;
}

}  // namespace

void RealizationConfig::validate() const {
    if (!(tol_residual > 0.0)) throw std::invalid_argument("tol_residual must be positive");
    if (!(tol_nonzero > 0.0)) throw std::invalid_argument("tol_nonzero must be positive");
    if (max_retries < 1) throw std::invalid_argument("max_retries must be at least 1");
}

std::mt19937_64 attempt_rng(std::uint64_t seed, std::uint64_t attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(attempt), static_cast<std::uint32_t>(attempt >> 32)};
    return std::mt19937_64(seq);
}

Eigen::MatrixXd haar_orthogonal(int n, std::mt19937_64& rng) {
    if (n < 1) throw std::invalid_argument("orthogonal matrix dimension must be positive");
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd g(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) g(i, j) = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd& r = qr.matrixQR();
    for (int j = 0; j < n; ++j)
        if (r(j, j) < 0.0) q.col(j) *= -1.0;
    return q;
}

Eigen::MatrixXd spectral_diagonal(std::span<const int> v, const EigenvalueList& lambda) {
    const int n = std::accumulate(v.begin(), v.end(), 0);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    int at = 0;
    for (std::size_t s = 0; s < v.size(); ++s)
        for (int t = 0; t < v[s]; ++t, ++at) d(at, at) = lambda[static_cast<int>(s)];
    return d;
}

CliqueBlock realize_clique_block(std::span<const int> v, const EigenvalueList& lambda, const RealizationConfig& cfg) {
    auto rng = attempt_rng(cfg.seed, 0);
    return realize_clique_block(v, lambda, cfg, rng);
}

CliqueBlock realize_clique_block(std::span<const int> v, const EigenvalueList& lambda, const RealizationConfig& cfg,
                                 std::mt19937_64& rng) {
    cfg.validate();
    check_clique_vector(v, lambda);
    const Eigen::MatrixXd d = spectral_diagonal(v, lambda);
    const auto n = d.rows();
    if (n == 1) return {d, Eigen::MatrixXd::Ones(1, 1)};

    for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
        Eigen::MatrixXd u = haar_orthogonal(static_cast<int>(n), rng);
        Eigen::MatrixXd a = u * d * u.transpose();
        a = 0.5 * (a + a.transpose()).eval();
        if (nowhere_zero(u, cfg.tol_nonzero) && off_diagonal_nonzero(a, cfg.tol_nonzero)) return {a, u};
    }
    throw RetryExhausted("no nowhere-zero diagonaliser found for a clique of order " + std::to_string(n), cfg.seed,
                         cfg.max_retries);
}

Eigen::MatrixXd nowhere_zero_orthonormal_basis(const Eigen::MatrixXd& basis, const RealizationConfig& cfg) {
    cfg.validate();
    const auto dim = basis.rows();
    const auto d = basis.cols();
    if (d < 1 || dim < d) throw std::invalid_argument("basis must have between 1 and n columns");
    const double gram_defect = max_abs(basis.transpose() * basis - Eigen::MatrixXd::Identity(d, d));
    if (gram_defect > cfg.tol_residual) throw std::invalid_argument("basis columns are not orthonormal");

    auto rotate_pairs = [&](Eigen::MatrixXd b) -> std::optional<Eigen::MatrixXd> {
        if (d == 1) return nowhere_zero(b.col(0), cfg.tol_nonzero) ? std::optional(b) : std::nullopt;
        for (Eigen::Index j = 1; j < d; ++j) {
            bool done = false;
            double t = 0.5;
            for (int halving = 0; halving < 60 && !done; ++halving, t *= 0.5) {
                const double c = std::sqrt(1.0 - t * t);
                Eigen::VectorXd prev = c * b.col(j - 1) + t * b.col(j);
                Eigen::VectorXd next = t * b.col(j - 1) - c * b.col(j);
                if (nowhere_zero(prev, cfg.tol_nonzero) && nowhere_zero(next, cfg.tol_nonzero)) {
                    b.col(j - 1) = prev;
                    b.col(j) = next;
                    done = true;
                }
            }
            if (!done) return std::nullopt;
        }
        return b;
    };

    if (auto direct = rotate_pairs(basis)) return *direct;

    // A nowhere-zero vector of the span, as coefficients in the given basis.
    std::optional<Eigen::VectorXd> coeffs;
    std::vector<Eigen::VectorXd> tries{Eigen::VectorXd::Ones(d), Eigen::VectorXd::LinSpaced(d, 1.0, static_cast<double>(d))};
    auto rng = attempt_rng(cfg.seed, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int i = 0; i < cfg.max_retries; ++i) {
        Eigen::VectorXd c(d);
        for (Eigen::Index k = 0; k < d; ++k) c(k) = normal(rng);
        tries.push_back(c);
    }
    for (const auto& c : tries) {
        if (nowhere_zero(basis * c, cfg.tol_nonzero)) {
            coeffs = c.normalized();
            break;
        }
    }
    if (!coeffs) throw std::invalid_argument("span contains no nowhere-zero vector (none found within retry budget)");

    // Householder reflection H with H e_1 = coeffs; basis * H keeps the span
    // and orthonormality and starts with the nowhere-zero vector.
    Eigen::MatrixXd b = basis;
    const Eigen::VectorXd u = Eigen::VectorXd::Unit(d, 0) - *coeffs;
    if (u.norm() > 1e-14) b = basis * (Eigen::MatrixXd::Identity(d, d) - 2.0 * u * u.transpose() / u.squaredNorm());

    if (auto rotated = rotate_pairs(b)) return *rotated;
    throw std::invalid_argument("could not rotate the basis to a nowhere-zero one");
}

ZeroPattern::ZeroPattern(int order) : order_(order) {
    if (order < 0) throw std::invalid_argument("negative graph order");
    adj_.assign(static_cast<std::size_t>(order) * static_cast<std::size_t>(order), false);
}

void ZeroPattern::add_edge(int i, int j) {
    if (i < 0 || j < 0 || i >= order_ || j >= order_ || i == j) throw std::invalid_argument("bad edge");
    adj_[static_cast<std::size_t>(i * order_ + j)] = true;
    adj_[static_cast<std::size_t>(j * order_ + i)] = true;
}

ZeroPattern ZeroPattern::cliques(const SizeTuple& m) {
    ZeroPattern p(m.total());
    int at = 0;
    for (int size : m.entries()) {
        for (int i = at; i < at + size; ++i)
            for (int j = i + 1; j < at + size; ++j) p.add_edge(i, j);
        at += size;
    }
    return p;
}

ZeroPattern ZeroPattern::cycle(int order) {
    if (order < 3) throw std::invalid_argument("a cycle needs at least 3 vertices");
    ZeroPattern p(order);
    for (int i = 0; i < order; ++i) p.add_edge(i, (i + 1) % order);
    return p;
}

ZeroPattern ZeroPattern::disjoint_union(const ZeroPattern& a, const ZeroPattern& b) {
    ZeroPattern p(a.order() + b.order());
    for (int i = 0; i < a.order(); ++i)
        for (int j = i + 1; j < a.order(); ++j)
            if (a.adjacent(i, j)) p.add_edge(i, j);
    for (int i = 0; i < b.order(); ++i)
        for (int j = i + 1; j < b.order(); ++j)
            if (b.adjacent(i, j)) p.add_edge(a.order() + i, a.order() + j);
    return p;
}

ZeroPattern ZeroPattern::join(const ZeroPattern& a, const ZeroPattern& b) {
    ZeroPattern p = disjoint_union(a, b);
    for (int i = 0; i < a.order(); ++i)
        for (int j = 0; j < b.order(); ++j) p.add_edge(i, a.order() + j);
    return p;
}

VerificationReport verify_realization(const Eigen::MatrixXd& x, const ZeroPattern& pattern, const RealizationConfig& cfg) {
    cfg.validate();
    if (x.rows() != x.cols()) throw std::invalid_argument("matrix is not square");
    if (x.rows() != pattern.order()) {
        throw std::invalid_argument("matrix dimension " + std::to_string(x.rows()) + " differs from graph order " +
                                    std::to_string(pattern.order()));
    }
    constexpr std::size_t kMaxListed = 32;
    const auto n = x.rows();
    VerificationReport r;
    r.dim = static_cast<int>(n);
    r.max_abs = max_abs(x);
    r.symmetry_defect = max_abs(x - x.transpose());
    r.residual = max_abs(x * x - Eigen::MatrixXd::Identity(n, n));

    const double threshold = cfg.tol_nonzero * r.max_abs;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const bool edge = pattern.adjacent(i, j);
            const bool nonzero = std::abs(x(i, j)) >= threshold && x(i, j) != 0.0;
            if (edge != nonzero) {
                ++r.pattern_violation_count;
                if (r.pattern_violations.size() < kMaxListed) r.pattern_violations.push_back({i, j, x(i, j), edge});
            }
        }
    }

    if (n > 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (x + x.transpose()), Eigen::EigenvaluesOnly);
        const Eigen::VectorXd& ev = solver.eigenvalues();
        r.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    }
    bool all_unit = true;
    const double rank_threshold = cfg.tol_residual * std::max(1.0, r.max_abs);
    for (double e : r.eigenvalues) {
        if (std::abs(e - 1.0) <= cfg.tol_residual) {
            ++r.iplus;
        } else if (std::abs(e + 1.0) <= cfg.tol_residual) {
            ++r.iminus;
        } else {
            all_unit = false;
        }
        if (std::abs(e) > rank_threshold) ++r.rank;
    }

    r.symmetric = r.symmetry_defect <= cfg.tol_residual;
    r.orthogonal = r.residual <= cfg.tol_residual;
    r.pattern_ok = r.pattern_violation_count == 0;
    r.spectrum_ok = all_unit && r.iplus > 0 && r.iminus > 0;
    return r;
}

VerificationReport verify_realization(const Eigen::MatrixXd& x, const SizeTuple& m, const SizeTuple& n,
                                      const RealizationConfig& cfg) {
    return verify_realization(x, ZeroPattern::join_of_cliques(m, n), cfg);
}

void to_json(nlohmann::json& j, const VerificationReport& r) {
    nlohmann::json violations = nlohmann::json::array();
    for (const auto& v : r.pattern_violations) {
        violations.push_back({{"i", v.i}, {"j", v.j}, {"value", v.value}, {"expected", v.expected_nonzero ? "nonzero" : "zero"}});
    }
    j = nlohmann::json{
        {"passed", r.passed()},
        {"dim", r.dim},
        {"max_abs", r.max_abs},
        {"symmetric", r.symmetric},
        {"symmetry_defect", r.symmetry_defect},
        {"orthogonal", r.orthogonal},
        {"residual", r.residual},
        {"pattern_ok", r.pattern_ok},
        {"pattern_violation_count", r.pattern_violation_count},
        {"pattern_violations", violations},
        {"spectrum_ok", r.spectrum_ok},
        {"eigenvalues", r.eigenvalues},
        {"iplus", r.iplus},
        {"iminus", r.iminus},
        {"rank", r.rank},
    };
}

RealizationResult assemble_join(const MultiplicityMatrix& v, const MultiplicityMatrix& w, const SizeTuple& m,
                                const SizeTuple& n, const EigenvalueList& lambda, const RealizationConfig& cfg) {
    cfg.validate();
    if (v.rows() != w.rows()) throw std::invalid_argument("witness matrices have different row counts");
    if (lambda.length() != v.rows()) {
        throw std::invalid_argument("eigenvalue list has " + std::to_string(lambda.length()) + " values but the witness has " +
                                    std::to_string(v.rows()) + " rows");
    }
    if (!lambda.is_realization_list()) throw std::invalid_argument("eigenvalue list must be (-1, interior in (-1,1), 1)");
    if (!is_multiplicity_matrix_for(v, m)) throw std::invalid_argument("V is not a multiplicity matrix for " + m.to_string());
    if (!is_multiplicity_matrix_for(w, n)) throw std::invalid_argument("W is not a multiplicity matrix for " + n.to_string());
    if (!is_compatible(v, w)) throw std::invalid_argument("witness matrices are not compatible");

    const int rows = v.rows();
    const auto g_pos = eigen_positions(v);
    const auto h_pos = eigen_positions(w);
    const ZeroPattern pattern = ZeroPattern::join_of_cliques(m, n);
    int iplus = v.data().row_sum(rows - 1) + w.data().row_sum(0);
    for (int s = 1; s + 1 < rows; ++s) iplus += static_cast<int>(g_pos[static_cast<std::size_t>(s)].size());

    for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
        auto rng = attempt_rng(cfg.seed, static_cast<std::uint64_t>(attempt));
        RealizationConfig block_cfg = cfg;
        block_cfg.max_retries = 1;

        std::vector<Eigen::MatrixXd> ag, s_blocks, ah, t_blocks;
        bool blocks_ok = true;
        try {
            for (int c = 0; c < v.cols(); ++c) {
                const auto col = v.column(c);
                auto block = realize_clique_block(col, lambda, block_cfg, rng);
                ag.push_back(std::move(block.a));
                s_blocks.push_back(std::move(block.u));
            }
            for (int c = 0; c < w.cols(); ++c) {
                const auto col = w.column(c);
                auto block = realize_clique_block(col, lambda, block_cfg, rng);
                ah.push_back(std::move(block.a));
                t_blocks.push_back(std::move(block.u));
            }
        } catch (const RetryExhausted&) {
            blocks_ok = false;
        }
        if (!blocks_ok) continue;

        const Eigen::MatrixXd a_g = block_diagonal(ag);
        const Eigen::MatrixXd a_h = block_diagonal(ah);
        const Eigen::MatrixXd s_mat = block_diagonal(s_blocks);
        const Eigen::MatrixXd t_mat = block_diagonal(t_blocks);

        Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m.total(), n.total());
        for (int s = 1; s + 1 < rows; ++s) {
            const auto& gp = g_pos[static_cast<std::size_t>(s)];
            const auto& hp = h_pos[static_cast<std::size_t>(s)];
            const int p = static_cast<int>(gp.size());
            if (p == 0) continue;
            const Eigen::MatrixXd z = attempt == 0 ? Eigen::MatrixXd::Identity(p, p) : haar_orthogonal(p, rng);
            const double coupling = std::sqrt(1.0 - lambda[s] * lambda[s]);
            for (int a = 0; a < p; ++a)
                for (int c = 0; c < p; ++c)
                    b(gp[static_cast<std::size_t>(a)], hp[static_cast<std::size_t>(c)]) = coupling * z(a, c);
        }
        const Eigen::MatrixXd c_mat = s_mat * b * t_mat.transpose();
        if (!nowhere_zero(c_mat, cfg.tol_nonzero)) continue;

        const Eigen::Index dim = m.total() + n.total();
        Eigen::MatrixXd x(dim, dim);
        x << a_g, c_mat, c_mat.transpose(), -a_h;
        DenseSymMatrix sym = DenseSymMatrix::from_matrix(x, 1e-10);

        VerificationReport report = verify_realization(sym.matrix(), pattern, cfg);
        if (!report.passed()) continue;
        return RealizationResult{std::move(sym), a_g, a_h, c_mat, lambda, attempt, report.residual, iplus, std::move(report)};
    }
    throw RetryExhausted("no orthogonal realization found for " + m.to_string() + " | " + n.to_string() + " after " +
                             std::to_string(cfg.max_retries) + " attempts (seed " + std::to_string(cfg.seed) + ")",
                         cfg.seed, cfg.max_retries);
}

RealizationResult realize(const SizeTuple& m, const SizeTuple& n, const RealizationConfig& cfg,
                          const std::optional<EigenvalueList>& lambda) {
    const Witness witness = construct_witness(m, n);
    const EigenvalueList list = lambda ? *lambda : EigenvalueList::default_for_rows(witness.v.rows());
    return assemble_join(witness.v, witness.w, m, n, list, cfg);
}

}  // namespace orthojoin
