#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "orthojoin/core.hpp"

namespace orthojoin {

struct RealizationConfig {
    /// Max-norm tolerance for X^2 - I, U^T U - I and eigenvalue distance to +-1.
    double tol_residual = 1e-9;
    /// An entry counts as zero when below tol_nonzero times the largest
    /// absolute entry of the matrix it belongs to.
    double tol_nonzero = 1e-8;
    int max_retries = 64;
    std::uint64_t seed = 0;

    void validate() const;
};

/// The randomized search ran out of attempts. This is inconclusive: it is
/// never evidence that no orthogonal realization exists.
class RetryExhausted : public std::runtime_error {
public:
    RetryExhausted(const std::string& what, std::uint64_t seed, int attempts)
        : std::runtime_error(what), seed_(seed), attempts_(attempts) {}
    std::uint64_t seed() const { return seed_; }
    int attempts() const { return attempts_; }

private:
    std::uint64_t seed_;
    int attempts_;
};

/// Generator for one attempt. Attempt seeds come from (seed, attempt) so
/// results do not depend on scheduling.
std::mt19937_64 attempt_rng(std::uint64_t seed, std::uint64_t attempt);

/// Haar-distributed orthogonal matrix: QR of a standard Gaussian matrix with
/// the signs of R's diagonal folded into Q.
Eigen::MatrixXd haar_orthogonal(int n, std::mt19937_64& rng);

/// Diagonal matrix with lambda_s repeated v_s times, in order.
Eigen::MatrixXd spectral_diagonal(std::span<const int> v, const EigenvalueList& lambda);

/// A = U D U^T in S(K_n) where D = spectral_diagonal(v, lambda), n = sum(v).
struct CliqueBlock {
    Eigen::MatrixXd a;
    Eigen::MatrixXd u;
};

/// Draws Haar U until U is nowhere-zero and A has no zero off-diagonal entry.
/// Throws std::invalid_argument for an invalid multiplicity vector and
/// RetryExhausted when cfg.max_retries draws all fail.
CliqueBlock realize_clique_block(std::span<const int> v, const EigenvalueList& lambda, const RealizationConfig& cfg);
CliqueBlock realize_clique_block(std::span<const int> v, const EigenvalueList& lambda, const RealizationConfig& cfg,
                                 std::mt19937_64& rng);

/// Orthonormal basis of span(basis) with every entry nonzero.
///
/// Walks the basis and replaces each pair (b_{j-1}, b_j) by
///   sqrt(1 - t^2) b_{j-1} + t b_j,   t b_{j-1} - sqrt(1 - t^2) b_j
/// with t halved from 1/2 until both are nowhere-zero. When that fails on the
/// given basis, the walk is repeated after a Householder reflection that makes
/// the first vector a nowhere-zero vector of the span.
/// `basis` holds orthonormal columns. Throws std::invalid_argument when the
/// columns are not orthonormal or no nowhere-zero vector is found.
Eigen::MatrixXd nowhere_zero_orthonormal_basis(const Eigen::MatrixXd& basis, const RealizationConfig& cfg);

/// Off-diagonal adjacency of a graph on vertices 0..n-1.
class ZeroPattern {
public:
    explicit ZeroPattern(int order);

    static ZeroPattern cliques(const SizeTuple& m);
    static ZeroPattern cycle(int order);
    static ZeroPattern disjoint_union(const ZeroPattern& a, const ZeroPattern& b);
    /// Disjoint union plus every edge between the two vertex sets.
    static ZeroPattern join(const ZeroPattern& a, const ZeroPattern& b);
    static ZeroPattern join_of_cliques(const SizeTuple& m, const SizeTuple& n) { return join(cliques(m), cliques(n)); }

    int order() const { return order_; }
    bool adjacent(int i, int j) const { return adj_[static_cast<std::size_t>(i * order_ + j)]; }
    void add_edge(int i, int j);

private:
    int order_;
    std::vector<bool> adj_;
};

struct PatternViolation {
    int i = 0;
    int j = 0;
    double value = 0.0;
    bool expected_nonzero = false;
};

struct VerificationReport {
    int dim = 0;
    double max_abs = 0.0;
    double symmetry_defect = 0.0;
    /// max |X^2 - I|
    double residual = 0.0;
    int pattern_violation_count = 0;
    /// First violations in row-major order (capped).
    std::vector<PatternViolation> pattern_violations;
    /// Ascending eigenvalues of the symmetric part of X.
    std::vector<double> eigenvalues;
    int iplus = 0;
    int iminus = 0;
    int rank = 0;

    bool symmetric = false;
    bool orthogonal = false;
    bool pattern_ok = false;
    /// Every eigenvalue within tolerance of +-1, and both signs occur.
    bool spectrum_ok = false;

    bool passed() const { return symmetric && orthogonal && pattern_ok && spectrum_ok; }
};

/// Checks symmetry, X^2 = I, the zero pattern (diagonal unconstrained) and the
/// spectrum. Throws std::invalid_argument on a dimension mismatch.
VerificationReport verify_realization(const Eigen::MatrixXd& x, const ZeroPattern& pattern, const RealizationConfig& cfg);
VerificationReport verify_realization(const Eigen::MatrixXd& x, const SizeTuple& m, const SizeTuple& n,
                                      const RealizationConfig& cfg);

void to_json(nlohmann::json& j, const VerificationReport& report);

struct RealizationResult {
    DenseSymMatrix x;
    Eigen::MatrixXd a_g;
    Eigen::MatrixXd a_h;
    Eigen::MatrixXd c;
    EigenvalueList lambda;
    /// Attempts beyond the first.
    int retries_used = 0;
    double residual = 0.0;
    /// Multiplicity of +1 dictated by the witness: interior mass plus the last
    /// row of V and the first row of W.
    int iplus = 0;
    VerificationReport verification;
};

/// Assembles X = [[A_G, C], [C^T, -A_H]] from a compatible witness.
///
/// A_G and A_H are direct sums of clique blocks realising the columns of V and
/// W. In the eigenbases S, T of A_G and A_H, the coupling B pairs the lambda_s
/// eigenvectors of both sides through sqrt(1 - lambda_s^2) Z_s and leaves the
/// +-1 eigenvectors uncoupled; C = S B T^T. The first attempt uses Z_s = I,
/// later attempts redraw every Z_s, S and T. An attempt succeeds when X passes
/// verify_realization.
///
/// Throws std::invalid_argument for an incompatible or invalid witness or a bad
/// eigenvalue list, and RetryExhausted when no attempt succeeds.
RealizationResult assemble_join(const MultiplicityMatrix& v, const MultiplicityMatrix& w, const SizeTuple& m,
                                const SizeTuple& n, const EigenvalueList& lambda, const RealizationConfig& cfg);

/// construct_witness followed by assemble_join. `lambda` defaults to
/// EigenvalueList::default_for_rows for the witness row count.
RealizationResult realize(const SizeTuple& m, const SizeTuple& n, const RealizationConfig& cfg,
                          const std::optional<EigenvalueList>& lambda = std::nullopt);

}  // namespace orthojoin
