#pragma once

#include <stdexcept>
#include <utility>

#include "orthojoin/core.hpp"

namespace orthojoin {

/// Raised when a q = 2 construction is requested for a join with q = 3.
class NotRealizable : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Closed-form q(K_m v K_n) with no witness: 2 or 3.
int formula_q(const SizeTuple& m, const SizeTuple& n);

/// Which clause decides q = 2 (Rule::none when q = 3). Evaluated with the
/// tuples ordered so that k <= l.
Rule decision_rule(const SizeTuple& m, const SizeTuple& n);

/// Full decision: q, the clause, and when q = 2 a witness pair, mu and the
/// achievable range for the multiplicity of eigenvalue +1.
DecisionReport decide_q(const SizeTuple& m, const SizeTuple& n);

/// Compatible multiplicity matrices (V for m, W for n) with 3 or 4 rows.
/// The middle mass of the result equals mu(m, n).
/// Throws NotRealizable when q = 3.
Witness construct_witness(const SizeTuple& m, const SizeTuple& n);

/// Minimum middle mass over all compatible pairs. Throws NotRealizable when q = 3.
int mu(const SizeTuple& m, const SizeTuple& n);

/// [mu, |m| + |n| - mu]. Throws NotRealizable when q = 3.
std::pair<int, int> iplus_range(const SizeTuple& m, const SizeTuple& n);

/// Pair for two graphs with k >= 2 connected components each, all of order
/// base, base+1 or base+2: an all-ones middle block of height `base`, with
/// 0/1 top and bottom rows absorbing the excess. Returned matrices have
/// base + 2 rows and are multiplicity matrices for the clique reductions.
std::pair<MultiplicityMatrix, MultiplicityMatrix>
witness_same_size_components(const SizeTuple& sizes_g, const SizeTuple& sizes_h, int base);

/// Pair for a connected graph of order m in {l, l+1, l+2} joined with a union
/// of l cliques n. V is the single column (eps; 1_l; eps'), W is
/// (n - 1; I_l; 0).
std::pair<MultiplicityMatrix, MultiplicityMatrix> witness_connected_vs_cliques(int m, const SizeTuple& n);

}  // namespace orthojoin
