#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dwork/cyclo.hpp"
#include "dwork/params.hpp"

namespace dwork {

struct LeveltPair {
    CycMatrix a;   // companion of prod (X - zeta_d^alpha_i)
    CycMatrix b;   // companion of prod (X - zeta_d^beta_i)
};

// Companion matrix with ones on the subdiagonal and last column -A_0..-A_{n-1}.
CycMatrix companion(const std::vector<CycNum>& monic);

// Throws std::logic_error if a characteristic polynomial check fails.
LeveltPair levelt_matrices(const HgParam& p);

struct MonodromyReport {
    int pseudo_rank = 0;                // rank(A^-1 B - I)
    CycNum pseudo_det{1};               // det(A^-1 B)
    int expected_det = 0;
    std::optional<std::vector<int>> infinity_blocks;   // empty if A^d is not unipotent
    std::vector<int> expected_blocks;
    bool det_identities = false;        // det(A)^d = det(B)^d = 1
    bool pseudoreflection = false;
    bool blocks_match = false;
    bool pass() const { return pseudoreflection && blocks_match && det_identities; }
};

MonodromyReport monodromy_report(const HgParam& p);
bool verify_pseudoreflection(const HgParam& p);
// Throws NotUnipotent if A^d is not unipotent.
bool verify_infinity_blocks(const HgParam& p);
bool verify_det_identities(const HgParam& p);

// Rising factorial (z)_j.
Rational pochhammer(const Rational& z, long long j);

// prod_i ((r_i + 1)/d)_{q_i} / (l + 1)_{m - l}; zero if some r_i = d - 1.
// Requires sum r_i = d l and sum (d q_i + r_i) = d m.
Rational kloosterman_coeff(std::span<const long long> r, std::span<const long long> q, long long l, long long m,
                           int d);

// Splits exponents e_i = d q_i + r_i with sum e_i = d m and applies the reduction.
Rational kloosterman_reduce(std::span<const long long> e, int d);

// t^exponent * sum_k coeffs[k] t^{step k}.
struct TruncSeries {
    int exponent = 0;
    int step = 1;
    std::vector<Rational> coeffs;
};

// c_k = prod_i ((d + [a_i - b_1] - [b_j - b_1])/d)_k / ((d + [b_i - b_1] - [b_j - b_1])/d)_k,
// exponent [b_1 - b_j]; j is 1-based in stored beta order.
TruncSeries gj_coefficients(const HgParam& p, int j, int order);

struct AnnihilationReport {
    int exponent = 0;
    std::vector<Rational> residuals;   // coefficient of t^{exponent + d k}, k = 0..order
    bool pass = false;
};

// Applies prod (theta + [b_i - b_1] - d) - t^d prod (theta + [a_i - b_1]) to
// t^exponent G_j(t^d) with c_{-1} = 0.
AnnihilationReport annihilation_residuals(const HgParam& p, int j, int order, int exponent);

// Uses the local exponent d - [b_j - b_1]; this is [b_1 - b_j] except for
// j = 1, where the root of the indicial equation is d rather than 0.
AnnihilationReport verify_annihilation(const HgParam& p, int j, int order);

}  // namespace dwork
