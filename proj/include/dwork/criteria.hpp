#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dwork/elattice.hpp"
#include "dwork/params.hpp"
#include "dwork/residue.hpp"

namespace dwork {

// Raised when d does not divide the Hodge numerator; never expected for a
// validated parameter.
class NonIntegralDegree : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct HodgeVector {
    std::vector<int> by_beta;   // p_j, aligned with HgParam::betas()
    std::vector<int> degrees;   // sorted, with multiplicity

    std::map<int, int> multiplicities() const;
    bool multiplicity_free() const;
};

// p_j = (C(d,2) + sum_i [beta_j - alpha_i] - sum_i [beta_j - beta_i]) / d - 1.
HodgeVector hodge_degrees(const HgParam& p);

// The n integers sum_i [s b_j - s a_i] - sum_i [s b_j - s b_i], j = 1..n.
std::vector<long long> regularity_sums(const HgParam& p, int s);

// Criterion (R): regularity_sums(p, s) pairwise distinct for every unit s.
bool is_regular(const HgParam& p);

// (R) via the cyclic order: for every unit s the betas of (s alpha; s beta)
// form a single run around the circle, so the zigzag has one local maximum
// and one local minimum.
bool zigzag_regular(const HgParam& p);

// Criterion (UM): multiplicities of the distinct alphas, descending.
std::vector<int> jordan_blocks(const HgParam& p);

// det of the local monodromy at a d-th root of unity: +1 for d odd, -1 for d even.
int pseudoreflection_det(int d);

// Which reading of the "arithmetic progression" bullet to use.
enum class ApRule {
    EqualSpacing,   // beta is a coset of the order-n subgroup of Z/dZ
    CyclicAp,       // beta = {b, b+k, ..., b+(n-1)k} for some b, k
};

// Where the duality bullet (bullet 4) is enforced.
enum class DualityRule {
    Always,
    EvenD,   // only for even d
    Never,
};

struct BmOptions {
    ApRule ap_rule = ApRule::EqualSpacing;
    DualityRule duality = DualityRule::Always;
    bool operator==(const BmOptions&) const = default;
};

// How clause (iv) of (D) picks the E(d) coefficients it tests for coprimality.
enum class CoprimeScope {
    Lattice,      // any integer solution
    FixedBasis,   // the unique solution on the greedily kept basis
};

struct CriteriaOptions {
    BmOptions bm;
    CoprimeScope coprime_scope = CoprimeScope::Lattice;

    bool operator==(const CriteriaOptions&) const = default;

    // Predicates exactly as stated.
    static CriteriaOptions strict() { return {}; }
    // Duality bullet for even d only, fixed-basis coefficients: the reading
    // under which the reference d-sets are reproduced.
    static CriteriaOptions tabulated() {
        CriteriaOptions o;
        o.bm.duality = DualityRule::EvenD;
        o.coprime_scope = CoprimeScope::FixedBasis;
        return o;
    }
};

struct BmResult {
    bool pass = false;
    std::optional<int> failed_bullet;   // 1..4, first failing bullet
    bool operator==(const BmResult&) const = default;
};

// Criterion (BM). Bullets 3 and 4 compare multisets; bullet 4 ranges over all
// s in Z/dZ including 0.
BmResult bm(const HgParam& p, const BmOptions& opts = {});

// Units s with s * diff(alpha) = diff(alpha) and s * diff(beta) = diff(beta)
// as multisets.
UnitSubgroup scaling_stabilizer(const HgParam& p);

// Criterion (BM_fin) for a given U.
bool bm_finite(const HgParam& p, const UnitSubgroup& u);

// Smallest subgroup containing the stabiliser that has a complement.
std::optional<UnitSubgroup> minimal_admissible_u(const HgParam& p);

// n + sum_{i,j} delta_{b_j - a_i} - sum_{i != j} delta_{b_j - b_i} + n sum_i delta_{c_i}.
IntFunction build_f(const HgParam& p, const CTriple& c);

struct DetReport {
    bool regular = false;          // clause (i)
    bool weight_constant = false;  // clause (ii)
    bool weight_integral = false;  // <f> integral (reported, not required)
    bool balanced = false;         // clause (iii)
    bool solvable = false;         // clause (iv), integer solution exists in the chosen scope
    bool coprime = false;          // clause (iv), Gamma-degree part
    std::map<int, long long> weights;   // s -> w(s)
    std::optional<ESolution> solution;
    std::optional<std::vector<BigInt>> witness;
    bool pass = false;
};

// Criterion (D) for a fixed c. The d-even condition on specialisation points is
// not a property of the parameter and is not evaluated.
DetReport det_condition_report(const HgParam& p, const CTriple& c, CoprimeScope scope = CoprimeScope::Lattice);
bool det_condition(const HgParam& p, const CTriple& c, CoprimeScope scope = CoprimeScope::Lattice);

// Clause (iii) alone; c-independent. Pairs alpha_i with beta_i in stored order.
bool det_balanced(const HgParam& p);

// First admissible c with det_condition true: (0,0,0), then all-nonzero
// triples in lexicographic order.
std::optional<CTriple> find_c(const HgParam& p, CoprimeScope scope = CoprimeScope::Lattice);

}  // namespace dwork
