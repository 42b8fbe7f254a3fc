#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dwork/residue.hpp"

namespace dwork {

enum class ParamErrorKind {
    SumMismatch,        // sum(alpha) - sum(beta) != C(d,2) mod d
    AlphaBetaCollision,
    BetaRepeat,
    BadCTriple,
    BadDimension,       // d < 3, n out of (0, d), or |alpha| != |beta|
    InvalidScale,
    ParseError,
};

const char* to_string(ParamErrorKind kind);

class ParamError : public std::runtime_error {
public:
    ParamError(ParamErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ParamErrorKind kind() const { return kind_; }

private:
    ParamErrorKind kind_;
};

using CTriple = std::array<int, 3>;

// A hypergeometric parameter (alpha_1..alpha_n; beta_1..beta_n) modulo d with an
// optional c-triple. Alphas are a sorted multiset, betas a sorted set, every
// entry reduced to [0, d).
class HgParam {
public:
    static HgParam validate(int d, std::vector<long long> alphas, std::vector<long long> betas,
                            std::optional<std::array<long long, 3>> c = std::nullopt);

    // Literal grammar: d=<int>;a=<int>(,<int>)*;b=<int>(,<int>)*[;c=<int>,<int>,<int>]
    static HgParam parse(std::string_view literal);

    int d() const { return d_; }
    int n() const { return static_cast<int>(alphas_.size()); }
    const std::vector<int>& alphas() const { return alphas_; }
    const std::vector<int>& betas() const { return betas_; }
    const std::optional<CTriple>& c() const { return c_; }

    HgParam with_c(std::optional<CTriple> c) const;
    HgParam without_c() const { return with_c(std::nullopt); }

    std::string to_string() const;

    bool operator==(const HgParam&) const = default;
    // Lexicographic on (d, alphas, betas, c); a missing c sorts first.
    bool operator<(const HgParam& other) const;

private:
    HgParam() = default;

    int d_ = 0;
    std::vector<int> alphas_;
    std::vector<int> betas_;
    std::optional<CTriple> c_;
};

// C(d,2) mod d.
int binom2_mod(int d);

// Throws ParamError(BadCTriple) unless c sums to 0 and is all-zero or all-nonzero.
void check_c_triple(const CTriple& c, int d);
bool is_admissible_c(const CTriple& c, int d);

// (-alpha_1, ..., -alpha_n, s_0, ..., s_{d-n-1}) where {s_k} is the sorted
// complement of {-beta_i}. Length d, sums to 0 mod d.
std::vector<int> a_vector(const HgParam& p);

// (s alpha; s beta; s c). Throws ParamError(InvalidScale) if s is not a unit or
// the scaled tuple fails validation.
HgParam scale(const HgParam& p, int s);

// (alpha + b; beta + b), c unchanged. Not used for canonicalisation.
HgParam translate(const HgParam& p, int b);

// Lexicographically least element of the unit-scaling orbit.
HgParam canonical_form(const HgParam& p);

std::string join_ints(const std::vector<int>& v, char sep = ',');

}  // namespace dwork
