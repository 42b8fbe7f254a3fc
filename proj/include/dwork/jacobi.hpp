#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "dwork/cyclo.hpp"
#include "dwork/params.hpp"

namespace dwork {

class DegenerateIndices : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ZeroVector : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class TooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class PrecisionExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool is_prime(long n);

// F_ell with ell = 1 mod d, a generator g of F_ell^x and its discrete log table.
class PrimeFieldCtx {
public:
    // Uses the least primitive root unless a generator is given.
    PrimeFieldCtx(long ell, int d, std::optional<long> generator = std::nullopt);

    long ell() const { return ell_; }
    int d() const { return d_; }
    long generator() const { return g_; }
    // log_g(x) for x in F_ell^x.
    long dlog(long x) const;
    // a * log_g(x) mod d, the exponent of zeta_d in tau(x)^a.
    int chi_exponent(long x, long a) const;

private:
    long ell_;
    int d_;
    long g_;
    std::vector<long> dlog_;
};

long least_primitive_root(long ell);

// tau(x)^a = zeta_d^{a log_g(x)} under tau(g^{(ell-1)/d}) = zeta_d.
CycNum chi(const PrimeFieldCtx& ctx, long x, long a);

// -sum_{x != 0,1} tau(x)^{-a} tau(1-x)^{-b}. Needs a, b, a + b nonzero mod d.
CycNum jacobi2(const PrimeFieldCtx& ctx, long a, long b);

// J_a for a = (a_0, ..., a_m) with sum a_i = 0 mod d, equal to
// (-1)^m q^{-1} prod g(a_i) with g(0) = -1; computed by chaining two-variable
// sums through the partial sums of a.
CycNum jacobi(const PrimeFieldCtx& ctx, std::span<const int> a);

// (-1)^m sum over x_1..x_m in F_ell^x with x_1 + ... + x_m = -1 of
// prod_{i >= 1} tau(x_i)^{-a_i}. Length <= 3 and ell <= 31 only.
CycNum jacobi_direct(const PrimeFieldCtx& ctx, std::span<const int> a);

// Lifts of the d-th roots of unity mod ell^precision, keyed by the unit s
// with root = lift(g^{(ell-1)/d})^s.
std::map<int, BigInt> lifted_roots(const PrimeFieldCtx& ctx, int precision);

// ell-adic valuation of x under zeta_d -> root, computed mod ell^precision.
// Throws PrecisionExhausted if the image vanishes mod ell^precision.
int embedded_valuation(const CycNum& x, const BigInt& root, long ell, int precision);

// s -> sorted valuations of J_{a_vector(p) + beta_i}, i = 1..n.
std::map<int, std::vector<int>> motive_valuations(const HgParam& p, long ell, int precision = 40,
                                                  std::optional<long> generator = std::nullopt);

struct HodgeNewtonReport {
    std::map<int, std::vector<int>> valuations;   // per embedding, sorted
    std::map<int, std::vector<int>> hodge;        // per unit s, sorted degrees of scale(p, s)
    std::map<int, int> offsets;                   // min valuation minus min Hodge degree at the same key
    bool match = false;
};

// Compares {sorted valuations - min} and {sorted Hodge degrees - min} as
// multisets over all embeddings / units. Throws std::invalid_argument unless
// p is regular.
HodgeNewtonReport hodge_newton_check(const HgParam& p, long ell, int precision = 40,
                                     std::optional<long> generator = std::nullopt);

}  // namespace dwork
