#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace dwork {

using Rational = mpq_class;
using BigInt = mpz_class;

// Integer-valued function on (Z/dZ) \ {0}; values[x - 1] = f(x).
class IntFunction {
public:
    explicit IntFunction(int d) : d_(d), values_(static_cast<std::size_t>(d - 1), 0) {}
    IntFunction(int d, std::vector<long long> values);

    static IntFunction delta(int d, int a);
    static IntFunction constant(int d, long long value);

    int modulus() const { return d_; }
    const std::vector<long long>& values() const { return values_; }

    long long operator()(int x) const;
    // Adds v at x; x = 0 mod d is dropped since the domain excludes 0.
    void add(int x, long long v);

    IntFunction& operator+=(const IntFunction& other);
    IntFunction& operator-=(const IntFunction& other);
    IntFunction operator*(long long k) const;
    bool operator==(const IntFunction&) const = default;

private:
    int d_;
    std::vector<long long> values_;
};

// <f>(s) = (1/d) sum_a f(a) [s a].
Rational mean_bracket(const IntFunction& f, int s);

// epsilon_{k,a} = delta_{-ka} + sum_{0 <= j < k} delta_{a + j d / k}.
struct EFunction {
    int k;
    int a;
    IntFunction f;
};

IntFunction epsilon(int d, int k, int a);

// epsilon_{1,a} for 1 <= a <= d/2, then epsilon_{p,a} for each prime p | d
// (ascending) and 1 <= a < d/p.
const std::vector<EFunction>& e_basis(int d);

struct ESolution {
    std::vector<BigInt> particular;            // indexed like e_basis(d)
    std::vector<std::vector<BigInt>> kernel;   // integer basis of the relation lattice
};

// Decides integer solvability of sum x_eps eps = f by column Hermite reduction
// of the E(d) matrix. The result is re-expanded and checked before returning.
std::optional<ESolution> solve_in_E(const IntFunction& f);

// Unique rational solution over the basis obtained by scanning e_basis(d) in
// order and keeping each element independent of the ones kept so far. Returns
// the full-length coefficient vector (zero off the kept elements) when that
// solution exists and is integral.
std::optional<std::vector<BigInt>> solve_in_fixed_basis(const IntFunction& f);

// Indices into e_basis(d) kept by the scan above.
const std::vector<int>& fixed_basis_indices(int d);

// Re-expansion sum x_eps eps.
IntFunction expand_in_E(int d, std::span<const BigInt> x);

struct GammaExponents {
    Rational y1;
    std::map<int, Rational> yp;
    BigInt b1;
    std::map<int, BigInt> bp;
};

GammaExponents gamma_exponents(std::span<const BigInt> x, int d);

// gcd(b_p, n) = 1 for all p | d and gcd(phi(lcm(2 b1, d)) / phi(d), n) = 1.
bool gamma_degree_coprime(const GammaExponents& g, int n, int d);

struct CoprimeSearch {
    bool found = false;
    std::vector<BigInt> witness;   // a solution with coprime Gamma degrees
    std::size_t classes_scanned = 0;
};

// Existential search over the whole affine solution lattice. The degrees b_1,
// b_p only depend on y_1, y_p mod 1, so the search runs over the finite image
// of the lattice in (Q/Z)^(1 + #primes).
CoprimeSearch find_coprime_solution(const ESolution& sol, int n, int d);

}  // namespace dwork
