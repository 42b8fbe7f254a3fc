#include "dwork/jacobi.hpp"

#include <algorithm>
#include <numeric>

#include "dwork/criteria.hpp"
#include "dwork/residue.hpp"

namespace dwork {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

namespace {

long powmod(long base, long e, long mod) {
    long long r = 1, b = base % mod;
    while (e) {
        if (e & 1) r = r * b % mod;
        b = b * b % mod;
        e >>= 1;
    }
    return static_cast<long>(r);
}

bool is_generator(long g, long ell) {
    if (g % ell == 0) return false;
    for (long p = 2, m = ell - 1; m > 1; ++p) {
        if (m % p) continue;
        if (powmod(g, (ell - 1) / p, ell) == 1) return false;
        while (m % p == 0) m /= p;
    }
    return true;
}

// Sum of zeta_d^{e} over a list of exponent counts.
CycNum from_counts(const std::vector<long>& counts, int d) {
    std::vector<Rational> v(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) v[k] = counts[k];
    return CycNum(d, std::move(v));
}

// sum_{x != 0,1} tau(x)^{-a} tau(1-x)^{-b}.
CycNum jacobi_std(const PrimeFieldCtx& ctx, long a, long b) {
    const int d = ctx.d();
    std::vector<long> counts(static_cast<std::size_t>(d), 0);
    for (long x = 2; x < ctx.ell(); ++x)
        ++counts[bracket(-ctx.chi_exponent(x, a) - ctx.chi_exponent(ctx.ell() + 1 - x, b), d)];
    return from_counts(counts, d);
}

}  // namespace

long least_primitive_root(long ell) {
    for (long g = 2; g < ell; ++g)
        if (is_generator(g, ell)) return g;
    if (ell == 2) return 1;
    throw std::invalid_argument("no primitive root");
}

PrimeFieldCtx::PrimeFieldCtx(long ell, int d, std::optional<long> generator) : ell_(ell), d_(d) {
    if (!is_prime(ell)) throw std::invalid_argument(std::to_string(ell) + " is not prime");
    if (d < 2 || (ell - 1) % d != 0) throw std::invalid_argument("need ell = 1 mod d");
    g_ = generator ? bracket(*generator, static_cast<int>(ell)) : least_primitive_root(ell);
    if (!is_generator(g_, ell)) throw std::invalid_argument(std::to_string(g_) + " does not generate F_ell^x");
    dlog_.assign(static_cast<std::size_t>(ell), -1);
    long long x = 1;
    for (long k = 0; k < ell - 1; ++k) {
        dlog_[x] = k;
        x = x * g_ % ell;
    }
}

long PrimeFieldCtx::dlog(long x) const {
    const long r = bracket(x, static_cast<int>(ell_));
    if (r == 0) throw std::domain_error("dlog of zero");
    return dlog_[r];
}

int PrimeFieldCtx::chi_exponent(long x, long a) const {
    return bracket(static_cast<long long>(bracket(a, d_)) * (dlog(x) % d_), d_);
}

CycNum chi(const PrimeFieldCtx& ctx, long x, long a) { return root_of_unity(ctx.d(), ctx.chi_exponent(x, a)); }

CycNum jacobi2(const PrimeFieldCtx& ctx, long a, long b) {
    const int d = ctx.d();
    if (bracket(a, d) == 0 || bracket(b, d) == 0 || bracket(a + b, d) == 0)
        throw DegenerateIndices("jacobi2 needs a, b, a + b nonzero mod d");
    return -jacobi_std(ctx, a, b);
}

CycNum jacobi(const PrimeFieldCtx& ctx, std::span<const int> a) {
    const int d = ctx.d();
    if (std::all_of(a.begin(), a.end(), [d](int x) { return bracket(x, d) == 0; }))
        throw ZeroVector("jacobi needs a nonzero index vector");
    long long total = 0;
    for (int x : a) total += x;
    if (bracket(total, d) != 0) throw std::invalid_argument("jacobi indices must sum to 0 mod d");

    // Invariant: prod of the Gauss sums seen so far = coef * g(acc), g(0) = -1.
    CycNum coef(d, 1L);
    int acc = 0;
    bool started = false;
    for (int raw : a) {
        const int x = bracket(raw, d);
        if (x == 0) {
            coef = -coef;
            continue;
        }
        if (!started) {
            acc = x;
            started = true;
            continue;
        }
        if (acc == 0) {
            coef = -coef;
            acc = x;
        } else if (bracket(acc + x, d) == 0) {
            // g(c) g(-c) = tau(-1)^c q
            coef = coef * chi(ctx, -1, acc) * CycNum(d, ctx.ell());
            coef = -coef;
            acc = 0;
        } else {
            // g(c) g(x) = J(c, x) g(c + x) with J the plain character sum
            coef = coef * jacobi_std(ctx, acc, x);
            acc = bracket(acc + x, d);
        }
    }
    // acc = 0 here, so the product is -coef.
    const long m = static_cast<long>(a.size()) - 1;
    CycNum out = -coef * CycNum(d, std::vector<Rational>{Rational(1, ctx.ell())});
    if (m % 2) out = -out;
    return out;
}

CycNum jacobi_direct(const PrimeFieldCtx& ctx, std::span<const int> a) {
    if (a.size() > 3 || ctx.ell() > 31) throw TooLarge("jacobi_direct is limited to length 3 and ell <= 31");
    if (a.empty()) throw std::invalid_argument("empty index vector");
    const int d = ctx.d();
    const long ell = ctx.ell();
    const int m = static_cast<int>(a.size()) - 1;
    std::vector<long> counts(static_cast<std::size_t>(d), 0);
    auto term = [&](std::span<const long> xs) {
        long e = 0;
        for (int i = 1; i <= m; ++i) e -= ctx.chi_exponent(xs[i - 1], a[i]);
        ++counts[bracket(e, d)];
    };
    if (m == 1) {
        const long x1 = ell - 1;
        term(std::span<const long>(&x1, 1));
    } else if (m == 2) {
        for (long x1 = 1; x1 < ell; ++x1) {
            const long x2 = bracket(-1 - x1, static_cast<int>(ell));
            if (x2 == 0) continue;
            const long xs[2] = {x1, x2};
            term(xs);
        }
    }
    CycNum out = from_counts(counts, d);
    return m % 2 ? -out : out;
}

std::map<int, BigInt> lifted_roots(const PrimeFieldCtx& ctx, int precision) {
    const int d = ctx.d();
    const long ell = ctx.ell();
    BigInt mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(ell), static_cast<unsigned long>(precision));
    // Newton iteration for X^d - 1 from the root mod ell.
    BigInt w = powmod(ctx.generator(), (ell - 1) / d, ell);
    const BigInt dd = d;
    for (BigInt cur = ell; cur < mod;) {
        cur = cur * cur;
        if (cur > mod) cur = mod;
        BigInt wd, wd1, inv;
        mpz_powm_ui(wd.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(d), cur.get_mpz_t());
        mpz_powm_ui(wd1.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(d - 1), cur.get_mpz_t());
        BigInt deriv = dd * wd1;
        mpz_invert(inv.get_mpz_t(), deriv.get_mpz_t(), cur.get_mpz_t());
        w = w - (wd - 1) * inv;
        mpz_mod(w.get_mpz_t(), w.get_mpz_t(), cur.get_mpz_t());
    }
    std::map<int, BigInt> roots;
    for (int s : units(d)) {
        BigInt r;
        mpz_powm_ui(r.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(s), mod.get_mpz_t());
        roots[s] = r;
    }
    return roots;
}

int embedded_valuation(const CycNum& x, const BigInt& root, long ell, int precision) {
    BigInt mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(ell), static_cast<unsigned long>(precision));
    BigInt acc = 0, pw = 1;
    const BigInt l = ell;
    for (const Rational& c : x.coeffs()) {
        if (mpz_divisible_p(c.get_den().get_mpz_t(), l.get_mpz_t()))
            throw std::domain_error("coefficient denominator divisible by ell");
        BigInt den_inv;
        mpz_invert(den_inv.get_mpz_t(), c.get_den().get_mpz_t(), mod.get_mpz_t());
        acc += c.get_num() * den_inv % mod * pw;
        acc %= mod;
        pw = pw * root % mod;
    }
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), mod.get_mpz_t());
    if (acc == 0) throw PrecisionExhausted("valuation reaches precision " + std::to_string(precision));
    return static_cast<int>(mpz_remove(acc.get_mpz_t(), acc.get_mpz_t(), l.get_mpz_t()));
}

std::map<int, std::vector<int>> motive_valuations(const HgParam& p, long ell, int precision,
                                                  std::optional<long> generator) {
    const int d = p.d();
    const PrimeFieldCtx ctx(ell, d, generator);
    const auto base = a_vector(p);
    std::vector<CycNum> sums;
    for (int b : p.betas()) {
        std::vector<int> v;
        for (int x : base) v.push_back(bracket(x + b, d));
        sums.push_back(jacobi(ctx, v));
    }
    std::map<int, std::vector<int>> out;
    for (const auto& [s, root] : lifted_roots(ctx, precision)) {
        auto& vals = out[s];
        for (const auto& j : sums) vals.push_back(embedded_valuation(j, root, ell, precision));
        std::sort(vals.begin(), vals.end());
    }
    return out;
}

namespace {

std::vector<int> shifted_to_zero(std::vector<int> v) {
    const int lo = *std::min_element(v.begin(), v.end());
    for (int& x : v) x -= lo;
    return v;
}

}  // namespace

HodgeNewtonReport hodge_newton_check(const HgParam& p, long ell, int precision, std::optional<long> generator) {
    if (!is_regular(p)) throw std::invalid_argument("hodge_newton_check needs a regular parameter");
    HodgeNewtonReport r;
    r.valuations = motive_valuations(p, ell, precision, generator);
    std::vector<std::vector<int>> lhs, rhs;
    for (const auto& [s, vals] : r.valuations) {
        r.hodge[s] = hodge_degrees(scale(p, s)).degrees;
        r.offsets[s] = vals.front() - r.hodge[s].front();
        lhs.push_back(shifted_to_zero(vals));
        rhs.push_back(shifted_to_zero(r.hodge[s]));
    }
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    r.match = lhs == rhs;
    return r;
}

}  // namespace dwork
