#include "dwork/elattice.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "dwork/residue.hpp"

namespace dwork {

IntFunction::IntFunction(int d, std::vector<long long> values) : d_(d), values_(std::move(values)) {
    if (values_.size() != static_cast<std::size_t>(d - 1))
        throw std::invalid_argument("IntFunction needs d - 1 values");
}

IntFunction IntFunction::delta(int d, int a) {
    IntFunction f(d);
    f.add(a, 1);
    return f;
}

IntFunction IntFunction::constant(int d, long long value) {
    return IntFunction(d, std::vector<long long>(static_cast<std::size_t>(d - 1), value));
}

long long IntFunction::operator()(int x) const {
    const int r = bracket(x, d_);
    if (r == 0) throw std::out_of_range("IntFunction is not defined at 0");
    return values_[r - 1];
}

void IntFunction::add(int x, long long v) {
    const int r = bracket(x, d_);
    if (r != 0) values_[r - 1] += v;
}

IntFunction& IntFunction::operator+=(const IntFunction& o) {
    if (o.d_ != d_) throw std::logic_error("IntFunction modulus mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}

IntFunction& IntFunction::operator-=(const IntFunction& o) {
    if (o.d_ != d_) throw std::logic_error("IntFunction modulus mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
}

IntFunction IntFunction::operator*(long long k) const {
    IntFunction out = *this;
    for (auto& v : out.values_) v *= k;
    return out;
}

Rational mean_bracket(const IntFunction& f, int s) {
    const int d = f.modulus();
    BigInt total = 0;
    for (int a = 1; a < d; ++a) {
        BigInt term(static_cast<long>(f(a)));
        total += term * bracket(static_cast<long long>(s) * a, d);
    }
    Rational out(total, d);
    out.canonicalize();
    return out;
}

IntFunction epsilon(int d, int k, int a) {
    if (d % k != 0 || bracket(static_cast<long long>(k) * a, d) == 0)
        throw std::invalid_argument("epsilon_{k,a} needs k | d and k a != 0");
    IntFunction f(d);
    f.add(-k * a, 1);
    for (int j = 0; j < k; ++j) f.add(a + j * (d / k), 1);
    return f;
}

namespace {

struct LatticeData {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<BigInt>> h;   // rows x cols, column echelon form
    std::vector<std::vector<BigInt>> u;   // cols x cols unimodular, M U = H
    std::vector<int> pivot_rows;          // pivot row of column k, k < rank
};

std::mutex g_cache_mu;
std::map<int, std::unique_ptr<std::vector<EFunction>>> g_basis_cache;
std::map<int, std::shared_ptr<const LatticeData>> g_lattice_cache;

std::vector<EFunction> build_basis(int d) {
    std::vector<EFunction> out;
    for (int a = 1; 2 * a <= d; ++a) out.push_back({1, a, epsilon(d, 1, a)});
    for (int p : prime_divisors(d))
        for (int a = 1; a < d / p; ++a) out.push_back({p, a, epsilon(d, p, a)});
    return out;
}

// Replaces columns (i, j) by (u ci + v cj, -b/g ci + a/g cj) in both matrices.
void combine_columns(LatticeData& L, int i, int j, const BigInt& a, const BigInt& b) {
    BigInt g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    const BigInt bg = b / g, ag = a / g;
    auto apply = [&](std::vector<std::vector<BigInt>>& m) {
        for (auto& row : m) {
            BigInt ci = row[i], cj = row[j];
            row[i] = s * ci + t * cj;
            row[j] = ag * cj - bg * ci;
        }
    };
    apply(L.h);
    apply(L.u);
}

std::shared_ptr<const LatticeData> build_lattice(int d) {
    const auto& basis = e_basis(d);
    auto L = std::make_shared<LatticeData>();
    L->rows = d - 1;
    L->cols = static_cast<int>(basis.size());
    L->h.assign(L->rows, std::vector<BigInt>(L->cols, 0));
    for (int c = 0; c < L->cols; ++c)
        for (int x = 1; x < d; ++x) L->h[x - 1][c] = static_cast<long>(basis[c].f(x));
    L->u.assign(L->cols, std::vector<BigInt>(L->cols, 0));
    for (int c = 0; c < L->cols; ++c) L->u[c][c] = 1;

    int pc = 0;
    for (int r = 0; r < L->rows && pc < L->cols; ++r) {
        for (int j = pc + 1; j < L->cols; ++j) {
            if (L->h[r][j] == 0) continue;
            if (L->h[r][pc] == 0) {
                for (auto& row : L->h) std::swap(row[pc], row[j]);
                for (auto& row : L->u) std::swap(row[pc], row[j]);
                continue;
            }
            combine_columns(*L, pc, j, L->h[r][pc], L->h[r][j]);
        }
        if (L->h[r][pc] == 0) continue;
        if (L->h[r][pc] < 0) {
            for (auto& row : L->h) row[pc] = -row[pc];
            for (auto& row : L->u) row[pc] = -row[pc];
        }
        L->pivot_rows.push_back(r);
        ++pc;
    }
    return L;
}

std::shared_ptr<const LatticeData> lattice_for(int d) {
    {
        std::lock_guard lock(g_cache_mu);
        if (auto it = g_lattice_cache.find(d); it != g_lattice_cache.end()) return it->second;
    }
    auto built = build_lattice(d);
    std::lock_guard lock(g_cache_mu);
    return g_lattice_cache.emplace(d, std::move(built)).first->second;
}

}  // namespace

const std::vector<EFunction>& e_basis(int d) {
    if (d < 3) throw std::invalid_argument("e_basis needs d >= 3");
    std::lock_guard lock(g_cache_mu);
    auto& slot = g_basis_cache[d];
    if (!slot) slot = std::make_unique<std::vector<EFunction>>(build_basis(d));
    return *slot;
}

IntFunction expand_in_E(int d, std::span<const BigInt> x) {
    const auto& basis = e_basis(d);
    if (x.size() != basis.size()) throw std::invalid_argument("coefficient vector has wrong length");
    std::vector<BigInt> acc(static_cast<std::size_t>(d - 1), 0);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (x[k] == 0) continue;
        for (int v = 1; v < d; ++v)
            if (long long e = basis[k].f(v); e != 0) acc[v - 1] += x[k] * static_cast<long>(e);
    }
    IntFunction out(d);
    for (int v = 1; v < d; ++v) {
        if (!acc[v - 1].fits_slong_p()) throw std::overflow_error("expansion overflows long");
        out.add(v, acc[v - 1].get_si());
    }
    return out;
}

std::optional<ESolution> solve_in_E(const IntFunction& f) {
    const int d = f.modulus();
    auto L = lattice_for(d);
    const int rank = static_cast<int>(L->pivot_rows.size());

    std::vector<BigInt> y(rank);
    for (int k = 0; k < rank; ++k) {
        const int r = L->pivot_rows[k];
        BigInt rhs(static_cast<long>(f(r + 1)));
        for (int j = 0; j < k; ++j) rhs -= L->h[r][j] * y[j];
        if (!mpz_divisible_p(rhs.get_mpz_t(), L->h[r][k].get_mpz_t())) return std::nullopt;
        y[k] = rhs / L->h[r][k];
    }
    for (int r = 0; r < L->rows; ++r) {
        BigInt lhs = 0;
        for (int k = 0; k < rank; ++k) lhs += L->h[r][k] * y[k];
        if (lhs != static_cast<long>(f(r + 1))) return std::nullopt;
    }

    ESolution sol;
    sol.particular.assign(L->cols, 0);
    for (int c = 0; c < L->cols; ++c)
        for (int k = 0; k < rank; ++k) sol.particular[c] += L->u[c][k] * y[k];
    for (int k = rank; k < L->cols; ++k) {
        std::vector<BigInt> v(L->cols);
        for (int c = 0; c < L->cols; ++c) v[c] = L->u[c][k];
        sol.kernel.push_back(std::move(v));
    }
    if (!(expand_in_E(d, sol.particular) == f))
        throw std::logic_error("solve_in_E: re-expansion does not reproduce f");
    return sol;
}

namespace {

struct FixedBasisData {
    std::vector<int> kept;                      // indices into e_basis(d)
    std::vector<int> rows;                      // r independent rows of the kept columns
    std::vector<std::vector<Rational>> inv;     // inverse of the r x r minor on (rows, kept)
};

std::map<int, std::shared_ptr<const FixedBasisData>> g_fixed_cache;

// Gauss-Jordan over Q; returns the pivot columns of m (rows x cols).
std::vector<int> rref(std::vector<std::vector<Rational>>& m, int cols) {
    std::vector<int> pivots;
    std::size_t row = 0;
    for (int c = 0; c < cols && row < m.size(); ++c) {
        std::size_t q = row;
        while (q < m.size() && m[q][c] == 0) ++q;
        if (q == m.size()) continue;
        std::swap(m[q], m[row]);
        const Rational lead = m[row][c];
        for (auto& v : m[row]) v /= lead;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][c] == 0) continue;
            const Rational t = m[i][c];
            for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= t * m[row][j];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

std::shared_ptr<const FixedBasisData> build_fixed(int d) {
    const auto& basis = e_basis(d);
    const int cols = static_cast<int>(basis.size());
    auto data = std::make_shared<FixedBasisData>();

    // Pivot columns of the full matrix are exactly the greedily kept elements.
    std::vector<std::vector<Rational>> m(d - 1, std::vector<Rational>(cols));
    for (int x = 1; x < d; ++x)
        for (int c = 0; c < cols; ++c) m[x - 1][c] = static_cast<long>(basis[c].f(x));
    data->kept = rref(m, cols);
    const int r = static_cast<int>(data->kept.size());

    // Pivot columns of the transpose of the kept block give independent rows.
    std::vector<std::vector<Rational>> t(r, std::vector<Rational>(d - 1));
    for (int k = 0; k < r; ++k)
        for (int x = 1; x < d; ++x) t[k][x - 1] = static_cast<long>(basis[data->kept[k]].f(x));
    data->rows = rref(t, d - 1);

    std::vector<std::vector<Rational>> aug(r, std::vector<Rational>(2 * r));
    for (int i = 0; i < r; ++i) {
        for (int k = 0; k < r; ++k) aug[i][k] = static_cast<long>(basis[data->kept[k]].f(data->rows[i] + 1));
        aug[i][r + i] = 1;
    }
    rref(aug, r);
    data->inv.assign(r, std::vector<Rational>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) data->inv[i][j] = aug[i][r + j];
    return data;
}

std::shared_ptr<const FixedBasisData> fixed_for(int d) {
    {
        std::lock_guard lock(g_cache_mu);
        if (auto it = g_fixed_cache.find(d); it != g_fixed_cache.end()) return it->second;
    }
    auto built = build_fixed(d);
    std::lock_guard lock(g_cache_mu);
    return g_fixed_cache.emplace(d, std::move(built)).first->second;
}

}  // namespace

const std::vector<int>& fixed_basis_indices(int d) { return fixed_for(d)->kept; }

std::optional<std::vector<BigInt>> solve_in_fixed_basis(const IntFunction& f) {
    const int d = f.modulus();
    auto data = fixed_for(d);
    const std::size_t r = data->kept.size();
    std::vector<BigInt> x(e_basis(d).size(), 0);
    for (std::size_t k = 0; k < r; ++k) {
        Rational v = 0;
        for (std::size_t i = 0; i < r; ++i) v += data->inv[k][i] * static_cast<long>(f(data->rows[i] + 1));
        v.canonicalize();
        if (v.get_den() != 1) return std::nullopt;
        x[data->kept[k]] = v.get_num();
    }
    if (!(expand_in_E(d, x) == f)) return std::nullopt;
    return x;
}

GammaExponents gamma_exponents(std::span<const BigInt> x, int d) {
    const auto& basis = e_basis(d);
    if (x.size() != basis.size()) throw std::invalid_argument("coefficient vector has wrong length");
    GammaExponents g;
    g.y1 = 0;
    for (int p : prime_divisors(d)) g.yp[p] = 0;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const auto& e = basis[k];
        if (e.k == 1) {
            g.y1 += Rational(x[k] * e.a, d);
        } else {
            const int p = e.k;
            g.yp[p] += Rational(x[k]) * (Rational(1, 2) - Rational(e.a, d));
            g.y1 += Rational(x[k]) * (Rational(e.a * p, d) + Rational(p - 1, 4));
        }
    }
    g.y1.canonicalize();
    g.b1 = g.y1.get_den();
    for (auto& [p, y] : g.yp) {
        y.canonicalize();
        const bool sqrt_in_field = d % 4 == 0 || p % 4 == 1;
        Rational t = sqrt_in_field ? Rational(2 * y) : y;
        t.canonicalize();
        g.bp[p] = t.get_den();
    }
    return g;
}

namespace {

long long phi_ll(long long n) {
    long long result = n;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            result = result / p * (p - 1);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) result = result / n * (n - 1);
    return result;
}

bool coprime_degrees(long long b1, const std::map<int, long long>& bp, int n, int d) {
    for (const auto& [p, b] : bp)
        if (std::gcd(b, static_cast<long long>(n)) != 1) return false;
    const long long l = std::lcm(2 * b1, static_cast<long long>(d));
    const long long ratio = phi_ll(l) / phi_ll(d);
    return std::gcd(ratio, static_cast<long long>(n)) == 1;
}

}  // namespace

bool gamma_degree_coprime(const GammaExponents& g, int n, int d) {
    std::map<int, long long> bp;
    for (const auto& [p, b] : g.bp) bp[p] = b.get_si();
    return coprime_degrees(g.b1.get_si(), bp, n, d);
}

CoprimeSearch find_coprime_solution(const ESolution& sol, int n, int d) {
    const auto& basis = e_basis(d);
    const auto primes = prime_divisors(d);
    const long L = 4L * d;
    const std::size_t m = 1 + primes.size();

    // Residues of (4d y_1, 4d y_p) mod 4d; all are integers.
    auto image = [&](std::span<const BigInt> x) {
        std::vector<long long> out(m, 0);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const auto& e = basis[k];
            BigInt r;
            if (e.k == 1) {
                r = x[k] * (4L * e.a);
                out[0] = (out[0] + mpz_class(r % L).get_si()) % L;
            } else {
                const int p = e.k;
                r = x[k] * (4L * e.a * p + static_cast<long>(d) * (p - 1));
                out[0] = (out[0] + mpz_class(r % L).get_si()) % L;
                const std::size_t idx =
                    1 + static_cast<std::size_t>(std::find(primes.begin(), primes.end(), p) - primes.begin());
                r = x[k] * (2L * d - 4L * e.a);
                out[idx] = (out[idx] + mpz_class(r % L).get_si()) % L;
            }
        }
        for (auto& v : out) v = (v % L + L) % L;
        return out;
    };
    auto passes = [&](const std::vector<long long>& v) {
        const long long b1 = L / std::gcd(v[0], L);
        std::map<int, long long> bp;
        for (std::size_t i = 0; i < primes.size(); ++i) {
            const int p = primes[i];
            const bool sqrt_in_field = d % 4 == 0 || p % 4 == 1;
            const long long num = sqrt_in_field ? (2 * v[1 + i]) % L : v[1 + i];
            bp[p] = L / std::gcd(num, L);
        }
        return coprime_degrees(b1, bp, n, d);
    };
    auto encode = [&](const std::vector<long long>& v) {
        unsigned long long code = 0;
        for (long long x : v) code = code * static_cast<unsigned long long>(L) + static_cast<unsigned long long>(x);
        return code;
    };

    CoprimeSearch result;
    const auto base = image(sol.particular);
    std::vector<std::vector<long long>> gens;
    for (const auto& k : sol.kernel) gens.push_back(image(k));

    struct Node {
        std::vector<long long> value;
        long long parent;
        int gen;
    };
    std::vector<Node> nodes{{std::vector<long long>(m, 0), -1, -1}};
    std::unordered_map<unsigned long long, long long> seen{{encode(nodes[0].value), 0}};
    constexpr std::size_t kMaxClasses = std::size_t{1} << 22;

    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::vector<long long> cand(m);
        for (std::size_t t = 0; t < m; ++t) cand[t] = (base[t] + nodes[i].value[t]) % L;
        ++result.classes_scanned;
        if (passes(cand)) {
            std::vector<long long> counts(gens.size(), 0);
            for (long long at = static_cast<long long>(i); nodes[at].parent >= 0; at = nodes[at].parent)
                ++counts[nodes[at].gen];
            result.witness = sol.particular;
            for (std::size_t g = 0; g < gens.size(); ++g)
                for (std::size_t c = 0; c < result.witness.size(); ++c)
                    result.witness[c] += sol.kernel[g][c] * static_cast<long>(counts[g]);
            result.found = true;
            return result;
        }
        for (std::size_t g = 0; g < gens.size(); ++g) {
            std::vector<long long> next(m);
            for (std::size_t t = 0; t < m; ++t) next[t] = (nodes[i].value[t] + gens[g][t]) % L;
            if (seen.emplace(encode(next), static_cast<long long>(nodes.size())).second) {
                nodes.push_back({std::move(next), static_cast<long long>(i), static_cast<int>(g)});
                if (nodes.size() > kMaxClasses)
                    throw std::runtime_error("coprime search: residue class group too large");
            }
        }
    }
    return result;
}

}  // namespace dwork
