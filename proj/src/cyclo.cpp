#include "dwork/cyclo.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "dwork/residue.hpp"

namespace dwork {

namespace {

using Poly = std::vector<Rational>;   // constant term first

std::mutex g_phi_mu;
std::map<int, std::vector<BigInt>> g_phi_cache;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division of integer polynomials; divisor is monic.
std::vector<BigInt> divide_monic(std::vector<BigInt> num, const std::vector<BigInt>& den) {
    const std::size_t dn = den.size() - 1;
    std::vector<BigInt> q(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        const BigInt c = num[i];
        q[i - dn] = c;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    return q;
}

std::vector<BigInt> compute_phi(int m) {
    std::vector<BigInt> p(static_cast<std::size_t>(m) + 1, 0);
    p[0] = -1;
    p[m] = 1;
    for (int k = 1; k < m; ++k)
        if (m % k == 0) p = divide_monic(p, cyclotomic_poly(k));
    return p;
}

// p mod Phi_m, padded to exactly phi(m) coefficients.
Poly reduce(Poly p, int m) {
    const auto& phi = cyclotomic_poly(m);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = p.size(); i-- > deg;) {
        if (p[i] == 0) continue;
        const Rational c = p[i];
        for (std::size_t j = 0; j < deg; ++j) p[i - deg + j] -= c * Rational(phi[j]);
        p[i] = 0;
    }
    p.resize(deg, Rational(0));
    for (auto& c : p) c.canonicalize();
    return p;
}

// Quotient and remainder of polynomials over Q; b must be nonzero and trimmed.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    trim(a);
    if (a.size() < b.size()) return {Poly{}, a};
    Poly q(a.size() - b.size() + 1, Rational(0));
    const Rational lead = b.back();
    for (std::size_t i = a.size(); i-- >= b.size();) {
        if (a[i] == 0) continue;
        const Rational c = a[i] / lead;
        q[i - (b.size() - 1)] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[i - (b.size() - 1) + j] -= c * b[j];
    }
    trim(a);
    return {q, a};
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) out[i + j] += a[i] * b[j];
    }
    return out;
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    trim(out);
    return out;
}

void require_level(const CycNum& a, const CycNum& b) {
    if (a.level() != b.level()) throw std::logic_error("CycNum level mismatch");
}

}  // namespace

const std::vector<BigInt>& cyclotomic_poly(int m) {
    if (m < 1) throw std::invalid_argument("cyclotomic level must be positive");
    {
        std::lock_guard lock(g_phi_mu);
        if (auto it = g_phi_cache.find(m); it != g_phi_cache.end()) return it->second;
    }
    auto p = compute_phi(m);
    std::lock_guard lock(g_phi_mu);
    return g_phi_cache.emplace(m, std::move(p)).first->second;
}

CycNum::CycNum(int level) : level_(level), coeffs_(cyclotomic_poly(level).size() - 1, Rational(0)) {}

CycNum::CycNum(int level, std::vector<Rational> coeffs) : level_(level), coeffs_(reduce(std::move(coeffs), level)) {}

CycNum::CycNum(int level, long value) : CycNum(level) { coeffs_[0] = value; }

CycNum CycNum::root_of_unity(int m, long long k) {
    Poly p(static_cast<std::size_t>(m), Rational(0));
    p[bracket(k, m)] = 1;
    return CycNum(m, std::move(p));
}

CycNum root_of_unity(int m, long long k) { return CycNum::root_of_unity(m, k); }

bool CycNum::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool CycNum::is_rational() const {
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool CycNum::is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

CycNum CycNum::operator+(const CycNum& o) const {
    require_level(*this, o);
    CycNum out = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] += o.coeffs_[i];
    return out;
}

CycNum CycNum::operator-(const CycNum& o) const {
    require_level(*this, o);
    CycNum out = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] -= o.coeffs_[i];
    return out;
}

CycNum CycNum::operator-() const {
    CycNum out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

CycNum CycNum::operator*(const CycNum& o) const {
    require_level(*this, o);
    return CycNum(level_, poly_mul(coeffs_, o.coeffs_));
}

CycNum CycNum::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero in Q(zeta_" + std::to_string(level_) + ")");
    // Extended Euclid on (Phi_m, a): track t with t a = r mod Phi_m.
    const auto& phi_int = cyclotomic_poly(level_);
    Poly r0(phi_int.begin(), phi_int.end());
    Poly r1 = coeffs_;
    trim(r1);
    Poly t0, t1{Rational(1)};
    while (r1.size() > 1) {
        auto [q, r] = divmod(r0, r1);
        Poly t = poly_sub(t0, poly_mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        t0 = std::move(t1);
        t1 = std::move(t);
    }
    // r1 is a nonzero constant since Phi_m is irreducible.
    const Rational c = r1[0];
    for (auto& x : t1) x /= c;
    return CycNum(level_, std::move(t1));
}

CycNum CycNum::pow(long long k) const {
    if (k < 0) return inverse().pow(-k);
    CycNum result(level_, 1L), base = *this;
    while (k) {
        if (k & 1) result *= base;
        base *= base;
        k >>= 1;
    }
    return result;
}

CycNum CycNum::lift(int new_level) const {
    if (new_level % level_ != 0) throw std::invalid_argument("lift target must be a multiple of the level");
    const int step = new_level / level_;
    Poly p(static_cast<std::size_t>(new_level), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) p[i * step] = coeffs_[i];
    return CycNum(new_level, std::move(p));
}

CycNum CycNum::galois(int s) const {
    if (gcd_int(s, level_) != 1) throw std::invalid_argument("galois twist needs a unit");
    Poly p(static_cast<std::size_t>(level_), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        p[bracket(static_cast<long long>(i) * s, level_)] += coeffs_[i];
    return CycNum(level_, std::move(p));
}

std::string CycNum::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        std::string c = coeffs_[i].get_str();
        if (!out.empty()) out += c[0] == '-' ? " - " : " + ";
        else if (c[0] == '-') out += "-";
        if (c[0] == '-') c.erase(0, 1);
        if (i == 0) out += c;
        else {
            if (c != "1") out += c + "*";
            out += "z";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

std::vector<CycNum> poly_from_roots(int d, std::span<const int> exponents) {
    std::vector<CycNum> p{CycNum(d, 1L)};
    for (int e : exponents) {
        const CycNum root = root_of_unity(d, e);
        std::vector<CycNum> next(p.size() + 1, CycNum(d));
        for (std::size_t i = 0; i < p.size(); ++i) {
            next[i + 1] += p[i];
            next[i] -= root * p[i];
        }
        p = std::move(next);
    }
    return p;
}

CycMatrix::CycMatrix(int rows, int cols, int level)
    : rows_(rows), cols_(cols), level_(level), a_(static_cast<std::size_t>(rows) * cols, CycNum(level)) {}

CycMatrix CycMatrix::identity(int n, int level) {
    CycMatrix m(n, n, level);
    for (int i = 0; i < n; ++i) m.at(i, i) = CycNum(level, 1L);
    return m;
}

CycMatrix CycMatrix::operator+(const CycMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    CycMatrix out = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] += o.a_[i];
    return out;
}

CycMatrix CycMatrix::operator-(const CycMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    CycMatrix out = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] -= o.a_[i];
    return out;
}

CycMatrix CycMatrix::operator*(const CycMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch");
    CycMatrix out(rows_, o.cols_, level_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j)
                if (!o.at(k, j).is_zero()) out.at(i, j) += at(i, k) * o.at(k, j);
        }
    return out;
}

bool CycMatrix::operator==(const CycMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

CycMatrix CycMatrix::pow(long long k) const {
    if (rows_ != cols_) throw std::invalid_argument("pow needs a square matrix");
    if (k < 0) return inverse().pow(-k);
    CycMatrix result = identity(rows_, level_), base = *this;
    while (k) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

CycMatrix CycMatrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse needs a square matrix");
    const int n = rows_;
    CycMatrix a = *this, inv = identity(n, level_);
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && a.at(p, c).is_zero()) ++p;
        if (p == n) throw DivisionByZero("singular matrix");
        for (int j = 0; j < n; ++j) {
            std::swap(a.at(p, j), a.at(c, j));
            std::swap(inv.at(p, j), inv.at(c, j));
        }
        const CycNum piv = a.at(c, c).inverse();
        for (int j = 0; j < n; ++j) {
            a.at(c, j) *= piv;
            inv.at(c, j) *= piv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == c || a.at(i, c).is_zero()) continue;
            const CycNum f = a.at(i, c);
            for (int j = 0; j < n; ++j) {
                a.at(i, j) -= f * a.at(c, j);
                inv.at(i, j) -= f * inv.at(c, j);
            }
        }
    }
    return inv;
}

namespace {

// Bareiss elimination in place; returns the rank and the sign of the row swaps.
int bareiss(CycMatrix& a, int& sign) {
    const int n = a.rows(), m = a.cols();
    CycNum prev(a.level(), 1L);
    sign = 1;
    int r = 0;
    for (int c = 0; c < m && r < n; ++c) {
        int p = r;
        while (p < n && a.at(p, c).is_zero()) ++p;
        if (p == n) continue;
        if (p != r) {
            for (int j = 0; j < m; ++j) std::swap(a.at(p, j), a.at(r, j));
            sign = -sign;
        }
        const CycNum prev_inv = prev.inverse();
        for (int i = r + 1; i < n; ++i) {
            for (int j = c + 1; j < m; ++j)
                a.at(i, j) = (a.at(r, c) * a.at(i, j) - a.at(i, c) * a.at(r, j)) * prev_inv;
            a.at(i, c) = CycNum(a.level());
        }
        prev = a.at(r, c);
        ++r;
    }
    return r;
}

}  // namespace

CycNum CycMatrix::det() const {
    if (rows_ != cols_) throw std::invalid_argument("det needs a square matrix");
    if (rows_ == 0) return CycNum(level_, 1L);
    CycMatrix a = *this;
    int sign = 1;
    if (bareiss(a, sign) < rows_) return CycNum(level_);
    CycNum d = a.at(rows_ - 1, cols_ - 1);
    return sign > 0 ? d : -d;
}

int CycMatrix::rank() const {
    CycMatrix a = *this;
    int sign = 1;
    return bareiss(a, sign);
}

bool CycMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const CycNum& x) { return x.is_zero(); });
}

CycNum CycMatrix::trace() const {
    CycNum t(level_);
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
    return t;
}

std::vector<CycNum> CycMatrix::char_poly() const {
    if (rows_ != cols_) throw std::invalid_argument("char_poly needs a square matrix");
    // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
    const int n = rows_;
    std::vector<CycNum> c(static_cast<std::size_t>(n) + 1, CycNum(level_));
    c[n] = CycNum(level_, 1L);
    CycMatrix mk(n, n, level_);
    const CycMatrix id = identity(n, level_);
    for (int k = 1; k <= n; ++k) {
        CycMatrix scaled = id;
        for (int i = 0; i < n; ++i) scaled.at(i, i) = c[n - k + 1];
        mk = *this * mk + scaled;
        c[n - k] = -((*this * mk).trace() * CycNum(level_, std::vector<Rational>{Rational(1, k)}));
    }
    return c;
}

std::vector<int> unipotent_block_sizes(const CycMatrix& m) {
    const int n = m.rows();
    const CycMatrix nil = m - CycMatrix::identity(n, m.level());
    std::vector<int> ranks{n};
    CycMatrix power = CycMatrix::identity(n, m.level());
    for (int k = 1; k <= n; ++k) {
        power = power * nil;
        ranks.push_back(power.rank());
    }
    if (ranks.back() != 0) throw NotUnipotent("(M - I)^n is nonzero");
    // at_least[k] = number of blocks of size >= k.
    std::vector<int> sizes;
    for (int k = n; k >= 1; --k) {
        const int at_least = ranks[k - 1] - ranks[k];
        const int at_least_next = k < n ? ranks[k] - ranks[k + 1] : 0;
        for (int b = 0; b < at_least - at_least_next; ++b) sizes.push_back(k);
    }
    return sizes;
}

}  // namespace dwork
