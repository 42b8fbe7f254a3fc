// Independent reference computations for the test suites. Written directly
// from the definitions, without calling into the library's helpers.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "dwork/cyclo.hpp"
#include "dwork/params.hpp"

namespace oracle {

inline int md(long long x, int d) { return static_cast<int>(((x % d) + d) % d); }

inline std::vector<int> unit_list(int d) {
    std::vector<int> u;
    for (int s = 1; s < d; ++s)
        if (std::gcd(s, d) == 1) u.push_back(s);
    return u;
}

// p_j for each beta_j, in beta order.
inline std::vector<long long> hodge_numerators(int d, const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<long long> out;
    for (int bj : b) {
        long long v = static_cast<long long>(d) * (d - 1) / 2;
        for (int ai : a) v += md(bj - ai, d);
        for (int bi : b) v -= md(bj - bi, d);
        out.push_back(v);
    }
    return out;
}

inline std::vector<int> hodge(int d, const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    for (long long v : hodge_numerators(d, a, b)) out.push_back(static_cast<int>(v / d - 1));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<int> scaled(const std::vector<int>& v, int s, int d) {
    std::vector<int> out;
    for (int x : v) out.push_back(md(static_cast<long long>(s) * x, d));
    std::sort(out.begin(), out.end());
    return out;
}

inline bool regular(int d, const std::vector<int>& a, const std::vector<int>& b) {
    for (int s : unit_list(d)) {
        auto h = hodge(d, scaled(a, s, d), scaled(b, s, d));
        if (std::adjacent_find(h.begin(), h.end()) != h.end()) return false;
    }
    return true;
}

// Random valid parameter with d in [d_lo, d_hi] and 1 <= n <= n_max.
inline dwork::HgParam random_param(std::mt19937& rng, int d_lo, int d_hi, int n_max) {
    for (;;) {
        const int d = std::uniform_int_distribution<int>(d_lo, d_hi)(rng);
        const int n = std::uniform_int_distribution<int>(1, std::min(n_max, d - 1))(rng);
        std::uniform_int_distribution<int> res(0, d - 1);
        // alpha: a few distinct values with random multiplicities
        std::vector<long long> a;
        const int distinct = std::uniform_int_distribution<int>(1, n)(rng);
        std::vector<int> vals;
        while (static_cast<int>(vals.size()) < distinct) {
            const int v = res(rng);
            if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
        }
        for (int i = 0; i < n; ++i) a.push_back(i < distinct ? vals[i] : vals[res(rng) % distinct]);
        std::vector<int> free;
        for (int x = 0; x < d; ++x)
            if (std::find(vals.begin(), vals.end(), x) == vals.end()) free.push_back(x);
        if (static_cast<int>(free.size()) < n) continue;
        std::shuffle(free.begin(), free.end(), rng);
        std::vector<long long> b(free.begin(), free.begin() + (n - 1));
        long long sa = 0, sb = 0;
        for (auto x : a) sa += x;
        for (auto x : b) sb += x;
        const int last = md(sa - sb - static_cast<long long>(d) * (d - 1) / 2, d);
        if (std::find(free.begin(), free.begin() + (n - 1), last) != free.begin() + (n - 1)) continue;
        if (std::find(vals.begin(), vals.end(), last) != vals.end()) continue;
        b.push_back(last);
        return dwork::HgParam::validate(d, a, b);
    }
}

// Value of x under zeta_m -> exp(2 pi i k / m).
inline std::complex<double> embed(const dwork::CycNum& x, int k) {
    const double pi = std::acos(-1.0);
    std::complex<double> acc = 0;
    const auto& c = x.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
        acc += c[i].get_d() * std::polar(1.0, 2 * pi * static_cast<double>(k) * static_cast<double>(i) / x.level());
    return acc;
}

inline dwork::CycNum random_cyc(std::mt19937& rng, int m, int lo = -5, int hi = 5) {
    std::uniform_int_distribution<int> coef(lo, hi);
    std::vector<dwork::Rational> v(static_cast<std::size_t>(dwork::euler_phi(m)));
    for (auto& x : v) {
        x = dwork::Rational(coef(rng), std::uniform_int_distribution<int>(1, 3)(rng));
        x.canonicalize();
    }
    return dwork::CycNum(m, v);
}

}  // namespace oracle
