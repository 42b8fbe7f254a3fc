#include "dwork/monodromy.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "dwork/criteria.hpp"
#include "dwork/residue.hpp"

namespace dwork {

CycMatrix companion(const std::vector<CycNum>& monic) {
    const int n = static_cast<int>(monic.size()) - 1;
    const int level = monic.front().level();
    CycMatrix m(n, n, level);
    for (int i = 1; i < n; ++i) m.at(i, i - 1) = CycNum(level, 1L);
    for (int i = 0; i < n; ++i) m.at(i, n - 1) = -monic[i];
    return m;
}

LeveltPair levelt_matrices(const HgParam& p) {
    const auto pa = poly_from_roots(p.d(), p.alphas());
    const auto pb = poly_from_roots(p.d(), p.betas());
    LeveltPair lp{companion(pa), companion(pb)};
    if (lp.a.char_poly() != pa || lp.b.char_poly() != pb)
        throw std::logic_error("companion matrix does not reproduce its polynomial for " + p.to_string());
    return lp;
}

MonodromyReport monodromy_report(const HgParam& p) {
    const int d = p.d();
    const int n = p.n();
    const auto lp = levelt_matrices(p);
    MonodromyReport r;

    const CycMatrix u = lp.a.inverse() * lp.b;
    r.pseudo_rank = (u - CycMatrix::identity(n, d)).rank();
    r.pseudo_det = u.det();
    r.expected_det = pseudoreflection_det(d);
    r.pseudoreflection = r.pseudo_rank == 1 && r.pseudo_det == CycNum(d, static_cast<long>(r.expected_det));

    r.expected_blocks = jordan_blocks(p);
    try {
        r.infinity_blocks = unipotent_block_sizes(lp.a.pow(d));
    } catch (const NotUnipotent&) {
        r.infinity_blocks.reset();
    }
    r.blocks_match = r.infinity_blocks && *r.infinity_blocks == r.expected_blocks;

    const CycNum one(d, 1L);
    r.det_identities = lp.a.det().pow(d) == one && lp.b.det().pow(d) == one;
    return r;
}

bool verify_pseudoreflection(const HgParam& p) { return monodromy_report(p).pseudoreflection; }

bool verify_infinity_blocks(const HgParam& p) {
    const auto lp = levelt_matrices(p);
    return unipotent_block_sizes(lp.a.pow(p.d())) == jordan_blocks(p);
}

bool verify_det_identities(const HgParam& p) { return monodromy_report(p).det_identities; }

Rational pochhammer(const Rational& z, long long j) {
    if (j < 0) throw std::invalid_argument("pochhammer needs j >= 0");
    Rational out = 1;
    for (long long i = 0; i < j; ++i) out *= z + static_cast<long>(i);
    out.canonicalize();
    return out;
}

Rational kloosterman_coeff(std::span<const long long> r, std::span<const long long> q, long long l, long long m,
                           int d) {
    if (r.size() != q.size()) throw std::invalid_argument("r and q lengths differ");
    long long sr = 0, se = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] < 0 || q[i] < 0) throw std::invalid_argument("negative exponent");
        sr += r[i];
        se += d * q[i] + r[i];
    }
    if (sr != d * l || se != d * m) throw std::invalid_argument("exponent sums do not match l and m");
    for (long long ri : r)
        if (ri == d - 1) return 0;
    Rational num = 1;
    for (std::size_t i = 0; i < r.size(); ++i) num *= pochhammer(Rational(static_cast<long>(r[i] + 1), d), q[i]);
    Rational out = num / pochhammer(Rational(static_cast<long>(l + 1)), m - l);
    out.canonicalize();
    return out;
}

Rational kloosterman_reduce(std::span<const long long> e, int d) {
    std::vector<long long> r, q;
    long long total = 0, rsum = 0;
    for (long long x : e) {
        q.push_back(x / d);
        r.push_back(x % d);
        total += x;
        rsum += x % d;
    }
    if (total % d != 0) throw std::invalid_argument("exponent sum not divisible by d");
    return kloosterman_coeff(r, q, rsum / d, total / d, d);
}

namespace {

void check_index(const HgParam& p, int j) {
    if (j < 1 || j > p.n()) throw std::out_of_range("beta index out of range");
}

}  // namespace

TruncSeries gj_coefficients(const HgParam& p, int j, int order) {
    check_index(p, j);
    const int d = p.d();
    const int b1 = p.betas()[0];
    const int bj = p.betas()[j - 1];
    const int shift = bracket(bj - b1, d);
    TruncSeries s;
    s.exponent = bracket(b1 - bj, d);
    s.step = d;
    Rational c = 1;
    s.coeffs.push_back(c);
    for (int k = 1; k <= order; ++k) {
        // ratio c_k / c_{k-1} = prod (x_i + k - 1) / prod (y_i + k - 1)
        for (int a : p.alphas()) c *= Rational(d + bracket(a - b1, d) - shift, d) + (k - 1);
        for (int b : p.betas()) c /= Rational(d + bracket(b - b1, d) - shift, d) + (k - 1);
        c.canonicalize();
        s.coeffs.push_back(c);
    }
    return s;
}

AnnihilationReport annihilation_residuals(const HgParam& p, int j, int order, int exponent) {
    const int d = p.d();
    const int b1 = p.betas()[0];
    const auto s = gj_coefficients(p, j, order);
    AnnihilationReport r;
    r.exponent = exponent;
    for (int k = 0; k <= order; ++k) {
        const long long here = exponent + static_cast<long long>(d) * k;
        Rational lhs = s.coeffs[k];
        for (int b : p.betas()) lhs *= static_cast<long>(here + bracket(b - b1, d) - d);
        Rational rhs = 0;
        if (k > 0) {
            rhs = s.coeffs[k - 1];
            for (int a : p.alphas()) rhs *= static_cast<long>(here - d + bracket(a - b1, d));
        }
        Rational res = lhs - rhs;
        res.canonicalize();
        r.residuals.push_back(res);
    }
    r.pass = std::all_of(r.residuals.begin(), r.residuals.end(), [](const Rational& x) { return x == 0; });
    return r;
}

AnnihilationReport verify_annihilation(const HgParam& p, int j, int order) {
    check_index(p, j);
    const int d = p.d();
    const int exponent = d - bracket(p.betas()[j - 1] - p.betas()[0], d);
    return annihilation_residuals(p, j, order, exponent);
}

}  // namespace dwork
