#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dwork/criteria.hpp"
#include "dwork/cyclo.hpp"
#include "dwork/monodromy.hpp"
#include "dwork/tables.hpp"
#include "oracle.hpp"

using namespace dwork;

namespace {

bool close(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-7 * (1 + std::abs(a)); }

Rational frac(long a, long b) {
    Rational q(a, b);
    q.canonicalize();
    return q;
}

Rational rising(Rational z, long long j) {
    Rational out = 1;
    for (long long i = 0; i < j; ++i) {
        out *= z;
        z += 1;
    }
    return out;
}

CycMatrix jordan(int n, int level) {
    CycMatrix m = CycMatrix::identity(n, level);
    for (int i = 0; i + 1 < n; ++i) m.at(i, i + 1) = CycNum(level, 1L);
    return m;
}

CycMatrix direct_sum(const CycMatrix& a, const CycMatrix& b) {
    CycMatrix m(a.rows() + b.rows(), a.cols() + b.cols(), a.level());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return m;
}

}  // namespace

TEST_CASE("roots of unity") {
    CHECK(root_of_unity(3, 0) == CycNum(3, 1L));
    CHECK(root_of_unity(3, 1) + root_of_unity(3, 2) == CycNum(3, -1L));
    for (int m : {5, 8, 9, 12, 18, 20, 24})
        for (int k = 0; k < 2 * m; ++k) {
            CHECK(root_of_unity(m, k).pow(m) == CycNum(m, 1L));
            CHECK(close(oracle::embed(root_of_unity(m, k), 1), std::polar(1.0, 2 * std::acos(-1.0) * k / m)));
        }
}

TEST_CASE("ring operations agree with complex embeddings") {
    std::mt19937 rng(23);
    for (int m : {3, 4, 5, 7, 9, 12, 15, 20, 21, 24}) {
        for (int it = 0; it < 20; ++it) {
            const auto x = oracle::random_cyc(rng, m);
            const auto y = oracle::random_cyc(rng, m);
            for (int k : oracle::unit_list(m)) {
                CHECK(close(oracle::embed(x + y, k), oracle::embed(x, k) + oracle::embed(y, k)));
                CHECK(close(oracle::embed(x * y, k), oracle::embed(x, k) * oracle::embed(y, k)));
                CHECK(close(oracle::embed(x.galois(k), 1), oracle::embed(x, k)));
            }
            if (!x.is_zero()) CHECK(x * x.inverse() == CycNum(m, 1L));
            CHECK(x.lift(2 * m) * y.lift(2 * m) == (x * y).lift(2 * m));
        }
    }
    CHECK_THROWS_AS(CycNum(9).inverse(), DivisionByZero);
}

TEST_CASE("polynomials from roots") {
    auto ints = [](const std::vector<CycNum>& v) {
        std::vector<long> out;
        for (const auto& c : v) {
            REQUIRE(c.is_rational());
            out.push_back(c.coeffs()[0].get_num().get_si());
        }
        return out;
    };
    const std::vector<int> zz{0, 0}, ot{1, 2};
    CHECK(ints(poly_from_roots(3, zz)) == std::vector<long>{1, -2, 1});
    CHECK(ints(poly_from_roots(3, ot)) == std::vector<long>{1, 1, 1});
    for (int d : {4, 6, 9}) {
        std::vector<int> all;
        for (int k = 0; k < d; ++k) all.push_back(k);
        std::vector<long> want(static_cast<std::size_t>(d + 1), 0);
        want.front() = -1;
        want.back() = 1;
        CHECK(ints(poly_from_roots(d, all)) == want);
    }
}

TEST_CASE("matrix rank and unipotent blocks") {
    CHECK(CycMatrix::identity(4, 9).rank() == 4);
    CHECK(CycMatrix(3, 3, 9).rank() == 0);
    CHECK(unipotent_block_sizes(CycMatrix::identity(3, 5)) == std::vector<int>{1, 1, 1});
    CHECK(unipotent_block_sizes(jordan(4, 5)) == std::vector<int>{4});
    CHECK(unipotent_block_sizes(direct_sum(jordan(2, 5), jordan(2, 5))) == std::vector<int>{2, 2});
    CHECK(unipotent_block_sizes(direct_sum(jordan(3, 7), jordan(1, 7))) == std::vector<int>{3, 1});
    CycMatrix scaled = CycMatrix::identity(2, 5);
    scaled.at(0, 0) = root_of_unity(5, 1);
    CHECK_THROWS_AS(unipotent_block_sizes(scaled), NotUnipotent);
    CycMatrix sing(2, 2, 5);
    CHECK_THROWS_AS(sing.inverse(), DivisionByZero);
}

TEST_CASE("matrix identities") {
    std::mt19937 rng(29);
    for (int it = 0; it < 20; ++it) {
        CycMatrix a(3, 3, 12), b(3, 3, 12);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                a.at(i, j) = oracle::random_cyc(rng, 12, -2, 2);
                b.at(i, j) = oracle::random_cyc(rng, 12, -2, 2);
            }
        CHECK((a * b).det() == a.det() * b.det());
        if (!a.det().is_zero()) CHECK(a * a.inverse() == CycMatrix::identity(3, 12));
        const auto cp = a.char_poly();
        CHECK(cp.back() == CycNum(12, 1L));
        CHECK(cp.front() == -a.det());
    }
}

TEST_CASE("levelt matrices") {
    for (const auto& row : special_rows()) {
        const auto p = row.param();
        const auto lp = levelt_matrices(p);
        long long sa = 0;
        for (int x : p.alphas()) sa += x;
        CHECK(lp.a.det() == root_of_unity(p.d(), sa));
        CHECK(lp.a.char_poly() == poly_from_roots(p.d(), p.alphas()));
    }
}

TEST_CASE("pseudoreflection and blocks at infinity") {
    const auto small = monodromy_report(HgParam::validate(3, {0, 0}, {1, 2}));
    CHECK(small.pseudo_rank == 1);
    CHECK(small.pseudo_det == CycNum(3, 1L));
    CHECK(small.pass());
    for (const auto& row : special_rows()) {
        const auto p = row.param();
        const auto r = monodromy_report(p);
        CHECK(r.pseudo_rank == 1);
        CHECK(r.pseudo_det == CycNum(p.d(), p.d() % 2 ? 1L : -1L));
        REQUIRE(r.infinity_blocks);
        CHECK(*r.infinity_blocks == jordan_blocks(p));
        CHECK(r.det_identities);
        CHECK(verify_pseudoreflection(p));
        CHECK(verify_infinity_blocks(p));
    }
    const auto distinct = HgParam::validate(9, {0, 1, 2}, {3, 4, 5});
    const auto lp = levelt_matrices(distinct);
    CHECK(lp.a.pow(9) == CycMatrix::identity(3, 9));
}

TEST_CASE("pochhammer") {
    CHECK(pochhammer(frac(7, 3), 0) == 1);
    CHECK(pochhammer(frac(1, 2), 3) == frac(15, 8));
    CHECK(pochhammer(Rational(1), 5) == 120);
    CHECK_THROWS_AS(pochhammer(Rational(1), -1), std::invalid_argument);
}

TEST_CASE("kloosterman reduction") {
    const std::vector<long long> r{2, 3}, q0{0, 0};
    CHECK(kloosterman_coeff(r, q0, 1, 1, 5) == 1);
    const std::vector<long long> rz{1, 4}, q1{1, 2};
    CHECK(kloosterman_coeff(rz, q1, 1, 4, 5) == 0);
    std::mt19937 rng(31);
    for (int it = 0; it < 300; ++it) {
        const int d = std::uniform_int_distribution<int>(3, 12)(rng);
        const int len = std::uniform_int_distribution<int>(1, 5)(rng);
        std::vector<long long> e;
        long long total = 0;
        for (int i = 0; i < len; ++i) {
            e.push_back(std::uniform_int_distribution<int>(0, 4 * d)(rng));
            total += e.back();
        }
        e.back() += (d - total % d) % d;
        total = 0;
        long long rs = 0;
        bool zero = false;
        Rational num = 1;
        for (long long x : e) {
            total += x;
            rs += x % d;
            zero = zero || x % d == d - 1;
            num *= rising(frac(x % d + 1, d), x / d);
        }
        const long long l = rs / d, m = total / d;
        const Rational want = zero ? Rational(0) : Rational(num / rising(Rational(static_cast<long>(l + 1)), m - l));
        CHECK(kloosterman_reduce(e, d) == want);
    }
}

TEST_CASE("series coefficients") {
    for (const auto& row : special_rows()) {
        const auto p = row.param();
        const int d = p.d();
        const int b1 = p.betas()[0];
        for (int j = 1; j <= p.n(); ++j) {
            const auto s = gj_coefficients(p, j, 12);
            const int shift = oracle::md(p.betas()[j - 1] - b1, d);
            CHECK(s.exponent == oracle::md(b1 - p.betas()[j - 1], d));
            CHECK(s.coeffs[0] == 1);
            for (int k = 0; k <= 12; ++k) {
                Rational want = 1;
                for (int a : p.alphas()) want *= rising(frac(d + oracle::md(a - b1, d) - shift, d), k);
                for (int b : p.betas()) want /= rising(frac(d + oracle::md(b - b1, d) - shift, d), k);
                CHECK(s.coeffs[k] == want);
            }
        }
        CHECK(gj_coefficients(p, 1, 0).exponent == 0);
        CHECK_THROWS_AS(gj_coefficients(p, 0, 3), std::out_of_range);
    }
}

TEST_CASE("ODE annihilation") {
    CHECK(verify_annihilation(HgParam::validate(3, {0, 0}, {1, 2}), 1, 30).pass);
    for (const auto& row : special_rows()) {
        const auto p = row.param();
        for (int j = 1; j <= p.n(); ++j) {
            const auto r = verify_annihilation(p, j, 30);
            CHECK(r.pass);
            CHECK(r.residuals.size() == 31u);
        }
    }
    // a wrong local exponent leaves residuals
    const auto p = special_rows().front().param();
    CHECK_FALSE(annihilation_residuals(p, 2, 10, 1).pass);
}
