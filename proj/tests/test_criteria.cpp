#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "dwork/criteria.hpp"
#include "dwork/report.hpp"
#include "dwork/tables.hpp"
#include "oracle.hpp"

using namespace dwork;

namespace {

const HgParam kNine = HgParam::validate(9, {0, 0, 0}, {1, 2, 6});
const HgParam kNonRegular = HgParam::validate(9, {0, 0, 1, 1}, {2, 3, 7, 8});
const HgParam kEighteen = HgParam::validate(18, {0, 0, 0, 3}, {4, 11, 16, 17});

Rational frac(long a, long b) {
    Rational q(a, b);
    q.canonicalize();
    return q;
}

HgParam symplectic_family(int d) {
    std::vector<long long> a(static_cast<std::size_t>(d - 1), 0), b;
    for (int x = 1; x < d; ++x) b.push_back(x);
    return HgParam::validate(d, a, b);
}

std::vector<int> multiset_diffs(const std::vector<int>& v, int d, int s) {
    std::vector<int> out;
    for (int x : v)
        for (int y : v) out.push_back(oracle::md(static_cast<long long>(s) * (x - y), d));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("hodge degrees") {
    const auto h = hodge_degrees(kNine);
    CHECK(h.degrees == std::vector<int>{2, 3, 4});
    CHECK(h.by_beta == std::vector<int>{2, 3, 4});
    CHECK(h.multiplicity_free());
    for (int d : {5, 7, 9, 11}) {
        std::vector<int> want;
        for (int k = 0; k <= d - 2; ++k) want.push_back(k);
        CHECK(hodge_degrees(symplectic_family(d)).degrees == want);
    }
    const auto scaled = scale(kNonRegular, 4);
    CHECK_FALSE(hodge_degrees(scaled).multiplicity_free());
}

TEST_CASE("hodge degrees agree with the oracle") {
    std::mt19937 rng(3);
    for (int it = 0; it < 400; ++it) {
        const auto p = oracle::random_param(rng, 3, 30, 6);
        CHECK(hodge_degrees(p).degrees == oracle::hodge(p.d(), p.alphas(), p.betas()));
    }
}

TEST_CASE("regularity") {
    CHECK(is_regular(kNine));
    CHECK(zigzag_regular(kNine));
    CHECK_FALSE(is_regular(kNonRegular));
    CHECK_FALSE(zigzag_regular(kNonRegular));
    const auto sums = regularity_sums(kNonRegular, 4);
    CHECK(std::set<long long>(sums.begin(), sums.end()).size() < sums.size());
    for (int d = 3; d <= 15; ++d) CHECK(is_regular(symplectic_family(d)));
    for (const auto& row : special_rows()) CHECK(is_regular(row.param()));
}

TEST_CASE("jordan blocks") {
    CHECK(jordan_blocks(kEighteen) == std::vector<int>{3, 1});
    CHECK(jordan_blocks(kNonRegular) == std::vector<int>{2, 2});
    CHECK(jordan_blocks(HgParam::validate(9, {0, 1, 2}, {3, 4, 5})) == std::vector<int>{1, 1, 1});
    CHECK(pseudoreflection_det(9) == 1);
    CHECK(pseudoreflection_det(18) == -1);
}

TEST_CASE("BM") {
    CHECK(bm(kNine).pass);
    CHECK(bm(kEighteen).pass);
    for (int d : {5, 7, 9}) {
        const auto p = symplectic_family(d);
        const auto strict = bm(p);
        CHECK_FALSE(strict.pass);
        CHECK(strict.failed_bullet == 4);
        const auto cyc = bm(p, BmOptions{ApRule::CyclicAp, DualityRule::Always});
        CHECK(cyc.failed_bullet == 2);
    }
    // all alphas distinct fails bullet 1
    CHECK(bm(HgParam::validate(9, {0, 1, 2}, {3, 4, 5})).failed_bullet == 1);
}

TEST_CASE("BM duality rule") {
    const auto p = HgParam::validate(9, {0, 0, 1, 1}, {2, 4, 6, 8});
    CHECK(bm(p, BmOptions{ApRule::EqualSpacing, DualityRule::Always}).failed_bullet == 4);
    CHECK(bm(p, BmOptions{ApRule::EqualSpacing, DualityRule::EvenD}).pass);
    CHECK(bm(p, BmOptions{ApRule::EqualSpacing, DualityRule::Never}).pass);
}

TEST_CASE("scaling stabilizer") {
    for (const HgParam& p : {kNine, kEighteen, kNonRegular}) {
        std::vector<int> want;
        for (int s : oracle::unit_list(p.d()))
            if (multiset_diffs(p.alphas(), p.d(), s) == multiset_diffs(p.alphas(), p.d(), 1) &&
                multiset_diffs(p.betas(), p.d(), s) == multiset_diffs(p.betas(), p.d(), 1))
                want.push_back(s);
        const auto got = scaling_stabilizer(p);
        CHECK(got.elements() == want);
        CHECK(got.contains(1));
    }
    CHECK(UnitSubgroup(9, {1, 8}).contains(scaling_stabilizer(kNine)));
}

TEST_CASE("BM_fin and minimal U") {
    CHECK(bm_finite(kNine, UnitSubgroup::full(9)));
    CHECK(bm_finite(kNine, UnitSubgroup(9, {1, 8})));
    const auto u = minimal_admissible_u(kEighteen);
    REQUIRE(u);
    CHECK(u->contains(scaling_stabilizer(kEighteen)));
    CHECK_FALSE(complements(*u).empty());
    for (const auto& g : unit_subgroups(18))
        if (g.order() < u->order()) CHECK_FALSE(bm_finite(kEighteen, g));
    for (const auto& row : special_rows()) CHECK(bm_finite(row.param(), UnitSubgroup(row.d, row.table_u)));
}

TEST_CASE("mean bracket") {
    for (int d : {5, 9, 12}) {
        for (int a = 1; a < d; ++a) {
            IntFunction f = IntFunction::delta(d, a);
            f += IntFunction::delta(d, d - a);
            for (int s : units(d)) CHECK(mean_bracket(f, s) == 1);
            for (int s : units(d)) CHECK(mean_bracket(epsilon(d, 1, a), s) == 1);
        }
    }
    CHECK(mean_bracket(IntFunction::constant(5, 1), 1) == 2);
}

TEST_CASE("E basis") {
    for (int a = 1; a <= 4; ++a) {
        IntFunction f = IntFunction::delta(9, a);
        f += IntFunction::delta(9, 9 - a);
        CHECK(epsilon(9, 1, a) == f);
    }
    IntFunction e31(9);
    for (int x : {6, 1, 4, 7}) e31.add(x, 1);
    CHECK(epsilon(9, 3, 1) == e31);
    IntFunction sum(5);
    sum += epsilon(5, 1, 1);
    sum += epsilon(5, 1, 2);
    CHECK(sum == IntFunction::constant(5, 1));
    // d = 12: four epsilon_1, then p = 2 with a < 6, then p = 3 with a < 4
    const auto& basis = e_basis(12);
    CHECK(basis.size() == 6u + 5u + 3u);
    CHECK(basis.front().k == 1);
    CHECK(basis[6].k == 2);
    CHECK(basis.back().k == 3);
}

TEST_CASE("solve in E") {
    const int d = 9;
    const auto& basis = e_basis(d);
    const auto x = solve_in_E(epsilon(d, 1, 1));
    REQUIRE(x);
    CHECK(expand_in_E(d, x->particular) == epsilon(d, 1, 1));

    const auto two = solve_in_E(IntFunction::constant(5, 2));
    REQUIRE(two);
    CHECK(expand_in_E(5, two->particular) == IntFunction::constant(5, 2));
    const auto fixed = solve_in_fixed_basis(IntFunction::constant(5, 2));
    REQUIRE(fixed);
    CHECK(*fixed == std::vector<BigInt>{2, 2});

    CHECK_FALSE(solve_in_E(IntFunction::delta(d, 1)));
    for (const auto& k : x->kernel) CHECK(expand_in_E(d, k) == IntFunction(d));
    CHECK(x->particular.size() == basis.size());
}

TEST_CASE("gamma exponents") {
    const int d = 12;
    const auto& basis = e_basis(d);
    std::vector<BigInt> zero(basis.size(), 0);
    const auto g0 = gamma_exponents(zero, d);
    CHECK(g0.y1 == 0);
    CHECK(g0.b1 == 1);
    for (const auto& [p, y] : g0.yp) CHECK(y == 0);
    for (const auto& [p, b] : g0.bp) CHECK(b == 1);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        std::vector<BigInt> x(basis.size(), 0);
        x[i] = 1;
        const auto g = gamma_exponents(x, d);
        const int a = basis[i].a;
        if (basis[i].k == 1) {
            CHECK(g.y1 == frac(a, d));
            CHECK(g.b1 == d / std::gcd(a, d));
        } else {
            CHECK(g.yp.at(basis[i].k) == frac(1, 2) - frac(a, d));
        }
    }
}

TEST_CASE("build f") {
    std::mt19937 rng(17);
    for (int it = 0; it < 200; ++it) {
        const auto p = oracle::random_param(rng, 3, 24, 5);
        const int d = p.d(), n = p.n();
        const CTriple c0{0, 0, 0};
        long long mass = 0;
        const auto f0 = build_f(p, c0);
        for (long long v : f0.values()) mass += v;
        CHECK(mass == static_cast<long long>(n) * (d - 1) + n);
        const CTriple c1{1, 1, d - 2};
        if (d > 3) {
            long long m1 = 0;
            const auto f1 = build_f(p, c1);
            for (long long v : f1.values()) m1 += v;
            CHECK(m1 == mass + 3LL * n);
        }
    }
}

TEST_CASE("det condition") {
    CHECK(det_condition(kNine, {3, 7, 8}));
    CHECK(det_condition(HgParam::validate(9, {0, 0, 0, 0}, {1, 2, 7, 8}), {0, 0, 0}));
    CHECK(det_condition(kEighteen, {1, 7, 10}));
    CHECK(det_balanced(kNine));
    const auto r = det_condition_report(kNine, {3, 7, 8});
    CHECK(r.regular);
    CHECK(r.weight_constant);
    CHECK(r.balanced);
    CHECK(r.solvable);
    CHECK(r.coprime);
    CHECK(r.pass);
    CHECK_FALSE(det_condition(kNonRegular, {0, 0, 0}));
}

TEST_CASE("find c") {
    const auto c = find_c(kNine);
    REQUIRE(c);
    CHECK(det_condition(kNine, *c));
    CHECK(find_c(HgParam::validate(9, {0, 0, 0, 0}, {1, 2, 7, 8})) == CTriple{0, 0, 0});
    CHECK_FALSE(find_c(kNonRegular));
}

TEST_CASE("full report") {
    const auto p = kEighteen.with_c(CTriple{1, 7, 10});
    const auto r = full_report(p, CriteriaOptions::strict(), UnitSubgroup(18, {1, 17}));
    CHECK(r.regular);
    CHECK(r.bm.pass);
    CHECK(r.d_pass);
    CHECK(r.um == std::vector<int>{3, 1});
    CHECK(r.bm_fin == true);
    CHECK(r.all_pass());
    CHECK(r.c == CTriple{1, 7, 10});
    CHECK(r.profile == "strict");

    const auto j = to_json(r);
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["param"] == p.to_string());
    CHECK(report_from_json(j) == r);
    CHECK(report_from_json(nlohmann::ordered_json::parse(j.dump())) == r);
    CHECK_THROWS_AS(report_from_json(nlohmann::ordered_json::object()), std::invalid_argument);

    const auto t = full_report(kNine, CriteriaOptions::tabulated());
    CHECK(t.profile == "tabulated");
    CHECK(t.c.has_value());
    CHECK(report_from_json(to_json(t)) == t);
}

TEST_CASE("profiles") {
    CHECK(std::string(profile_name(CriteriaOptions::strict())) == "strict");
    CHECK(std::string(profile_name(CriteriaOptions::tabulated())) == "tabulated");
    CHECK(profile_from_name("tabulated") == CriteriaOptions::tabulated());
    CHECK_THROWS_AS(profile_from_name("loose"), std::invalid_argument);
}
