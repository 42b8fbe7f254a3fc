#include "dwork/criteria.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace dwork {

std::map<int, int> HodgeVector::multiplicities() const {
    std::map<int, int> out;
    for (int p : degrees) ++out[p];
    return out;
}

bool HodgeVector::multiplicity_free() const {
    return std::adjacent_find(degrees.begin(), degrees.end()) == degrees.end();
}

HodgeVector hodge_degrees(const HgParam& p) {
    const int d = p.d();
    const long long c2 = static_cast<long long>(d) * (d - 1) / 2;
    HodgeVector h;
    for (int bj : p.betas()) {
        long long num = c2;
        for (int a : p.alphas()) num += bracket(bj - a, d);
        for (int b : p.betas()) num -= bracket(bj - b, d);
        if (num % d != 0)
            throw NonIntegralDegree("Hodge numerator " + std::to_string(num) + " not divisible by d for " +
                                    p.to_string());
        h.by_beta.push_back(static_cast<int>(num / d - 1));
    }
    h.degrees = h.by_beta;
    std::sort(h.degrees.begin(), h.degrees.end());
    return h;
}

std::vector<long long> regularity_sums(const HgParam& p, int s) {
    const int d = p.d();
    std::vector<long long> out;
    out.reserve(p.betas().size());
    for (int bj : p.betas()) {
        long long v = 0;
        for (int a : p.alphas()) v += bracket(static_cast<long long>(s) * (bj - a), d);
        for (int b : p.betas()) v -= bracket(static_cast<long long>(s) * (bj - b), d);
        out.push_back(v);
    }
    return out;
}

bool is_regular(const HgParam& p) {
    for (int s : units(p.d())) {
        auto v = regularity_sums(p, s);
        std::sort(v.begin(), v.end());
        if (std::adjacent_find(v.begin(), v.end()) != v.end()) return false;
    }
    return true;
}

bool zigzag_regular(const HgParam& p) {
    const int d = p.d();
    std::vector<int> kind(static_cast<std::size_t>(d));   // 0 empty, 1 alpha, 2 beta
    for (int s : units(d)) {
        std::fill(kind.begin(), kind.end(), 0);
        for (int a : p.alphas()) kind[bracket(static_cast<long long>(s) * a, d)] = 1;
        for (int b : p.betas()) kind[bracket(static_cast<long long>(s) * b, d)] = 2;
        // Count beta runs in the cyclic sequence of occupied points.
        std::vector<int> seq;
        for (int k : kind)
            if (k) seq.push_back(k);
        int runs = 0;
        for (std::size_t i = 0; i < seq.size(); ++i) {
            const int prev = seq[(i + seq.size() - 1) % seq.size()];
            if (seq[i] == 2 && prev != 2) ++runs;
        }
        if (runs != 1) return false;
    }
    return true;
}

std::vector<int> jordan_blocks(const HgParam& p) {
    std::vector<int> out;
    const auto& a = p.alphas();
    for (std::size_t i = 0; i < a.size();) {
        std::size_t j = i;
        while (j < a.size() && a[j] == a[i]) ++j;
        out.push_back(static_cast<int>(j - i));
        i = j;
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

int pseudoreflection_det(int d) { return d % 2 ? 1 : -1; }

namespace {

std::vector<int> shifted(const std::vector<int>& v, int sign, int s, int d) {
    std::vector<int> out;
    out.reserve(v.size());
    for (int x : v) out.push_back(bracket(static_cast<long long>(sign) * x + sign * s, d));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

BmResult bm(const HgParam& p, const BmOptions& opts) {
    const int d = p.d();
    const int n = p.n();
    const auto& al = p.alphas();
    const auto& be = p.betas();
    auto fail = [](int bullet) { return BmResult{false, bullet}; };

    std::set<int> distinct(al.begin(), al.end());
    if (static_cast<int>(distinct.size()) >= n) return fail(1);
    const bool progression =
        opts.ap_rule == ApRule::CyclicAp ? is_cyclic_ap(be, d) : is_equally_spaced(be, d);
    if (progression) return fail(2);
    for (int s = 1; s < d; ++s)
        if (shifted(al, 1, s, d) == al && shifted(be, 1, s, d) == be) return fail(3);
    const bool dual = opts.duality == DualityRule::Always || (opts.duality == DualityRule::EvenD && d % 2 == 0);
    for (int s = 0; dual && s < d; ++s)
        if (shifted(al, -1, s, d) == shifted(al, 1, s, d) && shifted(be, -1, s, d) == shifted(be, 1, s, d))
            return fail(4);
    return BmResult{true, std::nullopt};
}

UnitSubgroup scaling_stabilizer(const HgParam& p) {
    const int d = p.d();
    const auto da = difference_multiset(p.alphas(), d);
    const auto db = difference_multiset(p.betas(), d);
    auto scaled = [d](const std::vector<int>& v, int s) {
        std::vector<int> out;
        out.reserve(v.size());
        for (int x : v) out.push_back(bracket(static_cast<long long>(s) * x, d));
        std::sort(out.begin(), out.end());
        return out;
    };
    std::vector<int> elems;
    for (int s : units(d))
        if (scaled(da, s) == da && scaled(db, s) == db) elems.push_back(s);
    return UnitSubgroup(d, std::move(elems));
}

bool bm_finite(const HgParam& p, const UnitSubgroup& u) {
    return u.contains(scaling_stabilizer(p)) && !complements(u).empty();
}

std::optional<UnitSubgroup> minimal_admissible_u(const HgParam& p) {
    const UnitSubgroup st = scaling_stabilizer(p);
    for (const auto& u : unit_subgroups(p.d()))
        if (u.contains(st) && !complements(u).empty()) return u;
    return std::nullopt;
}

IntFunction build_f(const HgParam& p, const CTriple& c) {
    const int d = p.d();
    const int n = p.n();
    IntFunction f = IntFunction::constant(d, n);
    for (int bj : p.betas())
        for (int a : p.alphas()) f.add(bj - a, 1);
    for (std::size_t j = 0; j < p.betas().size(); ++j)
        for (std::size_t i = 0; i < p.betas().size(); ++i)
            if (i != j) f.add(p.betas()[j] - p.betas()[i], -1);
    for (int ci : c) f.add(ci, n);
    return f;
}

bool det_balanced(const HgParam& p) {
    const int d = p.d();
    const auto& al = p.alphas();
    const auto& be = p.betas();
    for (int s : units(d)) {
        long long lhs = 0, rhs = 0;
        for (int bj : be)
            for (int a : al) lhs += bracket(static_cast<long long>(s) * (bj - a), d);
        for (std::size_t i = 0; i < al.size(); ++i) rhs += bracket(static_cast<long long>(s) * (be[i] - al[i]), d);
        if (lhs != static_cast<long long>(p.n()) * rhs) return false;
    }
    return true;
}

namespace {

std::map<int, long long> weights(const HgParam& p, const CTriple& c) {
    const int d = p.d();
    std::map<int, long long> w;
    for (int s : units(d)) {
        long long v = 0;
        for (int bj : p.betas()) {
            for (int a : p.alphas()) v += bracket(static_cast<long long>(s) * (bj - a), d);
            for (int b : p.betas()) v -= bracket(static_cast<long long>(s) * (bj - b), d);
        }
        for (int ci : c) v += static_cast<long long>(p.n()) * bracket(static_cast<long long>(s) * ci, d);
        w[s] = v;
    }
    return w;
}

bool all_equal(const std::map<int, long long>& w) {
    return std::all_of(w.begin(), w.end(), [&](const auto& kv) { return kv.second == w.begin()->second; });
}

// Clause (iv) once the weight is known to be constant.
std::optional<std::vector<BigInt>> coprime_witness(const HgParam& p, const CTriple& c, CoprimeScope scope,
                                                    std::optional<ESolution>* solution = nullptr) {
    const int d = p.d();
    const IntFunction f = build_f(p, c);
    if (scope == CoprimeScope::FixedBasis) {
        if (solution) *solution = solve_in_E(f);
        auto x = solve_in_fixed_basis(f);
        if (!x || !gamma_degree_coprime(gamma_exponents(*x, d), p.n(), d)) return std::nullopt;
        return x;
    }
    auto sol = solve_in_E(f);
    if (solution) *solution = sol;
    if (!sol) return std::nullopt;
    auto found = find_coprime_solution(*sol, p.n(), d);
    if (!found.found) return std::nullopt;
    return std::move(found.witness);
}

}  // namespace

DetReport det_condition_report(const HgParam& p, const CTriple& c, CoprimeScope scope) {
    check_c_triple(c, p.d());
    const int d = p.d();
    const int n = p.n();
    DetReport r;
    r.regular = is_regular(p);
    r.weights = weights(p, c);
    r.weight_constant = all_equal(r.weights);
    if (r.weight_constant) {
        // d <f> = n C(d,2) + w must be divisible by d.
        const long long total = static_cast<long long>(n) * d * (d - 1) / 2 + r.weights.begin()->second;
        r.weight_integral = total % d == 0;
    }
    r.balanced = det_balanced(p);
    if (r.weight_constant) {
        r.witness = coprime_witness(p, c, scope, &r.solution);
        r.solvable = scope == CoprimeScope::FixedBasis ? solve_in_fixed_basis(build_f(p, c)).has_value()
                                                       : r.solution.has_value();
        r.coprime = r.witness.has_value();
    }
    r.pass = r.regular && r.weight_constant && r.balanced && r.solvable && r.coprime;
    return r;
}

bool det_condition(const HgParam& p, const CTriple& c, CoprimeScope scope) {
    if (!is_admissible_c(c, p.d())) return false;
    if (!is_regular(p) || !det_balanced(p)) return false;
    if (!all_equal(weights(p, c))) return false;
    return coprime_witness(p, c, scope).has_value();
}

std::optional<CTriple> find_c(const HgParam& p, CoprimeScope scope) {
    const int d = p.d();
    if (!is_regular(p) || !det_balanced(p)) return std::nullopt;
    auto try_c = [&](const CTriple& c) {
        return all_equal(weights(p, c)) && coprime_witness(p, c, scope).has_value();
    };
    if (try_c({0, 0, 0})) return CTriple{0, 0, 0};
    for (int c0 = 1; c0 < d; ++c0)
        for (int c1 = 1; c1 < d; ++c1) {
            const int c2 = bracket(-c0 - c1, d);
            if (c2 == 0) continue;
            if (try_c({c0, c1, c2})) return CTriple{c0, c1, c2};
        }
    return std::nullopt;
}

}  // namespace dwork
