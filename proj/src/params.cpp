#include "dwork/params.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace dwork {

const char* to_string(ParamErrorKind kind) {
    switch (kind) {
        case ParamErrorKind::SumMismatch: return "SumMismatch";
        case ParamErrorKind::AlphaBetaCollision: return "AlphaBetaCollision";
        case ParamErrorKind::BetaRepeat: return "BetaRepeat";
        case ParamErrorKind::BadCTriple: return "BadCTriple";
        case ParamErrorKind::BadDimension: return "BadDimension";
        case ParamErrorKind::InvalidScale: return "InvalidScale";
        case ParamErrorKind::ParseError: return "ParseError";
    }
    return "?";
}

int binom2_mod(int d) {
    return static_cast<int>((static_cast<long long>(d) * (d - 1) / 2) % d);
}

bool is_admissible_c(const CTriple& c, int d) {
    if (bracket(static_cast<long long>(c[0]) + c[1] + c[2], d) != 0) return false;
    const bool all_zero = c[0] == 0 && c[1] == 0 && c[2] == 0;
    const bool none_zero = c[0] != 0 && c[1] != 0 && c[2] != 0;
    return all_zero || none_zero;
}

void check_c_triple(const CTriple& c, int d) {
    if (!is_admissible_c(c, d))
        throw ParamError(ParamErrorKind::BadCTriple,
                         "c must sum to 0 mod d and be all-zero or all-nonzero");
}

HgParam HgParam::validate(int d, std::vector<long long> alphas, std::vector<long long> betas,
                          std::optional<std::array<long long, 3>> c) {
    if (d < 3) throw ParamError(ParamErrorKind::BadDimension, "d must be at least 3");
    if (alphas.size() != betas.size())
        throw ParamError(ParamErrorKind::BadDimension, "alpha and beta lengths differ");
    const int n = static_cast<int>(alphas.size());
    if (n <= 0 || n >= d) throw ParamError(ParamErrorKind::BadDimension, "need 0 < n < d");

    HgParam p;
    p.d_ = d;
    for (long long a : alphas) p.alphas_.push_back(bracket(a, d));
    for (long long b : betas) p.betas_.push_back(bracket(b, d));
    std::sort(p.alphas_.begin(), p.alphas_.end());
    std::sort(p.betas_.begin(), p.betas_.end());

    if (std::adjacent_find(p.betas_.begin(), p.betas_.end()) != p.betas_.end())
        throw ParamError(ParamErrorKind::BetaRepeat, "beta entries must be distinct");
    for (int a : p.alphas_)
        if (std::binary_search(p.betas_.begin(), p.betas_.end(), a))
            throw ParamError(ParamErrorKind::AlphaBetaCollision,
                             "alpha " + std::to_string(a) + " collides with a beta");
    long long diff = std::accumulate(p.alphas_.begin(), p.alphas_.end(), 0LL) -
                     std::accumulate(p.betas_.begin(), p.betas_.end(), 0LL);
    if (bracket(diff, d) != binom2_mod(d))
        throw ParamError(ParamErrorKind::SumMismatch,
                         "sum(alpha) - sum(beta) = " + std::to_string(bracket(diff, d)) +
                             " but C(d,2) = " + std::to_string(binom2_mod(d)) + " mod d");
    if (c) {
        CTriple ct{bracket((*c)[0], d), bracket((*c)[1], d), bracket((*c)[2], d)};
        check_c_triple(ct, d);
        p.c_ = ct;
    }
    return p;
}

namespace {

std::vector<long long> parse_list(std::string_view s, std::string_view literal) {
    std::vector<long long> out;
    if (s.empty()) throw ParamError(ParamErrorKind::ParseError, "empty list in " + std::string(literal));
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = s.find(',', pos);
        std::string_view tok = s.substr(pos, comma == std::string_view::npos ? s.npos : comma - pos);
        long long value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
            throw ParamError(ParamErrorKind::ParseError,
                             "bad integer '" + std::string(tok) + "' in " + std::string(literal));
        out.push_back(value);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

HgParam HgParam::parse(std::string_view literal) {
    auto fail = [&](const std::string& why) {
        return ParamError(ParamErrorKind::ParseError,
                          "malformed parameter literal '" + std::string(literal) + "': " + why);
    };
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        std::size_t semi = literal.find(';', pos);
        fields.push_back(literal.substr(pos, semi == std::string_view::npos ? literal.npos : semi - pos));
        if (semi == std::string_view::npos) break;
        pos = semi + 1;
    }
    if (fields.size() != 3 && fields.size() != 4) throw fail("expected 3 or 4 fields");
    const char* keys[] = {"d=", "a=", "b=", "c="};
    for (std::size_t i = 0; i < fields.size(); ++i)
        if (!fields[i].starts_with(keys[i])) throw fail(std::string("field must start with ") + keys[i]);

    auto dl = parse_list(fields[0].substr(2), literal);
    if (dl.size() != 1 || dl[0] < 3 || dl[0] > 100000) throw fail("bad modulus");
    auto alphas = parse_list(fields[1].substr(2), literal);
    auto betas = parse_list(fields[2].substr(2), literal);
    std::optional<std::array<long long, 3>> c;
    if (fields.size() == 4) {
        auto cl = parse_list(fields[3].substr(2), literal);
        if (cl.size() != 3) throw fail("c needs exactly three entries");
        c = std::array<long long, 3>{cl[0], cl[1], cl[2]};
    }
    return validate(static_cast<int>(dl[0]), std::move(alphas), std::move(betas), c);
}

HgParam HgParam::with_c(std::optional<CTriple> c) const {
    HgParam p = *this;
    if (c) {
        CTriple ct{bracket((*c)[0], d_), bracket((*c)[1], d_), bracket((*c)[2], d_)};
        check_c_triple(ct, d_);
        p.c_ = ct;
    } else {
        p.c_.reset();
    }
    return p;
}

std::string join_ints(const std::vector<int>& v, char sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

std::string HgParam::to_string() const {
    std::string out = "d=" + std::to_string(d_) + ";a=" + join_ints(alphas_) + ";b=" + join_ints(betas_);
    if (c_) out += ";c=" + join_ints({(*c_)[0], (*c_)[1], (*c_)[2]});
    return out;
}

bool HgParam::operator<(const HgParam& o) const {
    if (d_ != o.d_) return d_ < o.d_;
    if (alphas_ != o.alphas_) return alphas_ < o.alphas_;
    if (betas_ != o.betas_) return betas_ < o.betas_;
    return c_ < o.c_;
}

std::vector<int> a_vector(const HgParam& p) {
    const int d = p.d();
    std::vector<int> out;
    out.reserve(d);
    for (int a : p.alphas()) out.push_back(bracket(-a, d));
    std::vector<bool> neg_beta(d, false);
    for (int b : p.betas()) neg_beta[bracket(-b, d)] = true;
    for (int x = 0; x < d; ++x)
        if (!neg_beta[x]) out.push_back(x);
    return out;
}

HgParam scale(const HgParam& p, int s) {
    const int d = p.d();
    s = bracket(s, d);
    if (std::gcd(s, d) != 1)
        throw ParamError(ParamErrorKind::InvalidScale, std::to_string(s) + " is not a unit mod " + std::to_string(d));
    std::vector<long long> a, b;
    for (int x : p.alphas()) a.push_back(static_cast<long long>(s) * x);
    for (int x : p.betas()) b.push_back(static_cast<long long>(s) * x);
    std::optional<std::array<long long, 3>> c;
    if (p.c()) c = std::array<long long, 3>{static_cast<long long>(s) * (*p.c())[0],
                                            static_cast<long long>(s) * (*p.c())[1],
                                            static_cast<long long>(s) * (*p.c())[2]};
    try {
        return HgParam::validate(d, std::move(a), std::move(b), c);
    } catch (const ParamError& e) {
        throw ParamError(ParamErrorKind::InvalidScale, std::string("scaled tuple invalid: ") + e.what());
    }
}

HgParam translate(const HgParam& p, int b) {
    std::vector<long long> a, bb;
    for (int x : p.alphas()) a.push_back(static_cast<long long>(x) + b);
    for (int x : p.betas()) bb.push_back(static_cast<long long>(x) + b);
    std::optional<std::array<long long, 3>> c;
    if (p.c()) c = std::array<long long, 3>{(*p.c())[0], (*p.c())[1], (*p.c())[2]};
    return HgParam::validate(p.d(), std::move(a), std::move(bb), c);
}

HgParam canonical_form(const HgParam& p) {
    HgParam best = p;
    for (int s : units(p.d())) {
        try {
            HgParam q = scale(p, s);
            if (q < best) best = std::move(q);
        } catch (const ParamError&) {
        }
    }
    return best;
}

}  // namespace dwork
