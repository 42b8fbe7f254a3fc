// Command-line front end: check, search, tables and the three verifiers.
// Exit codes: 0 pass, 1 predicate or reproduction failure, 2 usage error.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dwork/jacobi.hpp"
#include "dwork/monodromy.hpp"
#include "dwork/report.hpp"
#include "dwork/search.hpp"
#include "dwork/tables.hpp"

using namespace dwork;
using ojson = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<int> parse_ints(const std::string& text, const char* what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError(std::string("bad ") + what + " list '" + text + "'");
        }
    }
    if (out.empty()) throw UsageError(std::string("empty ") + what + " list");
    return out;
}

HgParam parse_param(const std::string& literal) {
    try {
        return HgParam::parse(literal);
    } catch (const ParamError& e) {
        throw UsageError(e.what());
    }
}

CriteriaOptions parse_profile(const std::string& name) {
    try {
        return profile_from_name(name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void print_json(const ojson& j) { std::cout << j.dump(2) << "\n"; }

std::string yes(bool b) { return b ? "pass" : "fail"; }

ojson discrepancy_json(const Discrepancy& x) {
    return {{"row", x.row},           {"predicate", x.predicate}, {"expected", x.expected},
            {"computed", x.computed}, {"note", x.note},           {"documented", x.documented}};
}

void print_discrepancies(const std::vector<Discrepancy>& ds) {
    if (ds.empty()) {
        std::cout << "no discrepancies\n";
        return;
    }
    std::cout << "discrepancies:\n";
    for (const auto& x : ds) {
        std::cout << "  [" << (x.documented ? "documented" : "UNDOCUMENTED") << "] " << x.row << "  " << x.predicate
                  << ": expected " << x.expected << ", computed " << x.computed;
        if (!x.note.empty()) std::cout << " (" << x.note << ")";
        std::cout << "\n";
    }
}

int cmd_check(const std::string& literal, const std::string& c_text, const std::string& u_text,
              const std::string& profile, const std::string& format) {
    HgParam p = parse_param(literal);
    if (!c_text.empty()) {
        const auto c = parse_ints(c_text, "c");
        if (c.size() != 3) throw UsageError("--c needs three entries");
        try {
            p = HgParam::validate(p.d(), {p.alphas().begin(), p.alphas().end()}, {p.betas().begin(), p.betas().end()},
                                  std::array<long long, 3>{c[0], c[1], c[2]});
        } catch (const ParamError& e) {
            throw UsageError(e.what());
        }
    }
    std::optional<UnitSubgroup> u;
    if (!u_text.empty()) {
        std::vector<int> gens = parse_ints(u_text, "U");
        for (int& g : gens) {
            g = bracket(g, p.d());
            if (gcd_int(g, p.d()) != 1) throw UsageError("--U entry " + std::to_string(g) + " is not a unit");
        }
        u = UnitSubgroup::generated_by(p.d(), gens);
    }
    const auto rep = full_report(p, parse_profile(profile), u);
    if (format == "json") {
        print_json(to_json(rep));
    } else if (format == "tsv") {
        std::cout << tsv_header() << "\n" << tsv_row(rep) << "\n";
    } else {
        std::cout << rep.param.to_string() << "  [" << rep.profile << "]\n";
        std::cout << "R  " << yes(rep.regular) << "\n";
        std::cout << "UM " << join_ints(rep.um) << "\n";
        std::cout << "BM " << yes(rep.bm.pass);
        if (rep.bm.failed_bullet) std::cout << " (bullet " << *rep.bm.failed_bullet << ")";
        std::cout << "\n";
        std::cout << "stabilizer " << join_ints(rep.stabilizer) << "\n";
        std::cout << "minimal U  " << (rep.minimal_u ? join_ints(*rep.minimal_u) : "none") << "\n";
        if (rep.bm_fin) std::cout << "BM_fin (U=" << join_ints(*rep.requested_u) << ") " << yes(*rep.bm_fin) << "\n";
        std::cout << "D  " << yes(rep.d_pass);
        if (rep.c) std::cout << " c=" << join_ints({rep.c->begin(), rep.c->end()});
        std::cout << "\n";
    }
    return rep.all_pass() ? 0 : 1;
}

struct SearchArgs {
    int n = 0;
    std::string partition;
    int d_min = 3, d_max = 30, jobs = 1;
    bool exhaustive = false, witness = false, dedup = false, progress = false;
    bool no_r = false, no_bm = false, no_d = false;
    std::string target_u, checkpoint, profile = "tabulated", format = "tsv";
    std::size_t limit = 0;
};

int cmd_search(const SearchArgs& a) {
    if (a.exhaustive && a.witness) throw UsageError("--exhaustive and --witness conflict");
    SearchSpec s;
    s.n = a.n;
    s.partition = parse_ints(a.partition, "partition");
    s.d_min = a.d_min;
    s.d_max = a.d_max;
    s.jobs = a.jobs;
    s.stage_r = !a.no_r;
    s.stage_bm = !a.no_bm;
    s.stage_d = !a.no_d;
    if (!a.target_u.empty()) s.target_u = parse_ints(a.target_u, "U");
    s.dedup_by_scaling = a.dedup;
    s.witness = a.witness || (a.n >= 5 && !a.exhaustive);
    if (a.limit) s.limit = a.limit;
    s.options = parse_profile(a.profile);
    s.checkpoint = a.checkpoint;
    if (a.progress)
        s.progress = [](const SearchProgress& pr) {
            std::cerr << "\r" << pr.chunks_done << "/" << pr.chunks_total << " chunks, d=" << pr.d << ", " << pr.hits
                      << " hits" << std::flush;
        };
    SearchOutcome out;
    try {
        out = run_search(s);
    } catch (const SearchSpecError& e) {
        throw UsageError(e.what());
    }
    if (a.progress) std::cerr << "\n";

    if (a.format == "json") {
        ojson j;
        j["schema_version"] = kSchemaVersion;
        j["mode"] = s.witness ? "witness" : "exhaustive";
        j["passing_d"] = out.passing_d();
        j["results"] = ojson::array();
        for (const auto& r : out.results) j["results"].push_back(to_json(r));
        print_json(j);
    } else if (a.format == "text") {
        std::cout << "n=" << s.n << " partition " << join_ints(s.partition) << " d in [" << s.first_d() << ", "
                  << s.d_max << "] " << (s.witness ? "witness" : "exhaustive") << " [" << a.profile << "]\n";
        std::cout << "passing d: " << join_ints(out.passing_d()) << "\n";
        std::cout << out.results.size() << " parameters\n";
        for (const auto& r : out.results) std::cout << "  " << r.param.to_string() << "\n";
    } else {
        std::cout << tsv_header() << "\n";
        for (const auto& r : out.results) std::cout << tsv_row(r) << "\n";
    }
    return 0;
}

int cmd_tables(const std::string& which, const std::string& profile, int max_n, int jobs, const std::string& format) {
    const auto opts = parse_profile(profile);
    if (which == "special") {
        const auto rep = reproduce_special(opts);
        if (format == "json") {
            ojson j;
            j["schema_version"] = kSchemaVersion;
            j["table"] = "special";
            j["profile"] = rep.profile;
            j["rows"] = ojson::array();
            for (const auto& v : rep.rows) {
                ojson row = to_json(v.report);
                row["table_U"] = v.row.table_u;
                row["table_U_admissible"] = v.table_u_admissible;
                row["UM_match"] = v.um_match;
                row["pass"] = v.pass;
                j["rows"].push_back(row);
            }
            j["discrepancies"] = ojson::array();
            for (const auto& x : rep.discrepancies) j["discrepancies"].push_back(discrepancy_json(x));
            print_json(j);
        } else {
            std::cout << "special parameters [" << rep.profile << "]\n";
            for (const auto& v : rep.rows) {
                const auto& r = v.report;
                std::cout << "  " << r.param.to_string() << "  R=" << yes(r.regular) << " UM=" << yes(v.um_match)
                          << " BM=" << yes(r.bm.pass) << " D=" << yes(r.d_pass)
                          << " U=" << (r.minimal_u ? join_ints(*r.minimal_u) : "none")
                          << " listedU=" << join_ints(v.row.table_u) << (v.table_u_admissible ? "" : "(not admissible)")
                          << "\n";
            }
            print_discrepancies(rep.discrepancies);
        }
        return rep.undocumented() ? 1 : 0;
    }
    if (which == "possible-d") {
        PossibleDOptions po;
        po.max_n = max_n;
        po.jobs = jobs;
        const auto rep = reproduce_possible_d(opts, po);
        if (format == "json") {
            ojson j;
            j["schema_version"] = kSchemaVersion;
            j["table"] = "possible-d";
            j["profile"] = rep.profile;
            j["rows"] = ojson::array();
            for (const auto& v : rep.rows)
                j["rows"].push_back({{"n", v.row.n},
                                     {"partition", v.row.partition},
                                     {"expected", v.row.ds},
                                     {"computed", v.computed},
                                     {"exhaustive", v.exhaustive},
                                     {"match", v.match}});
            j["discrepancies"] = ojson::array();
            for (const auto& x : rep.discrepancies) j["discrepancies"].push_back(discrepancy_json(x));
            print_json(j);
        } else {
            std::cout << "possible d [" << rep.profile << "]\n";
            for (const auto& v : rep.rows)
                std::cout << "  n=" << v.row.n << " " << join_ints(v.row.partition) << "  expected {"
                          << join_ints(v.row.ds) << "} computed {" << join_ints(v.computed) << "} "
                          << (v.exhaustive ? "exhaustive" : "membership") << " " << (v.match ? "match" : "MISMATCH")
                          << "\n";
            print_discrepancies(rep.discrepancies);
        }
        return rep.undocumented() ? 1 : 0;
    }
    throw UsageError("--which must be special or possible-d");
}

int cmd_monodromy(const std::string& literal, const std::string& format) {
    const auto p = parse_param(literal);
    const auto r = monodromy_report(p);
    if (format == "json") {
        ojson j;
        j["schema_version"] = kSchemaVersion;
        j["param"] = p.to_string();
        j["pseudoreflection"] = {{"rank", r.pseudo_rank},
                                 {"det", r.pseudo_det.to_string()},
                                 {"expected_det", r.expected_det},
                                 {"pass", r.pseudoreflection}};
        j["infinity"] = {{"blocks", r.infinity_blocks ? ojson(*r.infinity_blocks) : ojson(nullptr)},
                         {"expected", r.expected_blocks},
                         {"pass", r.blocks_match}};
        j["det_identities"] = r.det_identities;
        j["pass"] = r.pass();
        print_json(j);
    } else {
        std::cout << p.to_string() << "\n";
        std::cout << "rank(A^-1 B - I) = " << r.pseudo_rank << ", det = " << r.pseudo_det.to_string() << " (expected "
                  << r.expected_det << ")\n";
        std::cout << "A^d blocks " << (r.infinity_blocks ? join_ints(*r.infinity_blocks) : "not unipotent")
                  << " (expected " << join_ints(r.expected_blocks) << ")\n";
        std::cout << "det(A)^d = det(B)^d = 1: " << yes(r.det_identities) << "\n";
        std::cout << (r.pass() ? "pass" : "fail") << "\n";
    }
    return r.pass() ? 0 : 1;
}

int cmd_ode(const std::string& literal, int order, const std::string& format) {
    const auto p = parse_param(literal);
    if (order < 0) throw UsageError("--order must be non-negative");
    bool all = true;
    ojson js = ojson::array();
    for (int j = 1; j <= p.n(); ++j) {
        const auto r = verify_annihilation(p, j, order);
        all = all && r.pass;
        std::size_t nonzero = 0;
        for (const auto& x : r.residuals) nonzero += x != 0;
        if (format == "json")
            js.push_back({{"j", j}, {"exponent", r.exponent}, {"nonzero_residuals", nonzero}, {"pass", r.pass}});
        else
            std::cout << "G_" << j << ": exponent " << r.exponent << ", " << nonzero << " nonzero residuals of "
                      << r.residuals.size() << " -> " << yes(r.pass) << "\n";
    }
    if (format == "json") {
        ojson j;
        j["schema_version"] = kSchemaVersion;
        j["param"] = p.to_string();
        j["order"] = order;
        j["series"] = js;
        j["pass"] = all;
        print_json(j);
    }
    return all ? 0 : 1;
}

int cmd_jacobi(const std::string& literal, long ell, int prec, long generator, const std::string& format) {
    const auto p = parse_param(literal);
    HodgeNewtonReport r;
    try {
        r = hodge_newton_check(p, ell, prec, generator > 0 ? std::optional<long>(generator) : std::nullopt);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (format == "json") {
        ojson j;
        j["schema_version"] = kSchemaVersion;
        j["param"] = p.to_string();
        j["ell"] = ell;
        j["prec"] = prec;
        ojson emb = ojson::object();
        for (const auto& [s, v] : r.valuations)
            emb[std::to_string(s)] = {{"valuations", v}, {"hodge", r.hodge.at(s)}, {"offset", r.offsets.at(s)}};
        j["embeddings"] = emb;
        j["hodge_match"] = r.match;
        print_json(j);
    } else {
        for (const auto& [s, v] : r.valuations)
            std::cout << "s=" << s << ": valuations " << join_ints(v) << ", hodge " << join_ints(r.hodge.at(s))
                      << ", offset " << r.offsets.at(s) << "\n";
        std::cout << "hodge match: " << yes(r.match) << "\n";
    }
    return r.match ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hypergeometric parameters of the Dwork family: criteria, search, verification"};
    app.require_subcommand(1);
    std::string format = "json";
    std::string profile = "strict";

    auto* check = app.add_subcommand("check", "Evaluate every criterion for one parameter");
    std::string param, c_text, u_text;
    check->add_option("--param", param, "Parameter literal, e.g. d=9;a=0,0,0;b=1,2,6;c=3,7,8")->required();
    check->add_option("--c", c_text, "c-triple to test for (D), overriding the literal");
    check->add_option("--U", u_text, "Units generating a subgroup U for BM_fin");
    check->add_option("--profile", profile, "strict or tabulated")->capture_default_str();
    check->add_option("--format", format, "json, tsv or text")
        ->check(CLI::IsMember({"json", "tsv", "text"}))
        ->capture_default_str();

    auto* search = app.add_subcommand("search", "Brute-force search over one partition");
    SearchArgs sa;
    search->add_option("--n", sa.n, "Dimension")->required();
    search->add_option("--partition", sa.partition, "Jordan block sizes, e.g. 2,2")->required();
    search->add_option("--d-min", sa.d_min, "Least d (raised to n + 1)")->capture_default_str();
    search->add_option("--d-max", sa.d_max, "Largest d")->capture_default_str();
    search->add_option("--jobs", sa.jobs, "Worker threads")->capture_default_str();
    search->add_flag("--exhaustive", sa.exhaustive, "List every passing parameter (default for n <= 4)");
    search->add_flag("--witness", sa.witness, "One parameter per d (default for n >= 5)");
    search->add_flag("--dedup", sa.dedup, "One parameter per unit-scaling orbit");
    search->add_flag("--no-r", sa.no_r, "Skip the (R) stage");
    search->add_flag("--no-bm", sa.no_bm, "Skip the (BM) stage");
    search->add_flag("--no-d", sa.no_d, "Skip the (D) stage");
    search->add_option("--target-U", sa.target_u, "Also require BM_fin for the subgroup generated by these units");
    search->add_option("--limit", sa.limit, "Keep the first N results");
    search->add_option("--checkpoint", sa.checkpoint, "Resumable state file");
    search->add_flag("--progress", sa.progress, "Progress on stderr");
    search->add_option("--profile", sa.profile, "tabulated (reproduces the reference d-sets) or strict")->capture_default_str();
    search->add_option("--format", sa.format, "tsv, json or text")
        ->check(CLI::IsMember({"json", "tsv", "text"}))
        ->capture_default_str();

    auto* tables = app.add_subcommand("tables", "Reproduce the reference tables");
    std::string which;
    int max_n = 5, jobs = 1;
    std::string tables_format = "text";
    tables->add_option("--which", which, "special or possible-d")
        ->required()
        ->check(CLI::IsMember({"special", "possible-d"}));
    tables->add_option("--profile", profile, "strict or tabulated")->capture_default_str();
    tables->add_option("--max-n", max_n, "Skip possible-d rows with larger n")->capture_default_str();
    tables->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
    tables->add_option("--format", tables_format, "json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    auto* mono = app.add_subcommand("verify-monodromy", "Check the Levelt matrices of a parameter");
    std::string mono_param, mono_format = "text";
    mono->add_option("--param", mono_param, "Parameter literal")->required();
    mono->add_option("--format", mono_format, "json or text")->check(CLI::IsMember({"json", "text"}));

    auto* ode = app.add_subcommand("verify-ode", "Check that the series G_j are annihilated by the operator");
    std::string ode_param, ode_format = "text";
    int order = 30;
    ode->add_option("--param", ode_param, "Parameter literal")->required();
    ode->add_option("--order", order, "Number of series coefficients")->capture_default_str();
    ode->add_option("--format", ode_format, "json or text")->check(CLI::IsMember({"json", "text"}));

    auto* jac = app.add_subcommand("verify-jacobi", "Compare Jacobi-sum valuations with Hodge degrees");
    std::string jac_param, jac_format = "json";
    long ell = 0, generator = 0;
    int prec = 40;
    jac->add_option("--param", jac_param, "Parameter literal")->required();
    jac->add_option("--ell", ell, "Prime with ell = 1 mod d")->required();
    jac->add_option("--prec", prec, "ell-adic precision")->capture_default_str();
    jac->add_option("--generator", generator, "Primitive root mod ell (default: least)");
    jac->add_option("--format", jac_format, "json or text")->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*check) return cmd_check(param, c_text, u_text, profile, format);
        if (*search) return cmd_search(sa);
        if (*tables) return cmd_tables(which, profile, max_n, jobs, tables_format);
        if (*mono) return cmd_monodromy(mono_param, mono_format);
        if (*ode) return cmd_ode(ode_param, order, ode_format);
        if (*jac) return cmd_jacobi(jac_param, ell, prec, generator, jac_format);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
