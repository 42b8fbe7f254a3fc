#include "dwork/report.hpp"

#include <stdexcept>

namespace dwork {

const char* profile_name(const CriteriaOptions& o) {
    if (o == CriteriaOptions::strict()) return "strict";
    if (o == CriteriaOptions::tabulated()) return "tabulated";
    return "custom";
}

CriteriaOptions profile_from_name(const std::string& name) {
    if (name == "strict") return CriteriaOptions::strict();
    if (name == "tabulated") return CriteriaOptions::tabulated();
    throw std::invalid_argument("unknown profile '" + name + "'");
}

bool CriteriaReport::all_pass() const { return regular && bm.pass && d_pass && bm_fin.value_or(true); }

CriteriaReport full_report(const HgParam& p, const CriteriaOptions& opts, const std::optional<UnitSubgroup>& u) {
    CriteriaReport r(p);
    r.profile = profile_name(opts);
    for (int s : units(p.d())) r.hodge[s] = hodge_degrees(scale(p, s)).degrees;
    r.regular = is_regular(p);
    r.bm = bm(p, opts.bm);
    r.um = jordan_blocks(p);
    r.stabilizer = scaling_stabilizer(p).elements();
    if (auto mu = minimal_admissible_u(p)) r.minimal_u = mu->elements();
    if (u) {
        r.requested_u = u->elements();
        r.bm_fin = bm_finite(p, *u);
    }
    if (p.c()) {
        r.c = *p.c();
        r.d_pass = det_condition(p, *p.c(), opts.coprime_scope);
    } else {
        r.c = find_c(p, opts.coprime_scope);
        r.d_pass = r.c.has_value();
    }
    return r;
}

nlohmann::ordered_json to_json(const CriteriaReport& r) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["param"] = r.param.to_string();
    j["profile"] = r.profile;
    ordered_json hodge = ordered_json::object();
    for (const auto& [s, v] : r.hodge) hodge[std::to_string(s)] = v;
    j["hodge"] = hodge;
    j["R"] = r.regular;
    j["UM"] = r.um;
    j["BM"] = {{"pass", r.bm.pass}, {"failed_bullet", r.bm.failed_bullet ? ordered_json(*r.bm.failed_bullet) : nullptr}};
    j["stabilizer"] = r.stabilizer;
    j["minimal_U"] = r.minimal_u ? ordered_json(*r.minimal_u) : ordered_json(nullptr);
    if (r.requested_u) j["BM_fin"] = {{"U", *r.requested_u}, {"pass", r.bm_fin.value_or(false)}};
    j["D"] = {{"pass", r.d_pass}, {"c", r.c ? ordered_json(*r.c) : ordered_json(nullptr)}};
    return j;
}

CriteriaReport report_from_json(const nlohmann::ordered_json& j) {
    try {
        if (j.at("schema_version").get<int>() != kSchemaVersion) throw std::invalid_argument("unsupported schema_version");
        CriteriaReport r(HgParam::parse(j.at("param").get<std::string>()));
        r.profile = j.value("profile", "strict");
        for (const auto& [k, v] : j.at("hodge").items()) r.hodge[std::stoi(k)] = v.get<std::vector<int>>();
        r.regular = j.at("R").get<bool>();
        r.um = j.at("UM").get<std::vector<int>>();
        r.bm.pass = j.at("BM").at("pass").get<bool>();
        if (!j.at("BM").at("failed_bullet").is_null()) r.bm.failed_bullet = j["BM"]["failed_bullet"].get<int>();
        r.stabilizer = j.at("stabilizer").get<std::vector<int>>();
        if (!j.at("minimal_U").is_null()) r.minimal_u = j["minimal_U"].get<std::vector<int>>();
        if (j.contains("BM_fin")) {
            r.requested_u = j["BM_fin"].at("U").get<std::vector<int>>();
            r.bm_fin = j["BM_fin"].at("pass").get<bool>();
        }
        r.d_pass = j.at("D").at("pass").get<bool>();
        if (!j["D"].at("c").is_null()) r.c = j["D"]["c"].get<CTriple>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed report: ") + e.what());
    }
}

}  // namespace dwork
