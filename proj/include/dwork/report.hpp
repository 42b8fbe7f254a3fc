#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dwork/criteria.hpp"

namespace dwork {

inline constexpr int kSchemaVersion = 1;

const char* profile_name(const CriteriaOptions& o);
// "strict" or "tabulated"; throws std::invalid_argument otherwise.
CriteriaOptions profile_from_name(const std::string& name);

struct CriteriaReport {
    explicit CriteriaReport(HgParam p) : param(std::move(p)) {}

    HgParam param;
    std::string profile = "strict";
    std::map<int, std::vector<int>> hodge;   // unit s -> sorted Hodge degrees of (s alpha; s beta)
    bool regular = false;
    std::vector<int> um;                     // Jordan block sizes at infinity
    BmResult bm;
    std::vector<int> stabilizer;
    std::optional<std::vector<int>> minimal_u;
    std::optional<std::vector<int>> requested_u;
    std::optional<bool> bm_fin;              // set only when a U was requested
    bool d_pass = false;
    std::optional<CTriple> c;                // c used for (D): given, or found

    // R, BM, D and, if requested, BM_fin.
    bool all_pass() const;
    bool operator==(const CriteriaReport&) const = default;
};

// Evaluates validate, R, BM, UM, D in that order. If p carries a c-triple,
// (D) is checked for that c; otherwise find_c supplies one.
CriteriaReport full_report(const HgParam& p, const CriteriaOptions& opts = CriteriaOptions::strict(),
                           const std::optional<UnitSubgroup>& u = std::nullopt);

nlohmann::ordered_json to_json(const CriteriaReport& r);
// Throws std::invalid_argument on a malformed document.
CriteriaReport report_from_json(const nlohmann::ordered_json& j);

}  // namespace dwork
