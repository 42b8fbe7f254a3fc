#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dwork/report.hpp"
#include "dwork/search.hpp"

namespace dwork {

struct SpecialRow {
    int n;
    int d;
    std::vector<int> alpha;
    std::vector<int> beta;
    CTriple c;
    std::vector<int> table_u;   // elements of the listed subgroup

    HgParam param() const;
};

struct PossibleDRow {
    int n;
    std::vector<int> partition;
    std::vector<int> ds;
};

const std::vector<SpecialRow>& special_rows();
const std::vector<PossibleDRow>& possible_d_rows();
// Partitions for which no parameter is listed for any d <= 30.
const std::vector<std::vector<int>>& empty_partitions();

struct Discrepancy {
    std::string row;
    std::string predicate;
    std::string expected;
    std::string computed;
    std::string note;
    bool documented = false;
};

struct SpecialRowVerdict {
    SpecialRowVerdict(SpecialRow r, CriteriaReport rep) : row(std::move(r)), report(std::move(rep)) {}

    SpecialRow row;
    CriteriaReport report;       // with the row's c, or a found c when the row's c is (0,0,0) and fails
    bool um_match = false;
    bool table_u_admissible = false;   // BM_fin holds for the listed U
    bool minimal_u_match = false;
    bool pass = false;           // R, UM, D, and BM under the profile
};

struct SpecialTableReport {
    std::string profile;
    std::vector<SpecialRowVerdict> rows;
    std::vector<Discrepancy> discrepancies;
    bool undocumented() const;
};

SpecialTableReport reproduce_special(const CriteriaOptions& opts = CriteriaOptions::strict());

struct PossibleDVerdict {
    PossibleDRow row;
    bool exhaustive = false;       // computed set over the full d-range; otherwise membership only
    std::vector<int> computed;     // passing d's found
    bool match = false;
};

struct PossibleDReport {
    std::string profile;
    std::vector<PossibleDVerdict> rows;
    std::vector<Discrepancy> discrepancies;
    bool undocumented() const;
};

struct PossibleDOptions {
    int max_n = 5;                 // rows with larger n are skipped
    int exhaustive_max_n = 5;      // rows up to this n are searched exhaustively
    int d_max = 30;
    int jobs = 1;
    // Explain differences from the tabulated profile; each explained
    // difference is a documented discrepancy.
    bool attribute = true;
};

PossibleDReport reproduce_possible_d(const CriteriaOptions& opts, const PossibleDOptions& po = {});

}  // namespace dwork
