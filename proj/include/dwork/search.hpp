#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dwork/report.hpp"

namespace dwork {

class SearchSpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SearchProgress {
    std::size_t chunks_done = 0;
    std::size_t chunks_total = 0;
    int d = 0;
    std::size_t hits = 0;
};

struct SearchSpec {
    int n = 0;
    std::vector<int> partition;   // descending, sums to n
    int d_min = 3;                // raised to n + 1 if smaller
    int d_max = 30;
    bool stage_r = true;
    bool stage_bm = true;
    bool stage_d = true;
    // If set, also require (BM_fin) for the subgroup generated by these units mod d.
    std::optional<std::vector<int>> target_u;
    // One parameter per unit-scaling orbit: the least one that passes.
    bool dedup_by_scaling = false;
    // Keep only the least passing parameter of each d.
    bool witness = false;
    int jobs = 1;
    std::optional<std::size_t> limit;   // truncates the sorted output
    CriteriaOptions options = CriteriaOptions::strict();
    std::string checkpoint;   // resumable state file; empty for none
    std::function<void(const SearchProgress&)> progress;

    int first_d() const;
    // Throws SearchSpecError.
    void validate() const;
};

struct SearchStats {
    std::size_t chunks = 0;
    std::size_t chunks_resumed = 0;
    std::size_t chunks_skipped = 0;   // witness mode: a smaller chunk of the same d already hit
    std::size_t candidates = 0;
    std::size_t passed_r = 0;
    std::size_t passed_bm = 0;
};

struct SearchOutcome {
    std::vector<CriteriaReport> results;   // sorted by (d, alpha, beta)
    SearchStats stats;

    std::vector<int> passing_d() const;
};

// alpha = 0^{p_1} g_2^{p_2} ... g_r^{p_r}, g_i distinct and nonzero, increasing
// within runs of equal parts; each returned multiset sorted, list sorted.
std::vector<std::vector<int>> enumerate_alphas(int d, const std::vector<int>& partition);

// Calls f on every sorted n-subset of Z/dZ minus forbidden with sum = required_sum
// mod d, in lexicographic order, until f returns false.
void for_each_beta(int d, int n, int required_sum, const std::vector<int>& forbidden,
                   const std::function<bool(const std::vector<int>&)>& f);
std::vector<std::vector<int>> enumerate_betas(int d, int n, int required_sum, const std::vector<int>& forbidden);

SearchOutcome run_search(const SearchSpec& spec);

std::string tsv_header();
// n, d, alpha, beta, c or "-", minimal U or "-", flags.
std::string tsv_row(const CriteriaReport& r);

}  // namespace dwork
