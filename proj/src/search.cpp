#include "dwork/search.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace dwork {

int SearchSpec::first_d() const { return std::max({d_min, n + 1, 3}); }

void SearchSpec::validate() const {
    if (n < 1) throw SearchSpecError("n must be positive");
    if (partition.empty()) throw SearchSpecError("empty partition");
    if (std::accumulate(partition.begin(), partition.end(), 0) != n)
        throw SearchSpecError("partition does not sum to n");
    if (!std::is_sorted(partition.rbegin(), partition.rend()))
        throw SearchSpecError("partition must be non-increasing");
    if (partition.back() < 1) throw SearchSpecError("partition parts must be positive");
    if (d_max < first_d()) throw SearchSpecError("empty d-range");
    if (jobs < 1) throw SearchSpecError("jobs must be at least 1");
}

std::vector<int> SearchOutcome::passing_d() const {
    std::set<int> ds;
    for (const auto& r : results) ds.insert(r.param.d());
    return {ds.begin(), ds.end()};
}

std::vector<std::vector<int>> enumerate_alphas(int d, const std::vector<int>& partition) {
    const int r = static_cast<int>(partition.size());
    std::vector<std::vector<int>> out;
    std::vector<int> g(static_cast<std::size_t>(r), 0);
    std::vector<bool> used(static_cast<std::size_t>(d), false);
    used[0] = true;
    std::function<void(int)> rec = [&](int i) {
        if (i == r) {
            std::vector<int> a;
            for (int k = 0; k < r; ++k) a.insert(a.end(), static_cast<std::size_t>(partition[k]), g[k]);
            std::sort(a.begin(), a.end());
            out.push_back(std::move(a));
            return;
        }
        const int lo = (i > 1 && partition[i] == partition[i - 1]) ? g[i - 1] + 1 : 1;
        for (int x = lo; x < d; ++x) {
            if (used[x]) continue;
            used[x] = true;
            g[i] = x;
            rec(i + 1);
            used[x] = false;
        }
    };
    rec(1);
    std::sort(out.begin(), out.end());
    return out;
}

void for_each_beta(int d, int n, int required_sum, const std::vector<int>& forbidden,
                   const std::function<bool(const std::vector<int>&)>& f) {
    std::vector<bool> banned(static_cast<std::size_t>(d), false);
    for (int x : forbidden) banned[bracket(x, d)] = true;
    std::vector<int> avail;
    for (int x = 0; x < d; ++x)
        if (!banned[x]) avail.push_back(x);
    const int m = static_cast<int>(avail.size());
    if (n > m) return;
    const int target = bracket(required_sum, d);
    std::vector<int> cur(static_cast<std::size_t>(n));
    bool stop = false;
    std::function<void(int, int, int)> rec = [&](int k, int start, int sum) {
        if (stop) return;
        if (k == n - 1) {
            // the last element is forced by the sum
            const int need = bracket(target - sum, d);
            auto it = std::lower_bound(avail.begin() + start, avail.end(), need);
            if (it != avail.end() && *it == need) {
                cur[k] = need;
                if (!f(cur)) stop = true;
            }
            return;
        }
        for (int q = start; q <= m - (n - k) && !stop; ++q) {
            cur[k] = avail[q];
            rec(k + 1, q + 1, (sum + avail[q]) % d);
        }
    };
    rec(0, 0, 0);
}

std::vector<std::vector<int>> enumerate_betas(int d, int n, int required_sum, const std::vector<int>& forbidden) {
    std::vector<std::vector<int>> out;
    for_each_beta(d, n, required_sum, forbidden, [&](const std::vector<int>& b) {
        out.push_back(b);
        return true;
    });
    return out;
}

namespace {

struct Chunk {
    int d;
    int index_in_d;
    std::vector<int> alpha;
    std::string key() const { return std::to_string(d) + "\t" + join_ints(alpha); }
};

std::string checkpoint_header(const SearchSpec& s) {
    std::ostringstream o;
    o << "# dwork-search v1 n=" << s.n << " partition=" << join_ints(s.partition)
      << " profile=" << profile_name(s.options) << " stages=" << (s.stage_r ? "R" : "") << (s.stage_bm ? "B" : "")
      << (s.stage_d ? "D" : "") << " target_u=" << (s.target_u ? join_ints(*s.target_u) : "-")
      << " dedup=" << s.dedup_by_scaling << " witness=" << s.witness;
    return o.str();
}

std::optional<UnitSubgroup> target_subgroup(const SearchSpec& s, int d) {
    if (!s.target_u) return std::nullopt;
    std::vector<int> gens;
    for (int g : *s.target_u)
        if (gcd_int(bracket(g, d), d) == 1) gens.push_back(bracket(g, d));
    return UnitSubgroup::generated_by(d, gens);
}

// Loads completed chunks; returns key -> hit literals.
std::map<std::string, std::vector<std::string>> load_checkpoint(const SearchSpec& s) {
    std::map<std::string, std::vector<std::string>> done;
    std::ifstream in(s.checkpoint);
    if (!in) return done;
    std::string line;
    if (!std::getline(in, line)) return done;
    if (line != checkpoint_header(s))
        throw SearchSpecError("checkpoint " + s.checkpoint + " was written for a different search");
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string d, alpha, lit;
        if (!std::getline(ls, d, '\t') || !std::getline(ls, alpha, '\t')) continue;
        auto& hits = done[d + "\t" + alpha];
        while (ls >> lit) hits.push_back(lit);
    }
    return done;
}

}  // namespace

SearchOutcome run_search(const SearchSpec& spec) {
    spec.validate();
    std::vector<Chunk> chunks;
    for (int d = spec.first_d(); d <= spec.d_max; ++d) {
        int k = 0;
        for (auto& a : enumerate_alphas(d, spec.partition)) chunks.push_back({d, k++, std::move(a)});
    }

    std::map<std::string, std::vector<std::string>> resumed;
    std::ofstream ckpt;
    if (!spec.checkpoint.empty()) {
        resumed = load_checkpoint(spec);
        const bool fresh = resumed.empty() && !std::ifstream(spec.checkpoint).good();
        ckpt.open(spec.checkpoint, std::ios::app);
        if (!ckpt) throw SearchSpecError("cannot write checkpoint " + spec.checkpoint);
        if (fresh) ckpt << checkpoint_header(spec) << "\n" << std::flush;
    }

    const int d_lo = spec.first_d();
    std::vector<std::atomic<int>> best(static_cast<std::size_t>(spec.d_max - d_lo + 1));
    for (auto& b : best) b = INT_MAX;
    std::vector<std::vector<HgParam>> found(chunks.size());
    std::vector<char> ran(chunks.size(), 0);

    SearchOutcome out;
    std::atomic<std::size_t> candidates{0}, passed_r{0}, passed_bm{0}, skipped{0};
    std::mutex merge_mu;
    std::size_t done_count = 0, hit_count = 0;

    auto note_hit = [&](const Chunk& c) {
        auto& b = best[c.d - d_lo];
        int cur = b.load();
        while (c.index_in_d < cur && !b.compare_exchange_weak(cur, c.index_in_d)) {
        }
    };

    // Resumed chunks first, so witness pruning sees their hits.
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        auto it = resumed.find(chunks[i].key());
        if (it == resumed.end()) continue;
        for (const auto& lit : it->second) found[i].push_back(HgParam::parse(lit));
        ran[i] = 1;
        ++out.stats.chunks_resumed;
        if (!found[i].empty()) note_hit(chunks[i]);
    }

    auto process = [&](std::size_t i) {
        const Chunk& ch = chunks[i];
        const int d = ch.d;
        const auto target = target_subgroup(spec, d);
        std::vector<long long> al(ch.alpha.begin(), ch.alpha.end());
        const long long sa = std::accumulate(al.begin(), al.end(), 0LL);
        const int required = bracket(sa - binom2_mod(d), d);
        std::vector<HgParam> hits;
        std::size_t local_cand = 0, local_r = 0, local_bm = 0;
        for_each_beta(d, spec.n, required, ch.alpha, [&](const std::vector<int>& b) {
            if (spec.witness && best[d - d_lo].load() < ch.index_in_d) return false;
            ++local_cand;
            const HgParam p = HgParam::validate(d, al, std::vector<long long>(b.begin(), b.end()));
            if (spec.stage_r && !is_regular(p)) return true;
            ++local_r;
            if (spec.stage_bm && !bm(p, spec.options.bm).pass) return true;
            ++local_bm;
            if (target && !bm_finite(p, *target)) return true;
            std::optional<CTriple> c;
            if (spec.stage_d) {
                c = find_c(p, spec.options.coprime_scope);
                if (!c) return true;
            }
            hits.push_back(p.with_c(c));
            return !spec.witness;
        });
        candidates += local_cand;
        passed_r += local_r;
        passed_bm += local_bm;

        std::lock_guard lk(merge_mu);
        const bool pruned = spec.witness && hits.empty() && best[d - d_lo].load() < ch.index_in_d;
        if (!hits.empty()) note_hit(ch);
        found[i] = std::move(hits);
        ran[i] = 1;
        if (pruned) {
            ++skipped;
        } else if (ckpt.is_open()) {
            ckpt << ch.key() << "\t";
            for (std::size_t k = 0; k < found[i].size(); ++k) ckpt << (k ? " " : "") << found[i][k].to_string();
            ckpt << "\n" << std::flush;
        }
        ++done_count;
        hit_count += found[i].size();
        if (spec.progress) spec.progress({done_count, chunks.size(), d, hit_count});
    };

    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < chunks.size(); ++i)
        if (!ran[i]) todo.push_back(i);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next++) < todo.size();) {
            const Chunk& ch = chunks[todo[k]];
            if (spec.witness && best[ch.d - d_lo].load() < ch.index_in_d) {
                ++skipped;
                continue;
            }
            process(todo[k]);
        }
    };
    const int nthreads = std::min<int>(spec.jobs, std::max<std::size_t>(todo.size(), 1));
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<HgParam> all;
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        if (spec.witness && chunks[i].index_in_d != best[chunks[i].d - d_lo].load()) continue;
        for (const auto& p : found[i]) {
            all.push_back(p);
            if (spec.witness) break;
        }
    }
    std::sort(all.begin(), all.end());
    if (spec.dedup_by_scaling) {
        // Post hoc, since a profile need not be scaling invariant: keep the
        // least passing member of each orbit.
        std::set<HgParam> seen;
        std::vector<HgParam> kept;
        for (const auto& p : all)
            if (seen.insert(canonical_form(p.without_c())).second) kept.push_back(p);
        all = std::move(kept);
    }
    if (spec.limit && all.size() > *spec.limit) all.erase(all.begin() + static_cast<std::ptrdiff_t>(*spec.limit), all.end());
    const auto target_for = [&](int d) { return target_subgroup(spec, d); };
    for (const auto& p : all) out.results.push_back(full_report(p, spec.options, target_for(p.d())));

    out.stats.chunks = chunks.size();
    out.stats.chunks_skipped = skipped;
    out.stats.candidates = candidates;
    out.stats.passed_r = passed_r;
    out.stats.passed_bm = passed_bm;
    return out;
}

std::string tsv_header() { return "n\td\talpha\tbeta\tc\tU\tflags"; }

std::string tsv_row(const CriteriaReport& r) {
    const auto& p = r.param;
    std::string flags;
    auto add = [&](bool on, const char* f) {
        if (!on) return;
        if (!flags.empty()) flags += ',';
        flags += f;
    };
    add(r.regular, "R");
    add(r.bm.pass, "BM");
    add(r.d_pass, "D");
    if (r.bm_fin) add(*r.bm_fin, "BM_fin");
    std::ostringstream o;
    o << p.n() << '\t' << p.d() << '\t' << join_ints(p.alphas()) << '\t' << join_ints(p.betas()) << '\t'
      << (r.c ? join_ints(std::vector<int>(r.c->begin(), r.c->end())) : "-") << '\t'
      << (r.minimal_u ? join_ints(*r.minimal_u) : "-") << '\t' << (flags.empty() ? "-" : flags);
    return o.str();
}

}  // namespace dwork
