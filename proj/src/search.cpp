#include "nsfaid/search.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "nsfaid/parallel.hpp"

namespace nsfaid {

namespace {

bool entry_before(const SearchEntry& a, const SearchEntry& b) {
    bool an = std::isnan(a.threshold_db), bn = std::isnan(b.threshold_db);
    if (an != bn)
        return bn; // converging candidates first
    if (!an && a.threshold_db != b.threshold_db)
        return a.threshold_db < b.threshold_db;
    return a.f.lut() < b.f.lut();
}

std::vector<SearchEntry> scan_class(const DeSpec& base, int W, const MuGrid& grid, double hi_db,
                                    int threads) {
    std::vector<SearchEntry> out;
    for_each_framing(base.alpha.Q(), W,
                     [&](const FramingFunction& f) { out.push_back({f, 0.0, 0.0}); });

    parallel_chunks(static_cast<int>(out.size()), threads, [&](int first, int last, int) {
        for (int i = first; i < last; ++i) {
            SearchEntry& e = out[static_cast<std::size_t>(i)];
            DeSpec spec = base;
            spec.framings.clear();
            for (std::size_t d = 1; d < spec.dist.lambda.size(); ++d)
                if (spec.dist.lambda[d] > 0.0)
                    spec.framings.emplace(static_cast<int>(d), e.f);
            MuScanResult r = optimize_mu(spec, grid.lo, grid.hi, grid.step, -2.0, hi_db);
            e.threshold_db = r.threshold_db;
            e.mu = r.mu;
        }
    });
    return out;
}

} // namespace

std::vector<SearchEntry> search_regular(const DeSpec& base, int W, const MuGrid& grid,
                                        int threads) {
    std::vector<SearchEntry> out = scan_class(base, W, grid, 12.0, threads);
    std::stable_sort(out.begin(), out.end(), entry_before);
    return out;
}

std::map<int, SearchEntry> best_per_lambda(const std::vector<SearchEntry>& ranked) {
    std::map<int, SearchEntry> best;
    for (const SearchEntry& e : ranked)
        best.try_emplace(e.f.lambda(), e);
    return best;
}

std::map<int, std::vector<SearchEntry>> build_best_uniform_sets(
    const DeSpec& base, const std::map<int, double>& cutoffs_db, const MuGrid& grid, int threads) {
    std::map<int, std::vector<SearchEntry>> sets;
    for (auto [w, cutoff] : cutoffs_db) {
        if (w < 1 || (1 << (w - 1)) > base.alpha.Q() + 1)
            throw std::invalid_argument("storage width w out of range for the alphabet");
        std::vector<SearchEntry> all = scan_class(base, 1 << (w - 1), grid, cutoff, threads);
        std::vector<SearchEntry> kept;
        for (SearchEntry& e : all)
            if (!std::isnan(e.threshold_db) && e.threshold_db <= cutoff)
                kept.push_back(std::move(e));
        std::stable_sort(kept.begin(), kept.end(), entry_before);
        sets.emplace(w, std::move(kept));
    }
    return sets;
}

std::string IrregularCandidate::ensemble_id() const {
    std::string id;
    for (auto [d, w] : w_profile)
        id += std::to_string(w);
    return id;
}

namespace {

// Positions of the width-maximal degree (ties -> larger degree) for one
// width profile, plus a per-profile walker shared by count and enumeration.
struct Profile {
    std::vector<int> w;  // per degree position
    int star = 0;        // position whose framing hosts the image
};

std::vector<Profile> width_profiles(const std::vector<int>& ws, std::size_t k) {
    std::vector<Profile> out;
    std::vector<std::size_t> idx(k, 0);
    for (;;) {
        Profile p;
        p.w.resize(k);
        for (std::size_t i = 0; i < k; ++i)
            p.w[i] = ws[idx[i]];
        int wmax = *std::max_element(p.w.begin(), p.w.end());
        for (std::size_t i = 0; i < k; ++i)
            if (p.w[i] == wmax)
                p.star = static_cast<int>(i); // degrees ascend -> last hit is largest
        out.push_back(std::move(p));
        std::size_t i = 0;
        while (i < k && ++idx[i] == ws.size()) {
            idx[i] = 0;
            ++i;
        }
        if (i == k)
            break;
    }
    return out;
}

} // namespace

std::uint64_t count_irregular(const std::map<int, std::vector<SearchEntry>>& usets,
                              const std::vector<int>& degrees) {
    if (degrees.empty())
        return 0;
    if (!std::is_sorted(degrees.begin(), degrees.end()))
        throw std::invalid_argument("degrees must ascend");
    std::vector<int> ws;
    for (const auto& [w, set] : usets)
        ws.push_back(w);

    // subset_cnt[wa][i][wt] = |{F in U_wt : Im(F) within Im of the i-th member of U_wa}|
    std::map<int, std::vector<std::map<int, std::uint64_t>>> subset_cnt;
    for (int wa : ws) {
        const auto& hosts = usets.at(wa);
        auto& per_host = subset_cnt[wa];
        per_host.resize(hosts.size());
        for (std::size_t i = 0; i < hosts.size(); ++i)
            for (int wt : ws) {
                std::uint64_t c = 0;
                for (const SearchEntry& e : usets.at(wt))
                    c += e.f.image_subset_of(hosts[i].f);
                per_host[i][wt] = c;
            }
    }

    std::uint64_t total = 0;
    for (const Profile& p : width_profiles(ws, degrees.size())) {
        const auto& hosts = subset_cnt.at(p.w[static_cast<std::size_t>(p.star)]);
        for (const auto& per_w : hosts) {
            std::uint64_t prod = 1;
            for (std::size_t i = 0; i < p.w.size(); ++i)
                if (static_cast<int>(i) != p.star)
                    prod *= per_w.at(p.w[i]);
            total += prod;
        }
    }
    return total;
}

void for_each_irregular(const std::map<int, std::vector<SearchEntry>>& usets,
                        const std::vector<int>& degrees,
                        const std::function<void(const IrregularCandidate&)>& fn) {
    if (degrees.empty())
        return;
    if (!std::is_sorted(degrees.begin(), degrees.end()))
        throw std::invalid_argument("degrees must ascend");
    std::vector<int> ws;
    for (const auto& [w, set] : usets)
        ws.push_back(w);
    const std::size_t k = degrees.size();

    for (const Profile& p : width_profiles(ws, k)) {
        const auto& hosts = usets.at(p.w[static_cast<std::size_t>(p.star)]);
        for (const SearchEntry& host : hosts) {
            // admissible members per non-star position
            std::vector<std::vector<const FramingFunction*>> choice(k);
            bool any = true;
            for (std::size_t i = 0; i < k && any; ++i) {
                if (static_cast<int>(i) == p.star) {
                    choice[i] = {&host.f};
                    continue;
                }
                for (const SearchEntry& e : usets.at(p.w[i]))
                    if (e.f.image_subset_of(host.f))
                        choice[i].push_back(&e.f);
                any = !choice[i].empty();
            }
            if (!any)
                continue;
            std::vector<std::size_t> idx(k, 0);
            for (;;) {
                IrregularCandidate cand;
                for (std::size_t i = 0; i < k; ++i) {
                    cand.framings.emplace(degrees[i], *choice[i][idx[i]]);
                    cand.w_profile.emplace(degrees[i], p.w[i]);
                }
                fn(cand);
                std::size_t i = 0;
                while (i < k && ++idx[i] == choice[i].size()) {
                    idx[i] = 0;
                    ++i;
                }
                if (i == k)
                    break;
            }
        }
    }
}

std::map<std::string, EnsembleResult> evaluate_ensemble(const DeSpec& base,
                                                        const std::vector<IrregularCandidate>& cands,
                                                        const MuGrid& grid, int threads) {
    std::vector<EnsembleResult> evaluated(cands.size());
    parallel_chunks(static_cast<int>(cands.size()), threads, [&](int first, int last, int) {
        for (int i = first; i < last; ++i) {
            DeSpec spec = base;
            spec.framings = cands[static_cast<std::size_t>(i)].framings;
            MuScanResult r = optimize_mu(spec, grid.lo, grid.hi, grid.step);
            evaluated[static_cast<std::size_t>(i)] = {cands[static_cast<std::size_t>(i)],
                                                      r.threshold_db, r.mu};
        }
    });
    std::map<std::string, EnsembleResult> best;
    for (EnsembleResult& r : evaluated) {
        if (std::isnan(r.threshold_db))
            continue;
        auto [it, fresh] = best.try_emplace(r.cand.ensemble_id(), r);
        if (!fresh && r.threshold_db < it->second.threshold_db)
            it->second = std::move(r);
    }
    return best;
}

MemoryReduction memory_reduction(const std::map<int, int>& w_by_degree,
                                 const DegreeDistribution& dist, int q) {
    if (w_by_degree.empty())
        throw std::invalid_argument("no storage widths given");
    int w_max = 0;
    for (auto [d, w] : w_by_degree)
        w_max = std::max(w_max, w);

    MemoryReduction r;
    double vn_bits = 0.0;
    for (std::size_t d = 1; d < dist.lambda.size(); ++d)
        if (dist.lambda[d] > 0.0) {
            auto it = w_by_degree.find(static_cast<int>(d));
            if (it == w_by_degree.end())
                throw std::invalid_argument("no storage width for degree " + std::to_string(d));
            vn_bits += dist.lambda[d] * it->second;
        }
    r.vn = 1.0 - vn_bits / q;
    r.cn = 1.0 - static_cast<double>(w_max) / q;

    std::vector<double> rho_node = dist.rho_node();
    double state_bits = 0.0;
    for (std::size_t d = 2; d < rho_node.size(); ++d)
        if (rho_node[d] > 0.0)
            state_bits +=
                rho_node[d] * (static_cast<double>(d) + 2.0 * (q - 1) +
                               std::bit_width(static_cast<unsigned>(d) - 1));
    r.cn_compressed = 2.0 * (q - w_max) / state_bits;
    return r;
}

} // namespace nsfaid
