#ifndef NSFAID_SEARCH_HPP
#define NSFAID_SEARCH_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nsfaid/density_evolution.hpp"
#include "nsfaid/framing.hpp"

namespace nsfaid {

struct MuGrid {
    double lo = 1.0, hi = 12.0, step = 0.1;
};

struct SearchEntry {
    FramingFunction f;
    double threshold_db = 0.0; // NaN when no mu converges inside the window
    double mu = 0.0;
};

/// All weight-W framings over base.alpha, each mu-optimized under base's
/// noise-threshold settings, sorted best-first (NaN thresholds last).
/// base.framings and base.mu are ignored. threads splits the candidate list.
std::vector<SearchEntry> search_regular(const DeSpec& base, int W, const MuGrid& grid = {},
                                        int threads = 1);

/// Best entry of a ranked list for each |F(0)| value.
std::map<int, SearchEntry> best_per_lambda(const std::vector<SearchEntry>& ranked);

/// U_w: uniform NS-FAIDs of storage width w (weight 2^(w-1)) whose
/// mu-optimized threshold is <= the cutoff. Candidates are bisected only
/// inside [search lo, cutoff]; anything that fails at the cutoff for every mu
/// is out. Sets come back sorted best-first.
std::map<int, std::vector<SearchEntry>> build_best_uniform_sets(
    const DeSpec& base, const std::map<int, double>& cutoffs_db, const MuGrid& grid = {},
    int threads = 1);

struct IrregularCandidate {
    std::map<int, FramingFunction> framings; // degree -> F
    std::map<int, int> w_profile;            // degree -> storage width

    /// Widths concatenated by ascending degree, e.g. "433".
    std::string ensemble_id() const;
};

/// Number of per-degree framing assignments F_d taken from the U-sets that
/// satisfy the image-inclusion constraint Im(F_d) subseteq Im(F_{d*}), where
/// d* attains the maximal storage width (ties -> larger degree). Pure
/// combinatorics; no DE involved.
std::uint64_t count_irregular(const std::map<int, std::vector<SearchEntry>>& usets,
                              const std::vector<int>& degrees);

/// Streams every admissible assignment. Order: by width profile, then by
/// U-set positions.
void for_each_irregular(const std::map<int, std::vector<SearchEntry>>& usets,
                        const std::vector<int>& degrees,
                        const std::function<void(const IrregularCandidate&)>& fn);

struct EnsembleResult {
    IrregularCandidate cand;
    double threshold_db = 0.0;
    double mu = 0.0;
};

/// mu-optimizes every candidate and keeps the best one per ensemble id.
/// base.framings and base.mu are ignored.
std::map<std::string, EnsembleResult> evaluate_ensemble(
    const DeSpec& base, const std::vector<IrregularCandidate>& cands, const MuGrid& grid = {},
    int threads = 1);

/// Storage savings relative to a q-bit MS baseline, as fractions in [0,1].
///   vn:            1 - (sum_d lambda_d w_d) / q           (edge-perspective)
///   cn:            1 - w_max / q                          (uncompressed CNU)
///   cn_compressed: 2(q - w_max) bits saved out of the node-average
///                  d_c + 2(q-1) + ceil(log2 d_c) state    (node-perspective)
struct MemoryReduction {
    double vn = 0.0;
    double cn = 0.0;
    double cn_compressed = 0.0;
};

MemoryReduction memory_reduction(const std::map<int, int>& w_by_degree,
                                 const DegreeDistribution& dist, int q);

} // namespace nsfaid

#endif
