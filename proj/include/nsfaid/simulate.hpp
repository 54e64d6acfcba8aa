#ifndef NSFAID_SIMULATE_HPP
#define NSFAID_SIMULATE_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "nsfaid/decoder.hpp"
#include "nsfaid/qc.hpp"

namespace nsfaid {

struct StoppingRule {
    long long min_frame_errors = 100;
    long long max_frames = 10'000'000;
};

struct SimPlan {
    QcCode code;
    KernelSpec kernel;
    std::vector<double> snrs_db; // strictly increasing
    StoppingRule stop;
    std::uint64_t seed = 1;
    int threads = 1;

    void validate() const;
};

struct BerPoint {
    double snr_db = 0.0;
    long long frames = 0;
    long long bit_errors = 0;
    long long frame_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    double avg_iters = 0.0;
};

/// GF(2) encoder built by row-reducing the expanded parity matrix; data bits
/// go to the non-pivot columns, pivot bits follow by back-substitution.
class Gf2Encoder {
  public:
    explicit Gf2Encoder(const TannerGraph& g);

    int n() const { return n_; }
    int data_bits() const { return n_ - static_cast<int>(pivot_col_.size()); }
    std::vector<std::uint8_t> encode(const std::vector<std::uint8_t>& data) const;

  private:
    int n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> rows_;  // reduced rows, one block of words_ each
    std::vector<int> pivot_col_;       // pivot column of each kept row
    std::vector<int> free_col_;        // data position -> column
};

/// All-zero-codeword Monte-Carlo. Deterministic for a given seed: per-frame
/// noise is derived from (seed, point, frame index), so thread count and
/// scheduling cannot change the counts.
std::vector<BerPoint> run(const SimPlan& plan);

/// Same pipeline on encoded uniform data; errors counted against the
/// transmitted codeword.
std::vector<BerPoint> run_random_codewords(const SimPlan& plan, const Gf2Encoder& enc);

void write_csv(std::ostream& os, const std::vector<BerPoint>& points);

} // namespace nsfaid

#endif
