#ifndef NSFAID_DECODER_HPP
#define NSFAID_DECODER_HPP

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "nsfaid/framing.hpp"
#include "nsfaid/qc.hpp"
#include "nsfaid/rng.hpp"

namespace nsfaid {

enum class Schedule { Flooding, Layered };
enum class CnStorage { Uncompressed, Compressed };

struct KernelSpec {
    Alphabet alpha;
    std::map<int, FramingFunction> framings; // keyed by VN degree
    double mu = 1.0;
    Schedule schedule = Schedule::Flooding;
    LayerSchedule layers; // used when schedule == Layered
    CnStorage cn_storage = CnStorage::Uncompressed;
    TieMode tie_mode = TieMode::AlwaysPositive;
    int max_iter = 20;
    bool early_exit = true;

    const FramingFunction& framing_for(int degree) const;
};

/// Eq. 1 on the d_c-1 extrinsic inputs: sign product times min magnitude.
int cn_update(std::span<const int> others);

/// Per-check running state: enough to reproduce every outgoing message.
struct CompressedCnState {
    std::uint64_t neg_bits = 0; // per-edge sign of the stored input
    int sign = 1;               // product over all inputs (zeros count +)
    int min1 = 0, min2 = 0;
    int idx_min1 = 0;

    int extract(int edge) const {
        int mag = edge == idx_min1 ? min2 : min1;
        int s = (neg_bits >> edge) & 1 ? -sign : sign;
        return s * mag;
    }
};

CompressedCnState cn_compress(std::span<const int> all_inputs);

/// Eq. 4: frame the saturated full-width sum of channel value and d_v-1
/// check messages. tie_rng is consulted only in randomized tie mode.
int vn_update(int gamma, std::span<const int> incoming, const FramingFunction& f,
              TieMode tie = TieMode::AlwaysPositive, Rng* tie_rng = nullptr);

struct DecodeResult {
    std::vector<std::uint8_t> bits;
    int iterations_used = 0;
    bool converged = false;
    std::vector<std::vector<int>> ap_trace; // per-iteration AP-LLRs if recorded
};

bool syndrome_ok(const TannerGraph& g, const std::vector<std::uint8_t>& bits);

/// One code + kernel, reusable across frames; decode() is reentrant.
class Decoder {
  public:
    Decoder(const QcCode& code, KernelSpec spec);

    const TannerGraph& graph() const { return graph_; }
    const KernelSpec& spec() const { return spec_; }

    /// tie_rng is required iff the kernel uses randomized ties.
    DecodeResult decode(const std::vector<int>& llrs, bool record_trace = false,
                        Rng* tie_rng = nullptr) const;

  private:
    DecodeResult decode_flooding(const std::vector<int>& llrs, bool record_trace, Rng* tie_rng) const;
    DecodeResult decode_layered(const std::vector<int>& llrs, bool record_trace, Rng* tie_rng) const;

    KernelSpec spec_;
    TannerGraph graph_;
    int z_ = 1;
    int base_cols_ = 0;
    std::vector<const FramingFunction*> vn_framing_; // per VN
    std::vector<int> layer_of_row_;                  // base row -> sweep position
    std::vector<std::vector<int>> layer_rows_;       // sweep position -> base rows
};

} // namespace nsfaid

#endif
