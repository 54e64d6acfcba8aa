#ifndef NSFAID_FRAMING_HPP
#define NSFAID_FRAMING_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace nsfaid {

/// Message alphabet sizes. Exchanged messages live in M = {-Q..+Q} with
/// Q = 2^(q-1)-1; a-posteriori values are carried on q_tilde bits.
struct Alphabet {
    int q = 4;
    int q_tilde = 6;

    int Q() const { return (1 << (q - 1)) - 1; }
    int Qt() const { return (1 << (q_tilde - 1)) - 1; }
    void validate() const;
};

/// sgn(x) * min(|x|, limit)
constexpr int saturate_int(int x, int limit) {
    if (x > limit) return limit;
    if (x < -limit) return -limit;
    return x;
}

enum class TieMode : std::uint8_t {
    AlwaysPositive, // argument 0 maps to +lambda (hardware rule)
    Randomized,     // argument 0 maps to -lambda or +lambda equiprobably
};

/// Non-decreasing odd map F: M -> M given by the LUT [|F(0)|, F(1), ..., F(Q)].
/// F(0) = +-lambda with lambda = |F(0)|; negative arguments by oddness.
class FramingFunction {
public:
    /// Checks monotonicity and range, computes weight/bit-length/image.
    /// Throws std::invalid_argument on a malformed LUT.
    static FramingFunction validate(std::vector<int> lut);

    static FramingFunction identity(int Q);
    /// Offset min-sum: F(m) = sgn(m) * max(|m| - theta, 0), theta in [1, Q-1].
    static FramingFunction oms(int Q, int theta);
    /// Partially offset min-sum: even magnitudes kept, odd ones reduced by 1.
    static FramingFunction poms(int Q);

    /// Parses the LUT literal "[l0, l1, ..., lQ]"; l0 may carry a "+-" (or
    /// "±") prefix marking lambda > 0.
    static FramingFunction parse(std::string_view text);
    std::string to_string() const;

    int Q() const { return static_cast<int>(lut_.size()) - 1; }
    int lambda() const { return lut_[0]; }
    int weight() const { return static_cast<int>(mags_.size()); }
    /// Framing bit-length w = ceil(log2 W) + 1.
    int bit_length() const;
    const std::vector<int>& lut() const { return lut_; }
    /// Distinct LUT entries, ascending. These are the magnitudes of Im(F).
    const std::vector<int>& magnitudes() const { return mags_; }
    /// |Im(F)| counting signed values (0, when present, counted once).
    int image_size() const;
    bool is_identity() const;

    bool image_subset_of(const FramingFunction& other) const;

    /// F(s_M(x)) with the +lambda rule at argument 0.
    int frame(int x) const;
    /// Randomized tie mode: coin decides the sign of lambda at argument 0.
    int frame(int x, bool coin_positive) const;

    /// w-bit sign-magnitude codec over Im(F): code = (sign << magbits) | rank.
    /// decode(encode(v)) == v on Im(F); "-0" is not a valid code for lambda=0.
    int encode_w(int value) const;
    int decode_w(int code) const;

    bool operator==(const FramingFunction& o) const { return lut_ == o.lut_; }

private:
    explicit FramingFunction(std::vector<int> lut);
    std::vector<int> lut_;
    std::vector<int> mags_;
    std::vector<int> rank_; // rank_[magnitude] or -1
};

/// Number of (2Q+1)-level framing functions of exact weight W:
/// C(Q, W-1) * C(Q+1, W).
std::uint64_t count_framings(int Q, int W);

/// Emits every weight-W LUT satisfying the monotonicity constraints.
void for_each_framing(int Q, int W, const std::function<void(const FramingFunction&)>& fn);

/// Bits needed for CN messages given the framings seen by one CN:
/// ceil(log2 |union of signed images|).
int cn_message_width(const std::vector<FramingFunction>& framings);

} // namespace nsfaid

#endif
