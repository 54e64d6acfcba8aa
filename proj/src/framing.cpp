#include "nsfaid/framing.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace nsfaid {

void Alphabet::validate() const {
    if (q < 2 || q_tilde <= q)
        throw std::invalid_argument("alphabet requires q_tilde > q >= 2");
}

FramingFunction::FramingFunction(std::vector<int> lut) : lut_(std::move(lut)) {
    mags_ = lut_;
    std::sort(mags_.begin(), mags_.end());
    mags_.erase(std::unique(mags_.begin(), mags_.end()), mags_.end());
    rank_.assign(static_cast<std::size_t>(Q()) + 1, -1);
    for (std::size_t r = 0; r < mags_.size(); ++r) rank_[static_cast<std::size_t>(mags_[r])] = static_cast<int>(r);
}

FramingFunction FramingFunction::validate(std::vector<int> lut) {
    if (lut.size() < 2) throw std::invalid_argument("framing LUT needs at least 2 entries");
    int Q = static_cast<int>(lut.size()) - 1;
    int prev = 0;
    for (std::size_t i = 0; i < lut.size(); ++i) {
        int v = lut[i];
        if (v < 0 || v > Q) throw std::invalid_argument("framing LUT entry out of [0,Q]");
        if (i > 0 && v < prev) throw std::invalid_argument("framing LUT must be non-decreasing");
        prev = v;
    }
    return FramingFunction(std::move(lut));
}

FramingFunction FramingFunction::identity(int Q) {
    std::vector<int> lut(static_cast<std::size_t>(Q) + 1);
    for (int m = 0; m <= Q; ++m) lut[static_cast<std::size_t>(m)] = m;
    return FramingFunction(std::move(lut));
}

FramingFunction FramingFunction::oms(int Q, int theta) {
    if (theta < 1 || theta > Q - 1) throw std::invalid_argument("OMS offset out of [1, Q-1]");
    std::vector<int> lut(static_cast<std::size_t>(Q) + 1);
    for (int m = 0; m <= Q; ++m) lut[static_cast<std::size_t>(m)] = std::max(m - theta, 0);
    return FramingFunction(std::move(lut));
}

FramingFunction FramingFunction::poms(int Q) {
    std::vector<int> lut(static_cast<std::size_t>(Q) + 1);
    for (int m = 0; m <= Q; ++m) lut[static_cast<std::size_t>(m)] = (m % 2 == 0) ? m : m - 1;
    return FramingFunction(std::move(lut));
}

int FramingFunction::bit_length() const {
    unsigned W = static_cast<unsigned>(weight());
    return std::bit_width(W - 1) + 1; // ceil(log2 W) + 1
}

int FramingFunction::image_size() const {
    int n = 2 * weight();
    if (lambda() == 0) --n; // 0 counted once
    return n;
}

bool FramingFunction::is_identity() const {
    for (int m = 0; m <= Q(); ++m)
        if (lut_[static_cast<std::size_t>(m)] != m) return false;
    return true;
}

bool FramingFunction::image_subset_of(const FramingFunction& other) const {
    for (int v : mags_) {
        if (v == 0 && other.lambda() != 0) return false; // 0 in Im(this) but not Im(other)
        if (v != 0 && other.rank_[static_cast<std::size_t>(v)] < 0) return false;
    }
    // lambda > 0 puts +-lambda in the image; covered above since lambda is a LUT entry
    return true;
}

int FramingFunction::frame(int x) const {
    int s = saturate_int(x, Q());
    if (s == 0) return lambda();
    int m = lut_[static_cast<std::size_t>(s < 0 ? -s : s)];
    return s < 0 ? -m : m;
}

int FramingFunction::frame(int x, bool coin_positive) const {
    int s = saturate_int(x, Q());
    if (s == 0) return coin_positive ? lambda() : -lambda();
    int m = lut_[static_cast<std::size_t>(s < 0 ? -s : s)];
    return s < 0 ? -m : m;
}

int FramingFunction::encode_w(int value) const {
    int mag = value < 0 ? -value : value;
    int r = (mag <= Q()) ? rank_[static_cast<std::size_t>(mag)] : -1;
    if (r < 0) throw std::invalid_argument("value not in Im(F)");
    if (value < 0 && mag == 0) throw std::invalid_argument("value not in Im(F)");
    int magbits = bit_length() - 1;
    return ((value < 0) ? (1 << magbits) : 0) | r;
}

int FramingFunction::decode_w(int code) const {
    int magbits = bit_length() - 1;
    int r = code & ((1 << magbits) - 1);
    bool neg = (code >> magbits) & 1;
    if (code < 0 || (code >> (magbits + 1)) != 0 || r >= weight())
        throw std::invalid_argument("w-bit code out of range");
    int mag = mags_[static_cast<std::size_t>(r)];
    if (neg && mag == 0) throw std::invalid_argument("-0 is not a valid code");
    return neg ? -mag : mag;
}

FramingFunction FramingFunction::parse(std::string_view text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    // UTF-8 "±" -> "+-"
    std::string plusminus = "\xc2\xb1";
    for (std::size_t pos; (pos = s.find(plusminus)) != std::string::npos;) s.replace(pos, 2, "+-");
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw std::invalid_argument("LUT literal must be bracketed: [l0,l1,...]");
    s = s.substr(1, s.size() - 2);
    std::vector<int> lut;
    bool first = true;
    std::size_t i = 0;
    while (i < s.size()) {
        bool pm = false;
        if (first && s.compare(i, 2, "+-") == 0) {
            pm = true;
            i += 2;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ',') ++j;
        if (j == i) throw std::invalid_argument("empty LUT entry");
        int v = std::stoi(s.substr(i, j - i));
        if (pm && v < 0) throw std::invalid_argument("+- prefix expects a non-negative entry");
        lut.push_back(v);
        first = false;
        i = j + 1;
    }
    if (!s.empty() && s.back() == ',') throw std::invalid_argument("trailing comma in LUT literal");
    return validate(std::move(lut));
}

std::string FramingFunction::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < lut_.size(); ++i) {
        if (i) os << ',';
        if (i == 0 && lut_[0] != 0) os << "+-";
        os << lut_[i];
    }
    os << ']';
    return os.str();
}

namespace {

std::uint64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

} // namespace

std::uint64_t count_framings(int Q, int W) {
    if (W < 1 || W > Q + 1) return 0;
    return binom(Q, W - 1) * binom(Q + 1, W);
}

void for_each_framing(int Q, int W, const std::function<void(const FramingFunction&)>& fn) {
    if (W < 1 || W > Q + 1) return;
    // values: W-subset of {0..Q}; runs: composition of Q+1 entries into W blocks
    std::vector<int> values(static_cast<std::size_t>(W));
    std::vector<int> cuts(static_cast<std::size_t>(W - 1)); // run boundaries in [1, Q]
    std::vector<int> lut(static_cast<std::size_t>(Q) + 1);

    for (int i = 0; i < W; ++i) values[static_cast<std::size_t>(i)] = i;
    auto next_subset = [&](std::vector<int>& c, int n) {
        int k = static_cast<int>(c.size());
        int i = k - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return false;
        ++c[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
        return true;
    };

    do {
        for (int i = 0; i < W - 1; ++i) cuts[static_cast<std::size_t>(i)] = i;
        do {
            // cuts[i] = last index of block i; block boundaries strictly increasing
            int block = 0;
            for (int m = 0; m <= Q; ++m) {
                while (block < W - 1 && m > cuts[static_cast<std::size_t>(block)]) ++block;
                lut[static_cast<std::size_t>(m)] = values[static_cast<std::size_t>(block)];
            }
            fn(FramingFunction::validate(lut));
        } while (W > 1 && next_subset(cuts, Q));
    } while (next_subset(values, Q + 1));
}

int cn_message_width(const std::vector<FramingFunction>& framings) {
    if (framings.empty()) return 0;
    int Q = framings.front().Q();
    std::vector<bool> in_union(static_cast<std::size_t>(Q) + 1, false);
    bool zero = false;
    for (const auto& f : framings) {
        for (int v : f.magnitudes()) {
            if (v == 0)
                zero = true;
            else
                in_union[static_cast<std::size_t>(v)] = true;
        }
    }
    int n = zero ? 1 : 0;
    for (int v = 1; v <= Q; ++v)
        if (in_union[static_cast<std::size_t>(v)]) n += 2;
    return std::bit_width(static_cast<unsigned>(n - 1)); // ceil(log2 n)
}

} // namespace nsfaid
