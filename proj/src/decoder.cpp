#include "nsfaid/decoder.hpp"

#include <algorithm>
#include <stdexcept>

namespace nsfaid {

const FramingFunction& KernelSpec::framing_for(int degree) const {
    auto it = framings.find(degree);
    if (it != framings.end())
        return it->second;
    if (framings.size() == 1)
        return framings.begin()->second;
    throw std::invalid_argument("no framing function for degree " + std::to_string(degree));
}

namespace {

inline int sat(int x, int m) { return std::clamp(x, -m, m); }

// One coin per frame call in randomized mode keeps the draw count (and
// therefore the bit stream) independent of the message values.
inline int framed(const FramingFunction& f, int x, TieMode tie, Rng* rng) {
    if (tie == TieMode::Randomized) {
        if (!rng)
            throw std::invalid_argument("randomized tie mode needs an rng");
        return f.frame(x, (rng->next_u64() & 1) != 0);
    }
    return f.frame(x);
}

} // namespace

int cn_update(std::span<const int> others) {
    if (others.empty())
        return 0;
    int sign = 1;
    int mag = std::abs(others[0]);
    for (int x : others) {
        if (x < 0)
            sign = -sign;
        mag = std::min(mag, std::abs(x));
    }
    return sign * mag;
}

CompressedCnState cn_compress(std::span<const int> all_inputs) {
    CompressedCnState st;
    st.min1 = st.min2 = INT32_MAX;
    for (std::size_t i = 0; i < all_inputs.size(); ++i) {
        int x = all_inputs[i];
        if (x < 0) {
            st.neg_bits |= std::uint64_t{1} << i;
            st.sign = -st.sign;
        }
        int mag = std::abs(x);
        if (mag < st.min1) {
            st.min2 = st.min1;
            st.min1 = mag;
            st.idx_min1 = static_cast<int>(i);
        } else if (mag < st.min2) {
            st.min2 = mag;
        }
    }
    if (st.min1 == INT32_MAX)
        st.min1 = 0;
    if (st.min2 == INT32_MAX)
        st.min2 = 0;
    return st;
}

int vn_update(int gamma, std::span<const int> incoming, const FramingFunction& f, TieMode tie,
              Rng* tie_rng) {
    long long s = gamma;
    for (int x : incoming)
        s += x;
    return framed(f, sat(static_cast<int>(s), f.Q()), tie, tie_rng);
}

bool syndrome_ok(const TannerGraph& g, const std::vector<std::uint8_t>& bits) {
    for (int cn = 0; cn < g.m; ++cn) {
        int parity = 0;
        for (int e = g.cn_ptr[cn]; e < g.cn_ptr[cn + 1]; ++e)
            parity ^= bits[g.cn_vn[e]];
        if (parity)
            return false;
    }
    return true;
}

Decoder::Decoder(const QcCode& code, KernelSpec spec) : spec_(std::move(spec)) {
    code.validate();
    spec_.alpha.validate();
    for (const auto& [d, f] : spec_.framings)
        if (f.Q() != spec_.alpha.Q())
            throw std::invalid_argument("framing alphabet does not match kernel alphabet");
    graph_ = expand(code);
    z_ = code.z;
    base_cols_ = code.cols;

    vn_framing_.resize(graph_.n);
    for (int v = 0; v < graph_.n; ++v)
        vn_framing_[v] = &spec_.framing_for(graph_.vn_degree(v));

    if (spec_.schedule == Schedule::Layered) {
        const auto& ls = spec_.layers;
        layer_of_row_.assign(code.rows, -1);
        layer_rows_ = ls.layers;
        for (std::size_t l = 0; l < ls.layers.size(); ++l)
            for (int r : ls.layers[l]) {
                if (r < 0 || r >= code.rows || layer_of_row_[r] != -1)
                    throw std::invalid_argument("layer schedule does not partition the base rows");
                layer_of_row_[r] = static_cast<int>(l);
            }
        for (int r = 0; r < code.rows; ++r)
            if (layer_of_row_[r] == -1)
                throw std::invalid_argument("layer schedule does not partition the base rows");
    }
}

DecodeResult Decoder::decode(const std::vector<int>& llrs, bool record_trace, Rng* tie_rng) const {
    if (static_cast<int>(llrs.size()) != graph_.n)
        throw std::invalid_argument("LLR vector length does not match code length");
    if (spec_.tie_mode == TieMode::Randomized && tie_rng == nullptr)
        throw std::invalid_argument("randomized tie mode needs a random source");
    return spec_.schedule == Schedule::Flooding ? decode_flooding(llrs, record_trace, tie_rng)
                                                : decode_layered(llrs, record_trace, tie_rng);
}

DecodeResult Decoder::decode_flooding(const std::vector<int>& llrs, bool record_trace,
                                      Rng* tie_rng) const {
    const int Q = spec_.alpha.Q();
    const int Qt = spec_.alpha.Qt();
    const int n = graph_.n, m = graph_.m, E = graph_.edges();

    std::vector<int> gamma(n);
    for (int v = 0; v < n; ++v)
        gamma[v] = sat(llrs[v], Q);

    std::vector<int> beta(E, 0);  // CN-major, per edge
    std::vector<int> alpha(E, 0); // VN->CN messages, CN-major slots
    std::vector<int> ap(n, 0);
    std::vector<std::uint8_t> bits(n, 0);
    std::vector<int> pre, suf, psign, ssign; // extrinsic scans for the uncompressed CNU

    DecodeResult res;
    for (int it = 1; it <= spec_.max_iter; ++it) {
        // VN processing: full-width extrinsic sums, then frame
        for (int v = 0; v < n; ++v) {
            long long total = gamma[v];
            for (int k = graph_.vn_ptr[v]; k < graph_.vn_ptr[v + 1]; ++k)
                total += beta[graph_.vn_edges[k]];
            const FramingFunction& f = *vn_framing_[v];
            for (int k = graph_.vn_ptr[v]; k < graph_.vn_ptr[v + 1]; ++k) {
                int e = graph_.vn_edges[k];
                alpha[e] = framed(f, sat(static_cast<int>(total - beta[e]), Q), spec_.tie_mode, tie_rng);
            }
        }

        // CN processing
        for (int cn = 0; cn < m; ++cn) {
            int lo = graph_.cn_ptr[cn], d = graph_.cn_ptr[cn + 1] - lo;
            std::span<const int> in(alpha.data() + lo, static_cast<std::size_t>(d));
            if (spec_.cn_storage == CnStorage::Compressed) {
                CompressedCnState st = cn_compress(in);
                for (int i = 0; i < d; ++i)
                    beta[lo + i] = st.extract(i);
            } else {
                // pre[i] covers inputs [0,i), suf[i] covers [i,d)
                pre.assign(d + 1, INT32_MAX);
                suf.assign(d + 1, INT32_MAX);
                psign.assign(d + 1, 1);
                ssign.assign(d + 1, 1);
                for (int i = 0; i < d; ++i) {
                    pre[i + 1] = std::min(pre[i], std::abs(in[i]));
                    psign[i + 1] = in[i] < 0 ? -psign[i] : psign[i];
                }
                for (int i = d - 1; i >= 0; --i) {
                    suf[i] = std::min(suf[i + 1], std::abs(in[i]));
                    ssign[i] = in[i] < 0 ? -ssign[i + 1] : ssign[i + 1];
                }
                for (int i = 0; i < d; ++i) {
                    int mag = std::min(pre[i], suf[i + 1]);
                    beta[lo + i] = psign[i] * ssign[i + 1] * (mag == INT32_MAX ? 0 : mag);
                }
            }
        }

        // AP update and hard decision
        for (int v = 0; v < n; ++v) {
            long long total = gamma[v];
            for (int k = graph_.vn_ptr[v]; k < graph_.vn_ptr[v + 1]; ++k)
                total += beta[graph_.vn_edges[k]];
            ap[v] = sat(static_cast<int>(total), Qt);
            bits[v] = ap[v] < 0 ? 1 : 0;
        }
        if (record_trace)
            res.ap_trace.push_back(ap);
        res.iterations_used = it;
        if (spec_.early_exit && syndrome_ok(graph_, bits)) {
            res.converged = true;
            break;
        }
    }
    if (!spec_.early_exit)
        res.converged = syndrome_ok(graph_, bits);
    res.bits = std::move(bits);
    return res;
}

DecodeResult Decoder::decode_layered(const std::vector<int>& llrs, bool record_trace,
                                     Rng* tie_rng) const {
    const int Q = spec_.alpha.Q();
    const int Qt = spec_.alpha.Qt();
    const int n = graph_.n, E = graph_.edges();

    std::vector<int> ap(n);
    for (int v = 0; v < n; ++v)
        ap[v] = sat(llrs[v], Q);

    const bool compressed = spec_.cn_storage == CnStorage::Compressed;
    std::vector<int> beta;                    // per edge, uncompressed storage
    std::vector<CompressedCnState> cn_state;  // per CN, compressed storage
    if (compressed)
        cn_state.assign(graph_.m, CompressedCnState{});
    else
        beta.assign(E, 0);

    std::vector<int> apre, afr; // per-edge scratch within one CN
    std::vector<int> pre, suf, psign, ssign;
    std::vector<std::uint8_t> bits(n, 0);

    DecodeResult res;
    for (int sweep = 1; sweep <= spec_.max_iter; ++sweep) {
        for (const auto& rows : layer_rows_) {
            for (int r : rows) {
                for (int i = 0; i < z_; ++i) {
                    int cn = r * z_ + i;
                    int lo = graph_.cn_ptr[cn], d = graph_.cn_ptr[cn + 1] - lo;
                    apre.resize(d);
                    afr.resize(d);
                    for (int k = 0; k < d; ++k) {
                        int v = graph_.cn_vn[lo + k];
                        int old = compressed ? cn_state[cn].extract(k) : beta[lo + k];
                        apre[k] = sat(ap[v] - old, Qt);
                        afr[k] = framed(*vn_framing_[v], sat(apre[k], Q), spec_.tie_mode, tie_rng);
                    }
                    if (compressed) {
                        CompressedCnState st = cn_compress(afr);
                        cn_state[cn] = st;
                        for (int k = 0; k < d; ++k) {
                            int v = graph_.cn_vn[lo + k];
                            ap[v] = sat(apre[k] + st.extract(k), Qt);
                        }
                    } else {
                        pre.assign(d + 1, INT32_MAX);
                        suf.assign(d + 1, INT32_MAX);
                        psign.assign(d + 1, 1);
                        ssign.assign(d + 1, 1);
                        for (int k = 0; k < d; ++k) {
                            pre[k + 1] = std::min(pre[k], std::abs(afr[k]));
                            psign[k + 1] = afr[k] < 0 ? -psign[k] : psign[k];
                        }
                        for (int k = d - 1; k >= 0; --k) {
                            suf[k] = std::min(suf[k + 1], std::abs(afr[k]));
                            ssign[k] = afr[k] < 0 ? -ssign[k + 1] : ssign[k + 1];
                        }
                        for (int k = 0; k < d; ++k) {
                            int mag = std::min(pre[k], suf[k + 1]);
                            int b = psign[k] * ssign[k + 1] * (mag == INT32_MAX ? 0 : mag);
                            beta[lo + k] = b;
                            int v = graph_.cn_vn[lo + k];
                            ap[v] = sat(apre[k] + b, Qt);
                        }
                    }
                }
            }
        }
        for (int v = 0; v < n; ++v)
            bits[v] = ap[v] < 0 ? 1 : 0;
        if (record_trace)
            res.ap_trace.push_back(ap);
        res.iterations_used = sweep;
        if (spec_.early_exit && syndrome_ok(graph_, bits)) {
            res.converged = true;
            break;
        }
    }
    if (!spec_.early_exit)
        res.converged = syndrome_ok(graph_, bits);
    res.bits = std::move(bits);
    return res;
}

} // namespace nsfaid
