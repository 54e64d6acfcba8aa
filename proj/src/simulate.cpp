#include "nsfaid/simulate.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "nsfaid/channel.hpp"
#include "nsfaid/parallel.hpp"
#include "nsfaid/rng.hpp"

namespace nsfaid {

void SimPlan::validate() const {
    code.validate();
    if (snrs_db.empty())
        throw std::invalid_argument("no SNR points");
    for (std::size_t i = 1; i < snrs_db.size(); ++i)
        if (snrs_db[i] <= snrs_db[i - 1])
            throw std::invalid_argument("SNR points must be strictly increasing");
    if (stop.min_frame_errors < 1 || stop.max_frames < 1)
        throw std::invalid_argument("stopping rule needs at least one frame/error");
    if (threads < 1)
        throw std::invalid_argument("threads must be >= 1");
}

Gf2Encoder::Gf2Encoder(const TannerGraph& g) : n_(g.n), words_((g.n + 63) / 64) {
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(g.m) * words_, 0);
    auto bit = [&](std::size_t r, int c) -> std::uint64_t& { return rows[r * words_ + c / 64]; };
    for (int cn = 0; cn < g.m; ++cn)
        for (int e = g.cn_ptr[cn]; e < g.cn_ptr[cn + 1]; ++e)
            bit(cn, g.cn_vn[e]) ^= std::uint64_t{1} << (g.cn_vn[e] % 64);

    // reduced row echelon form over GF(2)
    int rank = 0;
    std::vector<char> is_pivot(n_, 0);
    for (int c = 0; c < n_ && rank < g.m; ++c) {
        int hit = -1;
        for (int r = rank; r < g.m; ++r)
            if (bit(r, c) >> (c % 64) & 1) {
                hit = r;
                break;
            }
        if (hit < 0)
            continue;
        if (hit != rank)
            for (std::size_t w = 0; w < words_; ++w)
                std::swap(rows[hit * words_ + w], rows[static_cast<std::size_t>(rank) * words_ + w]);
        for (int r = 0; r < g.m; ++r)
            if (r != rank && (bit(r, c) >> (c % 64) & 1))
                for (std::size_t w = 0; w < words_; ++w)
                    rows[r * words_ + w] ^= rows[static_cast<std::size_t>(rank) * words_ + w];
        pivot_col_.push_back(c);
        is_pivot[c] = 1;
        ++rank;
    }
    rows.resize(static_cast<std::size_t>(rank) * words_);
    rows_ = std::move(rows);
    for (int c = 0; c < n_; ++c)
        if (!is_pivot[c])
            free_col_.push_back(c);
}

std::vector<std::uint8_t> Gf2Encoder::encode(const std::vector<std::uint8_t>& data) const {
    if (data.size() != free_col_.size())
        throw std::invalid_argument("data length must equal the free-bit count");
    std::vector<std::uint64_t> cw(words_, 0);
    for (std::size_t i = 0; i < data.size(); ++i)
        if (data[i])
            cw[free_col_[i] / 64] ^= std::uint64_t{1} << (free_col_[i] % 64);
    // each reduced row holds one pivot plus free columns only
    for (std::size_t r = 0; r < pivot_col_.size(); ++r) {
        int parity = 0;
        for (std::size_t w = 0; w < words_; ++w)
            parity ^= __builtin_parityll(rows_[r * words_ + w] & cw[w]);
        if (parity)
            cw[pivot_col_[r] / 64] ^= std::uint64_t{1} << (pivot_col_[r] % 64);
    }
    std::vector<std::uint8_t> out(n_);
    for (int c = 0; c < n_; ++c)
        out[c] = (cw[c / 64] >> (c % 64)) & 1;
    return out;
}

namespace {

struct ChunkAcc {
    long long bit_errors = 0;
    long long frame_errors = 0;
    long long iters = 0;
};

constexpr int kBatch = 256; // stopping-rule granularity, independent of threads

std::vector<BerPoint> run_impl(const SimPlan& plan, const Gf2Encoder* enc) {
    plan.validate();
    Decoder dec(plan.code, plan.kernel);
    const int n = dec.graph().n;
    const double mu = plan.kernel.mu;
    const int Q = plan.kernel.alpha.Q();
    const bool random_ties = plan.kernel.tie_mode == TieMode::Randomized;

    std::vector<BerPoint> points;
    for (std::size_t p = 0; p < plan.snrs_db.size(); ++p) {
        const double sigma = sigma_from_snr_db(plan.snrs_db[p]);
        const std::uint64_t point_seed = derive_seed(plan.seed, p);

        BerPoint pt;
        pt.snr_db = plan.snrs_db[p];
        long long iters_total = 0;
        while (pt.frames < plan.stop.max_frames && pt.frame_errors < plan.stop.min_frame_errors) {
            const int batch =
                static_cast<int>(std::min<long long>(kBatch, plan.stop.max_frames - pt.frames));
            const long long base = pt.frames;
            std::vector<ChunkAcc> accs(static_cast<std::size_t>(std::clamp(plan.threads, 1, batch)));
            parallel_chunks(batch, plan.threads, [&](int first, int last, int chunk) {
                ChunkAcc acc;
                std::vector<std::uint8_t> cw(n, 0), data;
                std::vector<int> llr(n);
                for (int i = first; i < last; ++i) {
                    const std::uint64_t fseed = derive_seed(point_seed, base + i);
                    Rng noise(derive_seed(fseed, 0));
                    Rng tie(derive_seed(fseed, 1));
                    if (enc) {
                        Rng src(derive_seed(fseed, 2));
                        data.resize(static_cast<std::size_t>(enc->data_bits()));
                        for (auto& b : data)
                            b = static_cast<std::uint8_t>(src.next_u64() & 1);
                        cw = enc->encode(data);
                    }
                    for (int v = 0; v < n; ++v) {
                        double y = (cw[v] ? -1.0 : 1.0) + sigma * noise.next_gauss();
                        llr[v] = quantize(y, mu, Q);
                    }
                    DecodeResult r = dec.decode(llr, false, random_ties ? &tie : nullptr);
                    long long bad = 0;
                    for (int v = 0; v < n; ++v)
                        bad += r.bits[v] != cw[v];
                    acc.bit_errors += bad;
                    acc.frame_errors += bad != 0;
                    acc.iters += r.iterations_used;
                }
                accs[static_cast<std::size_t>(chunk)] = acc;
            });
            for (const ChunkAcc& a : accs) {
                pt.bit_errors += a.bit_errors;
                pt.frame_errors += a.frame_errors;
                iters_total += a.iters;
            }
            pt.frames += batch;
        }
        pt.ber = static_cast<double>(pt.bit_errors) / (static_cast<double>(pt.frames) * n);
        pt.fer = static_cast<double>(pt.frame_errors) / static_cast<double>(pt.frames);
        pt.avg_iters = static_cast<double>(iters_total) / static_cast<double>(pt.frames);
        points.push_back(pt);
    }
    return points;
}

} // namespace

std::vector<BerPoint> run(const SimPlan& plan) { return run_impl(plan, nullptr); }

std::vector<BerPoint> run_random_codewords(const SimPlan& plan, const Gf2Encoder& enc) {
    return run_impl(plan, &enc);
}

void write_csv(std::ostream& os, const std::vector<BerPoint>& points) {
    os << "snr_db,frames,bit_errors,frame_errors,ber,fer,avg_iters\n";
    char line[192];
    for (const BerPoint& p : points) {
        std::snprintf(line, sizeof line, "%.3f,%lld,%lld,%lld,%.6e,%.6e,%.3f\n", p.snr_db, p.frames,
                      p.bit_errors, p.frame_errors, p.ber, p.fer, p.avg_iters);
        os << line;
    }
}

} // namespace nsfaid
