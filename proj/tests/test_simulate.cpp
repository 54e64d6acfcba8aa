#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "nsfaid/channel.hpp"
#include "nsfaid/density_evolution.hpp"
#include "nsfaid/kernel_config.hpp"
#include "nsfaid/qc.hpp"
#include "nsfaid/simulate.hpp"

using namespace nsfaid;

#ifndef NSFAID_REPO_ROOT
#define NSFAID_REPO_ROOT "."
#endif

namespace {
const std::string kRoot = NSFAID_REPO_ROOT;

SimPlan regular_plan(std::vector<double> snrs) {
    SimPlan plan;
    plan.code = load_base_matrix(kRoot + "/data/reg_3_6_z54.bm");
    plan.kernel = make_kernel(load_kernel_config(kRoot + "/data/kernels/nsfaid3_reg.toml"),
                              plan.code);
    plan.snrs_db = std::move(snrs);
    plan.stop.min_frame_errors = 30;
    plan.stop.max_frames = 400;
    plan.seed = 77;
    return plan;
}
} // namespace

TEST_CASE("counts are identical for any thread split") {
    SimPlan plan = regular_plan({2.0, 2.6});
    plan.threads = 1;
    auto a = run(plan);
    plan.threads = 3;
    auto b = run(plan);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].frames == b[i].frames);
        CHECK(a[i].bit_errors == b[i].bit_errors);
        CHECK(a[i].frame_errors == b[i].frame_errors);
        CHECK(a[i].avg_iters == doctest::Approx(b[i].avg_iters).epsilon(1e-12));
    }
}

TEST_CASE("point fields are consistent") {
    SimPlan plan = regular_plan({1.6, 2.2});
    auto pts = run(plan);
    REQUIRE(pts.size() == 2);
    const int n = plan.code.n();
    for (const auto& p : pts) {
        CHECK(p.frames > 0);
        CHECK(p.frames <= plan.stop.max_frames);
        CHECK(p.ber == doctest::Approx(static_cast<double>(p.bit_errors) /
                                       (static_cast<double>(p.frames) * n)));
        CHECK(p.fer == doctest::Approx(static_cast<double>(p.frame_errors) /
                                       static_cast<double>(p.frames)));
        CHECK(p.frame_errors <= p.frames);
        CHECK(p.bit_errors <= static_cast<long long>(p.frames) * n);
        CHECK(p.avg_iters >= 1.0);
        CHECK(p.avg_iters <= plan.kernel.max_iter);
    }
    CHECK(pts[0].snr_db == doctest::Approx(1.6));
    CHECK(pts[1].snr_db == doctest::Approx(2.2));
    // early stop once enough frame errors accumulate
    CHECK(pts[0].frame_errors >= plan.stop.min_frame_errors);
}

TEST_CASE("essentially noiseless channel decodes clean") {
    SimPlan plan = regular_plan({12.0});
    plan.stop.max_frames = 50;
    auto pts = run(plan);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].frames == 50);
    CHECK(pts[0].bit_errors == 0);
    CHECK(pts[0].frame_errors == 0);
    CHECK(pts[0].ber == 0.0);
    CHECK(pts[0].avg_iters == doctest::Approx(1.0));
}

TEST_CASE("ber decreases with snr up to monte-carlo noise") {
    SimPlan plan = regular_plan({1.2, 2.0, 2.8});
    plan.stop.min_frame_errors = 40;
    plan.stop.max_frames = 600;
    auto pts = run(plan);
    REQUIRE(pts.size() == 3);
    const double n = plan.code.n();
    for (std::size_t i = 1; i < pts.size(); ++i) {
        double p0 = pts[i - 1].ber, p1 = pts[i].ber;
        double se = std::sqrt(p0 * (1 - p0) / (pts[i - 1].frames * n)) +
                    std::sqrt(p1 * (1 - p1) / (pts[i].frames * n));
        CHECK(p1 <= p0 + 5.0 * se);
    }
    // the spread over 1.6 dB is far larger than noise at these sizes
    CHECK(pts[2].ber < pts[0].ber);
}

TEST_CASE("encoder produces codewords and random-data runs match all-zero") {
    SimPlan plan = regular_plan({2.0});
    plan.stop.min_frame_errors = 60;
    plan.stop.max_frames = 900;
    TannerGraph g = expand(plan.code);
    Gf2Encoder enc(g);

    CHECK(enc.n() == plan.code.n());
    CHECK(enc.data_bits() > 0);
    CHECK(enc.data_bits() >= plan.code.n() - plan.code.m());

    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        std::vector<std::uint8_t> data(static_cast<std::size_t>(enc.data_bits()));
        for (auto& b : data) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
        auto cw = enc.encode(data);
        REQUIRE(static_cast<int>(cw.size()) == enc.n());
        CHECK(syndrome_ok(g, cw));
    }
    // zero data -> zero codeword
    auto zero = enc.encode(std::vector<std::uint8_t>(static_cast<std::size_t>(enc.data_bits())));
    CHECK(std::count(zero.begin(), zero.end(), std::uint8_t{1}) == 0);

    auto az = run(plan);
    auto rd = run_random_codewords(plan, enc);
    REQUIRE(az.size() == 1);
    REQUIRE(rd.size() == 1);
    REQUIRE(az[0].frame_errors > 0);
    REQUIRE(rd[0].frame_errors > 0);
    // same channel physics either way.  bit errors arrive in frame-sized
    // bursts, so the independent events are frames: compare FERs with
    // binomial noise and burst sizes loosely.
    double f0 = az[0].fer, f1 = rd[0].fer;
    double se = std::sqrt(f0 * (1 - f0) / az[0].frames) +
                std::sqrt(f1 * (1 - f1) / rd[0].frames);
    CAPTURE(f0);
    CAPTURE(f1);
    CHECK(std::abs(f0 - f1) <= 5.0 * se + 1e-9);
    double b0 = static_cast<double>(az[0].bit_errors) / az[0].frame_errors;
    double b1 = static_cast<double>(rd[0].bit_errors) / rd[0].frame_errors;
    CHECK(b0 < 2.0 * b1);
    CHECK(b1 < 2.0 * b0);
}

TEST_CASE("csv layout") {
    std::vector<BerPoint> pts(1);
    pts[0].snr_db = 2.0;
    pts[0].frames = 100;
    pts[0].bit_errors = 123;
    pts[0].frame_errors = 45;
    pts[0].ber = 1.234e-3;
    pts[0].fer = 0.45;
    pts[0].avg_iters = 7.5;
    std::ostringstream os;
    write_csv(os, pts);
    CHECK(os.str() ==
          "snr_db,frames,bit_errors,frame_errors,ber,fer,avg_iters\n"
          "2.000,100,123,45,1.234000e-03,4.500000e-01,7.500\n");
}

TEST_CASE("first iterations match density evolution on a large-girth code") {
    // Large z keeps the neighborhood tree-like for the first sweeps, so the
    // simulated per-iteration error must sit on the DE trace.
    QcCode code = generate_regular_code(512, 2024, 8);
    REQUIRE(graph_girth(code) >= 8);

    KernelSpec ks;
    ks.alpha = Alphabet{4, 6};
    ks.framings.emplace(3, FramingFunction::identity(7));
    ks.mu = 3.2;
    ks.schedule = Schedule::Flooding;
    ks.max_iter = 2;
    ks.early_exit = false;
    Decoder dec(code, ks);

    DeSpec spec;
    spec.alpha = ks.alpha;
    spec.dist = DegreeDistribution::regular(3, 6);
    spec.framings = ks.framings;
    spec.mu = ks.mu;

    const int n = code.n();
    const int frames = 200;
    for (double snr : {1.5, 2.0}) {
        auto trace = de_error_trace(spec, sigma_from_snr_db(snr), 2);
        std::vector<long long> errs(2, 0);
        Rng seeder(90210);
        for (int f = 0; f < frames; ++f) {
            Rng noise(derive_seed(seeder.next_u64(), static_cast<std::uint64_t>(f)));
            std::vector<int> llr(static_cast<std::size_t>(n));
            double sigma = sigma_from_snr_db(snr);
            for (auto& v : llr)
                v = quantize(1.0 + sigma * noise.next_gauss(), ks.mu, ks.alpha.Q());
            auto r = dec.decode(llr, true);
            REQUIRE(r.ap_trace.size() == 2);
            for (int it = 0; it < 2; ++it)
                for (int v = 0; v < n; ++v) errs[it] += r.ap_trace[it][v] < 0;
        }
        for (int it = 0; it < 2; ++it) {
            double sim = static_cast<double>(errs[it]) / (static_cast<double>(frames) * n);
            double de = trace[it];
            double se = std::sqrt(de * (1 - de) / (static_cast<double>(frames) * n));
            CAPTURE(snr);
            CAPTURE(it);
            CHECK(std::abs(sim - de) <= 5.0 * se);
        }
    }
}
