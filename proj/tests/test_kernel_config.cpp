#include "doctest.h"

#include <stdexcept>
#include <string>

#include "nsfaid/kernel_config.hpp"
#include "nsfaid/qc.hpp"

using namespace nsfaid;

#ifndef NSFAID_REPO_ROOT
#define NSFAID_REPO_ROOT "."
#endif

namespace {
const std::string kRoot = NSFAID_REPO_ROOT;

QcCode wimax() { return load_base_matrix(kRoot + "/data/wimax_r12_z96.bm"); }
QcCode reg36() { return load_base_matrix(kRoot + "/data/reg_3_6_z54.bm"); }
} // namespace

TEST_CASE("every shipped kernel file binds to its code") {
    struct Entry {
        const char* file;
        bool for_wimax;
    };
    const Entry entries[] = {
        {"ms_q4.toml", true},          {"ms_reg_q4.toml", false},
        {"nsfaid3_reg.toml", false},   {"nsfaid2_reg.toml", false},
        {"nsfaid433_wimax.toml", true}, {"nsfaid432_wimax.toml", true},
        {"nsfaid333_wimax.toml", true}, {"nsfaid332_wimax.toml", true},
        {"nsfaid222_wimax.toml", true},
    };
    QcCode w = wimax(), r = reg36();
    for (const auto& e : entries) {
        CAPTURE(e.file);
        KernelConfig cfg = load_kernel_config(kRoot + "/data/kernels/" + e.file);
        CHECK(cfg.alpha.q == 4);
        CHECK(cfg.alpha.q_tilde == 6);
        CHECK(cfg.mu > 0.0);
        CHECK(cfg.max_iter == 20);
        KernelSpec ks = make_kernel(cfg, e.for_wimax ? w : r);
        CHECK(ks.mu == cfg.mu);
        // every active degree resolved
        const QcCode& code = e.for_wimax ? w : r;
        for (int c = 0; c < code.cols; ++c) {
            int d = code.col_degree(c);
            if (d > 0) CHECK_NOTHROW(ks.framing_for(d));
        }
        if (cfg.schedule == Schedule::Layered) {
            CHECK(!ks.layers.layers.empty());
            CHECK(ks.layers.rpl == cfg.rpl);
        }
    }
}

TEST_CASE("frozen fields of two kernels") {
    KernelConfig ms = load_kernel_config(kRoot + "/data/kernels/ms_reg_q4.toml");
    CHECK(ms.mu == doctest::Approx(5.6));
    CHECK(ms.schedule == Schedule::Layered);
    CHECK(ms.rpl == 1);
    CHECK(ms.cn_storage == CnStorage::Uncompressed);
    CHECK(ms.tie_mode == TieMode::AlwaysPositive);
    REQUIRE(ms.default_lut.has_value());
    CHECK(ms.default_lut->is_identity());
    CHECK(ms.luts.empty());

    KernelConfig k433 = load_kernel_config(kRoot + "/data/kernels/nsfaid433_wimax.toml");
    CHECK(k433.mu == doctest::Approx(2.8));
    CHECK_FALSE(k433.default_lut.has_value());
    REQUIRE(k433.luts.size() == 3);
    CHECK(k433.luts.at(2).is_identity());
    CHECK(k433.luts.at(3).to_string() == "[0,1,1,3,3,3,7,7]");
    CHECK(k433.luts.at(6).to_string() == "[0,1,1,2,2,7,7,7]");
    CHECK(k433.luts.at(2).weight() == 8);
    CHECK(k433.luts.at(3).weight() == 4);
    CHECK(k433.luts.at(6).weight() == 4);
}

TEST_CASE("per-degree lut overrides the default") {
    auto cfg = parse_kernel_config("q = 4\nq_tilde = 6\nmu = 3\n"
                                   "lut = [0,1,2,3,4,5,6,7]\n"
                                   "lut.3 = [0,1,1,3,3,3,7,7]\n");
    KernelSpec ks = make_kernel(cfg, wimax());
    CHECK(ks.framing_for(2).is_identity());
    CHECK(ks.framing_for(6).is_identity());
    CHECK(ks.framing_for(3).to_string() == "[0,1,1,3,3,3,7,7]");
}

TEST_CASE("comments, blank lines, defaults") {
    auto cfg = parse_kernel_config("# leading comment\n\n"
                                   "q = 4\nq_tilde = 6\n"
                                   "lut = [0,0,0,0,0,6,6,6]  # trailing\n");
    CHECK(cfg.mu == 1.0);
    CHECK(cfg.schedule == Schedule::Flooding);
    CHECK(cfg.rpl == 1);
    CHECK(cfg.max_iter == 20);
    CHECK(cfg.tie_mode == TieMode::AlwaysPositive);
    REQUIRE(cfg.default_lut.has_value());
    CHECK(cfg.default_lut->weight() == 2);
}

TEST_CASE("parse failures") {
    CHECK_THROWS_AS(parse_kernel_config("bogus = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_kernel_config("q = 4\nq = 4\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_kernel_config("q = 4\nq_tilde = 6\nlut = [0,1,2]\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_kernel_config("q = 4\nq_tilde = 6\nschedule = diagonal\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_kernel_config("q = 4\nq_tilde = 6\nmu = 0\nlut = [0,1,2,3,4,5,6,7]\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_kernel_config("q = 4\nq_tilde = 6\nmu = -2\nlut = [0,1,2,3,4,5,6,7]\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_kernel_config("q = 4\nq_tilde = 6\nrpl = 0\nlut = [0,1,2,3,4,5,6,7]\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_kernel_config("q = 4\nq_tilde = 6\ntie_mode = coin\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_kernel_config("q = 4\nq_tilde = 6\nlut = [0,1,1,3,3,3,7,7\n"),
                    std::invalid_argument);
    // non-monotone lut body
    CHECK_THROWS_AS(parse_kernel_config("q = 4\nq_tilde = 6\nlut = [0,3,1,3,3,3,7,7]\n"),
                    std::invalid_argument);
    // a config without any lut is rejected up front
    CHECK_THROWS_AS(parse_kernel_config("q = 4\nq_tilde = 6\nmu = 2\n"), std::invalid_argument);
}

TEST_CASE("binding failures") {
    // no framing for an active degree
    auto cfg = parse_kernel_config("q = 4\nq_tilde = 6\nlut.3 = [0,1,1,3,3,3,7,7]\n");
    CHECK_THROWS_AS(make_kernel(cfg, wimax()), std::invalid_argument);
    // regular code only needs degree 3
    CHECK_NOTHROW(make_kernel(cfg, reg36()));
}

TEST_CASE("layered grouping comes from rpl") {
    auto cfg = parse_kernel_config("q = 4\nq_tilde = 6\nschedule = layered\nrpl = 4\n"
                                   "lut = [0,1,2,3,4,5,6,7]\n");
    KernelSpec ks = make_kernel(cfg, reg36());
    CHECK(ks.schedule == Schedule::Layered);
    REQUIRE(ks.layers.layers.size() == 3);
    for (const auto& l : ks.layers.layers) CHECK(l.size() == 4);
    CHECK(ks.layers.full_flags == std::vector<bool>(3, true));

    auto cfg1 = parse_kernel_config("q = 4\nq_tilde = 6\nschedule = layered\nrpl = 1\n"
                                    "lut = [0,1,2,3,4,5,6,7]\n");
    KernelSpec ks1 = make_kernel(cfg1, wimax());
    CHECK(ks1.layers.layers.size() == 12);
}
