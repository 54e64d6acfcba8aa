#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <stdexcept>

#include "nsfaid/channel.hpp"
#include "nsfaid/decoder.hpp"
#include "nsfaid/density_evolution.hpp"
#include "nsfaid/kernel_config.hpp"
#include "nsfaid/qc.hpp"
#include "nsfaid/schedule.hpp"
#include "nsfaid/search.hpp"
#include "nsfaid/simulate.hpp"

namespace py = pybind11;
using namespace nsfaid;

namespace {

std::vector<FramingFunction> enumerate_framings(int Q, int W) {
    if (count_framings(Q, W) > 10'000'000ull)
        throw std::invalid_argument("refusing to enumerate more than 1e7 framings");
    std::vector<FramingFunction> out;
    for_each_framing(Q, W, [&](const FramingFunction& f) { out.push_back(f); });
    return out;
}

struct StopCollect {};

std::vector<IrregularCandidate> list_irregular(
    const std::map<int, std::vector<SearchEntry>>& usets, const std::vector<int>& degrees,
    int limit) {
    std::vector<IrregularCandidate> out;
    try {
        for_each_irregular(usets, degrees, [&](const IrregularCandidate& c) {
            out.push_back(c);
            if (limit > 0 && static_cast<int>(out.size()) >= limit)
                throw StopCollect{};
        });
    } catch (const StopCollect&) {
    }
    return out;
}

std::string csv_string(const std::vector<BerPoint>& points) {
    std::ostringstream os;
    write_csv(os, points);
    return os.str();
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "finite-alphabet iterative LDPC decoding toolkit";
    using gil_off = py::call_guard<py::gil_scoped_release>;

    // ------------------------------------------------------------ enums
    py::enum_<Schedule>(m, "Schedule")
        .value("Flooding", Schedule::Flooding)
        .value("Layered", Schedule::Layered);
    py::enum_<CnStorage>(m, "CnStorage")
        .value("Uncompressed", CnStorage::Uncompressed)
        .value("Compressed", CnStorage::Compressed);
    py::enum_<TieMode>(m, "TieMode")
        .value("AlwaysPositive", TieMode::AlwaysPositive)
        .value("Randomized", TieMode::Randomized);
    py::enum_<ArchVariant>(m, "ArchVariant")
        .value("Pipelined", ArchVariant::Pipelined)
        .value("FullLayer", ArchVariant::FullLayer);

    // ------------------------------------------------------ basic types
    py::class_<Alphabet>(m, "Alphabet")
        .def(py::init<>())
        .def(py::init([](int q, int qt) {
                 Alphabet a;
                 a.q = q;
                 a.q_tilde = qt;
                 a.validate();
                 return a;
             }),
             py::arg("q") = 4, py::arg("q_tilde") = 6)
        .def_readwrite("q", &Alphabet::q)
        .def_readwrite("q_tilde", &Alphabet::q_tilde)
        .def_property_readonly("Q", &Alphabet::Q)
        .def_property_readonly("Qt", &Alphabet::Qt);

    py::class_<FramingFunction>(m, "FramingFunction")
        .def_static("parse", &FramingFunction::parse, py::arg("text"),
                    "LUT literal \"[l0,...,lQ]\"; l0 may carry a +- prefix")
        .def_static("identity", &FramingFunction::identity, py::arg("Q"))
        .def_static("oms", &FramingFunction::oms, py::arg("Q"), py::arg("theta"))
        .def_static("poms", &FramingFunction::poms, py::arg("Q"))
        .def_property_readonly("Q", &FramingFunction::Q)
        .def_property_readonly("lam", &FramingFunction::lambda)
        .def_property_readonly("weight", &FramingFunction::weight)
        .def_property_readonly("bit_length", &FramingFunction::bit_length)
        .def_property_readonly("lut", &FramingFunction::lut)
        .def_property_readonly("magnitudes", &FramingFunction::magnitudes)
        .def_property_readonly("image_size", &FramingFunction::image_size)
        .def("is_identity", &FramingFunction::is_identity)
        .def("image_subset_of", &FramingFunction::image_subset_of)
        .def("frame", py::overload_cast<int>(&FramingFunction::frame, py::const_), py::arg("x"))
        .def("__str__", &FramingFunction::to_string)
        .def("__repr__",
             [](const FramingFunction& f) { return "FramingFunction(" + f.to_string() + ")"; })
        .def(py::self == py::self);

    m.def("count_framings", &count_framings, py::arg("Q"), py::arg("W"),
          "number of weight-W framings: C(Q, W-1) * C(Q+1, W)");
    m.def("enumerate_framings", &enumerate_framings, py::arg("Q"), py::arg("W"));

    py::class_<DegreeDistribution>(m, "DegreeDistribution")
        .def(py::init<>())
        .def_static("regular", &DegreeDistribution::regular, py::arg("dv"), py::arg("dc"))
        .def_readwrite("lam", &DegreeDistribution::lambda)
        .def_readwrite("rho", &DegreeDistribution::rho)
        .def("lambda_node", &DegreeDistribution::lambda_node)
        .def("rho_node", &DegreeDistribution::rho_node)
        .def("rate", &DegreeDistribution::rate);

    // ------------------------------------------------------------ codes
    py::class_<QcCode>(m, "QcCode")
        .def(py::init<>())
        .def_readonly("rows", &QcCode::rows)
        .def_readonly("cols", &QcCode::cols)
        .def_readonly("z", &QcCode::z)
        .def("n", &QcCode::n)
        .def("m", &QcCode::m)
        .def("at", py::overload_cast<int, int>(&QcCode::at, py::const_))
        .def("row_degree", &QcCode::row_degree)
        .def("col_degree", &QcCode::col_degree)
        .def("__repr__", [](const QcCode& c) {
            std::ostringstream os;
            os << "QcCode(" << c.rows << "x" << c.cols << ", z=" << c.z << ")";
            return os.str();
        });

    m.def("load_code", &load_code, py::arg("path"),
          ".alist by extension, base-matrix format otherwise");
    m.def("parse_base_matrix", py::overload_cast<const std::string&>(&parse_base_matrix),
          py::arg("text"));
    m.def("generate_regular_code", &generate_regular_code, py::arg("z"), py::arg("seed"),
          py::arg("min_girth") = 6, gil_off());
    m.def("graph_girth", &graph_girth, py::arg("code"), py::arg("limit") = 12, gil_off());
    m.def("degree_distributions", &degree_distributions, py::arg("code"));
    m.def("info_bit_degree_weights", &info_bit_degree_weights, py::arg("code"));
    m.def("find_pipeline_row_order", &find_pipeline_row_order, py::arg("code"), gil_off());

    py::class_<TannerGraph>(m, "TannerGraph")
        .def_readonly("n", &TannerGraph::n)
        .def_readonly("m", &TannerGraph::m)
        .def("edges", &TannerGraph::edges)
        .def("cn_degree", &TannerGraph::cn_degree)
        .def("vn_degree", &TannerGraph::vn_degree);
    m.def("expand", &expand, py::arg("code"));
    m.def("syndrome_ok", &syndrome_ok, py::arg("graph"), py::arg("bits"));

    // ------------------------------------------------------------ channel
    m.def("sigma_from_snr_db", &sigma_from_snr_db, py::arg("snr_db"));
    m.def("snr_db_from_sigma", &snr_db_from_sigma, py::arg("sigma"));
    m.def("quantize", &quantize, py::arg("y"), py::arg("mu"), py::arg("Q"));

    // ------------------------------------------------- density evolution
    py::class_<DeSpec>(m, "DeSpec")
        .def(py::init<>())
        .def_readwrite("alpha", &DeSpec::alpha)
        .def_readwrite("dist", &DeSpec::dist)
        .def_readwrite("framings", &DeSpec::framings)
        .def_readwrite("mu", &DeSpec::mu)
        .def_readwrite("max_iter", &DeSpec::max_iter)
        .def_readwrite("eta", &DeSpec::eta)
        .def_readwrite("error_weights", &DeSpec::error_weights)
        .def_readwrite("zero_error_weight", &DeSpec::zero_error_weight);

    m.def("de_threshold", &de_threshold, py::arg("spec"), py::arg("lo_db") = -2.0,
          py::arg("hi_db") = 12.0, py::arg("tol_db") = 1e-3, gil_off(),
          "smallest SNR (dB) where DE converges, by bisection; NaN when none");
    m.def("de_error_trace", &de_error_trace, py::arg("spec"), py::arg("sigma"), py::arg("iters"),
          gil_off());

    py::class_<MuScanResult>(m, "MuScanResult")
        .def_readonly("mu", &MuScanResult::mu)
        .def_readonly("threshold_db", &MuScanResult::threshold_db)
        .def_readonly("scanned", &MuScanResult::scanned)
        .def("__repr__", [](const MuScanResult& r) {
            std::ostringstream os;
            os << "MuScanResult(threshold_db=" << r.threshold_db << ", mu=" << r.mu << ")";
            return os.str();
        });
    m.def("optimize_mu", &optimize_mu, py::arg("spec"), py::arg("mu_lo") = 1.0,
          py::arg("mu_hi") = 12.0, py::arg("mu_step") = 0.1, py::arg("lo_db") = -2.0,
          py::arg("hi_db") = 12.0, py::arg("tol_db") = 1e-3, py::arg("keep_scan") = false,
          gil_off(), "grid scan over the channel gain, keeping the best threshold");

    // ------------------------------------------------------------ search
    py::class_<SearchEntry>(m, "SearchEntry")
        .def_readonly("f", &SearchEntry::f)
        .def_readonly("threshold_db", &SearchEntry::threshold_db)
        .def_readonly("mu", &SearchEntry::mu)
        .def("__repr__", [](const SearchEntry& e) {
            std::ostringstream os;
            os << "SearchEntry(" << e.f.to_string() << ", threshold_db=" << e.threshold_db
               << ", mu=" << e.mu << ")";
            return os.str();
        });

    auto grid_of = [](double lo, double hi, double step) { return MuGrid{lo, hi, step}; };
    m.def(
        "search_regular",
        [grid_of](const DeSpec& base, int W, double mu_lo, double mu_hi, double mu_step,
                  int threads) {
            py::gil_scoped_release off;
            return search_regular(base, W, grid_of(mu_lo, mu_hi, mu_step), threads);
        },
        py::arg("base"), py::arg("W"), py::arg("mu_lo") = 1.0, py::arg("mu_hi") = 12.0,
        py::arg("mu_step") = 0.1, py::arg("threads") = 1,
        "all weight-W framings, mu-optimized, best first");
    m.def("best_per_lambda", &best_per_lambda, py::arg("ranked"));
    m.def(
        "build_best_uniform_sets",
        [grid_of](const DeSpec& base, const std::map<int, double>& cutoffs_db, double mu_lo,
                  double mu_hi, double mu_step, int threads) {
            py::gil_scoped_release off;
            return build_best_uniform_sets(base, cutoffs_db, grid_of(mu_lo, mu_hi, mu_step),
                                           threads);
        },
        py::arg("base"), py::arg("cutoffs_db"), py::arg("mu_lo") = 1.0, py::arg("mu_hi") = 12.0,
        py::arg("mu_step") = 0.1, py::arg("threads") = 1,
        "U_w sets: storage width -> uniform rules whose threshold is under the cutoff");

    py::class_<IrregularCandidate>(m, "IrregularCandidate")
        .def_readonly("framings", &IrregularCandidate::framings)
        .def_readonly("w_profile", &IrregularCandidate::w_profile)
        .def("ensemble_id", &IrregularCandidate::ensemble_id);
    m.def("count_irregular", &count_irregular, py::arg("usets"), py::arg("degrees"), gil_off(),
          "admissible per-degree assignments under image inclusion; pure combinatorics");
    m.def("list_irregular", &list_irregular, py::arg("usets"), py::arg("degrees"),
          py::arg("limit") = 1000);

    py::class_<EnsembleResult>(m, "EnsembleResult")
        .def_readonly("cand", &EnsembleResult::cand)
        .def_readonly("threshold_db", &EnsembleResult::threshold_db)
        .def_readonly("mu", &EnsembleResult::mu);
    m.def(
        "evaluate_ensemble",
        [grid_of](const DeSpec& base, const std::vector<IrregularCandidate>& cands, double mu_lo,
                  double mu_hi, double mu_step, int threads) {
            py::gil_scoped_release off;
            return evaluate_ensemble(base, cands, grid_of(mu_lo, mu_hi, mu_step), threads);
        },
        py::arg("base"), py::arg("cands"), py::arg("mu_lo") = 1.0, py::arg("mu_hi") = 12.0,
        py::arg("mu_step") = 0.1, py::arg("threads") = 1);

    py::class_<MemoryReduction>(m, "MemoryReduction")
        .def_readonly("vn", &MemoryReduction::vn)
        .def_readonly("cn", &MemoryReduction::cn)
        .def_readonly("cn_compressed", &MemoryReduction::cn_compressed);
    m.def("memory_reduction", &memory_reduction, py::arg("w_by_degree"), py::arg("dist"),
          py::arg("q"), "storage savings vs a q-bit MS baseline, fractions in [0,1]");

    // ------------------------------------------------------------ kernels
    py::class_<LayerSchedule>(m, "LayerSchedule")
        .def_readonly("rpl", &LayerSchedule::rpl)
        .def_readonly("layers", &LayerSchedule::layers)
        .def_readonly("full_flags", &LayerSchedule::full_flags)
        .def_readonly("pipeline_ok", &LayerSchedule::pipeline_ok);

    py::class_<KernelSpec>(m, "KernelSpec")
        .def(py::init<>())
        .def_readwrite("alpha", &KernelSpec::alpha)
        .def_readwrite("framings", &KernelSpec::framings)
        .def_readwrite("mu", &KernelSpec::mu)
        .def_readwrite("schedule", &KernelSpec::schedule)
        .def_readwrite("layers", &KernelSpec::layers)
        .def_readwrite("cn_storage", &KernelSpec::cn_storage)
        .def_readwrite("tie_mode", &KernelSpec::tie_mode)
        .def_readwrite("max_iter", &KernelSpec::max_iter)
        .def_readwrite("early_exit", &KernelSpec::early_exit);

    py::class_<KernelConfig>(m, "KernelConfig")
        .def_readonly("alpha", &KernelConfig::alpha)
        .def_readonly("mu", &KernelConfig::mu)
        .def_readonly("schedule", &KernelConfig::schedule)
        .def_readonly("rpl", &KernelConfig::rpl)
        .def_readonly("cn_storage", &KernelConfig::cn_storage)
        .def_readonly("tie_mode", &KernelConfig::tie_mode)
        .def_readonly("max_iter", &KernelConfig::max_iter)
        .def_readonly("luts", &KernelConfig::luts);
    m.def("load_kernel_config", &load_kernel_config, py::arg("path"));
    m.def("parse_kernel_config", py::overload_cast<const std::string&>(&parse_kernel_config),
          py::arg("text"));
    m.def("make_kernel", &make_kernel, py::arg("config"), py::arg("code"),
          "resolve per-degree framings against the code and build the layer grouping");

    // ----------------------------------------------------------- decoding
    py::class_<DecodeResult>(m, "DecodeResult")
        .def_readonly("bits", &DecodeResult::bits)
        .def_readonly("iterations_used", &DecodeResult::iterations_used)
        .def_readonly("converged", &DecodeResult::converged)
        .def_readonly("ap_trace", &DecodeResult::ap_trace);

    py::class_<Decoder>(m, "Decoder")
        .def(py::init<const QcCode&, KernelSpec>(), py::arg("code"), py::arg("spec"))
        .def(
            "decode",
            [](const Decoder& d, const std::vector<int>& llrs, bool record_trace,
               std::optional<std::uint64_t> tie_seed) {
                py::gil_scoped_release off;
                if (tie_seed) {
                    Rng rng(*tie_seed);
                    return d.decode(llrs, record_trace, &rng);
                }
                return d.decode(llrs, record_trace, nullptr);
            },
            py::arg("llrs"), py::arg("record_trace") = false, py::arg("tie_seed") = py::none(),
            "tie_seed is required iff the kernel uses randomized ties");

    // ---------------------------------------------------------- simulation
    py::class_<StoppingRule>(m, "StoppingRule")
        .def(py::init<>())
        .def_readwrite("min_frame_errors", &StoppingRule::min_frame_errors)
        .def_readwrite("max_frames", &StoppingRule::max_frames);

    py::class_<SimPlan>(m, "SimPlan")
        .def(py::init<>())
        .def_readwrite("code", &SimPlan::code)
        .def_readwrite("kernel", &SimPlan::kernel)
        .def_readwrite("snrs_db", &SimPlan::snrs_db)
        .def_readwrite("stop", &SimPlan::stop)
        .def_readwrite("seed", &SimPlan::seed)
        .def_readwrite("threads", &SimPlan::threads);

    py::class_<BerPoint>(m, "BerPoint")
        .def_readonly("snr_db", &BerPoint::snr_db)
        .def_readonly("frames", &BerPoint::frames)
        .def_readonly("bit_errors", &BerPoint::bit_errors)
        .def_readonly("frame_errors", &BerPoint::frame_errors)
        .def_readonly("ber", &BerPoint::ber)
        .def_readonly("fer", &BerPoint::fer)
        .def_readonly("avg_iters", &BerPoint::avg_iters)
        .def("__repr__", [](const BerPoint& p) {
            std::ostringstream os;
            os << "BerPoint(snr_db=" << p.snr_db << ", ber=" << p.ber << ", fer=" << p.fer
               << ", frames=" << p.frames << ")";
            return os.str();
        });

    py::class_<Gf2Encoder>(m, "Gf2Encoder")
        .def(py::init<const TannerGraph&>(), py::arg("graph"))
        .def("n", &Gf2Encoder::n)
        .def("data_bits", &Gf2Encoder::data_bits)
        .def("encode", &Gf2Encoder::encode, py::arg("data"));

    m.def("run", &run, py::arg("plan"), gil_off(),
          "all-zero-codeword Monte-Carlo; deterministic for a given seed");
    m.def("run_random_codewords", &run_random_codewords, py::arg("plan"), py::arg("encoder"),
          gil_off());
    m.def("csv_string", &csv_string, py::arg("points"));

    // ------------------------------------------------------------ schedule
    m.def("throughput_bps", &throughput_bps, py::arg("n_bits"), py::arg("f_hz"),
          py::arg("layers"), py::arg("n_iter"), py::arg("variant"));
    m.def("throughput_mbps", &throughput_mbps, py::arg("n_bits"), py::arg("f_mhz"),
          py::arg("layers"), py::arg("n_iter"), py::arg("variant"),
          "integer Mbps, floored: N * f / (delta + L * n_iter)");

    py::class_<PipelineCheck>(m, "PipelineCheck")
        .def_readonly("ok", &PipelineCheck::ok)
        .def_property_readonly("violations", [](const PipelineCheck& c) {
            std::vector<std::tuple<int, int, int>> out;
            for (const auto& v : c.violations)
                out.emplace_back(v.first_row, v.second_row, v.column);
            return out;
        });
    m.def("check_pipeline", &check_pipeline, py::arg("code"), py::arg("row_order"));

    py::class_<VnuMapping>(m, "VnuMapping")
        .def_readonly("slots", &VnuMapping::slots)
        .def_readonly("assignment", &VnuMapping::assignment)
        .def_readonly("slot_degrees", &VnuMapping::slot_degrees)
        .def_readonly("slot_functions", &VnuMapping::slot_functions)
        .def_readonly("multi_function_slots", &VnuMapping::multi_function_slots)
        .def_readonly("total_functions", &VnuMapping::total_functions)
        .def("cost", &VnuMapping::cost);
    m.def("naive_vnu_mapping", &naive_vnu_mapping, py::arg("code"), py::arg("row_order"),
          py::arg("framings"));
    m.def("optimize_vnu_mapping", &optimize_vnu_mapping, py::arg("code"), py::arg("row_order"),
          py::arg("framings"), gil_off(),
          "exhaustive per-layer assignment minimizing (multi-function slots, total functions)");
}
