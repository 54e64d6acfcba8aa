// Command-line front end: thresholds, design-space search, Monte-Carlo
// simulation, schedule analysis, framing enumeration.
//
// Exit codes: 0 success, 1 runtime failure, 2 unknown flag, 3 invalid config.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nsfaid/density_evolution.hpp"
#include "nsfaid/kernel_config.hpp"
#include "nsfaid/qc.hpp"
#include "nsfaid/schedule.hpp"
#include "nsfaid/search.hpp"
#include "nsfaid/simulate.hpp"

using nlohmann::json;
using namespace nsfaid;

namespace {

int default_threads() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

std::string db3(double x) {
    char b[32];
    std::snprintf(b, sizeof b, "%.3f", x);
    return b;
}

std::string pct2(double x) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2f", x);
    return b;
}

std::string mu_str(double mu) {
    char b[32];
    std::snprintf(b, sizeof b, "%g", mu);
    return b;
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    auto path = std::filesystem::path(dir) / name;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    return os;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw std::invalid_argument("empty entry in list: " + s);
        out.push_back(std::stoi(tok));
    }
    return out;
}

// "lo:step:hi" (inclusive) or a plain comma list.
std::vector<double> parse_snr_list(const std::string& s) {
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        double lo, step, hi;
        char c1, c2;
        std::stringstream ss(s);
        if (!(ss >> lo >> c1 >> step >> c2 >> hi) || c1 != ':' || c2 != ':')
            throw std::invalid_argument("SNR range must be lo:step:hi");
        if (step <= 0) throw std::invalid_argument("SNR step must be positive");
        for (double v = lo; v <= hi + step * 1e-9; v += step) out.push_back(v);
        return out;
    }
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

// ---- shared DE-spec assembly ------------------------------------------------

struct DeInputs {
    std::string code_file;
    std::string kernel_file;
    std::string dist;                 // "dv,dc"
    std::string lut;                  // one LUT for every degree
    std::vector<std::string> lut_deg; // "degree=[...]"
    int q = 4, q_tilde = 6;
    double eta = 1e-6;
    int max_iter = 2000;
};

// Builds the DE spec. A code file fixes the degree mix and restricts the
// error measure to the systematic columns (that is the error rate the
// reported irregular thresholds refer to); a bare dv,dc pair uses the
// all-node measure.
DeSpec build_de_spec(const DeInputs& in, double* mu_from_kernel = nullptr) {
    DeSpec spec;
    spec.alpha = Alphabet{in.q, in.q_tilde};

    std::map<int, FramingFunction> per_degree;
    std::optional<FramingFunction> any_degree;
    if (!in.kernel_file.empty()) {
        KernelConfig cfg = load_kernel_config(in.kernel_file);
        spec.alpha = cfg.alpha;
        per_degree = cfg.luts;
        any_degree = cfg.default_lut;
        if (mu_from_kernel) *mu_from_kernel = cfg.mu;
    }
    if (!in.lut.empty()) any_degree = FramingFunction::parse(in.lut);
    for (const auto& s : in.lut_deg) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--lut-deg expects degree=[...]");
        per_degree.insert_or_assign(std::stoi(s.substr(0, eq)),
                                    FramingFunction::parse(s.substr(eq + 1)));
    }

    if (!in.code_file.empty()) {
        QcCode code = load_code(in.code_file);
        spec.dist = degree_distributions(code);
        spec.error_weights = info_bit_degree_weights(code);
    } else if (!in.dist.empty()) {
        auto dd = parse_int_list(in.dist);
        if (dd.size() != 2) throw std::invalid_argument("--dist expects dv,dc");
        spec.dist = DegreeDistribution::regular(dd[0], dd[1]);
    } else {
        throw std::invalid_argument("need --code or --dist");
    }

    for (int d = 1; d < static_cast<int>(spec.dist.lambda.size()); ++d) {
        if (spec.dist.lambda[d] <= 0.0) continue;
        auto it = per_degree.find(d);
        if (it != per_degree.end())
            spec.framings.emplace(d, it->second);
        else if (any_degree)
            spec.framings.emplace(d, *any_degree);
        else
            throw std::invalid_argument("no LUT for degree " + std::to_string(d));
    }
    spec.eta = in.eta;
    spec.max_iter = in.max_iter;
    spec.validate();
    return spec;
}

json lut_json(const std::map<int, FramingFunction>& fs) {
    json j = json::object();
    for (const auto& [d, f] : fs) j[std::to_string(d)] = f.to_string();
    return j;
}

// ---- de-threshold -----------------------------------------------------------

struct DeThresholdOpts {
    DeInputs in;
    double mu = 0.0;
    bool mu_set = false;
    bool opt_mu = false;
    MuGrid grid;
    std::string out_dir;
};

int cmd_de_threshold(const DeThresholdOpts& o) {
    double kernel_mu = 0.0;
    DeSpec spec = build_de_spec(o.in, &kernel_mu);

    double th, mu;
    if (!o.opt_mu && (o.mu_set || !o.in.kernel_file.empty())) {
        mu = o.mu_set ? o.mu : kernel_mu;
        spec.mu = mu;
        th = de_threshold(spec);
    } else {
        auto r = optimize_mu(spec, o.grid.lo, o.grid.hi, o.grid.step);
        th = r.threshold_db;
        mu = r.mu;
    }

    if (std::isnan(th))
        std::cout << "threshold = none (no convergence up to 12 dB)\n";
    else
        std::cout << "threshold = " << db3(th) << " dB  (mu = " << mu_str(mu) << ")\n";

    if (!o.out_dir.empty()) {
        json j{{"threshold_db", th},
               {"mu", mu},
               {"eta", spec.eta},
               {"max_iter", spec.max_iter},
               {"luts", lut_json(spec.framings)}};
        open_out(o.out_dir, "de_threshold.json") << j.dump(2) << "\n";
    }
    return 0;
}

// ---- search-regular ---------------------------------------------------------

struct SearchRegularOpts {
    DeInputs in;
    int w = 0;      // storage width; weight = 2^(w-1)
    int weight = 0; // exact weight, overrides --w
    int top = 10;
    bool per_lambda = false;
    MuGrid grid;
    int threads = default_threads();
    std::string out_dir;
};

int cmd_search_regular(const SearchRegularOpts& o) {
    if (o.w <= 0 && o.weight <= 0) throw std::invalid_argument("need --w or --weight");
    DeInputs in = o.in;
    // The search replaces the framings anyway; identity just satisfies
    // validation for every active degree.
    in.lut = FramingFunction::identity(Alphabet{in.q, in.q_tilde}.Q()).to_string();
    in.lut_deg.clear();
    DeSpec base = build_de_spec(in);

    int W = o.weight ? o.weight : (1 << (o.w - 1));
    auto ranked = search_regular(base, W, o.grid, o.threads);

    auto print_row = [](const SearchEntry& e) {
        std::cout << "  " << e.f.to_string() << "  w=" << e.f.bit_length();
        if (std::isnan(e.threshold_db))
            std::cout << "  threshold=none\n";
        else
            std::cout << "  threshold=" << db3(e.threshold_db) << " dB  mu=" << mu_str(e.mu)
                      << "\n";
    };

    std::cout << "candidates: " << ranked.size() << " (weight " << W << ")\n";
    int shown = 0;
    for (const auto& e : ranked) {
        if (o.top > 0 && shown >= o.top) break;
        print_row(e);
        ++shown;
    }
    if (o.per_lambda) {
        std::cout << "best per |F(0)|:\n";
        for (const auto& [lam, e] : best_per_lambda(ranked)) {
            std::cout << "  |F(0)|=" << lam;
            print_row(e);
        }
    }

    if (!o.out_dir.empty()) {
        auto csv = open_out(o.out_dir, "regular_search.csv");
        csv << "lut,w,lambda,threshold_db,mu\n";
        for (const auto& e : ranked) {
            csv << '"' << e.f.to_string() << "\"," << e.f.bit_length() << "," << e.f.lambda()
                << ",";
            if (std::isnan(e.threshold_db))
                csv << ",";
            else
                csv << db3(e.threshold_db) << "," << mu_str(e.mu);
            csv << "\n";
        }
    }
    return 0;
}

// ---- search-irregular -------------------------------------------------------

struct SearchIrregularOpts {
    std::string code_file;
    int q = 4, q_tilde = 6;
    double eta = 1e-6;
    std::vector<std::string> cutoffs; // "w=dB"
    bool count_only = false;
    bool full_eval = false; // DE on every admissible candidate: long!
    std::uint64_t limit = 0;
    MuGrid grid;
    int threads = default_threads();
    std::string out_dir;
};

int cmd_search_irregular(const SearchIrregularOpts& o) {
    if (o.code_file.empty()) throw std::invalid_argument("search-irregular needs --code");
    QcCode code = load_code(o.code_file);

    DeSpec base;
    base.alpha = Alphabet{o.q, o.q_tilde};
    base.dist = degree_distributions(code);
    base.error_weights = info_bit_degree_weights(code);
    base.eta = o.eta;

    std::map<int, double> cutoffs = {{2, 5.0}, {3, 3.0}, {4, 3.0}};
    if (!o.cutoffs.empty()) {
        cutoffs.clear();
        for (const auto& s : o.cutoffs) {
            auto eq = s.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("--cutoff expects w=dB");
            cutoffs[std::stoi(s.substr(0, eq))] = std::stod(s.substr(eq + 1));
        }
    }

    auto usets = build_best_uniform_sets(base, cutoffs, o.grid, o.threads);
    for (const auto& [w, set] : usets)
        std::cout << "|U_" << w << "| (cutoff " << pct2(cutoffs.at(w)) << " dB) = " << set.size()
                  << "\n";

    std::vector<int> degrees;
    for (int d = 1; d < static_cast<int>(base.dist.lambda.size()); ++d)
        if (base.dist.lambda[d] > 0.0) degrees.push_back(d);
    std::uint64_t total = count_irregular(usets, degrees);
    std::cout << "admissible irregular assignments: " << total << "\n";

    json out{{"usets", json::object()}, {"admissible", total}};
    for (const auto& [w, set] : usets) {
        json arr = json::array();
        for (const auto& e : set)
            arr.push_back({{"lut", e.f.to_string()},
                           {"threshold_db", e.threshold_db},
                           {"mu", e.mu}});
        out["usets"][std::to_string(w)] = std::move(arr);
    }

    if (!o.count_only && o.full_eval) {
        // Baseline for the gain column: mu-optimized MS on the same code.
        DeSpec ms = base;
        FramingFunction id = FramingFunction::identity(base.alpha.Q());
        for (int d : degrees) ms.framings.emplace(d, id);
        auto ms_opt = optimize_mu(ms, o.grid.lo, o.grid.hi, o.grid.step);
        std::cout << "MS baseline: " << db3(ms_opt.threshold_db) << " dB (mu = "
                  << mu_str(ms_opt.mu) << ")\n";

        struct LimitReached {};
        std::map<std::string, EnsembleResult> best;
        std::uint64_t seen = 0;
        bool stopped = false;
        try {
            for_each_irregular(usets, degrees, [&](const IrregularCandidate& cand) {
                if (o.limit && seen >= o.limit) throw LimitReached{};
                ++seen;
                DeSpec s = base;
                s.framings = cand.framings;
                auto r = optimize_mu(s, o.grid.lo, o.grid.hi, o.grid.step);
                if (std::isnan(r.threshold_db)) return;
                auto id = cand.ensemble_id();
                auto it = best.find(id);
                if (it == best.end() || r.threshold_db < it->second.threshold_db)
                    best[id] = EnsembleResult{cand, r.threshold_db, r.mu};
                if (seen % 1000 == 0)
                    std::cerr << "evaluated " << seen << " / " << total << "\r";
            });
        } catch (const LimitReached&) {
            stopped = true;
        }
        std::cout << "evaluated " << seen << " candidate(s)" << (stopped ? " (limit)" : "")
                  << "\n";

        json recs = json::array();
        for (const auto& [id, r] : best) {
            auto mem = memory_reduction(r.cand.w_profile, base.dist, base.alpha.q);
            std::cout << "ensemble " << id << ": " << db3(r.threshold_db) << " dB (mu = "
                      << mu_str(r.mu) << ", gain " << db3(ms_opt.threshold_db - r.threshold_db)
                      << " dB, VN mem -" << pct2(100.0 * mem.vn) << "%)\n";
            recs.push_back({{"w_profile", r.cand.ensemble_id()},
                            {"luts", lut_json(r.cand.framings)},
                            {"threshold_db", r.threshold_db},
                            {"mu", r.mu},
                            {"gain_vs_ms_db", ms_opt.threshold_db - r.threshold_db},
                            {"mem_vn", 100.0 * mem.vn},
                            {"mem_cn_u", 100.0 * mem.cn},
                            {"mem_cn_c", 100.0 * mem.cn_compressed}});
        }
        out["ensembles"] = std::move(recs);
    }

    if (!o.out_dir.empty()) {
        open_out(o.out_dir, "irregular_search.json") << out.dump(2) << "\n";
        auto csv = open_out(o.out_dir, "usets.csv");
        csv << "w,lut,threshold_db,mu\n";
        for (const auto& [w, set] : usets)
            for (const auto& e : set)
                csv << w << ",\"" << e.f.to_string() << "\"," << db3(e.threshold_db) << ","
                    << mu_str(e.mu) << "\n";
    }
    return 0;
}

// ---- simulate ---------------------------------------------------------------

struct SimulateOpts {
    std::string code_file, kernel_file, snr;
    std::uint64_t seed = 1;
    int threads = default_threads();
    long long min_frame_errors = 100;
    long long max_frames = 10'000'000;
    bool random_data = false;
    std::string out_dir;
};

int cmd_simulate(const SimulateOpts& o) {
    if (o.code_file.empty() || o.kernel_file.empty())
        throw std::invalid_argument("simulate needs --code and --kernel");
    SimPlan plan;
    plan.code = load_code(o.code_file);
    plan.kernel = make_kernel(load_kernel_config(o.kernel_file), plan.code);
    plan.snrs_db = parse_snr_list(o.snr);
    plan.stop = StoppingRule{o.min_frame_errors, o.max_frames};
    plan.seed = o.seed;
    plan.threads = o.threads;
    plan.validate();

    std::vector<BerPoint> points;
    if (o.random_data) {
        Gf2Encoder enc(expand(plan.code));
        points = run_random_codewords(plan, enc);
    } else {
        points = run(plan);
    }

    write_csv(std::cout, points);
    if (!o.out_dir.empty()) {
        auto csv = open_out(o.out_dir, "ber.csv");
        write_csv(csv, points);
    }
    return 0;
}

// ---- analyze-schedule -------------------------------------------------------

struct AnalyzeScheduleOpts {
    std::string code_file, kernel_file;
    std::string row_order; // comma list, or "auto"
    int rpl = 1;
    std::string arch = "pipelined";
    int n_iter = 20;
    std::string f_mhz = "200";
    std::string out_dir;
};

int cmd_analyze_schedule(const AnalyzeScheduleOpts& o) {
    if (o.code_file.empty()) throw std::invalid_argument("analyze-schedule needs --code");
    QcCode code = load_code(o.code_file);

    std::vector<int> order;
    if (o.row_order == "auto") {
        auto found = find_pipeline_row_order(code);
        if (!found) throw std::runtime_error("no pipeline-compatible row order exists");
        order = *found;
    } else if (!o.row_order.empty()) {
        order = parse_int_list(o.row_order);
    }

    std::ostringstream report;
    auto chk = check_pipeline(code, order);
    report << "row order:";
    if (order.empty())
        report << " identity";
    else
        for (int r : order) report << " " << r;
    report << "\npipeline: " << (chk.ok ? "ok" : "violations") << "\n";
    for (const auto& v : chk.violations)
        report << "  rows " << v.first_row << "," << v.second_row << " share column " << v.column
               << "\n";

    // Framing mix for the VNU mapping; no kernel file = plain MS.
    std::map<int, FramingFunction> framings;
    if (!o.kernel_file.empty()) {
        KernelConfig cfg = load_kernel_config(o.kernel_file);
        KernelSpec ks = make_kernel(cfg, code);
        framings = ks.framings;
    } else {
        FramingFunction id = FramingFunction::identity(7);
        for (int c = 0; c < code.cols; ++c) framings.emplace(code.col_degree(c), id);
    }

    if (o.rpl == 1) {
        auto naive = naive_vnu_mapping(code, order, framings);
        auto best = optimize_vnu_mapping(code, order, framings);
        auto [nm, nt] = naive.cost();
        auto [bm, bt] = best.cost();
        report << "vnu mapping (" << best.slots << " slots):\n";
        report << "  column-order cost: " << nm << " multi-function slot(s), " << nt
               << " function instance(s)\n";
        report << "  optimized cost:    " << bm << " multi-function slot(s), " << bt
               << " function instance(s)\n";

        // Distinct framings get compact ids for the per-layer table.
        std::vector<FramingFunction> distinct;
        auto fid = [&](const FramingFunction& f) {
            for (std::size_t i = 0; i < distinct.size(); ++i)
                if (distinct[i] == f) return static_cast<int>(i) + 1;
            distinct.push_back(f);
            return static_cast<int>(distinct.size());
        };
        for (const auto& [d, f] : framings) fid(f);
        report << "  framings:";
        for (std::size_t i = 0; i < distinct.size(); ++i)
            report << " F" << i + 1 << "=" << distinct[i].to_string();
        report << "\n  layer |";
        for (int s = 0; s < best.slots; ++s) report << "  slot" << s + 1;
        report << "\n";
        for (std::size_t l = 0; l < best.assignment.size(); ++l) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "  %3zu  |", l);
            report << buf;
            for (int s = 0; s < best.slots; ++s) {
                int col = best.assignment[l][s];
                if (col < 0) {
                    report << "      -";
                    continue;
                }
                std::snprintf(buf, sizeof buf, " c%02d:F%d", col,
                              fid(framings.at(code.col_degree(col))));
                report << buf;
            }
            report << "\n";
        }
    } else {
        report << "vnu mapping: skipped (defined for one row per layer)\n";
    }

    LayerSchedule sched = order.empty() ? group_layers(code, o.rpl)
                                        : group_layers(code, o.rpl, order);
    ArchVariant variant;
    if (o.arch == "pipelined")
        variant = ArchVariant::Pipelined;
    else if (o.arch == "full-layer")
        variant = ArchVariant::FullLayer;
    else
        throw std::invalid_argument("--arch must be pipelined or full-layer");

    std::ostringstream tput;
    tput << "f_mhz,n_bits,layers,n_iter,arch,mbps\n";
    std::stringstream fss(o.f_mhz);
    std::string tok;
    int L = static_cast<int>(sched.layers.size());
    while (std::getline(fss, tok, ',')) {
        long long f = std::stoll(tok);
        long long mbps = throughput_mbps(code.n(), f, L, o.n_iter, variant);
        tput << f << "," << code.n() << "," << L << "," << o.n_iter << "," << o.arch << ","
             << mbps << "\n";
    }

    std::cout << report.str() << tput.str();
    if (!o.out_dir.empty()) {
        open_out(o.out_dir, "schedule.txt") << report.str();
        open_out(o.out_dir, "throughput.csv") << tput.str();
    }
    return 0;
}

// ---- enumerate-framings -----------------------------------------------------

struct EnumerateOpts {
    int q = 4;
    int w = 0;
    int weight = 0;
    bool count_only = false;
    std::string out_dir;
};

int cmd_enumerate(const EnumerateOpts& o) {
    Alphabet alpha{o.q, o.q + 2};
    alpha.validate();
    int Q = alpha.Q();
    if (o.w <= 0 && o.weight <= 0) throw std::invalid_argument("need --w or --weight");
    int W = o.weight ? o.weight : (1 << (o.w - 1));
    if (W < 1 || W > Q + 1) throw std::invalid_argument("weight out of range");

    if (o.count_only) {
        std::cout << count_framings(Q, W) << "\n";
        return 0;
    }
    std::optional<std::ofstream> file;
    if (!o.out_dir.empty()) file = open_out(o.out_dir, "framings.txt");
    std::ostream& os = file ? *file : std::cout;
    for_each_framing(Q, W, [&](const FramingFunction& f) { os << f.to_string() << "\n"; });
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"NS-FAID design and analysis toolkit"};
    app.require_subcommand(1);

    DeThresholdOpts th;
    auto* s_th = app.add_subcommand("de-threshold", "Noise threshold by density evolution");
    s_th->add_option("--code", th.in.code_file, "code file (.bm or .alist)");
    s_th->add_option("--kernel", th.in.kernel_file, "kernel config file");
    s_th->add_option("--dist", th.in.dist, "regular degree pair dv,dc");
    s_th->add_option("--lut", th.in.lut, "framing LUT [l0,...,lQ] for every degree");
    s_th->add_option("--lut-deg", th.in.lut_deg, "per-degree LUT, degree=[...]")
        ->take_all();
    s_th->add_option("--q", th.in.q, "message bits");
    s_th->add_option("--q-tilde", th.in.q_tilde, "a-posteriori bits");
    s_th->add_option("--eta", th.in.eta, "target error probability (0 = vanishing)");
    s_th->add_option("--max-iter", th.in.max_iter, "DE iteration cap");
    s_th->add_option("--mu", th.mu, "channel gain factor")->each([&](const std::string&) {
        th.mu_set = true;
    });
    s_th->add_flag("--opt-mu", th.opt_mu, "scan the mu grid for the best threshold");
    s_th->add_option("--mu-lo", th.grid.lo);
    s_th->add_option("--mu-hi", th.grid.hi);
    s_th->add_option("--mu-step", th.grid.step);
    s_th->add_option("--out", th.out_dir, "artifact directory");

    SearchRegularOpts sr;
    sr.in.dist = "3,6";
    auto* s_sr = app.add_subcommand("search-regular", "Rank all framings of one weight class");
    s_sr->add_option("--dist", sr.in.dist, "regular degree pair dv,dc")->capture_default_str();
    s_sr->add_option("--code", sr.in.code_file, "code file (degree mix + info-bit measure)");
    s_sr->add_option("--q", sr.in.q);
    s_sr->add_option("--q-tilde", sr.in.q_tilde);
    s_sr->add_option("--eta", sr.in.eta);
    s_sr->add_option("--max-iter", sr.in.max_iter);
    s_sr->add_option("--w", sr.w, "storage width (weight 2^(w-1))");
    s_sr->add_option("--weight", sr.weight, "exact weight W (overrides --w)");
    s_sr->add_option("--top", sr.top, "rows to print (0 = all)");
    s_sr->add_flag("--per-lambda", sr.per_lambda, "also print the best entry per |F(0)|");
    s_sr->add_option("--mu-lo", sr.grid.lo);
    s_sr->add_option("--mu-hi", sr.grid.hi);
    s_sr->add_option("--mu-step", sr.grid.step);
    s_sr->add_option("--threads", sr.threads);
    s_sr->add_option("--out", sr.out_dir, "artifact directory");

    SearchIrregularOpts si;
    auto* s_si = app.add_subcommand("search-irregular",
                                    "U-sets, admissible-candidate count, optional DE sweep");
    s_si->add_option("--code", si.code_file, "code file")->required();
    s_si->add_option("--q", si.q);
    s_si->add_option("--q-tilde", si.q_tilde);
    s_si->add_option("--eta", si.eta);
    s_si->add_option("--cutoff", si.cutoffs, "U-set cutoff w=dB (default 2=5, 3=3, 4=3)")
        ->take_all();
    s_si->add_flag("--count-only", si.count_only, "stop after the combinatorial count");
    s_si->add_flag("--full-eval", si.full_eval,
                   "DE-evaluate every admissible candidate (days of CPU unless --limit)");
    s_si->add_option("--limit", si.limit, "cap on evaluated candidates (0 = all)");
    s_si->add_option("--mu-lo", si.grid.lo);
    s_si->add_option("--mu-hi", si.grid.hi);
    s_si->add_option("--mu-step", si.grid.step);
    s_si->add_option("--threads", si.threads);
    s_si->add_option("--out", si.out_dir, "artifact directory");

    SimulateOpts sim;
    auto* s_sim = app.add_subcommand("simulate", "Monte-Carlo BER/FER over BPSK-AWGN");
    s_sim->add_option("--code", sim.code_file, "code file")->required();
    s_sim->add_option("--kernel", sim.kernel_file, "kernel config file")->required();
    s_sim->add_option("--snr", sim.snr, "SNR dB list: lo:step:hi or comma list")->required();
    s_sim->add_option("--seed", sim.seed);
    s_sim->add_option("--threads", sim.threads);
    s_sim->add_option("--min-frame-errors", sim.min_frame_errors);
    s_sim->add_option("--max-frames", sim.max_frames);
    s_sim->add_flag("--random-data", sim.random_data,
                    "encode random data instead of the all-zero codeword");
    s_sim->add_option("--out", sim.out_dir, "artifact directory");

    AnalyzeScheduleOpts an;
    auto* s_an = app.add_subcommand("analyze-schedule",
                                    "Pipeline check, VNU mapping, throughput table");
    s_an->add_option("--code", an.code_file, "code file")->required();
    s_an->add_option("--kernel", an.kernel_file, "kernel config (framings for the mapping)");
    s_an->add_option("--row-order", an.row_order, "comma list of base rows, or 'auto'");
    s_an->add_option("--rpl", an.rpl, "rows per layer");
    s_an->add_option("--arch", an.arch, "pipelined (delta=1) or full-layer (delta=0)");
    s_an->add_option("--n-iter", an.n_iter, "decoding iterations");
    s_an->add_option("--f-mhz", an.f_mhz, "clock frequencies, comma list (MHz)");
    s_an->add_option("--out", an.out_dir, "artifact directory");

    EnumerateOpts en;
    auto* s_en = app.add_subcommand("enumerate-framings", "List or count one weight class");
    s_en->add_option("--q", en.q, "message bits");
    s_en->add_option("--w", en.w, "storage width (weight 2^(w-1))");
    s_en->add_option("--weight", en.weight, "exact weight W (overrides --w)");
    s_en->add_flag("--count-only", en.count_only);
    s_en->add_option("--out", en.out_dir, "artifact directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ExtrasError& e) {
        app.exit(e);
        return 2;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        // Unmatched --flags surface as leftovers even when another parse
        // error (say, a missing subcommand) fires first.
        for (const auto& r : app.remaining(true))
            if (!r.empty() && r.front() == '-') return 2;
        return 3;
    }

    try {
        if (s_th->parsed()) return cmd_de_threshold(th);
        if (s_sr->parsed()) return cmd_search_regular(sr);
        if (s_si->parsed()) return cmd_search_irregular(si);
        if (s_sim->parsed()) return cmd_simulate(sim);
        if (s_an->parsed()) return cmd_analyze_schedule(an);
        if (s_en->parsed()) return cmd_enumerate(en);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
