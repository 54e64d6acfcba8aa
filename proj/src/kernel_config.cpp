#include "nsfaid/kernel_config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nsfaid {

namespace {

std::string strip(std::string s) {
    auto pos = s.find('#');
    if (pos != std::string::npos)
        s.erase(pos);
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(int line, const std::string& what) {
    throw std::invalid_argument("kernel config line " + std::to_string(line) + ": " + what);
}

int to_int(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        int x = std::stoi(v, &used);
        if (used != v.size())
            bad(line, "not an integer: " + v);
        return x;
    } catch (const std::invalid_argument&) {
        bad(line, "not an integer: " + v);
    } catch (const std::out_of_range&) {
        bad(line, "integer out of range: " + v);
    }
}

double to_double(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        double x = std::stod(v, &used);
        if (used != v.size())
            bad(line, "not a number: " + v);
        return x;
    } catch (const std::invalid_argument&) {
        bad(line, "not a number: " + v);
    } catch (const std::out_of_range&) {
        bad(line, "number out of range: " + v);
    }
}

} // namespace

KernelConfig parse_kernel_config(std::istream& in) {
    KernelConfig cfg;
    std::set<std::string> seen;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = strip(raw);
        if (s.empty())
            continue;
        auto eq = s.find('=');
        if (eq == std::string::npos)
            bad(line, "expected key = value");
        std::string key = strip(s.substr(0, eq));
        std::string val = strip(s.substr(eq + 1));
        if (key.empty() || val.empty())
            bad(line, "expected key = value");
        if (!seen.insert(key).second)
            bad(line, "duplicate key " + key);

        if (key == "q") {
            cfg.alpha.q = to_int(val, line);
        } else if (key == "q_tilde") {
            cfg.alpha.q_tilde = to_int(val, line);
        } else if (key == "mu") {
            cfg.mu = to_double(val, line);
        } else if (key == "rpl") {
            cfg.rpl = to_int(val, line);
        } else if (key == "max_iter") {
            cfg.max_iter = to_int(val, line);
        } else if (key == "schedule") {
            if (val == "flooding")
                cfg.schedule = Schedule::Flooding;
            else if (val == "layered")
                cfg.schedule = Schedule::Layered;
            else
                bad(line, "schedule must be flooding or layered");
        } else if (key == "cn_storage") {
            if (val == "uncompressed")
                cfg.cn_storage = CnStorage::Uncompressed;
            else if (val == "compressed")
                cfg.cn_storage = CnStorage::Compressed;
            else
                bad(line, "cn_storage must be uncompressed or compressed");
        } else if (key == "tie_mode") {
            if (val == "always_positive")
                cfg.tie_mode = TieMode::AlwaysPositive;
            else if (val == "randomized")
                cfg.tie_mode = TieMode::Randomized;
            else
                bad(line, "tie_mode must be always_positive or randomized");
        } else if (key == "lut") {
            try {
                cfg.default_lut = FramingFunction::parse(val);
            } catch (const std::exception& e) {
                bad(line, e.what());
            }
        } else if (key.rfind("lut.", 0) == 0) {
            int d = to_int(key.substr(4), line);
            if (d < 1)
                bad(line, "lut degree must be >= 1");
            try {
                cfg.luts.emplace(d, FramingFunction::parse(val));
            } catch (const std::exception& e) {
                bad(line, e.what());
            }
        } else {
            bad(line, "unknown key " + key);
        }
    }

    cfg.alpha.validate();
    if (cfg.mu <= 0.0)
        throw std::invalid_argument("kernel config: mu must be positive");
    if (cfg.max_iter < 1)
        throw std::invalid_argument("kernel config: max_iter must be >= 1");
    if (cfg.rpl < 1)
        throw std::invalid_argument("kernel config: rpl must be >= 1");
    auto check_q = [&](const FramingFunction& f) {
        if (f.Q() != cfg.alpha.Q())
            throw std::invalid_argument("kernel config: LUT length must be Q+1 = " +
                                        std::to_string(cfg.alpha.Q() + 1));
    };
    if (cfg.default_lut)
        check_q(*cfg.default_lut);
    for (const auto& [d, f] : cfg.luts)
        check_q(f);
    if (!cfg.default_lut && cfg.luts.empty())
        throw std::invalid_argument("kernel config: no LUT given");
    return cfg;
}

KernelConfig parse_kernel_config(const std::string& text) {
    std::istringstream in(text);
    return parse_kernel_config(in);
}

KernelConfig load_kernel_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open kernel config " + path);
    return parse_kernel_config(in);
}

KernelSpec make_kernel(const KernelConfig& cfg, const QcCode& code) {
    KernelSpec spec;
    spec.alpha = cfg.alpha;
    spec.mu = cfg.mu;
    spec.schedule = cfg.schedule;
    spec.cn_storage = cfg.cn_storage;
    spec.tie_mode = cfg.tie_mode;
    spec.max_iter = cfg.max_iter;
    std::set<int> degrees;
    for (int c = 0; c < code.cols; ++c)
        degrees.insert(code.col_degree(c));
    for (int d : degrees) {
        auto it = cfg.luts.find(d);
        if (it != cfg.luts.end())
            spec.framings.emplace(d, it->second);
        else if (cfg.default_lut)
            spec.framings.emplace(d, *cfg.default_lut);
        else
            throw std::invalid_argument("kernel config: no LUT for degree " + std::to_string(d));
    }
    if (cfg.schedule == Schedule::Layered)
        spec.layers = group_layers(code, cfg.rpl);
    return spec;
}

} // namespace nsfaid
