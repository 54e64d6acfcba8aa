#ifndef NSFAID_KERNEL_CONFIG_HPP
#define NSFAID_KERNEL_CONFIG_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "nsfaid/decoder.hpp"

namespace nsfaid {

/// Parsed kernel description, not yet bound to a code. Keys:
///   q, q_tilde, mu, schedule (flooding|layered), rpl, cn_storage
///   (uncompressed|compressed), tie_mode (always_positive|randomized),
///   max_iter, lut = [l0,...,lQ] (all degrees), lut.D = [...] (degree D).
/// '#' starts a comment; every key at most once.
struct KernelConfig {
    Alphabet alpha;
    double mu = 1.0;
    Schedule schedule = Schedule::Flooding;
    int rpl = 1;
    CnStorage cn_storage = CnStorage::Uncompressed;
    TieMode tie_mode = TieMode::AlwaysPositive;
    int max_iter = 20;
    std::optional<FramingFunction> default_lut;
    std::map<int, FramingFunction> luts;
};

KernelConfig parse_kernel_config(std::istream& in);
KernelConfig parse_kernel_config(const std::string& text);
KernelConfig load_kernel_config(const std::string& path);

/// Resolves per-degree framings against the code's variable degrees and
/// builds the layer grouping for layered schedules.
KernelSpec make_kernel(const KernelConfig& cfg, const QcCode& code);

} // namespace nsfaid

#endif
