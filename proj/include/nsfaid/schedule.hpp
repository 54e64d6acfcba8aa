#ifndef NSFAID_SCHEDULE_HPP
#define NSFAID_SCHEDULE_HPP

#include <map>
#include <vector>

#include "nsfaid/framing.hpp"
#include "nsfaid/qc.hpp"

namespace nsfaid {

enum class ArchVariant { Pipelined, FullLayer }; // delta = 1 / 0

/// N * f / (delta + L * n_iter), exact.
double throughput_bps(double n_bits, double f_hz, int layers, int n_iter, ArchVariant v);

/// Integer Mbps, floored, computed without rounding error for integral MHz.
long long throughput_mbps(long long n_bits, long long f_mhz, int layers, int n_iter, ArchVariant v);

struct PipelineCheck {
    struct Violation {
        int first_row, second_row, column;
    };
    bool ok = true;
    std::vector<Violation> violations;
};

/// Cyclic consecutive-row overlap check for an rpl=1 pipelined schedule.
/// A single row is vacuously fine.
PipelineCheck check_pipeline(const QcCode& code, const std::vector<int>& row_order);

/// Column-to-VNU assignment for an rpl=1 schedule. Slot s of layer l
/// processes base column assignment[l][s] (-1 when the slot idles). A slot
/// implements one framing function per distinct framing among the degrees it
/// meets across layers.
struct VnuMapping {
    int slots = 0;
    std::vector<std::vector<int>> assignment;     // [layer][slot] -> column / -1
    std::vector<std::vector<int>> slot_degrees;   // distinct degrees, ascending
    std::vector<int> slot_functions;              // distinct framings per slot
    int multi_function_slots = 0;                 // slots needing > 1 framing
    int total_functions = 0;

    /// (multi_function_slots, total_functions), the optimization order.
    std::pair<int, int> cost() const { return {multi_function_slots, total_functions}; }
};

/// Slot i takes the i-th active column of each row.
VnuMapping naive_vnu_mapping(const QcCode& code, const std::vector<int>& row_order,
                             const std::map<int, FramingFunction>& framings);

/// Exhaustive layer-by-layer state search minimizing cost() lexicographically.
/// Columns of equal degree are interchangeable; ties resolve to ascending
/// column order, so the result is deterministic.
VnuMapping optimize_vnu_mapping(const QcCode& code, const std::vector<int>& row_order,
                                const std::map<int, FramingFunction>& framings);

} // namespace nsfaid

#endif
