#ifndef NSFAID_QC_HPP
#define NSFAID_QC_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nsfaid/degree.hpp"

namespace nsfaid {

/// Quasi-cyclic code: R x C base matrix over {-1} u [0,z). Entry b >= 0
/// stands for the z x z circulant sending row i to column (i+b) mod z.
/// Plain (non-QC) parity matrices are the z=1 special case.
struct QcCode {
    int rows = 0, cols = 0, z = 1;
    std::vector<int> base; // rows*cols, row-major

    int at(int r, int c) const { return base[static_cast<std::size_t>(r) * cols + c]; }
    int& at(int r, int c) { return base[static_cast<std::size_t>(r) * cols + c]; }
    int n() const { return cols * z; }
    int m() const { return rows * z; }
    void validate() const;

    int row_degree(int r) const;
    int col_degree(int c) const;
    bool rows_overlap(int r1, int r2) const; // share an active base column
};

QcCode parse_base_matrix(std::istream& in);
QcCode parse_base_matrix(const std::string& text);
QcCode load_base_matrix(const std::string& path);
void write_base_matrix(std::ostream& out, const QcCode& code);

/// Standard alist (expanded parity matrix); returned as a z=1 QcCode.
QcCode parse_alist(std::istream& in);
QcCode load_alist(const std::string& path);

/// Loads .alist by extension, base-matrix format otherwise.
QcCode load_code(const std::string& path);

/// Expanded Tanner graph. Edges are stored check-major: CN m owns the
/// slice [cn_ptr[m], cn_ptr[m+1]), ordered by base column; vn_edges maps
/// each VN to its edge ids in base-row order.
struct TannerGraph {
    int n = 0, m = 0;
    std::vector<int> cn_ptr;
    std::vector<int> cn_vn;     // VN of each edge
    std::vector<int> vn_ptr;
    std::vector<int> vn_edges;  // edge ids of each VN
    std::vector<int> edge_cell; // base cell (r*cols + c) of each edge

    int edges() const { return static_cast<int>(cn_vn.size()); }
    int cn_degree(int mm) const { return cn_ptr[mm + 1] - cn_ptr[mm]; }
    int vn_degree(int nn) const { return vn_ptr[nn + 1] - vn_ptr[nn]; }
};

TannerGraph expand(const QcCode& code);

DegreeDistribution degree_distributions(const QcCode& code);

/// Node fractions over the systematic part (base columns 0..k-1 with
/// k = C-R); this is the degree mix behind information-bit error rates.
std::map<int, double> info_bit_degree_weights(const QcCode& code);

struct LayerSchedule {
    int rpl = 1;
    std::vector<std::vector<int>> layers; // base-row groups, in order
    std::vector<bool> full_flags;         // layer covers every column once
    bool pipeline_ok = false;             // cyclically consecutive layers disjoint
};

/// Groups base rows [0..R) into consecutive layers of rpl rows. Throws if
/// two rows of a layer share an active column.
LayerSchedule group_layers(const QcCode& code, int rpl);

/// As group_layers but with rows taken in the given order.
LayerSchedule group_layers(const QcCode& code, int rpl, const std::vector<int>& row_order);

/// Row permutation making cyclically consecutive rows column-disjoint
/// (rpl=1 pipelining); backtracking search, nullopt when none exists.
std::optional<std::vector<int>> find_pipeline_row_order(const QcCode& code);

/// Girth of the expanded graph, counted in edges (4 = shortest possible);
/// returns 0 when the graph has no cycle up to the probe limit.
int graph_girth(const QcCode& code, int limit = 12);

/// Girth-conditioned (3,6)-regular 12x24 stand-in with three full layers
/// of four rows and pipeline-friendly layer boundaries.
QcCode generate_regular_code(int z, std::uint64_t seed, int min_girth = 6);

} // namespace nsfaid

#endif
