#include "nsfaid/qc.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "nsfaid/rng.hpp"

namespace nsfaid {

void QcCode::validate() const {
    if (rows < 1 || cols < 1 || z < 1) throw std::invalid_argument("base matrix: bad dimensions");
    if (base.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("base matrix: entry count mismatch");
    for (int b : base)
        if (b < -1 || b >= z) throw std::invalid_argument("base matrix: entry out of range");
}

int QcCode::row_degree(int r) const {
    int d = 0;
    for (int c = 0; c < cols; ++c) d += at(r, c) >= 0;
    return d;
}

int QcCode::col_degree(int c) const {
    int d = 0;
    for (int r = 0; r < rows; ++r) d += at(r, c) >= 0;
    return d;
}

bool QcCode::rows_overlap(int r1, int r2) const {
    for (int c = 0; c < cols; ++c)
        if (at(r1, c) >= 0 && at(r2, c) >= 0) return true;
    return false;
}

// Strips blank and '#' comment lines, returns the token stream.
static std::vector<long long> read_tokens(std::istream& in) {
    std::vector<long long> tok;
    std::string line;
    while (std::getline(in, line)) {
        auto pos = line.find('#');
        if (pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        long long v;
        while (ls >> v) tok.push_back(v);
        if (!ls.eof()) throw std::invalid_argument("base matrix: non-integer token");
    }
    return tok;
}

QcCode parse_base_matrix(std::istream& in) {
    auto tok = read_tokens(in);
    if (tok.size() < 3) throw std::invalid_argument("base matrix: missing R C z header");
    QcCode code;
    code.rows = static_cast<int>(tok[0]);
    code.cols = static_cast<int>(tok[1]);
    code.z = static_cast<int>(tok[2]);
    if (code.rows < 1 || code.cols < 1 || code.z < 1)
        throw std::invalid_argument("base matrix: bad dimensions");
    std::size_t need = static_cast<std::size_t>(code.rows) * code.cols;
    if (tok.size() != 3 + need)
        throw std::invalid_argument("base matrix: expected " + std::to_string(need) + " entries, got " +
                                    std::to_string(tok.size() - 3));
    code.base.assign(tok.begin() + 3, tok.end());
    code.validate();
    return code;
}

QcCode parse_base_matrix(const std::string& text) {
    std::istringstream in(text);
    return parse_base_matrix(in);
}

QcCode load_base_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_base_matrix(in);
}

void write_base_matrix(std::ostream& out, const QcCode& code) {
    out << code.rows << ' ' << code.cols << ' ' << code.z << '\n';
    for (int r = 0; r < code.rows; ++r) {
        for (int c = 0; c < code.cols; ++c) out << (c ? " " : "") << code.at(r, c);
        out << '\n';
    }
}

QcCode parse_alist(std::istream& in) {
    auto tok = read_tokens(in);
    std::size_t p = 0;
    auto next = [&]() {
        if (p >= tok.size()) throw std::invalid_argument("alist: truncated");
        return tok[p++];
    };
    int n = static_cast<int>(next());
    int m = static_cast<int>(next());
    if (n < 1 || m < 1) throw std::invalid_argument("alist: bad dimensions");
    next(); // max column weight
    next(); // max row weight
    std::vector<int> dv(n), dc(m);
    for (auto& d : dv) d = static_cast<int>(next());
    for (auto& d : dc) d = static_cast<int>(next());
    QcCode code;
    code.rows = m;
    code.cols = n;
    code.z = 1;
    code.base.assign(static_cast<std::size_t>(m) * n, -1);
    // column lists; entries are 1-based, zero-padded in fixed-width alists
    for (int c = 0; c < n; ++c)
        for (int k = 0; k < dv[c]; ++k) {
            long long r = next();
            if (r < 1 || r > m) throw std::invalid_argument("alist: row index out of range");
            code.at(static_cast<int>(r) - 1, c) = 0;
        }
    // row lists are redundant; accept either their presence or EOF
    for (int r = 0; r < m && p < tok.size(); ++r)
        for (int k = 0; k < dc[r] && p < tok.size(); ++k) {
            long long c = next();
            if (c < 1 || c > n) throw std::invalid_argument("alist: column index out of range");
            if (code.at(r, static_cast<int>(c) - 1) != 0)
                throw std::invalid_argument("alist: row/column lists disagree");
        }
    return code;
}

QcCode load_alist(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_alist(in);
}

QcCode load_code(const std::string& path) {
    if (path.size() > 6 && path.compare(path.size() - 6, 6, ".alist") == 0) return load_alist(path);
    return load_base_matrix(path);
}

TannerGraph expand(const QcCode& code) {
    code.validate();
    TannerGraph g;
    g.n = code.n();
    g.m = code.m();
    g.cn_ptr.assign(g.m + 1, 0);
    for (int r = 0; r < code.rows; ++r) {
        int d = code.row_degree(r);
        for (int i = 0; i < code.z; ++i) g.cn_ptr[r * code.z + i + 1] = d;
    }
    std::partial_sum(g.cn_ptr.begin(), g.cn_ptr.end(), g.cn_ptr.begin());
    g.cn_vn.resize(g.cn_ptr.back());
    g.edge_cell.resize(g.cn_ptr.back());
    for (int r = 0; r < code.rows; ++r)
        for (int i = 0; i < code.z; ++i) {
            int e = g.cn_ptr[r * code.z + i];
            for (int c = 0; c < code.cols; ++c) {
                int b = code.at(r, c);
                if (b < 0) continue;
                g.cn_vn[e] = c * code.z + (i + b) % code.z;
                g.edge_cell[e] = r * code.cols + c;
                ++e;
            }
        }
    // VN-side view, edges listed in base-row order
    g.vn_ptr.assign(g.n + 1, 0);
    for (int v : g.cn_vn) ++g.vn_ptr[v + 1];
    std::partial_sum(g.vn_ptr.begin(), g.vn_ptr.end(), g.vn_ptr.begin());
    g.vn_edges.resize(g.cn_vn.size());
    std::vector<int> fill(g.n, 0);
    for (int e = 0; e < g.edges(); ++e) {
        int v = g.cn_vn[e];
        g.vn_edges[g.vn_ptr[v] + fill[v]++] = e;
    }
    return g;
}

DegreeDistribution degree_distributions(const QcCode& code) {
    int dv_max = 0, dc_max = 0, edges = 0;
    for (int c = 0; c < code.cols; ++c) dv_max = std::max(dv_max, code.col_degree(c));
    for (int r = 0; r < code.rows; ++r) {
        dc_max = std::max(dc_max, code.row_degree(r));
        edges += code.row_degree(r);
    }
    if (edges == 0) throw std::invalid_argument("degree_distributions: empty matrix");
    DegreeDistribution d;
    d.lambda.assign(dv_max + 1, 0.0);
    d.rho.assign(dc_max + 1, 0.0);
    for (int c = 0; c < code.cols; ++c) d.lambda[code.col_degree(c)] += 1.0;
    for (int r = 0; r < code.rows; ++r) d.rho[code.row_degree(r)] += 1.0;
    for (int deg = 0; deg <= dv_max; ++deg) d.lambda[deg] *= static_cast<double>(deg) / edges;
    for (int deg = 0; deg <= dc_max; ++deg) d.rho[deg] *= static_cast<double>(deg) / edges;
    return d;
}

std::map<int, double> info_bit_degree_weights(const QcCode& code) {
    int k = code.cols - code.rows;
    if (k <= 0) throw std::invalid_argument("info_bit_degree_weights: rate <= 0");
    std::map<int, double> w;
    for (int c = 0; c < k; ++c) w[code.col_degree(c)] += 1.0 / k;
    return w;
}

static std::vector<int> layer_column_cover(const QcCode& code, const std::vector<int>& rows) {
    std::vector<int> cover(code.cols, 0);
    for (int r : rows)
        for (int c = 0; c < code.cols; ++c) cover[c] += code.at(r, c) >= 0;
    return cover;
}

LayerSchedule group_layers(const QcCode& code, int rpl) {
    std::vector<int> order(code.rows);
    std::iota(order.begin(), order.end(), 0);
    return group_layers(code, rpl, order);
}

LayerSchedule group_layers(const QcCode& code, int rpl, const std::vector<int>& row_order) {
    if (rpl < 1 || code.rows % rpl != 0)
        throw std::invalid_argument("group_layers: rpl must divide the row count");
    if (row_order.size() != static_cast<std::size_t>(code.rows))
        throw std::invalid_argument("group_layers: row order size mismatch");
    LayerSchedule s;
    s.rpl = rpl;
    int L = code.rows / rpl;
    for (int l = 0; l < L; ++l) {
        std::vector<int> rows(row_order.begin() + l * rpl, row_order.begin() + (l + 1) * rpl);
        auto cover = layer_column_cover(code, rows);
        for (int c = 0; c < code.cols; ++c)
            if (cover[c] > 1)
                throw std::invalid_argument("group_layers: rows of layer " + std::to_string(l) +
                                            " overlap in column " + std::to_string(c));
        s.full_flags.push_back(std::all_of(cover.begin(), cover.end(), [](int x) { return x == 1; }));
        s.layers.push_back(std::move(rows));
    }
    s.pipeline_ok = true;
    for (int l = 0; l < L; ++l) {
        auto a = layer_column_cover(code, s.layers[l]);
        auto b = layer_column_cover(code, s.layers[(l + 1) % L]);
        for (int c = 0; c < code.cols; ++c)
            if (a[c] && b[c]) s.pipeline_ok = false;
    }
    return s;
}

std::optional<std::vector<int>> find_pipeline_row_order(const QcCode& code) {
    int R = code.rows;
    std::vector<std::vector<char>> conflict(R, std::vector<char>(R, 0));
    for (int a = 0; a < R; ++a)
        for (int b = a + 1; b < R; ++b) conflict[a][b] = conflict[b][a] = code.rows_overlap(a, b);
    std::vector<int> path{0};
    std::vector<char> used(R, 0);
    used[0] = 1;
    auto dfs = [&](auto&& self) -> bool {
        if (static_cast<int>(path.size()) == R) return !conflict[path.back()][path.front()];
        for (int r = 1; r < R; ++r) {
            if (used[r] || conflict[path.back()][r]) continue;
            used[r] = 1;
            path.push_back(r);
            if (self(self)) return true;
            path.pop_back();
            used[r] = 0;
        }
        return false;
    };
    if (R == 1) return conflict[0][0] ? std::optional<std::vector<int>>{} : std::vector<int>{0};
    if (!dfs(dfs)) return std::nullopt;
    return path;
}

int graph_girth(const QcCode& code, int limit) {
    TannerGraph g = expand(code);
    int total = g.n + g.m; // VNs then CNs
    std::vector<int> edge_cn(g.edges());
    for (int mm = 0; mm < g.m; ++mm)
        for (int e = g.cn_ptr[mm]; e < g.cn_ptr[mm + 1]; ++e) edge_cn[e] = mm;
    auto neighbors = [&](int u, auto&& fn) {
        if (u < g.n) {
            for (int k = g.vn_ptr[u]; k < g.vn_ptr[u + 1]; ++k) fn(g.n + edge_cn[g.vn_edges[k]]);
        } else {
            int mm = u - g.n;
            for (int e = g.cn_ptr[mm]; e < g.cn_ptr[mm + 1]; ++e) fn(g.cn_vn[e]);
        }
    };
    int best = 0;
    std::vector<int> dist(total), parent(total);
    std::vector<int> queue;
    for (int root = 0; root < g.n; ++root) { // every cycle visits a VN
        std::fill(dist.begin(), dist.end(), -1);
        queue.clear();
        queue.push_back(root);
        dist[root] = 0;
        parent[root] = -1;
        int max_depth = (best ? best : limit + 1) / 2;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            if (dist[u] >= max_depth) break;
            neighbors(u, [&](int v) {
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if (v != parent[u]) {
                    int len = dist[u] + dist[v] + 1;
                    if ((best == 0 || len < best) && len <= limit) best = len;
                }
            });
        }
        if (best == 4) break; // cannot do better in a bipartite graph
    }
    return best;
}

QcCode generate_regular_code(int z, std::uint64_t seed, int min_girth) {
    const int R = 12, C = 24, rpl = 4, L = 3;
    Rng rng(seed);
    auto shuffled_cols = [&]() {
        std::vector<int> v(C);
        std::iota(v.begin(), v.end(), 0);
        for (int i = C - 1; i > 0; --i)
            std::swap(v[i], v[rng.next_u64() % (i + 1)]);
        return v;
    };
    for (int attempt = 0; attempt < 100000; ++attempt) {
        // per layer, split the columns into rpl groups of C/rpl; groups at
        // layer boundaries (incl. the wrap) must be disjoint so the rpl=1
        // pipeline ordering works out of the box
        std::vector<std::vector<std::vector<int>>> groups(L);
        bool ok = true;
        for (int l = 0; l < L && ok; ++l) {
            for (int tries = 0;; ++tries) {
                if (tries >= 200) {
                    ok = false;
                    break;
                }
                auto perm = shuffled_cols();
                groups[l].assign(rpl, {});
                for (int k = 0; k < rpl; ++k)
                    groups[l][k].assign(perm.begin() + k * (C / rpl), perm.begin() + (k + 1) * (C / rpl));
                if (l > 0) {
                    bool clash = false;
                    for (int c : groups[l][0])
                        for (int c2 : groups[l - 1][rpl - 1]) clash |= c == c2;
                    if (clash) continue;
                }
                break;
            }
        }
        if (!ok) continue;
        {
            bool clash = false;
            for (int c : groups[0][0])
                for (int c2 : groups[L - 1][rpl - 1]) clash |= c == c2;
            if (clash) continue;
        }
        QcCode code;
        code.rows = R;
        code.cols = C;
        code.z = z;
        code.base.assign(static_cast<std::size_t>(R) * C, -1);
        for (int l = 0; l < L; ++l)
            for (int k = 0; k < rpl; ++k)
                for (int c : groups[l][k]) code.at(l * rpl + k, c) = static_cast<int>(rng.next_u64() % z);
        if (min_girth > 4 && graph_girth(code, min_girth - 2) != 0) continue;
        return code;
    }
    throw std::runtime_error("generate_regular_code: no matrix found at this girth");
}

} // namespace nsfaid
