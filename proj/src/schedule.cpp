#include "nsfaid/schedule.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace nsfaid {

double throughput_bps(double n_bits, double f_hz, int layers, int n_iter, ArchVariant v) {
    if (n_bits <= 0 || f_hz <= 0 || layers < 1 || n_iter < 1)
        throw std::invalid_argument("throughput needs positive inputs");
    double delta = v == ArchVariant::Pipelined ? 1.0 : 0.0;
    return n_bits * f_hz / (delta + static_cast<double>(layers) * n_iter);
}

long long throughput_mbps(long long n_bits, long long f_mhz, int layers, int n_iter,
                          ArchVariant v) {
    if (n_bits <= 0 || f_mhz <= 0 || layers < 1 || n_iter < 1)
        throw std::invalid_argument("throughput needs positive inputs");
    long long den = (v == ArchVariant::Pipelined ? 1 : 0) + static_cast<long long>(layers) * n_iter;
    return n_bits * f_mhz / den;
}

namespace {

std::vector<int> resolve_order(const QcCode& code, const std::vector<int>& row_order) {
    std::vector<int> order = row_order;
    if (order.empty()) {
        order.resize(static_cast<std::size_t>(code.rows));
        for (int r = 0; r < code.rows; ++r)
            order[static_cast<std::size_t>(r)] = r;
    }
    std::vector<char> seen(code.rows, 0);
    if (static_cast<int>(order.size()) != code.rows)
        throw std::invalid_argument("row order must list every base row once");
    for (int r : order) {
        if (r < 0 || r >= code.rows || seen[r])
            throw std::invalid_argument("row order must list every base row once");
        seen[r] = 1;
    }
    return order;
}

const FramingFunction& framing_for_degree(const std::map<int, FramingFunction>& framings, int d) {
    auto it = framings.find(d);
    if (it != framings.end())
        return it->second;
    if (framings.size() == 1)
        return framings.begin()->second;
    throw std::invalid_argument("no framing function for degree " + std::to_string(d));
}

struct MappingProblem {
    int slots = 0;
    int k = 0;                                  // distinct framing classes
    std::vector<int> class_of_degree;           // degree -> class id (-1 unused)
    std::vector<std::vector<int>> layer_cols;   // active columns per layer, ascending
    std::vector<std::vector<int>> layer_count;  // [layer][class] column count
};

MappingProblem build_problem(const QcCode& code, const std::vector<int>& order,
                             const std::map<int, FramingFunction>& framings) {
    MappingProblem p;
    int max_deg = 0;
    for (int c = 0; c < code.cols; ++c)
        max_deg = std::max(max_deg, code.col_degree(c));
    p.class_of_degree.assign(max_deg + 1, -1);
    std::vector<const FramingFunction*> class_rep;
    for (int c = 0; c < code.cols; ++c) {
        int d = code.col_degree(c);
        if (d == 0 || p.class_of_degree[d] != -1)
            continue;
        const FramingFunction& f = framing_for_degree(framings, d);
        int id = -1;
        for (std::size_t i = 0; i < class_rep.size(); ++i)
            if (*class_rep[i] == f)
                id = static_cast<int>(i);
        if (id < 0) {
            id = static_cast<int>(class_rep.size());
            class_rep.push_back(&f);
        }
        p.class_of_degree[d] = id;
    }
    p.k = static_cast<int>(class_rep.size());
    if (p.k > 8)
        throw std::invalid_argument("more than 8 distinct framing functions");

    for (int r : order) {
        std::vector<int> cols;
        for (int c = 0; c < code.cols; ++c)
            if (code.at(r, c) >= 0)
                cols.push_back(c);
        p.slots = std::max(p.slots, static_cast<int>(cols.size()));
        std::vector<int> cnt(p.k, 0);
        for (int c : cols)
            ++cnt[p.class_of_degree[code.col_degree(c)]];
        p.layer_cols.push_back(std::move(cols));
        p.layer_count.push_back(std::move(cnt));
    }
    return p;
}

VnuMapping finish_mapping(const QcCode& code, const MappingProblem& p,
                          std::vector<std::vector<int>> assignment) {
    VnuMapping m;
    m.slots = p.slots;
    m.assignment = std::move(assignment);
    m.slot_degrees.assign(static_cast<std::size_t>(p.slots), {});
    for (const auto& layer : m.assignment)
        for (int s = 0; s < p.slots; ++s)
            if (layer[s] >= 0) {
                auto& degs = m.slot_degrees[static_cast<std::size_t>(s)];
                int d = code.col_degree(layer[s]);
                if (std::find(degs.begin(), degs.end(), d) == degs.end())
                    degs.push_back(d);
            }
    m.slot_functions.assign(static_cast<std::size_t>(p.slots), 0);
    for (int s = 0; s < p.slots; ++s) {
        auto& degs = m.slot_degrees[static_cast<std::size_t>(s)];
        std::sort(degs.begin(), degs.end());
        int classes = 0;
        for (std::size_t i = 0; i < degs.size(); ++i) {
            bool fresh = true;
            for (std::size_t j = 0; j < i; ++j)
                if (p.class_of_degree[degs[i]] == p.class_of_degree[degs[j]])
                    fresh = false;
            classes += fresh;
        }
        m.slot_functions[static_cast<std::size_t>(s)] = classes;
        m.multi_function_slots += classes > 1;
        m.total_functions += classes;
    }
    return m;
}

} // namespace

PipelineCheck check_pipeline(const QcCode& code, const std::vector<int>& row_order) {
    std::vector<int> order = resolve_order(code, row_order);
    PipelineCheck out;
    if (code.rows == 1)
        return out;
    for (std::size_t i = 0; i < order.size(); ++i) {
        int a = order[i], b = order[(i + 1) % order.size()];
        for (int c = 0; c < code.cols; ++c)
            if (code.at(a, c) >= 0 && code.at(b, c) >= 0)
                out.violations.push_back({a, b, c});
    }
    out.ok = out.violations.empty();
    return out;
}

VnuMapping naive_vnu_mapping(const QcCode& code, const std::vector<int>& row_order,
                             const std::map<int, FramingFunction>& framings) {
    std::vector<int> order = resolve_order(code, row_order);
    MappingProblem p = build_problem(code, order, framings);
    std::vector<std::vector<int>> assignment;
    for (const auto& cols : p.layer_cols) {
        std::vector<int> slots(static_cast<std::size_t>(p.slots), -1);
        for (std::size_t i = 0; i < cols.size(); ++i)
            slots[i] = cols[i];
        assignment.push_back(std::move(slots));
    }
    return finish_mapping(code, p, std::move(assignment));
}

namespace {

// One DP state: how many slots currently require each subset of framing
// classes. Slots are interchangeable, so only the counts matter.
using State = std::vector<std::uint8_t>;           // size 2^k, sums to #slots
using Transfer = std::vector<std::uint8_t>;        // [mask*k + class] slots moved

struct ParentLink {
    State prev;
    Transfer move;
};

void enumerate_transfers(const State& st, const std::vector<int>& need, int k,
                         const std::function<void(const Transfer&)>& emit) {
    const int masks = static_cast<int>(st.size());
    Transfer cur(static_cast<std::size_t>(masks) * k, 0);
    std::vector<int> left = need;
    // masks in ascending order; within a mask, split the available slots
    // over the classes still needing columns
    std::function<void(int)> rec_mask = [&](int m) {
        if (m == masks) {
            for (int j = 0; j < k; ++j)
                if (left[j])
                    return;
            emit(cur);
            return;
        }
        int avail = st[static_cast<std::size_t>(m)];
        std::function<void(int, int)> rec_class = [&](int j, int room) {
            if (j == k) {
                rec_mask(m + 1);
                return;
            }
            int cap = std::min(room, left[j]);
            for (int x = 0; x <= cap; ++x) {
                cur[static_cast<std::size_t>(m) * k + j] = static_cast<std::uint8_t>(x);
                left[j] -= x;
                rec_class(j + 1, room - x);
                left[j] += x;
            }
            cur[static_cast<std::size_t>(m) * k + j] = 0;
        };
        rec_class(0, avail);
    };
    rec_mask(0);
}

State apply_transfer(const State& st, const Transfer& t, int k) {
    State nxt = st;
    for (int m = 0; m < static_cast<int>(st.size()); ++m)
        for (int j = 0; j < k; ++j) {
            int x = t[static_cast<std::size_t>(m) * k + j];
            nxt[static_cast<std::size_t>(m)] = static_cast<std::uint8_t>(nxt[m] - x);
            nxt[static_cast<std::size_t>(m | (1 << j))] =
                static_cast<std::uint8_t>(nxt[m | (1 << j)] + x);
        }
    return nxt;
}

std::pair<int, int> state_cost(const State& st) {
    int multi = 0, total = 0;
    for (int m = 0; m < static_cast<int>(st.size()); ++m) {
        int fns = std::popcount(static_cast<unsigned>(m));
        multi += (fns > 1) * st[static_cast<std::size_t>(m)];
        total += fns * st[static_cast<std::size_t>(m)];
    }
    return {multi, total};
}

} // namespace

VnuMapping optimize_vnu_mapping(const QcCode& code, const std::vector<int>& row_order,
                                const std::map<int, FramingFunction>& framings) {
    std::vector<int> order = resolve_order(code, row_order);
    MappingProblem p = build_problem(code, order, framings);
    const int k = p.k;
    const int masks = 1 << k;
    const std::size_t layers = p.layer_cols.size();

    State init(static_cast<std::size_t>(masks), 0);
    init[0] = static_cast<std::uint8_t>(p.slots);

    std::vector<std::map<State, ParentLink>> level(layers + 1);
    level[0].emplace(init, ParentLink{});
    for (std::size_t l = 0; l < layers; ++l) {
        for (const auto& [st, link] : level[l]) {
            enumerate_transfers(st, p.layer_count[l], k, [&](const Transfer& t) {
                State nxt = apply_transfer(st, t, k);
                level[l + 1].try_emplace(std::move(nxt), ParentLink{st, t});
            });
        }
        if (level[l + 1].empty())
            throw std::logic_error("VNU mapping search dead-ended");
    }

    const State* best = nullptr;
    std::pair<int, int> best_cost{0, 0};
    for (const auto& [st, link] : level[layers]) {
        auto c = state_cost(st);
        if (!best || c < best_cost) { // map order breaks ties deterministically
            best = &st;
            best_cost = c;
        }
    }

    // walk back to collect the per-layer transfers, then replay forward on
    // concrete slots
    std::vector<const Transfer*> path(layers);
    State cur = *best;
    for (std::size_t l = layers; l-- > 0;) {
        const ParentLink& link = level[l + 1].at(cur);
        path[l] = &link.move;
        cur = link.prev;
    }

    std::vector<int> slot_mask(static_cast<std::size_t>(p.slots), 0);
    std::vector<std::vector<int>> assignment;
    for (std::size_t l = 0; l < layers; ++l) {
        // class columns in ascending order, handed out as transfers consume them
        std::vector<std::vector<int>> cols_of_class(static_cast<std::size_t>(k));
        for (int c : p.layer_cols[l])
            cols_of_class[static_cast<std::size_t>(p.class_of_degree[code.col_degree(c)])]
                .push_back(c);
        std::vector<std::size_t> next(static_cast<std::size_t>(k), 0);

        std::vector<int> slots(static_cast<std::size_t>(p.slots), -1);
        std::vector<char> used(static_cast<std::size_t>(p.slots), 0);
        std::vector<std::pair<int, int>> mask_updates; // slot -> new mask
        for (int m = 0; m < masks; ++m)
            for (int j = 0; j < k; ++j) {
                int x = (*path[l])[static_cast<std::size_t>(m) * k + j];
                for (int s = 0; s < p.slots && x > 0; ++s)
                    if (!used[s] && slot_mask[s] == m) {
                        used[s] = 1;
                        slots[static_cast<std::size_t>(s)] =
                            cols_of_class[static_cast<std::size_t>(j)][next[j]++];
                        mask_updates.emplace_back(s, m | (1 << j));
                        --x;
                    }
            }
        for (auto [s, nm] : mask_updates)
            slot_mask[static_cast<std::size_t>(s)] = nm;
        assignment.push_back(std::move(slots));
    }
    return finish_mapping(code, p, std::move(assignment));
}

} // namespace nsfaid
