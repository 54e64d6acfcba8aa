#ifndef NSFAID_DEGREE_HPP
#define NSFAID_DEGREE_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsfaid {

/// Edge-perspective degree distributions; index = degree, entry = fraction
/// of edges touching a node of that degree.
struct DegreeDistribution {
    std::vector<double> lambda; // variable node side
    std::vector<double> rho;    // check node side

    static DegreeDistribution regular(int dv, int dc) {
        DegreeDistribution d;
        d.lambda.assign(dv + 1, 0.0);
        d.lambda[dv] = 1.0;
        d.rho.assign(dc + 1, 0.0);
        d.rho[dc] = 1.0;
        return d;
    }

    /// Edge fractions from node-perspective counts (or fractions).
    static std::vector<double> edge_from_node(const std::vector<double>& node) {
        std::vector<double> e(node.size(), 0.0);
        double total = 0.0;
        for (std::size_t d = 0; d < node.size(); ++d) total += node[d] * static_cast<double>(d);
        if (total <= 0.0) throw std::invalid_argument("degree distribution: no edges");
        for (std::size_t d = 0; d < node.size(); ++d) e[d] = node[d] * static_cast<double>(d) / total;
        return e;
    }

    /// Node fractions back from edge fractions: f_d proportional to e_d/d.
    static std::vector<double> node_from_edge(const std::vector<double>& edge) {
        std::vector<double> n(edge.size(), 0.0);
        double total = 0.0;
        for (std::size_t d = 1; d < edge.size(); ++d) {
            n[d] = edge[d] / static_cast<double>(d);
            total += n[d];
        }
        if (total <= 0.0) throw std::invalid_argument("degree distribution: no edges");
        for (auto& x : n) x /= total;
        return n;
    }

    std::vector<double> lambda_node() const { return node_from_edge(lambda); }
    std::vector<double> rho_node() const { return node_from_edge(rho); }

    double rate() const {
        double num = 0.0, den = 0.0;
        for (std::size_t j = 1; j < rho.size(); ++j) num += rho[j] / static_cast<double>(j);
        for (std::size_t d = 1; d < lambda.size(); ++d) den += lambda[d] / static_cast<double>(d);
        return 1.0 - num / den;
    }

    void validate() const {
        auto check = [](const std::vector<double>& e, const char* side) {
            double s = 0.0;
            for (std::size_t d = 0; d < e.size(); ++d) {
                if (e[d] < -1e-12) throw std::invalid_argument(std::string(side) + ": negative fraction");
                if (d == 0 && e[d] > 0.0) throw std::invalid_argument(std::string(side) + ": degree-0 mass");
                s += e[d];
            }
            if (std::abs(s - 1.0) > 1e-9) throw std::invalid_argument(std::string(side) + ": fractions must sum to 1");
        };
        check(lambda, "lambda");
        check(rho, "rho");
    }
};

} // namespace nsfaid

#endif
