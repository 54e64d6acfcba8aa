#ifndef NSFAID_PMF_HPP
#define NSFAID_PMF_HPP

#include <cstddef>
#include <vector>

namespace nsfaid {

/// Probability mass function over a contiguous integer support [lo, hi].
struct Pmf {
    int lo = 0;
    std::vector<double> p;

    Pmf() = default;
    Pmf(int lo_, std::size_t n) : lo(lo_), p(n, 0.0) {}

    static Pmf delta(int v) {
        Pmf d(v, 1);
        d.p[0] = 1.0;
        return d;
    }

    int hi() const { return lo + static_cast<int>(p.size()) - 1; }
    std::size_t size() const { return p.size(); }

    double at(int v) const {
        if (v < lo || v > hi()) return 0.0;
        return p[static_cast<std::size_t>(v - lo)];
    }
    double& ref(int v) { return p[static_cast<std::size_t>(v - lo)]; }

    double total() const;
    void normalize();

    /// P(X < 0) + 0.5 * P(X = 0), the bit-error functional used throughout.
    double error_mass() const;

    /// Largest |difference| against another pmf (aligned by value).
    double linf_distance(const Pmf& other) const;
};

/// Exact convolution of two pmfs on the integer lattice.
Pmf convolve(const Pmf& a, const Pmf& b);

/// Collapse tails into the +-limit bins; result has support [-limit, limit].
Pmf saturate(const Pmf& in, int limit);

} // namespace nsfaid

#endif
