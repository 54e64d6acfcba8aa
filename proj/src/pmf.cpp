#include "nsfaid/pmf.hpp"

#include <algorithm>
#include <cmath>

namespace nsfaid {

double Pmf::total() const {
    double s = 0.0;
    for (double x : p) s += x;
    return s;
}

void Pmf::normalize() {
    double s = total();
    if (s > 0.0)
        for (double& x : p) x /= s;
}

double Pmf::error_mass() const {
    double s = 0.0;
    for (int v = lo; v < 0 && v <= hi(); ++v) s += at(v);
    return s + 0.5 * at(0);
}

double Pmf::linf_distance(const Pmf& other) const {
    int a = std::min(lo, other.lo);
    int b = std::max(hi(), other.hi());
    double d = 0.0;
    for (int v = a; v <= b; ++v) d = std::max(d, std::fabs(at(v) - other.at(v)));
    return d;
}

Pmf convolve(const Pmf& a, const Pmf& b) {
    Pmf out(a.lo + b.lo, a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        double ai = a.p[i];
        if (ai == 0.0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out.p[i + j] += ai * b.p[j];
    }
    return out;
}

Pmf saturate(const Pmf& in, int limit) {
    Pmf out(-limit, static_cast<std::size_t>(2 * limit + 1));
    for (int v = in.lo; v <= in.hi(); ++v) {
        int s = std::clamp(v, -limit, limit);
        out.ref(s) += in.at(v);
    }
    return out;
}

} // namespace nsfaid
