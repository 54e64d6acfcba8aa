#include "nsfaid/density_evolution.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nsfaid {

const FramingFunction& DeSpec::framing_for(int degree) const {
    auto it = framings.find(degree);
    if (it == framings.end())
        throw std::invalid_argument("no framing for variable degree " + std::to_string(degree));
    return it->second;
}

void DeSpec::validate() const {
    dist.validate();
    if (mu <= 0.0) throw std::invalid_argument("mu must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    if (eta < 0.0) throw std::invalid_argument("eta must be >= 0");
    if (zero_error_weight < 0.0 || zero_error_weight > 1.0)
        throw std::invalid_argument("zero_error_weight must be in [0,1]");
    for (auto [deg, frac] : error_weights)
        if (deg < 1 || frac < 0.0)
            throw std::invalid_argument("error_weights: degrees >= 1, fractions >= 0");
    for (std::size_t d = 1; d < dist.lambda.size(); ++d)
        if (dist.lambda[d] > 0.0) {
            const auto& f = framing_for(static_cast<int>(d));
            if (f.Q() != alpha.Q())
                throw std::invalid_argument("framing alphabet does not match q");
        }
}

static double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

Pmf de_cn(const Pmf& v, int dc) {
    if (dc < 2) throw std::invalid_argument("de_cn: dc must be >= 2");
    const int n = dc - 1;
    const int S = std::max(-v.lo, v.hi());
    Pmf out;
    out.lo = -S;
    out.p.assign(2 * S + 1, 0.0);
    if (S == 0) {
        out.p[0] = 1.0;
        return out;
    }
    // Tail sums over the incoming density: a_t = P(|m| >= t),
    // b_t = P(m >= t) - P(m <= -t), t = 1..S.
    std::vector<double> a(S + 2, 0.0), b(S + 2, 0.0);
    double pos = 0.0, neg = 0.0;
    for (int t = S; t >= 1; --t) {
        pos += v.at(t);
        neg += v.at(-t);
        a[t] = pos + neg;
        b[t] = pos - neg;
    }
    // Out of n independent edges, P(min magnitude >= t, sign product +/-)
    // = (a_t^n +/- b_t^n)/2; difference consecutive t for the pmf.
    double ap_next = 0.0, am_next = 0.0;
    for (int t = S; t >= 1; --t) {
        double an = ipow(a[t], n), bn = ipow(b[t], n);
        double ap = 0.5 * (an + bn), am = 0.5 * (an - bn);
        out.ref(t) = std::max(0.0, ap - ap_next);
        out.ref(-t) = std::max(0.0, am - am_next);
        ap_next = ap;
        am_next = am;
    }
    out.ref(0) = std::max(0.0, ipow(v.total(), n) - ipow(a[1], n));
    return out;
}

// Push a saturated sum density through a framing; the mass at 0 of a
// lambda>0 framing splits evenly between +lambda and -lambda.
static void accumulate_framed(Pmf& dst, const Pmf& s, const FramingFunction& f, double weight) {
    for (int x = s.lo; x <= s.hi(); ++x) {
        double m = s.at(x);
        if (m == 0.0) continue;
        if (x == 0 && f.lambda() > 0) {
            dst.ref(f.lambda()) += 0.5 * weight * m;
            dst.ref(-f.lambda()) += 0.5 * weight * m;
        } else {
            dst.ref(f.frame(x)) += weight * m;
        }
    }
}

Pmf de_vn(const Pmf& c, const Pmf& u, int dv, const FramingFunction& f, int Q) {
    if (dv < 1) throw std::invalid_argument("de_vn: dv must be >= 1");
    Pmf acc = c;
    for (int k = 1; k < dv; ++k) acc = convolve(acc, u);
    Pmf out;
    out.lo = -Q;
    out.p.assign(2 * Q + 1, 0.0);
    accumulate_framed(out, saturate(acc, Q), f, 1.0);
    return out;
}

double de_ap_error(const Pmf& c, const Pmf& u, const DegreeDistribution& dist,
                   const std::map<int, double>& weights, double zero_weight) {
    std::map<int, double> w;
    if (weights.empty()) {
        auto node = dist.lambda_node();
        for (std::size_t d = 1; d < node.size(); ++d)
            if (node[d] > 0.0) w.emplace(static_cast<int>(d), node[d]);
    } else {
        w = weights;
    }
    Pmf acc = c;
    double pe = 0.0;
    int d = 0;
    for (auto [deg, frac] : w) {
        for (; d < deg; ++d) acc = convolve(acc, u);
        double neg = 0.0;
        for (int x = acc.lo; x < 0; ++x) neg += acc.at(x);
        pe += frac * (neg + zero_weight * acc.at(0));
    }
    return pe;
}

namespace {

struct DeState {
    int Q;
    int dv_max = 0, dc_max = 0;
    double target;
    int cap;
};

DeState de_state(const DeSpec& spec) {
    DeState st;
    st.Q = spec.alpha.Q();
    for (std::size_t d = 1; d < spec.dist.lambda.size(); ++d)
        if (spec.dist.lambda[d] > 0.0) st.dv_max = static_cast<int>(d);
    for (std::size_t j = 1; j < spec.dist.rho.size(); ++j)
        if (spec.dist.rho[j] > 0.0) st.dc_max = static_cast<int>(j);
    st.target = spec.eta > 0.0 ? spec.eta : 1e-10;
    st.cap = spec.eta > 0.0 ? spec.max_iter : std::max(spec.max_iter, 2000);
    return st;
}

// One VN+CN round: consume the check density u, return its successor.
Pmf de_round(const DeSpec& spec, const DeState& st, const Pmf& c, const Pmf& u) {
    Pmf v;
    v.lo = -st.Q;
    v.p.assign(2 * st.Q + 1, 0.0);
    Pmf acc = c;
    for (int d = 1; d <= st.dv_max; ++d) {
        if (d >= 2) acc = convolve(acc, u);
        double w = spec.dist.lambda[d];
        if (w > 0.0) accumulate_framed(v, saturate(acc, st.Q), spec.framing_for(d), w);
    }
    Pmf un;
    un.lo = -st.Q;
    un.p.assign(2 * st.Q + 1, 0.0);
    for (int j = 2; j <= st.dc_max; ++j) {
        double w = spec.dist.rho[j];
        if (w == 0.0) continue;
        Pmf cj = de_cn(v, j);
        for (int x = cj.lo; x <= cj.hi(); ++x) un.ref(x) += w * cj.at(x);
    }
    un.normalize();
    return un;
}

} // namespace

DeOutcome de_run(const DeSpec& spec, double sigma) {
    DeState st = de_state(spec);
    Pmf c = channel_pmf(sigma, spec.mu, st.Q);
    Pmf u = Pmf::delta(0);
    double pe_prev = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= st.cap; ++it) {
        u = de_round(spec, st, c, u);
        double pe = de_ap_error(c, u, spec.dist, spec.error_weights, spec.zero_error_weight);
        if (pe <= st.target) return {true, it, pe};
        // No meaningful progress at double precision: call it stuck.
        if (std::abs(pe - pe_prev) <= 4.0 * std::numeric_limits<double>::epsilon() * pe)
            return {false, it, pe};
        pe_prev = pe;
    }
    return {false, st.cap, pe_prev};
}

std::vector<double> de_error_trace(const DeSpec& spec, double sigma, int iters) {
    DeState st = de_state(spec);
    Pmf c = channel_pmf(sigma, spec.mu, st.Q);
    Pmf u = Pmf::delta(0);
    std::vector<double> trace;
    trace.reserve(iters);
    for (int it = 1; it <= iters; ++it) {
        u = de_round(spec, st, c, u);
        trace.push_back(de_ap_error(c, u, spec.dist, spec.error_weights, spec.zero_error_weight));
    }
    return trace;
}

double de_threshold(const DeSpec& spec, double lo_db, double hi_db, double tol_db) {
    auto ok = [&](double db) { return de_run(spec, sigma_from_snr_db(db)).converged; };
    if (ok(lo_db)) return lo_db;
    if (!ok(hi_db)) return std::numeric_limits<double>::quiet_NaN();
    while (hi_db - lo_db > tol_db) {
        double mid = 0.5 * (lo_db + hi_db);
        (ok(mid) ? hi_db : lo_db) = mid;
    }
    return hi_db;
}

MuScanResult optimize_mu(DeSpec spec, double mu_lo, double mu_hi, double mu_step, double lo_db,
                         double hi_db, double tol_db, bool keep_scan) {
    MuScanResult best;
    best.mu = std::numeric_limits<double>::quiet_NaN();
    best.threshold_db = std::numeric_limits<double>::infinity();
    const int steps = static_cast<int>(std::llround((mu_hi - mu_lo) / mu_step));
    for (int i = 0; i <= steps; ++i) {
        spec.mu = mu_lo + i * mu_step;
        double t;
        if (std::isfinite(best.threshold_db)) {
            // Candidates that fail at the incumbent threshold cannot win;
            // skip the bisection entirely.
            if (!de_run(spec, sigma_from_snr_db(best.threshold_db)).converged) {
                if (keep_scan)
                    best.scanned.emplace_back(spec.mu, std::numeric_limits<double>::quiet_NaN());
                continue;
            }
            t = de_threshold(spec, lo_db, best.threshold_db, tol_db);
        } else {
            t = de_threshold(spec, lo_db, hi_db, tol_db);
        }
        if (keep_scan) best.scanned.emplace_back(spec.mu, t);
        if (std::isnan(t)) continue;
        if (t < best.threshold_db - 1e-12) {
            best.threshold_db = t;
            best.mu = spec.mu;
        }
    }
    return best;
}

} // namespace nsfaid
