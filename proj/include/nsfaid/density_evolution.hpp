#ifndef NSFAID_DENSITY_EVOLUTION_HPP
#define NSFAID_DENSITY_EVOLUTION_HPP

#include <map>
#include <vector>

#include "nsfaid/channel.hpp"
#include "nsfaid/degree.hpp"
#include "nsfaid/framing.hpp"
#include "nsfaid/pmf.hpp"

namespace nsfaid {

/// One decoder family under density evolution: alphabet sizes, degree
/// distribution, and a framing function per variable-node degree.
struct DeSpec {
    Alphabet alpha;
    DegreeDistribution dist;
    std::map<int, FramingFunction> framings; // keyed by variable degree
    double mu = 1.0;
    int max_iter = 2000;
    double eta = 1e-6; // convergence target on AP-LLR error probability

    // Error accounting over the AP-LLR densities. Empty weights = node
    // fractions of every degree; a WiMAX-style run restricts to the
    // systematic degrees (the BER the reported thresholds refer to).
    // Mass at exactly 0 decodes to bit 0, hence correct under the
    // all-zero assumption; weight it 0.5 for the randomized-tie reading.
    std::map<int, double> error_weights;
    double zero_error_weight = 0.0;

    const FramingFunction& framing_for(int degree) const;
    void validate() const;
};

struct DeOutcome {
    bool converged = false;
    int iterations = 0;  // iterations actually run
    double error = 1.0;  // AP error probability at exit
};

/// Check-node density update, Eq.1 statistics: sign product, min magnitude,
/// dc-1 independent inbound edges. Closed form via tail sums.
Pmf de_cn(const Pmf& v, int dc);

/// Variable-node density update for one degree: channel pmf convolved with
/// d-1 check messages, saturated to [-Q, Q], pushed through the framing
/// with the +-lambda mass at 0 split evenly.
Pmf de_vn(const Pmf& c, const Pmf& u, int dv, const FramingFunction& f, int Q);

/// Error probability of the a-posteriori sum c (x) u^(x)dv. Degrees are
/// mixed by `weights` (node fractions of dist when empty); the mass at 0
/// counts with weight zero_weight.
double de_ap_error(const Pmf& c, const Pmf& u, const DegreeDistribution& dist,
                   const std::map<int, double>& weights = {}, double zero_weight = 0.0);

DeOutcome de_run(const DeSpec& spec, double sigma);

/// Per-iteration AP error probabilities, iterations 1..n. Used to
/// cross-check Monte-Carlo traces.
std::vector<double> de_error_trace(const DeSpec& spec, double sigma, int iters);

/// Smallest SNR (dB) where DE reaches eta, to tol_db, by bisection.
/// Returns NaN when even hi_db fails.
double de_threshold(const DeSpec& spec, double lo_db = -2.0, double hi_db = 12.0,
                    double tol_db = 1e-3);

struct MuScanResult {
    double mu = 0.0;
    double threshold_db = 0.0;
    std::vector<std::pair<double, double>> scanned; // (mu, threshold or NaN)
};

/// Grid scan over the channel gain, keeping the best threshold. Candidates
/// are pre-screened at the incumbent threshold before a full bisection.
MuScanResult optimize_mu(DeSpec spec, double mu_lo = 1.0, double mu_hi = 12.0,
                         double mu_step = 0.1, double lo_db = -2.0, double hi_db = 12.0,
                         double tol_db = 1e-3, bool keep_scan = false);

} // namespace nsfaid

#endif
