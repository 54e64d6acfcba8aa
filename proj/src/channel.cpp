#include "nsfaid/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nsfaid {

double snr_db_from_sigma(double sigma) { return -20.0 * std::log10(sigma); }

double sigma_from_snr_db(double snr_db) { return std::pow(10.0, -snr_db / 20.0); }

ChannelParams ChannelParams::from_snr_db(double snr_db, double mu) {
    return ChannelParams{sigma_from_snr_db(snr_db), mu};
}

std::vector<double> transmit(const std::vector<std::uint8_t>& bits, double sigma, Rng& rng) {
    std::vector<double> y(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        double x = bits[i] ? -1.0 : 1.0;
        y[i] = x + sigma * rng.next_gauss();
    }
    return y;
}

int quantize(double y, double mu, int Q) {
    double v = mu * y;
    long long r = std::llround(v); // exact halves round away from zero
    if (r > Q) return Q;
    if (r < -Q) return -Q;
    return static_cast<int>(r);
}

// P(N(0,1) <= t), written via erfc for accuracy deep in the tail.
static double std_normal_cdf(double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); }

Pmf channel_pmf(double sigma, double mu, int Q) {
    if (sigma <= 0.0 || mu <= 0.0) throw std::invalid_argument("channel_pmf: sigma and mu must be positive");
    // gamma = k  <=>  mu*y in [k-1/2, k+1/2), y ~ N(+1, sigma^2); the
    // outermost bins absorb the tails.
    Pmf c;
    c.lo = -Q;
    c.p.assign(2 * Q + 1, 0.0);
    auto cdf_at = [&](double edge) { // P(mu*y <= edge)
        return std_normal_cdf((edge / mu - 1.0) / sigma);
    };
    double lower = 0.0; // cdf at -inf
    for (int k = -Q; k <= Q; ++k) {
        double upper = (k == Q) ? 1.0 : cdf_at(k + 0.5);
        double mass = upper - lower;
        if (mass < 1e-300) mass = 0.0;
        c.ref(k) = mass;
        lower = upper;
    }
    c.normalize();
    return c;
}

} // namespace nsfaid
