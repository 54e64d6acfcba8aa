#ifndef NSFAID_CHANNEL_HPP
#define NSFAID_CHANNEL_HPP

#include <cstdint>
#include <vector>

#include "nsfaid/pmf.hpp"
#include "nsfaid/rng.hpp"

namespace nsfaid {

/// BPSK-AWGN with SNR(dB) = 10 log10(1/sigma^2). Both shipped codes are
/// rate 1/2, where this coincides with Eb/N0.
double snr_db_from_sigma(double sigma);
double sigma_from_snr_db(double snr_db);

struct ChannelParams {
    double sigma = 1.0;
    double mu = 1.0; // gain factor of the quantizer
    double snr_db() const { return snr_db_from_sigma(sigma); }
    static ChannelParams from_snr_db(double snr_db, double mu);
};

/// BPSK map: bit 0 -> +1, bit 1 -> -1, plus N(0, sigma^2) noise.
std::vector<double> transmit(const std::vector<std::uint8_t>& bits, double sigma, Rng& rng);

/// Nearest integer to mu*y in {-Q..Q}; exact halves round away from zero.
int quantize(double y, double mu, int Q);

/// Exact pmf of quantize(y) for y ~ N(+1, sigma^2), support [-Q, Q].
Pmf channel_pmf(double sigma, double mu, int Q);

} // namespace nsfaid

#endif
