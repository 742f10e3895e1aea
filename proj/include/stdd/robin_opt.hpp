/**
 * @file robin_opt.hpp
 * @brief Two-sided Robin parameters minimizing the continuous convergence
 *        factor of the Schwarz waveform relaxation for a pure-diffusion model.
 */
#pragma once

#include <complex>
#include <vector>

namespace stdd {

/// Coefficients of the two sides of one interface.
struct SidePair {
    double phi1 = 1.0, d1 = 1.0;
    double phi2 = 1.0, d2 = 1.0;
};

/// sigma_i(omega) = sqrt(i omega phi_i d_i), principal branch.
std::complex<double> sigma(double omega, double phi, double d);

/// Convergence factor at frequency omega for Robin parameters alpha12 (used by
/// subdomain 1) and alpha21 (used by subdomain 2).
double convergence_factor(double omega, const SidePair& p, double alpha12, double alpha21);
double convergence_factor(double omega, const SidePair& p, std::complex<double> alpha12,
                          std::complex<double> alpha21);

struct FrequencyBand {
    double omega_min = 0.0;
    double omega_max = 0.0;
};

/// [pi/T, pi/tau_min] for window T and smallest diffusion step tau_min.
FrequencyBand frequency_band(double window, double tau_min);

struct RobinParameters {
    double alpha12 = 0.0;
    double alpha21 = 0.0;
    double max_rho = 0.0; ///< sup of the convergence factor over the sampled band
};

/// Maximum of the factor over `samples` log-spaced frequencies in the band.
double max_factor(const SidePair& p, const FrequencyBand& band, double alpha12, double alpha21, int samples = 200);

/// Min-max over positive real parameter pairs. Throws std::invalid_argument on
/// a degenerate band or non-positive coefficients.
RobinParameters optimize_robin(const SidePair& p, const FrequencyBand& band, int samples = 200);

} // namespace stdd
