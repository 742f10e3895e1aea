#include "stdd/robin_opt.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

namespace stdd {

std::complex<double> sigma(double omega, double phi, double d) {
    // std::sqrt returns the branch with non-negative real part.
    return std::sqrt(std::complex<double>(0.0, omega * phi * d));
}

double convergence_factor(double omega, const SidePair& p, std::complex<double> a12, std::complex<double> a21) {
    const auto s1 = sigma(omega, p.phi1, p.d1);
    const auto s2 = sigma(omega, p.phi2, p.d2);
    return std::abs((s1 - a21) / (s1 + a12)) * std::abs((s2 - a12) / (s2 + a21));
}

double convergence_factor(double omega, const SidePair& p, double a12, double a21) {
    return convergence_factor(omega, p, std::complex<double>(a12), std::complex<double>(a21));
}

FrequencyBand frequency_band(double window, double tau_min) {
    if (!(window > 0.0) || !(tau_min > 0.0) || tau_min >= window)
        throw std::invalid_argument("frequency band needs 0 < tau < T");
    return {std::numbers::pi / window, std::numbers::pi / tau_min};
}

namespace {

std::vector<double> log_samples(double lo, double hi, int n) {
    std::vector<double> out(n);
    const double a = std::log(lo), b = std::log(hi);
    for (int k = 0; k < n; ++k) out[k] = std::exp(n == 1 ? a : a + (b - a) * k / (n - 1));
    return out;
}

double max_over(const SidePair& p, const std::vector<double>& omegas, double a12, double a21) {
    double m = 0.0;
    for (double w : omegas) m = std::max(m, convergence_factor(w, p, a12, a21));
    return m;
}

void validate(const SidePair& p, const FrequencyBand& band, int samples) {
    if (!(band.omega_min > 0.0) || !(band.omega_max > band.omega_min))
        throw std::invalid_argument("frequency band must satisfy 0 < omega_min < omega_max");
    if (!(p.d1 > 0 && p.d2 > 0 && p.phi1 > 0 && p.phi2 > 0))
        throw std::invalid_argument("side coefficients must be positive");
    if (samples < 2) throw std::invalid_argument("need at least two frequency samples");
}

} // namespace

double max_factor(const SidePair& p, const FrequencyBand& band, double alpha12, double alpha21, int samples) {
    validate(p, band, samples);
    return max_over(p, log_samples(band.omega_min, band.omega_max, samples), alpha12, alpha21);
}

RobinParameters optimize_robin(const SidePair& p, const FrequencyBand& band, int samples) {
    validate(p, band, samples);
    const auto omegas = log_samples(band.omega_min, band.omega_max, samples);
    const double slo = std::min(std::abs(sigma(band.omega_min, p.phi1, p.d1)), std::abs(sigma(band.omega_min, p.phi2, p.d2)));
    const double shi = std::max(std::abs(sigma(band.omega_max, p.phi1, p.d1)), std::abs(sigma(band.omega_max, p.phi2, p.d2)));
    double lo1 = std::log(0.1 * slo), hi1 = std::log(10.0 * shi);
    double lo2 = lo1, hi2 = hi1;
    constexpr int n = 41;
    RobinParameters best{std::exp(0.5 * (lo1 + hi1)), std::exp(0.5 * (lo2 + hi2)), 0.0};
    best.max_rho = max_over(p, omegas, best.alpha12, best.alpha21);
    double worst = best.max_rho;
    for (int round = 0; round < 12; ++round) {
        const double h1 = (hi1 - lo1) / (n - 1), h2 = (hi2 - lo2) / (n - 1);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const double a12 = std::exp(lo1 + a * h1), a21 = std::exp(lo2 + b * h2);
                const double r = max_over(p, omegas, a12, a21);
                worst = std::max(worst, r);
                // Ties go to the smaller alpha12 so that the result is reproducible.
                if (r < best.max_rho * (1.0 - 1e-13) ||
                    (r <= best.max_rho * (1.0 + 1e-13) && a12 < best.alpha12 * (1.0 - 1e-12))) {
                    best = {a12, a21, r};
                }
            }
        const double c1 = std::log(best.alpha12), c2 = std::log(best.alpha21);
        lo1 = c1 - 4 * h1;
        hi1 = c1 + 4 * h1;
        lo2 = c2 - 4 * h2;
        hi2 = c2 + 4 * h2;
    }
    if (worst - best.max_rho <= 1e-12 * std::max(1.0, worst)) {
        std::cerr << "warning: flat Robin objective, using the band midpoint\n";
        const double mid = std::sqrt(band.omega_min * band.omega_max);
        const double a = 0.5 * (std::abs(sigma(mid, p.phi1, p.d1)) + std::abs(sigma(mid, p.phi2, p.d2)));
        return {a, a, max_over(p, omegas, a, a)};
    }
    return best;
}

} // namespace stdd
