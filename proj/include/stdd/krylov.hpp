/**
 * @file krylov.hpp
 * @brief Matrix-free GMRES with optional left preconditioning.
 */
#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace stdd {

/// y = A x. Implementations must not retain the spans.
using LinearMap = std::function<void(std::span<const double> x, std::span<double> y)>;

struct GmresOptions {
    double tol = 1e-6;   ///< on ||r_k|| / ||b||, or / ||r_0|| when b or x0 vanishes; preconditioned norms with left preconditioning
    int max_iter = 200;  ///< total Arnoldi steps
    int restart = 0;     ///< 0: no restart
};

/// Called after each Arnoldi step k (1-based) with the current relative
/// residual; `iterate()` forms x_k on demand. Returning false stops.
using GmresMonitor = std::function<bool(int k, double relative_residual,
                                        const std::function<std::vector<double>()>& iterate)>;

struct GmresResult {
    std::vector<double> x;
    int iterations = 0;
    bool converged = false;
    std::vector<double> residuals; ///< relative residual history, entry 0 is 1
    std::string stop_reason;
};

/// Throws std::runtime_error when the operator produces a non-finite value.
GmresResult gmres(const LinearMap& a, std::span<const double> b, std::span<const double> x0,
                  const GmresOptions& opts, const LinearMap& left_precond = {}, const GmresMonitor& monitor = {});

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

} // namespace stdd
