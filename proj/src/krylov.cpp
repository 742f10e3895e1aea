#include "stdd/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stdd {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

namespace {

void check_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) throw std::runtime_error("GMRES operator produced a non-finite value");
}

} // namespace

GmresResult gmres(const LinearMap& a, std::span<const double> b, std::span<const double> x0,
                  const GmresOptions& opts, const LinearMap& left_precond, const GmresMonitor& monitor) {
    const std::size_t n = b.size();
    if (x0.size() != n) throw std::invalid_argument("initial guess size does not match the right-hand side");
    GmresResult res;
    res.x.assign(x0.begin(), x0.end());
    std::vector<double> tmp(n), w(n);

    auto apply = [&](std::span<const double> x, std::span<double> y) {
        if (left_precond) {
            a(x, tmp);
            left_precond(tmp, y);
        } else {
            a(x, y);
        }
        check_finite(y);
    };
    auto residual = [&](std::span<double> r) {
        a(res.x, tmp);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = b[i] - tmp[i];
        if (left_precond) left_precond(tmp, r);
        else std::copy(tmp.begin(), tmp.end(), r.begin());
        check_finite(r);
    };

    std::vector<double> r(n);
    residual(r);
    const double rnorm0 = norm2(r);
    // Residuals are reported relative to the (preconditioned) right-hand
    // side; for homogeneous problems relative to the initial residual.
    double r0 = rnorm0;
    const bool zero_b = std::all_of(b.begin(), b.end(), [](double v) { return v == 0.0; });
    const bool zero_x0 = std::all_of(x0.begin(), x0.end(), [](double v) { return v == 0.0; });
    if (!zero_b && !zero_x0) {
        if (left_precond) {
            std::vector<double> pb(n);
            left_precond(b, pb);
            check_finite(pb);
            r0 = norm2(pb);
        } else {
            r0 = norm2(b);
        }
    }
    res.residuals.push_back(r0 > 0.0 ? rnorm0 / r0 : 0.0);
    if (rnorm0 == 0.0 || rnorm0 <= opts.tol * r0) {
        res.converged = true;
        res.stop_reason = "initial guess within tolerance";
        return res;
    }
    const int m = opts.restart > 0 ? opts.restart : opts.max_iter;
    int total = 0;
    double beta = rnorm0;

    while (total < opts.max_iter) {
        std::vector<std::vector<double>> v;
        v.reserve(m + 1);
        v.emplace_back(r);
        for (double& x : v[0]) x /= beta;
        std::vector<std::vector<double>> h; // columns, each of length j+2
        std::vector<double> cs, sn, g{beta};
        int j = 0;
        bool stop = false;

        auto update = [&](int cols) {
            std::vector<double> y(cols);
            for (int i = cols - 1; i >= 0; --i) {
                double s = g[i];
                for (int k = i + 1; k < cols; ++k) s -= h[k][i] * y[k];
                y[i] = s / h[i][i];
            }
            std::vector<double> x = res.x;
            for (int k = 0; k < cols; ++k)
                for (std::size_t i = 0; i < n; ++i) x[i] += y[k] * v[k][i];
            return x;
        };

        for (; j < m && total < opts.max_iter; ++j) {
            apply(v[j], w);
            std::vector<double> col(j + 2, 0.0);
            const double wnorm0 = norm2(w);
            double worst = 0.0;
            for (int i = 0; i <= j; ++i) {
                const double hij = dot(v[i], w);
                col[i] = hij;
                for (std::size_t q = 0; q < n; ++q) w[q] -= hij * v[i][q];
            }
            double wnorm = norm2(w);
            for (int i = 0; i <= j; ++i) worst = std::max(worst, std::abs(dot(v[i], w)));
            if (wnorm > 0.0 && worst / wnorm > 1e-8) {
                for (int i = 0; i <= j; ++i) {
                    const double c = dot(v[i], w);
                    col[i] += c;
                    for (std::size_t q = 0; q < n; ++q) w[q] -= c * v[i][q];
                }
                wnorm = norm2(w);
            }
            col[j + 1] = wnorm;
            for (int i = 0; i < j; ++i) {
                const double t = cs[i] * col[i] + sn[i] * col[i + 1];
                col[i + 1] = -sn[i] * col[i] + cs[i] * col[i + 1];
                col[i] = t;
            }
            const double denom = std::hypot(col[j], col[j + 1]);
            const double c = denom == 0.0 ? 1.0 : col[j] / denom;
            const double s = denom == 0.0 ? 0.0 : col[j + 1] / denom;
            cs.push_back(c);
            sn.push_back(s);
            col[j] = denom;
            col[j + 1] = 0.0;
            g.push_back(-s * g[j]);
            g[j] *= c;
            h.push_back(std::move(col));
            ++total;
            const double rel = std::abs(g[j + 1]) / r0;
            res.residuals.push_back(rel);
            const bool breakdown = wnorm <= 1e-14 * std::max(wnorm0, 1e-300);
            if (monitor) {
                const int cols = j + 1;
                std::function<std::vector<double>()> it = [&, cols]() { return update(cols); };
                if (!monitor(total, rel, it)) {
                    res.stop_reason = "stopped by monitor";
                    stop = true;
                }
            }
            if (rel <= opts.tol) {
                res.converged = true;
                res.stop_reason = "tolerance reached";
                stop = true;
            } else if (breakdown) {
                res.converged = true;
                res.stop_reason = "happy breakdown";
                stop = true;
            }
            if (stop) {
                ++j;
                break;
            }
            v.emplace_back(w);
            for (double& x : v.back()) x /= wnorm;
        }
        res.x = update(j);
        res.iterations = total;
        if (stop) return res;
        if (total >= opts.max_iter) break;
        residual(r);
        beta = norm2(r);
    }
    res.stop_reason = "iteration limit";
    return res;
}

} // namespace stdd
