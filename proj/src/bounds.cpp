#include "diqpq/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "diqpq/chsh.hpp"

namespace diqpq {

long long chernoff_sample_size(double eps, double gamma, double p) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("eps must lie in (0,1)");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::domain_error("gamma must lie in (0,1]");
    if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("p must lie in (0,1]");

    const double rate = 2.0 * eps * eps * p * p;
    const double log_inv_gamma = std::log(1.0 / gamma);
    long long m = static_cast<long long>(std::ceil(log_inv_gamma / rate));
    // Settle ties at the floating-point boundary: m must be the minimal
    // integer with rate * m >= log(1/gamma).
    while (m > 0 && rate * static_cast<double>(m - 1) >= log_inv_gamma) --m;
    while (rate * static_cast<double>(m) < log_inv_gamma) ++m;
    return m;
}

double chsh_deviation_delta(long long m, double eps_chsh) {
    if (m < 1) throw std::domain_error("m must be >= 1");
    if (!(eps_chsh > 0.0 && eps_chsh <= 1.0)) {
        throw std::domain_error("eps_chsh must lie in (0,1]");
    }
    return std::sqrt(std::log(1.0 / eps_chsh) / (2.0 * static_cast<double>(m)));
}

double qpq_deviation_nu(long long m, long long n, double eps_qpq) {
    if (m < 1) throw std::domain_error("m must be >= 1");
    if (n <= m) throw std::domain_error("n must exceed m");
    if (!(eps_qpq > 0.0 && eps_qpq <= 1.0)) {
        throw std::domain_error("eps_qpq must lie in (0,1]");
    }
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    return std::sqrt((md + 1.0) / (2.0 * (1.0 - md / nd) * md * md) *
                     std::log(1.0 / eps_qpq));
}

double serfling_tail(long long n, long long k, double delta, double a, double b) {
    if (k < 1 || k > n) throw std::domain_error("k must lie in [1, n]");
    if (!(a < b)) throw std::domain_error("requires a < b");
    if (delta < 0.0) throw std::domain_error("delta must be >= 0");
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    const double bound =
        std::exp(-2.0 * delta * delta * kd * nd / ((nd - kd + 1.0) * (b - a)));
    return std::clamp(bound, 0.0, 1.0);
}

double serfling_corollary_deviation(long long n, long long t, double eps) {
    if (t < 1 || t >= n) throw std::domain_error("t must lie in [1, n)");
    if (!(eps > 0.0 && eps <= 1.0)) throw std::domain_error("eps must lie in (0,1]");
    const double nd = static_cast<double>(n);
    const double td = static_cast<double>(t);
    return std::sqrt(nd * (td + 1.0) / (2.0 * td * td * (nd - td)) *
                     std::log(1.0 / eps));
}

ProbabilityInterval acceptance_interval(double theta, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("eps must lie in (0,1)");
    const double pm = p_max(theta);
    return ProbabilityInterval{pm * (1.0 - eps), std::min(1.0, pm * (1.0 + eps))};
}

std::vector<std::pair<double, long long>> sample_size_sweep(SweepAxis axis,
                                                            double lo,
                                                            double hi,
                                                            int steps,
                                                            double gamma,
                                                            double fixed_p,
                                                            double fixed_eps) {
    if (steps < 1) throw std::domain_error("steps must be >= 1");
    if (!(lo <= hi)) throw std::domain_error("requires lo <= hi");

    std::vector<std::pair<double, long long>> rows;
    rows.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double v = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
        const long long m = axis == SweepAxis::Epsilon
                                ? chernoff_sample_size(v, gamma, fixed_p)
                                : chernoff_sample_size(fixed_eps, gamma, v);
        rows.emplace_back(v, m);
    }
    return rows;
}

} // namespace diqpq
