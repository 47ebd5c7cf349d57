#include "diqpq/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "diqpq/bounds.hpp"
#include "diqpq/chsh.hpp"

namespace diqpq {

namespace {

void require_eps_a(double eps_a) {
    if (!(eps_a >= 0.0 && eps_a <= 0.5)) {
        throw std::domain_error("eps_a must lie in [0, 1/2]");
    }
}

// c = 2 eps p_max / cos psi1 at the optimal angles; psi1 lies in
// (0, pi/2) for theta in (0, pi/2], so the cosine is positive.
double threshold_scale(double theta, double eps) {
    if (!(eps >= 0.0)) throw std::domain_error("eps must be >= 0");
    const GameAngles angles = optimal_angles(theta);
    return 2.0 * eps * p_max(theta) / std::cos(angles.psi1);
}

} // namespace

double bias_threshold_paper(double theta, double eps) {
    return std::min(0.5, std::sqrt(threshold_scale(theta, eps)));
}

double bias_threshold_exact(double theta, double eps) {
    const double c = threshold_scale(theta, eps);
    if (c >= 0.5) return 0.5;
    return std::sqrt(c * (1.0 - c));
}

double bias_threshold_partial(double theta, double eps, long long r, long long n) {
    if (r < 1 || r > n) throw std::domain_error("r must lie in [1, n]");
    const double scale = std::sqrt(static_cast<double>(n) / static_cast<double>(r));
    return std::min(0.5, bias_threshold_paper(theta, eps) * scale);
}

double leakage_fraction(double theta, double eps_a) {
    require_eps_a(eps_a);
    const double s = std::sin(theta);
    return (0.5 + 2.0 * eps_a * eps_a) * s * s;
}

double additional_leakage(double theta, double eps_a) {
    require_eps_a(eps_a);
    const double s = std::sin(theta);
    return eps_a * eps_a * s * s;
}

std::vector<AttackSweepRow> attack_sweep(double theta, double eps,
                                         double eps_a_min, double eps_a_max,
                                         int steps) {
    if (steps < 1) throw std::domain_error("steps must be >= 1");
    if (!(eps_a_min <= eps_a_max)) throw std::domain_error("requires min <= max");
    require_eps_a(eps_a_min);
    require_eps_a(eps_a_max);

    const GameAngles angles = optimal_angles(theta);
    const ProbabilityInterval interval = acceptance_interval(theta, eps);

    std::vector<AttackSweepRow> rows;
    rows.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double eps_a = steps == 1
            ? eps_a_min
            : eps_a_min + (eps_a_max - eps_a_min) * i / (steps - 1);
        const double p = success_probability_biased(theta, angles.psi1,
                                                    angles.psi2, eps_a);
        rows.push_back(AttackSweepRow{eps_a, p, interval.contains(p),
                                      leakage_fraction(theta, eps_a)});
    }
    return rows;
}

} // namespace diqpq
