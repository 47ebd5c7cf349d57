#include "diqpq/state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace diqpq {

namespace {

constexpr double kPi = std::numbers::pi;

void require_theta(double theta) {
    if (!(theta > 0.0 && theta <= kPi / 2 + 1e-9)) {
        throw std::domain_error("theta must lie in (0, pi/2]");
    }
}

} // namespace

double TwoQubitState::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amp) s += std::norm(a);
    return s;
}

TwoQubitState make_honest_state(double theta) {
    require_theta(theta);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return TwoQubitState{{Amplitude(inv_sqrt2 * c), Amplitude(inv_sqrt2 * s),
                          Amplitude(inv_sqrt2 * c), Amplitude(-inv_sqrt2 * s)}};
}

TwoQubitState make_biased_state(double theta, double eps_a) {
    require_theta(theta);
    if (!(eps_a >= 0.0 && eps_a <= 0.5)) {
        throw std::domain_error("eps_a must lie in [0, 1/2]");
    }
    const double alpha = std::sqrt(0.5 + eps_a);
    const double beta = std::sqrt(0.5 - eps_a);
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return TwoQubitState{{Amplitude(alpha * c), Amplitude(alpha * s),
                          Amplitude(beta * c), Amplitude(-beta * s)}};
}

std::array<double, 2> ProjectiveBasis::outcome(int k) const {
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    return k == 0 ? std::array<double, 2>{c, s} : std::array<double, 2>{s, -c};
}

ProjectiveBasis basis_from_angle(double mu) {
    const double two_pi = 2 * kPi;
    double a = std::fmod(mu, two_pi);
    if (a < 0.0) a += two_pi;
    return ProjectiveBasis{a};
}

double OutcomeDistribution::sum() const {
    return p[0] + p[1] + p[2] + p[3];
}

OutcomeDistribution joint_distribution(const TwoQubitState& state,
                                       const ProjectiveBasis& first,
                                       const ProjectiveBasis& second) {
    if (std::abs(state.norm_sq() - 1.0) > 1e-9) {
        throw std::invalid_argument("state is not normalized");
    }
    OutcomeDistribution d{};
    for (int a = 0; a < 2; ++a) {
        const auto v1 = first.outcome(a);
        for (int b = 0; b < 2; ++b) {
            const auto v2 = second.outcome(b);
            Amplitude overlap = v1[0] * v2[0] * state.amp[0] +
                                v1[0] * v2[1] * state.amp[1] +
                                v1[1] * v2[0] * state.amp[2] +
                                v1[1] * v2[1] * state.amp[3];
            d.p[2 * a + b] = std::norm(overlap);
        }
    }
    return d;
}

std::pair<int, int> sample_outcome(const OutcomeDistribution& dist, RngStream& rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
        acc += dist.p[k];
        if (u < acc) return {k >> 1, k & 1};
    }
    return {1, 1};  // guard against rounding in the CDF
}

} // namespace diqpq
