#include "diqpq/chsh.hpp"

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

GameAngles optimal_angles(double theta) {
    require_theta(theta);
    const double phi = std::atan(1.0 / std::sin(theta));
    return GameAngles{theta, phi, kPi / 2 - phi, kPi / 2 + phi};
}

double success_probability(double theta, double psi1, double psi2) {
    require_theta(theta);
    return (std::sin(theta) * (std::sin(psi1) + std::sin(psi2)) +
            std::cos(psi1) - std::cos(psi2)) / 8.0 + 0.5;
}

double success_probability_biased(double theta, double psi1, double psi2,
                                  double eps_a) {
    require_theta(theta);
    if (!(eps_a >= 0.0 && eps_a <= 0.5)) {
        throw std::domain_error("eps_a must lie in [0, 1/2]");
    }
    return 0.5 + std::sin(theta) * (std::sin(psi1) + std::sin(psi2)) / 8.0 +
           std::sqrt(0.25 - eps_a * eps_a) * (std::cos(psi1) - std::cos(psi2)) / 4.0 +
           eps_a * std::cos(theta) * (std::cos(psi1) + std::cos(psi2)) / 4.0;
}

double p_max(double theta) {
    require_theta(theta);
    const double s = std::sin(theta);
    return 0.5 + std::sqrt(1.0 + s * s) / 4.0;
}

ProjectiveBasis first_qubit_basis(int x) {
    return basis_from_angle(x == 0 ? 0.0 : kPi / 2);
}

ProjectiveBasis second_qubit_basis(int y, const GameAngles& angles) {
    return basis_from_angle(y == 0 ? angles.psi1 : angles.psi2);
}

double oracle_success_probability(const TwoQubitState& state,
                                  const GameAngles& angles) {
    double total = 0.0;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const auto dist = joint_distribution(state, first_qubit_basis(x),
                                                 second_qubit_basis(y, angles));
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    if (chsh_win(x, y, a, b)) total += dist.p[2 * a + b];
                }
            }
        }
    }
    return total / 4.0;
}

std::vector<std::pair<double, double>> pmax_curve(double theta_min,
                                                  double theta_max,
                                                  int steps,
                                                  bool full_range) {
    const double upper = full_range ? kPi : kPi / 2;
    if (!(theta_min > 0.0 && theta_min <= theta_max && theta_max <= upper)) {
        throw std::domain_error("invalid theta range");
    }
    if (steps < 1) throw std::domain_error("steps must be >= 1");

    // Closed form only: for theta > pi/2 the constructors would reject,
    // but the curve is defined by symmetry of sin^2 theta.
    auto closed_form = [](double theta) {
        const double s = std::sin(theta);
        return 0.5 + std::sqrt(1.0 + s * s) / 4.0;
    };

    std::vector<std::pair<double, double>> rows;
    rows.reserve(static_cast<std::size_t>(steps));
    if (steps == 1) {
        rows.emplace_back(theta_min, closed_form(theta_min));
        return rows;
    }
    const double step = (theta_max - theta_min) / (steps - 1);
    for (int i = 0; i < steps; ++i) {
        const double theta = theta_min + step * i;
        rows.emplace_back(theta, closed_form(theta));
    }
    return rows;
}

} // namespace diqpq
