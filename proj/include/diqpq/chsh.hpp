#pragma once

#include <vector>

#include "diqpq/state.hpp"

namespace diqpq {

// CHSH measurement configuration. For the optimal configuration at a
// given theta: phi = arctan(1/sin theta), psi1 = pi/2 - phi,
// psi2 = pi/2 + phi (so psi1 + psi2 = pi).
struct GameAngles {
    double theta;
    double phi;
    double psi1;
    double psi2;
};

/// Angle configuration maximizing the CHSH success probability for the
/// state family at `theta`; theta in (0, pi/2].
GameAngles optimal_angles(double theta);

/// Closed-form CHSH success probability of the honest state:
///   1/8 (sin theta (sin psi1 + sin psi2) + cos psi1 - cos psi2) + 1/2
double success_probability(double theta, double psi1, double psi2);

/// Closed-form success probability p'' of the biased state
/// (|alpha|^2 = 1/2 + eps_a):
///   1/2 + 1/8 sin theta (sin psi1 + sin psi2)
///       + 1/4 sqrt(1/4 - eps_a^2) (cos psi1 - cos psi2)
///       + 1/4 eps_a cos theta (cos psi1 + cos psi2)
double success_probability_biased(double theta, double psi1, double psi2,
                                  double eps_a);

/// Maximum success probability at `theta`: 1/2 + sqrt(1 + sin^2 theta)/4.
double p_max(double theta);

/// CHSH win predicate: a xor b == x and y.
inline bool chsh_win(int x, int y, int a, int b) {
    return ((a ^ b) == (x & y));
}

/// Input-to-basis map used project-wide: x=0 -> computational, x=1 ->
/// Hadamard for the first qubit; y selects psi1/psi2 for the second.
ProjectiveBasis first_qubit_basis(int x);
ProjectiveBasis second_qubit_basis(int y, const GameAngles& angles);

/// Success probability computed purely from joint_distribution over all
/// four input pairs with uniform (x, y); verification oracle for the
/// closed forms above.
double oracle_success_probability(const TwoQubitState& state,
                                  const GameAngles& angles);

/// Sampled (theta, p_max) curve. Range must satisfy
/// 0 < theta_min <= theta_max, with theta_max <= pi/2 unless `full_range`
/// permits emission up to pi via the closed form.
std::vector<std::pair<double, double>> pmax_curve(double theta_min,
                                                  double theta_max,
                                                  int steps,
                                                  bool full_range = false);

} // namespace diqpq
