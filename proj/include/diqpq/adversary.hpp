#pragma once

#include <optional>
#include <vector>

namespace diqpq {

// Alice's cheating strategy: she prepares states with bias eps_a
// (|alpha|^2 = 1/2 + eps_a) in r out of n positions, and in the key
// phase skews her basis choice by basis_bias (defaults to eps_a, as the
// two are coupled in the analyzed strategy).
struct AdversaryConfig {
    double eps_a = 0.0;
    long long r = -1;  // -1: all states biased
    std::optional<double> basis_bias;

    double effective_basis_bias() const { return basis_bias.value_or(eps_a); }
};

/// Largest state bias that keeps the biased success probability inside
/// the acceptance interval, per the quadratic-order analysis:
///   eps_a <= sqrt(2 eps p_max / cos psi1), capped at 1/2.
double bias_threshold_paper(double theta, double eps);

/// Exact version of the same threshold. With c = 2 eps p_max / cos psi1:
/// returns 1/2 when c >= 1/2, else sqrt(c (1 - c)). This is the largest
/// eps_a for which p'' at the optimal angles stays >= p_max (1 - eps).
double bias_threshold_exact(double theta, double eps);

/// Threshold when only r of n states carry the bias:
///   min(1/2, bias_threshold_paper * sqrt(n / r)).
double bias_threshold_partial(double theta, double eps, long long r, long long n);

/// Fraction of Bob's raw key Alice learns: (1/2 + 2 eps_a^2) sin^2 theta.
double leakage_fraction(double theta, double eps_a);

/// eps_a^2 sin^2 theta, the extra information credited to the bias.
/// Note leakage_fraction(theta, eps_a) - leakage_fraction(theta, 0)
/// equals twice this quantity; both are exposed.
double additional_leakage(double theta, double eps_a);

// One row of an attack sweep at the optimal angles.
struct AttackSweepRow {
    double eps_a;
    double success_prob;  // p'' at the optimal angles
    bool accepted;        // inside acceptance_interval(theta, eps)
    double leakage;       // leakage_fraction(theta, eps_a)
};

std::vector<AttackSweepRow> attack_sweep(double theta, double eps,
                                         double eps_a_min, double eps_a_max,
                                         int steps);

} // namespace diqpq
