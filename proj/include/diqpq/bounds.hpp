#pragma once

#include <cstdint>
#include <vector>

namespace diqpq {

// Parameters of the statistical machinery for one protocol execution.
struct BoundsParams {
    double eps;       // accuracy fraction, in (0,1)
    double gamma;     // confidence complement, in (0,1]
    double eps_chsh;  // tail probability for the test-set deviation
    double eps_qpq;   // tail probability for the remaining-set deviation
    long long m;      // test-set size
    long long n;      // total state count, m < n
};

/// Smallest integer m with m >= ln(1/gamma) / (2 eps^2 p^2).
/// gamma = 1 is allowed and yields 0.
long long chernoff_sample_size(double eps, double gamma, double p);

/// delta = sqrt( ln(1/eps_chsh) / (2m) ), the test-set deviation radius.
double chsh_deviation_delta(long long m, double eps_chsh);

/// nu = sqrt( (m+1) / (2 (1 - m/n) m^2) * ln(1/eps_qpq) ), the deviation
/// radius between the test-set and remaining-set success rates.
double qpq_deviation_nu(long long m, long long n, double eps_qpq);

/// Tail bound for sampling k of n values in [a,b] without replacement:
///   exp( -2 delta^2 k n / ((n - k + 1)(b - a)) ), clamped to [0,1].
/// Note the (b-a) scaling is not squared; every internal use fixes
/// [a,b] = [0,1], where the distinction vanishes.
double serfling_tail(long long n, long long k, double delta, double a, double b);

/// Deviation such that the subset/remainder means differ by more than it
/// with probability at most eps:
///   sqrt( n (t+1) / (2 t^2 (n - t)) * ln(1/eps) )
/// Algebraically identical to qpq_deviation_nu(t, n, eps).
double serfling_corollary_deviation(long long n, long long t, double eps);

// Closed interval of admissible test statistics.
struct ProbabilityInterval {
    double lo;
    double hi;

    bool contains(double v) const { return lo <= v && v <= hi; }
};

/// [p_max(theta)(1 - eps), min(1, p_max(theta)(1 + eps))], both ends
/// inclusive.
ProbabilityInterval acceptance_interval(double theta, double eps);

enum class SweepAxis { Epsilon, PMax };

/// (axis value, m_opt) table along eps or p_max. The fixed value of the
/// other parameter is taken from `fixed_p` (Epsilon axis) or `fixed_eps`
/// (PMax axis).
std::vector<std::pair<double, long long>> sample_size_sweep(SweepAxis axis,
                                                            double lo,
                                                            double hi,
                                                            int steps,
                                                            double gamma,
                                                            double fixed_p,
                                                            double fixed_eps);

} // namespace diqpq
