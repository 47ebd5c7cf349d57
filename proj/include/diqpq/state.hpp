#pragma once

#include <array>
#include <complex>
#include <utility>

#include "diqpq/rng.hpp"

namespace diqpq {

using Amplitude = std::complex<double>;

// Pure two-qubit state over the ordered basis |00>, |01>, |10>, |11>.
// First factor is Bob's certifying qubit, second the queried qubit.
struct TwoQubitState {
    std::array<Amplitude, 4> amp;

    double norm_sq() const;
};

/// (1/sqrt2)(|0>|phi0> + |1>|phi1>) with phi0/phi1 at +-theta.
/// theta must lie in (0, pi/2]; theta = 0 degenerates to a product state
/// and is rejected.
TwoQubitState make_honest_state(double theta);

/// alpha|0>|phi0> + beta|1>|phi1> with |alpha|^2 = 1/2 + eps_a.
/// alpha, beta taken real non-negative; eps_a in [0, 1/2].
TwoQubitState make_biased_state(double theta, double eps_a);

// Single-qubit measurement basis parameterized by one angle:
//   outcome 0:  cos(mu/2)|0> + sin(mu/2)|1>
//   outcome 1:  sin(mu/2)|0> - cos(mu/2)|1>
struct ProjectiveBasis {
    double angle;

    /// Real amplitudes (c0, c1) of the outcome-k basis vector.
    std::array<double, 2> outcome(int k) const;
};

/// Basis at angle mu, normalized into [0, 2*pi).
ProjectiveBasis basis_from_angle(double mu);

// Joint outcome probabilities in the fixed order (0,0), (0,1), (1,0), (1,1).
struct OutcomeDistribution {
    std::array<double, 4> p;

    double sum() const;
};

/// Born-rule joint distribution of measuring the first qubit in `first`
/// and the second in `second`. The state must be normalized within 1e-9.
OutcomeDistribution joint_distribution(const TwoQubitState& state,
                                       const ProjectiveBasis& first,
                                       const ProjectiveBasis& second);

/// Inverse-CDF draw over the fixed outcome order (0,0),(0,1),(1,0),(1,1).
std::pair<int, int> sample_outcome(const OutcomeDistribution& dist, RngStream& rng);

} // namespace diqpq
