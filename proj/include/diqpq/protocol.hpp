#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diqpq/adversary.hpp"
#include "diqpq/bounds.hpp"
#include "diqpq/chsh.hpp"
#include "diqpq/state.hpp"

namespace diqpq {

// Parameters of one protocol execution. The canonical choice is
// m = chernoff_sample_size(eps, gamma, p_max(theta)) and n = 2m; larger
// n is accepted with a warning since it is what the r-of-n attack needs.
struct ProtocolParams {
    double theta;
    double eps;
    double gamma;
    double eps_chsh = 1e-6;
    double eps_qpq = 1e-6;
    long long n = 0;
    long long m = 0;

    static ProtocolParams defaults(double theta, double eps, double gamma);

    void validate() const;
};

struct RoundRecord {
    long long index;  // state index this round consumed
    int x, y;         // inputs
    int a, b;         // encoded outcomes
    int win;          // Y = [a xor b == x and y]
};

enum class Decision { Accept, Abort };

// Key-establishment results over the QPQ subset. alice_results holds -1
// for inconclusive, otherwise the conclusively known bit.
struct KeyTranscript {
    std::vector<std::uint8_t> bob_bits;
    std::vector<std::int8_t> alice_results;

    long long conclusive_count() const;
    double conclusive_fraction() const;
};

struct Transcript {
    ProtocolParams params;
    std::optional<AdversaryConfig> adversary;
    std::vector<long long> chsh_indices;
    std::vector<long long> qpq_indices;
    std::vector<RoundRecord> rounds;  // one per CHSH test round
    double test_statistic = 0.0;
    Decision decision = Decision::Abort;
    KeyTranscript key;  // empty on abort
    std::uint64_t seed = 0;
};

/// Uniformly random m-subset split of {0..n-1} via a seeded partial
/// Fisher-Yates shuffle; both halves returned in increasing index order.
std::pair<std::vector<long long>, std::vector<long long>>
partition_states(long long n, long long m, RngStream& rng);

/// One CHSH test round: first qubit measured at mu=0 (x=0) or mu=pi/2
/// (x=1), second at psi1 (y=0) or psi2 (y=1); outcome-0 of each basis
/// encodes as 0. Draw order: the joint outcome (one uniform).
RoundRecord chsh_round(const TwoQubitState& state, int x, int y,
                       const GameAngles& angles, RngStream& rng);

/// Mean of Y over the rounds and the accept/abort decision against the
/// closed interval.
std::pair<double, Decision> evaluate_test(const std::vector<RoundRecord>& rounds,
                                          const ProbabilityInterval& interval);

/// Key phase over the given indices. Bob measures his qubit in the
/// computational basis; Alice measures hers in the phi0 basis (mu=theta)
/// with probability 1/2 - basis_bias, else the phi1 basis (mu=-theta);
/// the perpendicular outcome is conclusive (phi0-perp => 1, phi1-perp
/// => 0). `biased` optionally flags which state indices carry the
/// adversary's preparation bias (default: all of them, when adversarial).
/// Per-index randomness comes from rng.substream(index).
KeyTranscript qpq_key_phase(const std::vector<long long>& indices, double theta,
                            const std::optional<AdversaryConfig>& adversary,
                            RngStream& rng,
                            const std::vector<std::uint8_t>* biased = nullptr);

/// Full protocol: build n states (placing any r biased ones uniformly at
/// random), partition, run the m CHSH test rounds with fresh uniform
/// (x, y), decide, and run the key phase only on accept. Deterministic
/// given the seed; abort is a valid outcome, not an error.
Transcript run_protocol(const ProtocolParams& params,
                        const std::optional<AdversaryConfig>& adversary,
                        std::uint64_t seed);

/// Fraction of `trials` in which the test-set and remaining-set CHSH
/// success rates of an honest simulation differ by more than
/// qpq_deviation_nu(m, n, eps_qpq).
double verify_theorem1(double theta, long long m, long long n, int trials,
                       double eps_qpq, std::uint64_t seed, int threads = 1);

struct MonteCarloSummary {
    int trials = 0;
    double acceptance_rate = 0.0;
    double mean_statistic = 0.0;
    double stddev_statistic = 0.0;
    double mean_conclusive_fraction = 0.0;  // over accepted trials
    double mean_known_fraction = 0.0;       // fraction of Bob's key Alice knows
};

/// Aggregate over independent trials; trial i uses
/// derive_trial_seed(seed, i), so results are independent of execution
/// order and thread count.
MonteCarloSummary monte_carlo_summary(const ProtocolParams& params,
                                      const std::optional<AdversaryConfig>& adversary,
                                      int trials, std::uint64_t seed,
                                      int threads = 1);

/// JSON serialization of a transcript (rounds flag-gated for size).
/// Probabilities are rounded to 9 decimal places; counts are exact.
std::string transcript_to_json(const Transcript& t, bool include_rounds = false);

} // namespace diqpq
