#include "diqpq/protocol.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <json.hpp>

namespace diqpq {

namespace {

// Fixed substream ids of one protocol execution.
constexpr std::uint64_t kStreamPartition = 1;
constexpr std::uint64_t kStreamPlacement = 2;
constexpr std::uint64_t kStreamChshRounds = 3;
constexpr std::uint64_t kStreamKeyPhase = 4;

double round9(double v) {
    return std::round(v * 1e9) / 1e9;
}

// First m slots of a partial Fisher-Yates shuffle of {0..n-1}.
std::vector<long long> random_subset(long long n, long long m, RngStream& rng) {
    std::vector<long long> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0LL);
    for (long long i = 0; i < m; ++i) {
        const auto j = i + static_cast<long long>(
                               rng.next_below(static_cast<std::uint64_t>(n - i)));
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
    idx.resize(static_cast<std::size_t>(m));
    return idx;
}

struct ChshDistributions {
    OutcomeDistribution by_input[2][2];
};

ChshDistributions precompute_chsh(const TwoQubitState& state,
                                  const GameAngles& angles) {
    ChshDistributions d;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            d.by_input[x][y] = joint_distribution(state, first_qubit_basis(x),
                                                  second_qubit_basis(y, angles));
        }
    }
    return d;
}

RoundRecord sample_round(const ChshDistributions& dists, long long index,
                         RngStream& rng) {
    const int x = rng.bit();
    const int y = rng.bit();
    const auto [a, b] = sample_outcome(dists.by_input[x][y], rng);
    return RoundRecord{index, x, y, a, b, chsh_win(x, y, a, b) ? 1 : 0};
}

// Alice's two key-phase measurement bases on the queried qubit.
struct KeyDistributions {
    OutcomeDistribution phi0;  // basis at mu = theta
    OutcomeDistribution phi1;  // basis at mu = -theta
};

KeyDistributions precompute_key(const TwoQubitState& state, double theta) {
    const ProjectiveBasis computational = basis_from_angle(0.0);
    return KeyDistributions{
        joint_distribution(state, computational, basis_from_angle(theta)),
        joint_distribution(state, computational, basis_from_angle(-theta))};
}

// Draw order per index: basis choice, then the joint outcome.
void sample_key_round(const KeyDistributions& dists, double basis_bias,
                      RngStream& rng, std::uint8_t& bob_bit,
                      std::int8_t& alice_result) {
    const bool use_phi0 = rng.uniform() < 0.5 - basis_bias;
    const auto& dist = use_phi0 ? dists.phi0 : dists.phi1;
    const auto [bob, alice] = sample_outcome(dist, rng);
    bob_bit = static_cast<std::uint8_t>(bob);
    // The perpendicular outcome is conclusive: it excludes the chosen
    // basis' candidate state, identifying the other with certainty.
    alice_result = alice == 1 ? static_cast<std::int8_t>(use_phi0 ? 1 : 0)
                              : static_cast<std::int8_t>(-1);
}

Transcript run_protocol_impl(const ProtocolParams& params,
                             const std::optional<AdversaryConfig>& adversary,
                             std::uint64_t seed, bool warn) {
    params.validate();
    if (warn && params.n > 2 * params.m) {
        std::fprintf(stderr,
                     "warning: n = %lld exceeds 2m = %lld; large n/m enables "
                     "the partial-bias attack\n",
                     params.n, 2 * params.m);
    }

    Transcript t;
    t.params = params;
    t.adversary = adversary;
    t.seed = seed;

    const RngStream root(seed, 0);

    // Which state indices carry the adversary's bias.
    const bool adversarial = adversary.has_value() && adversary->eps_a > 0.0;
    std::vector<std::uint8_t> biased(static_cast<std::size_t>(params.n),
                                     adversarial ? 1 : 0);
    if (adversarial && adversary->r >= 0 && adversary->r < params.n) {
        std::fill(biased.begin(), biased.end(), 0);
        RngStream placement = root.substream(kStreamPlacement);
        for (long long i : random_subset(params.n, adversary->r, placement)) {
            biased[static_cast<std::size_t>(i)] = 1;
        }
    }

    RngStream partition_rng = root.substream(kStreamPartition);
    std::tie(t.chsh_indices, t.qpq_indices) =
        partition_states(params.n, params.m, partition_rng);

    const GameAngles angles = optimal_angles(params.theta);
    const ChshDistributions honest_dists =
        precompute_chsh(make_honest_state(params.theta), angles);
    ChshDistributions biased_dists{};
    if (adversarial) {
        biased_dists = precompute_chsh(
            make_biased_state(params.theta, adversary->eps_a), angles);
    }

    const RngStream chsh_base = root.substream(kStreamChshRounds);
    t.rounds.reserve(t.chsh_indices.size());
    for (std::size_t i = 0; i < t.chsh_indices.size(); ++i) {
        const long long index = t.chsh_indices[i];
        RngStream round_rng = chsh_base.substream(i);
        const auto& dists =
            biased[static_cast<std::size_t>(index)] ? biased_dists : honest_dists;
        t.rounds.push_back(sample_round(dists, index, round_rng));
    }

    const ProbabilityInterval interval =
        acceptance_interval(params.theta, params.eps);
    std::tie(t.test_statistic, t.decision) = evaluate_test(t.rounds, interval);

    if (t.decision == Decision::Accept) {
        RngStream key_rng = root.substream(kStreamKeyPhase);
        t.key = qpq_key_phase(t.qpq_indices, params.theta, adversary, key_rng,
                              &biased);
    }
    return t;
}

} // namespace

ProtocolParams ProtocolParams::defaults(double theta, double eps, double gamma) {
    ProtocolParams p;
    p.theta = theta;
    p.eps = eps;
    p.gamma = gamma;
    p.m = chernoff_sample_size(eps, gamma, p_max(theta));
    p.n = 2 * p.m;
    return p;
}

void ProtocolParams::validate() const {
    if (!(theta > 0.0)) throw std::domain_error("theta must be positive");
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("eps must lie in (0,1)");
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw std::domain_error("gamma must lie in (0,1]");
    }
    if (m < 1) throw std::domain_error("m must be >= 1");
    if (n <= m) throw std::domain_error("n must exceed m");
}

long long KeyTranscript::conclusive_count() const {
    return std::count_if(alice_results.begin(), alice_results.end(),
                         [](std::int8_t r) { return r >= 0; });
}

double KeyTranscript::conclusive_fraction() const {
    if (alice_results.empty()) return 0.0;
    return static_cast<double>(conclusive_count()) /
           static_cast<double>(alice_results.size());
}

std::pair<std::vector<long long>, std::vector<long long>>
partition_states(long long n, long long m, RngStream& rng) {
    if (!(m > 0 && m < n)) throw std::domain_error("requires 0 < m < n");

    std::vector<long long> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0LL);
    for (long long i = 0; i < m; ++i) {
        const auto j = i + static_cast<long long>(
                               rng.next_below(static_cast<std::uint64_t>(n - i)));
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
    std::vector<long long> chsh(idx.begin(), idx.begin() + m);
    std::vector<long long> qpq(idx.begin() + m, idx.end());
    std::sort(chsh.begin(), chsh.end());
    std::sort(qpq.begin(), qpq.end());
    return {std::move(chsh), std::move(qpq)};
}

RoundRecord chsh_round(const TwoQubitState& state, int x, int y,
                       const GameAngles& angles, RngStream& rng) {
    if ((x & ~1) || (y & ~1)) throw std::domain_error("inputs must be bits");
    const auto dist = joint_distribution(state, first_qubit_basis(x),
                                         second_qubit_basis(y, angles));
    const auto [a, b] = sample_outcome(dist, rng);
    return RoundRecord{0, x, y, a, b, chsh_win(x, y, a, b) ? 1 : 0};
}

std::pair<double, Decision> evaluate_test(const std::vector<RoundRecord>& rounds,
                                          const ProbabilityInterval& interval) {
    if (rounds.empty()) throw std::domain_error("no test rounds");
    long long wins = 0;
    for (const auto& r : rounds) wins += r.win;
    const double statistic =
        static_cast<double>(wins) / static_cast<double>(rounds.size());
    return {statistic,
            interval.contains(statistic) ? Decision::Accept : Decision::Abort};
}

KeyTranscript qpq_key_phase(const std::vector<long long>& indices, double theta,
                            const std::optional<AdversaryConfig>& adversary,
                            RngStream& rng,
                            const std::vector<std::uint8_t>* biased) {
    const bool adversarial = adversary.has_value() && adversary->eps_a > 0.0;
    const double basis_bias =
        adversary.has_value() ? adversary->effective_basis_bias() : 0.0;

    const KeyDistributions honest_dists =
        precompute_key(make_honest_state(theta), theta);
    KeyDistributions biased_dists{};
    if (adversarial) {
        biased_dists =
            precompute_key(make_biased_state(theta, adversary->eps_a), theta);
    }

    KeyTranscript key;
    key.bob_bits.resize(indices.size());
    key.alice_results.resize(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const long long index = indices[i];
        const bool is_biased =
            adversarial &&
            (biased == nullptr || (*biased)[static_cast<std::size_t>(index)]);
        RngStream round_rng = rng.substream(static_cast<std::uint64_t>(index));
        sample_key_round(is_biased ? biased_dists : honest_dists, basis_bias,
                         round_rng, key.bob_bits[i], key.alice_results[i]);
    }
    return key;
}

Transcript run_protocol(const ProtocolParams& params,
                        const std::optional<AdversaryConfig>& adversary,
                        std::uint64_t seed) {
    return run_protocol_impl(params, adversary, seed, /*warn=*/true);
}

namespace {

// Chunked parallel map over trial indices; results land in `out` by
// index, so the reduction is independent of thread count.
template <typename F>
void for_each_trial(int trials, int threads, F&& body) {
    threads = std::max(1, threads);
    if (threads == 1 || trials < 2) {
        for (int t = 0; t < trials; ++t) body(t);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    const int workers = std::min(threads, trials);
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
                body(t);
            }
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace

double verify_theorem1(double theta, long long m, long long n, int trials,
                       double eps_qpq, std::uint64_t seed, int threads) {
    if (!(m > 0 && m < n)) throw std::domain_error("requires 0 < m < n");
    if (trials < 1) throw std::domain_error("trials must be >= 1");
    const double nu = qpq_deviation_nu(m, n, eps_qpq);

    const GameAngles angles = optimal_angles(theta);
    const ChshDistributions dists =
        precompute_chsh(make_honest_state(theta), angles);
    const RngStream root(seed, 1);

    std::vector<std::uint8_t> violated(static_cast<std::size_t>(trials), 0);
    for_each_trial(trials, threads, [&](int trial) {
        const RngStream trial_rng =
            root.substream(static_cast<std::uint64_t>(trial));
        std::vector<int> wins(static_cast<std::size_t>(n));
        for (long long i = 0; i < n; ++i) {
            RngStream round_rng =
                trial_rng.substream(static_cast<std::uint64_t>(i));
            wins[static_cast<std::size_t>(i)] = sample_round(dists, i, round_rng).win;
        }
        RngStream part_rng =
            trial_rng.substream(static_cast<std::uint64_t>(n) + 1);
        const auto [chsh, qpq] = partition_states(n, m, part_rng);
        long long chsh_wins = 0, qpq_wins = 0;
        for (long long i : chsh) chsh_wins += wins[static_cast<std::size_t>(i)];
        for (long long i : qpq) qpq_wins += wins[static_cast<std::size_t>(i)];
        const double y = static_cast<double>(chsh_wins) / static_cast<double>(m);
        const double y_prime =
            static_cast<double>(qpq_wins) / static_cast<double>(n - m);
        violated[static_cast<std::size_t>(trial)] =
            std::abs(y - y_prime) > nu ? 1 : 0;
    });

    long long count = 0;
    for (auto v : violated) count += v;
    return static_cast<double>(count) / static_cast<double>(trials);
}

MonteCarloSummary monte_carlo_summary(const ProtocolParams& params,
                                      const std::optional<AdversaryConfig>& adversary,
                                      int trials, std::uint64_t seed,
                                      int threads) {
    if (trials < 1) throw std::domain_error("trials must be >= 1");
    params.validate();
    if (params.n > 2 * params.m) {
        std::fprintf(stderr,
                     "warning: n = %lld exceeds 2m = %lld; large n/m enables "
                     "the partial-bias attack\n",
                     params.n, 2 * params.m);
    }

    struct TrialResult {
        double statistic;
        double conclusive;
        std::uint8_t accepted;
    };
    std::vector<TrialResult> results(static_cast<std::size_t>(trials));
    for_each_trial(trials, threads, [&](int trial) {
        const Transcript t = run_protocol_impl(
            params, adversary,
            derive_trial_seed(seed, static_cast<std::uint64_t>(trial)),
            /*warn=*/false);
        results[static_cast<std::size_t>(trial)] =
            TrialResult{t.test_statistic, t.key.conclusive_fraction(),
                        t.decision == Decision::Accept ? std::uint8_t{1}
                                                       : std::uint8_t{0}};
    });

    MonteCarloSummary s;
    s.trials = trials;
    long long accepted = 0;
    double sum = 0.0, sum_sq = 0.0, conclusive_sum = 0.0;
    for (const auto& r : results) {
        sum += r.statistic;
        sum_sq += r.statistic * r.statistic;
        if (r.accepted) {
            ++accepted;
            conclusive_sum += r.conclusive;
        }
    }
    const double td = static_cast<double>(trials);
    s.acceptance_rate = static_cast<double>(accepted) / td;
    s.mean_statistic = sum / td;
    const double var = std::max(0.0, sum_sq / td - s.mean_statistic * s.mean_statistic);
    s.stddev_statistic = std::sqrt(var);
    s.mean_conclusive_fraction =
        accepted > 0 ? conclusive_sum / static_cast<double>(accepted) : 0.0;
    // Conclusive bits are known exactly in the noiseless model.
    s.mean_known_fraction = s.mean_conclusive_fraction;
    return s;
}

std::string transcript_to_json(const Transcript& t, bool include_rounds) {
    nlohmann::ordered_json j;
    j["params"] = {{"theta", t.params.theta},       {"eps", t.params.eps},
                   {"gamma", t.params.gamma},       {"eps_chsh", t.params.eps_chsh},
                   {"eps_qpq", t.params.eps_qpq},   {"n", t.params.n},
                   {"m", t.params.m}};
    if (t.adversary) {
        j["adversary"] = {{"eps_a", t.adversary->eps_a},
                          {"r", t.adversary->r},
                          {"basis_bias", t.adversary->effective_basis_bias()}};
    } else {
        j["adversary"] = nullptr;
    }
    j["decision"] = t.decision == Decision::Accept ? "accept" : "abort";
    j["test_statistic"] = round9(t.test_statistic);
    j["chsh_indices"] = t.chsh_indices;
    if (include_rounds) {
        auto rounds = nlohmann::ordered_json::array();
        for (const auto& r : t.rounds) {
            rounds.push_back({{"index", r.index},
                              {"x", r.x},
                              {"y", r.y},
                              {"a", r.a},
                              {"b", r.b},
                              {"win", r.win}});
        }
        j["rounds"] = std::move(rounds);
    }
    j["key_summary"] = {
        {"bob_bits_count", static_cast<long long>(t.key.bob_bits.size())},
        {"conclusive_count", t.key.conclusive_count()},
        {"conclusive_fraction", round9(t.key.conclusive_fraction())}};
    j["seed"] = t.seed;
    return j.dump(2);
}

} // namespace diqpq
