// Command-line front end for the DI-QPQ analysis library.
//
// Subcommands: angles, pmax-curve, sample-size, bounds, attack, run,
// verify. Single reports print as JSON, sweeps as CSV. Exit codes:
// 0 success, 1 verification failure, 2 usage/domain error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diqpq/adversary.hpp"
#include "diqpq/bounds.hpp"
#include "diqpq/chsh.hpp"
#include "diqpq/protocol.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9f", v);
    return buf;
}

void emit(const std::string& payload, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + output_path);
    out << payload;
}

struct SweepRange {
    double min = 0.0;
    double max = 0.0;
    int steps = 0;
};

// "min:max:steps"
SweepRange parse_sweep(const std::string& s) {
    SweepRange r;
    char colon1 = 0, colon2 = 0;
    std::istringstream in(s);
    if (!(in >> r.min >> colon1 >> r.max >> colon2 >> r.steps) ||
        colon1 != ':' || colon2 != ':' || r.steps < 1) {
        throw std::domain_error("sweep must be min:max:steps");
    }
    return r;
}

int cmd_angles(double theta, const std::string& output_path) {
    const diqpq::GameAngles a = diqpq::optimal_angles(theta);
    std::string payload = "{\"phi\":" + fmt9(a.phi) +
                          ",\"psi1\":" + fmt9(a.psi1) +
                          ",\"psi2\":" + fmt9(a.psi2) +
                          ",\"p_max\":" + fmt9(diqpq::p_max(theta)) + "}\n";
    emit(payload, output_path);
    return 0;
}

int cmd_pmax_curve(double min, double max, int steps, bool full_range,
                   const std::string& output_path) {
    std::string payload = "theta,p_max\n";
    for (const auto& [theta, pm] : diqpq::pmax_curve(min, max, steps, full_range)) {
        payload += fmt9(theta) + "," + fmt9(pm) + "\n";
    }
    emit(payload, output_path);
    return 0;
}

int cmd_sample_size(double theta, double eps, double gamma,
                    const std::string& sweep_axis, const SweepRange& range,
                    const std::string& output_path) {
    const double pm = diqpq::p_max(theta);
    if (sweep_axis.empty()) {
        const long long m = diqpq::chernoff_sample_size(eps, gamma, pm);
        std::string payload = "{\"theta\":" + fmt9(theta) +
                              ",\"p_max\":" + fmt9(pm) +
                              ",\"m_opt\":" + std::to_string(m) +
                              ",\"n\":" + std::to_string(2 * m) + "}\n";
        emit(payload, output_path);
        return 0;
    }
    const diqpq::SweepAxis axis = sweep_axis == "epsilon"
                                      ? diqpq::SweepAxis::Epsilon
                                      : diqpq::SweepAxis::PMax;
    std::string payload = "axis_value,m_opt\n";
    for (const auto& [v, m] : diqpq::sample_size_sweep(axis, range.min, range.max,
                                                       range.steps, gamma, pm, eps)) {
        payload += fmt9(v) + "," + std::to_string(m) + "\n";
    }
    emit(payload, output_path);
    return 0;
}

int cmd_bounds(long long m, long long n, double eps_chsh, double eps_qpq,
               const std::string& output_path) {
    std::string payload =
        "{\"delta\":" + fmt9(diqpq::chsh_deviation_delta(m, eps_chsh)) +
        ",\"nu\":" + fmt9(diqpq::qpq_deviation_nu(m, n, eps_qpq)) + "}\n";
    emit(payload, output_path);
    return 0;
}

int cmd_attack(double theta, double eps, long long r, long long n,
               const std::string& sweep, const std::string& output_path) {
    if (!sweep.empty()) {
        const SweepRange range = parse_sweep(sweep);
        std::string payload = "epsilon_a,success_prob,accepted,leakage_fraction\n";
        for (const auto& row :
             diqpq::attack_sweep(theta, eps, range.min, range.max, range.steps)) {
            payload += fmt9(row.eps_a) + "," + fmt9(row.success_prob) + "," +
                       (row.accepted ? "1" : "0") + "," + fmt9(row.leakage) + "\n";
        }
        emit(payload, output_path);
        return 0;
    }
    const double paper = diqpq::bias_threshold_paper(theta, eps);
    const double exact = diqpq::bias_threshold_exact(theta, eps);
    std::string payload =
        "{\"paper_threshold\":" + fmt9(paper) +
        ",\"exact_threshold\":" + fmt9(exact) +
        ",\"additional_leakage_at_threshold\":" +
        fmt9(diqpq::additional_leakage(theta, paper)) +
        ",\"leakage_at_threshold\":" + fmt9(diqpq::leakage_fraction(theta, paper));
    if (r > 0 && n > 0) {
        payload += ",\"partial_threshold\":" +
                   fmt9(diqpq::bias_threshold_partial(theta, eps, r, n));
    }
    payload += "}\n";
    emit(payload, output_path);
    return 0;
}

struct RunOptions {
    double theta = kPi / 2;
    double eps = 0.01;
    double gamma = 0.01;
    double eps_chsh = 1e-6;
    double eps_qpq = 1e-6;
    long long m = 0;  // 0: computed from (eps, gamma, p_max)
    long long n = 0;  // 0: 2m
    double adv_eps_a = -1.0;
    long long adv_r = -1;
    double adv_basis_bias = -1.0;
    int trials = 1;
    std::uint64_t seed = 0;
    int threads = 1;
    bool include_rounds = false;
};

int cmd_run(const RunOptions& o, const std::string& output_path) {
    diqpq::ProtocolParams params =
        diqpq::ProtocolParams::defaults(o.theta, o.eps, o.gamma);
    params.eps_chsh = o.eps_chsh;
    params.eps_qpq = o.eps_qpq;
    if (o.m > 0) {
        params.m = o.m;
        params.n = 2 * o.m;
    }
    if (o.n > 0) params.n = o.n;

    std::optional<diqpq::AdversaryConfig> adversary;
    if (o.adv_eps_a >= 0.0) {
        diqpq::AdversaryConfig adv;
        adv.eps_a = o.adv_eps_a;
        adv.r = o.adv_r;
        if (o.adv_basis_bias >= 0.0) adv.basis_bias = o.adv_basis_bias;
        adversary = adv;
    }

    if (o.trials <= 1) {
        const diqpq::Transcript t = diqpq::run_protocol(params, adversary, o.seed);
        emit(diqpq::transcript_to_json(t, o.include_rounds) + "\n", output_path);
        return 0;
    }
    const diqpq::MonteCarloSummary s =
        diqpq::monte_carlo_summary(params, adversary, o.trials, o.seed, o.threads);
    std::string payload =
        "{\"trials\":" + std::to_string(s.trials) +
        ",\"acceptance_rate\":" + fmt9(s.acceptance_rate) +
        ",\"mean_statistic\":" + fmt9(s.mean_statistic) +
        ",\"stddev_statistic\":" + fmt9(s.stddev_statistic) +
        ",\"mean_conclusive_fraction\":" + fmt9(s.mean_conclusive_fraction) +
        ",\"mean_known_fraction\":" + fmt9(s.mean_known_fraction) +
        ",\"seed\":" + std::to_string(o.seed) + "}\n";
    emit(payload, output_path);
    return 0;
}

// --- verification suites -------------------------------------------------

bool suite_formulas(std::string& detail, std::uint64_t seed) {
    diqpq::RngStream rng(seed, 7001);
    double max_err = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double theta = 1e-6 + (kPi / 2 - 1e-6) * rng.uniform();
        const double psi1 = 2 * kPi * rng.uniform();
        const double psi2 = 2 * kPi * rng.uniform();
        const double eps_a = 0.5 * rng.uniform();
        diqpq::GameAngles angles{theta, 0.0, psi1, psi2};
        const double honest_err = std::abs(
            diqpq::success_probability(theta, psi1, psi2) -
            diqpq::oracle_success_probability(diqpq::make_honest_state(theta), angles));
        const double biased_err = std::abs(
            diqpq::success_probability_biased(theta, psi1, psi2, eps_a) -
            diqpq::oracle_success_probability(
                diqpq::make_biased_state(theta, eps_a), angles));
        max_err = std::max({max_err, honest_err, biased_err});
    }
    detail = "\"max_abs_error\":" + fmt9(max_err);
    return max_err < 1e-12;
}

bool suite_bounds(std::string& detail, int runs, std::uint64_t seed) {
    const double eps = 0.05, gamma = 0.1;
    bool pass = true;
    std::string parts;
    diqpq::RngStream rng(seed, 7002);

    int block = 0;
    for (double p : {0.75, diqpq::p_max(kPi / 2)}) {
        const long long m = diqpq::chernoff_sample_size(eps, gamma, p);
        int failures = 0;
        for (int t = 0; t < runs; ++t) {
            diqpq::RngStream run_rng = rng.substream(
                static_cast<std::uint64_t>(block) * 1000003u + t);
            long long hits = 0;
            for (long long i = 0; i < m; ++i) {
                if (run_rng.uniform() < p) ++hits;
            }
            const double mean = static_cast<double>(hits) / static_cast<double>(m);
            if (std::abs(mean - p) > eps * p) ++failures;
        }
        const double rate = static_cast<double>(failures) / runs;
        const double budget =
            gamma + 3.0 * std::sqrt(gamma * (1 - gamma) / runs);
        if (rate > budget) pass = false;
        if (!parts.empty()) parts += ",";
        parts += "{\"p\":" + fmt9(p) + ",\"m\":" + std::to_string(m) +
                 ",\"failure_rate\":" + fmt9(rate) + ",\"budget\":" + fmt9(budget) + "}";
        ++block;
    }
    detail = "\"chernoff\":[" + parts + "]";
    return pass;
}

bool suite_theorem1(std::string& detail, int trials, std::uint64_t seed,
                    int threads) {
    const long long m = 2000, n = 4000;
    const double eps_qpq = 0.05;
    const double rate =
        diqpq::verify_theorem1(kPi / 2, m, n, trials, eps_qpq, seed, threads);
    const double budget =
        eps_qpq + 3.0 * std::sqrt(eps_qpq * (1 - eps_qpq) / trials);
    detail = "\"violation_rate\":" + fmt9(rate) + ",\"budget\":" + fmt9(budget) +
             ",\"nu\":" + fmt9(diqpq::qpq_deviation_nu(m, n, eps_qpq));
    return rate <= budget;
}

bool suite_leakage(std::string& detail, std::uint64_t seed) {
    const long long rounds = 100000;
    std::vector<long long> indices(rounds);
    for (long long i = 0; i < rounds; ++i) indices[i] = i;

    bool pass = true;
    double worst_sigma = 0.0;
    int point = 0;
    for (double theta : {kPi / 6, kPi / 3, kPi / 2}) {
        for (double eps_a : {0.0, 0.1, 0.3, 0.5}) {
            std::optional<diqpq::AdversaryConfig> adv;
            if (eps_a > 0.0) adv = diqpq::AdversaryConfig{eps_a, -1, std::nullopt};
            diqpq::RngStream rng(seed, 7100 + point);
            const auto key = diqpq::qpq_key_phase(indices, theta, adv, rng);
            const double expected = diqpq::leakage_fraction(theta, eps_a);
            const double observed = key.conclusive_fraction();
            const double sigma =
                std::sqrt(expected * (1 - expected) / static_cast<double>(rounds));
            if (sigma == 0.0) {
                if (observed != expected) pass = false;
            } else {
                const double pull = std::abs(observed - expected) / sigma;
                worst_sigma = std::max(worst_sigma, pull);
                if (pull > 5.0) pass = false;
            }
            ++point;
        }
    }
    detail = "\"grid_points\":" + std::to_string(point) +
             ",\"worst_pull_sigma\":" + fmt9(worst_sigma);
    return pass;
}

int cmd_verify(const std::string& suite, int trials, std::uint64_t seed,
               int threads, const std::string& output_path) {
    std::string detail;
    bool pass = false;
    if (suite == "formulas") {
        pass = suite_formulas(detail, seed);
    } else if (suite == "bounds") {
        pass = suite_bounds(detail, trials, seed);
    } else if (suite == "theorem1") {
        pass = suite_theorem1(detail, trials, seed, threads);
    } else if (suite == "leakage") {
        pass = suite_leakage(detail, seed);
    } else {
        throw std::domain_error("unknown suite: " + suite);
    }
    std::string payload = std::string("{\"suite\":\"") + suite +
                          "\",\"pass\":" + (pass ? "true" : "false") + "," +
                          detail + "}\n";
    emit(payload, output_path);
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-sample DI-QPQ analysis and simulation"};
    app.require_subcommand(1);

    std::string output_path;
    app.add_option("--output-path", output_path,
                   "Write the payload to a file instead of stdout")
        ->capture_default_str();

    double theta = kPi / 2;
    double eps = 0.01, gamma = 0.01;

    auto* angles = app.add_subcommand("angles", "Optimal CHSH angles and p_max");
    angles->add_option("--theta", theta, "State parameter, radians, (0, pi/2]")
        ->required();

    auto* curve = app.add_subcommand("pmax-curve", "CSV of (theta, p_max)");
    double curve_min = 0.01, curve_max = kPi / 2;
    int curve_steps = 100;
    bool full_range = false;
    curve->add_option("--min", curve_min)->required();
    curve->add_option("--max", curve_max)->required();
    curve->add_option("--steps", curve_steps)->required();
    curve->add_flag("--full-range", full_range,
                    "Allow theta up to pi (closed form only)");

    auto* ssize = app.add_subcommand("sample-size",
                                     "Optimal CHSH sample size m_opt");
    std::string sweep_axis;
    std::string sweep_spec;
    ssize->add_option("--theta", theta)->required();
    ssize->add_option("--epsilon", eps)->required();
    ssize->add_option("--gamma", gamma)->required();
    ssize->add_option("--sweep", sweep_axis, "Sweep axis: epsilon or pmax")
        ->check(CLI::IsMember({"epsilon", "pmax"}));
    ssize->add_option("--sweep-range", sweep_spec, "min:max:steps");

    auto* bounds = app.add_subcommand("bounds", "Deviation radii delta and nu");
    long long bm = 0, bn = 0;
    double eps_chsh = 1e-6, eps_qpq = 1e-6;
    bounds->add_option("--m", bm)->required();
    bounds->add_option("--n", bn)->required();
    bounds->add_option("--eps-chsh", eps_chsh)->capture_default_str();
    bounds->add_option("--eps-qpq", eps_qpq)->capture_default_str();

    auto* attack = app.add_subcommand("attack", "Bias thresholds and leakage");
    long long ar = 0, an = 0;
    std::string sweep_eps_a;
    attack->add_option("--theta", theta)->required();
    attack->add_option("--epsilon", eps)->required();
    attack->add_option("--r", ar, "Biased state count for the partial attack");
    attack->add_option("--n", an, "Total state count for the partial attack");
    attack->add_option("--sweep-eps-a", sweep_eps_a, "min:max:steps");

    auto* run = app.add_subcommand("run", "Execute the protocol");
    RunOptions ro;
    run->add_option("--theta", ro.theta)->capture_default_str();
    run->add_option("--epsilon", ro.eps)->capture_default_str();
    run->add_option("--gamma", ro.gamma)->capture_default_str();
    run->add_option("--eps-chsh", ro.eps_chsh)->capture_default_str();
    run->add_option("--eps-qpq", ro.eps_qpq)->capture_default_str();
    run->add_option("--m", ro.m, "Override the computed test-set size");
    run->add_option("--n", ro.n, "Override the total state count (default 2m)");
    run->add_option("--adv-eps-a", ro.adv_eps_a, "Adversary state bias");
    run->add_option("--adv-r", ro.adv_r, "Biased state count (default: all)");
    run->add_option("--adv-basis-bias", ro.adv_basis_bias,
                    "Decoupled basis bias (default: eps_a)");
    run->add_option("--trials", ro.trials)->capture_default_str();
    run->add_option("--seed", ro.seed)->capture_default_str();
    run->add_option("--threads", ro.threads)->capture_default_str();
    run->add_flag("--include-rounds", ro.include_rounds,
                  "Embed per-round records in the transcript");

    auto* verify = app.add_subcommand("verify", "Cross-module property suites");
    std::string suite;
    int vtrials = 2000;
    std::uint64_t vseed = 0;
    int vthreads = 1;
    verify->add_option("--suite", suite)
        ->required()
        ->check(CLI::IsMember({"formulas", "bounds", "theorem1", "leakage"}));
    verify->add_option("--trials", vtrials)->capture_default_str();
    verify->add_option("--seed", vseed)->capture_default_str();
    verify->add_option("--threads", vthreads)->capture_default_str();

    try {
        app.parse(argc, argv);

        if (angles->parsed()) return cmd_angles(theta, output_path);
        if (curve->parsed()) {
            return cmd_pmax_curve(curve_min, curve_max, curve_steps, full_range,
                                  output_path);
        }
        if (ssize->parsed()) {
            SweepRange range{};
            if (!sweep_axis.empty()) range = parse_sweep(sweep_spec);
            return cmd_sample_size(theta, eps, gamma, sweep_axis, range,
                                   output_path);
        }
        if (bounds->parsed()) {
            return cmd_bounds(bm, bn, eps_chsh, eps_qpq, output_path);
        }
        if (attack->parsed()) {
            return cmd_attack(theta, eps, ar, an, sweep_eps_a, output_path);
        }
        if (run->parsed()) return cmd_run(ro, output_path);
        if (verify->parsed()) {
            return cmd_verify(suite, vtrials, vseed, vthreads, output_path);
        }
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
