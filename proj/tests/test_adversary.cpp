#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "diqpq/adversary.hpp"
#include "diqpq/bounds.hpp"
#include "diqpq/chsh.hpp"

using namespace diqpq;

namespace {

constexpr double kPi = std::numbers::pi;

// Largest eps_a with p'' >= p_max (1 - eps) at the optimal angles, by
// bisection on the closed form; independent check of the algebra behind
// bias_threshold_exact.
double threshold_by_bisection(double theta, double eps) {
    const auto a = optimal_angles(theta);
    const double lo_bound = p_max(theta) * (1.0 - eps);
    auto passes = [&](double eps_a) {
        return success_probability_biased(theta, a.psi1, a.psi2, eps_a) >=
               lo_bound;
    };
    if (passes(0.5)) return 0.5;
    double lo = 0.0, hi = 0.5;
    for (int i = 0; i < 60; ++i) {
        const double mid = (lo + hi) / 2;
        (passes(mid) ? lo : hi) = mid;
    }
    return lo;
}

} // namespace

TEST_CASE("paper threshold reference values") {
    CHECK(bias_threshold_paper(kPi / 2, 0.01) ==
          doctest::Approx(0.15537739740300374).epsilon(1e-12));
    CHECK(bias_threshold_paper(kPi / 2, 0.001) ==
          doctest::Approx(0.04913464727026231).epsilon(1e-12));
    CHECK(bias_threshold_paper(kPi / 2, 0.0) == 0.0);
    CHECK(bias_threshold_paper(kPi / 2, 0.4) == 0.5);  // capped
}

TEST_CASE("exact threshold reference value and cap") {
    CHECK(bias_threshold_exact(kPi / 2, 0.01) ==
          doctest::Approx(0.1534903674868763).epsilon(1e-12));
    CHECK(bias_threshold_exact(kPi / 2, 0.3) == 0.5);  // c >= 1/2
}

TEST_CASE("exact threshold agrees with bisection on the closed form") {
    std::mt19937_64 gen(41);
    std::uniform_real_distribution<double> theta_dist(0.1, kPi / 2);
    std::uniform_real_distribution<double> eps_dist(1e-4, 0.1);
    for (int i = 0; i < 50; ++i) {
        const double theta = theta_dist(gen);
        const double eps = eps_dist(gen);
        CHECK(std::abs(bias_threshold_exact(theta, eps) -
                       threshold_by_bisection(theta, eps)) < 1e-10);
    }
}

TEST_CASE("exact threshold never exceeds the paper threshold") {
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> theta_dist(0.05, kPi / 2);
    std::uniform_real_distribution<double> eps_dist(1e-5, 0.5);
    for (int i = 0; i < 500; ++i) {
        const double theta = theta_dist(gen);
        const double eps = eps_dist(gen);
        CHECK(bias_threshold_exact(theta, eps) <=
              bias_threshold_paper(theta, eps) + 1e-15);
    }
    // ratio approaches 1 as eps -> 0
    const double tiny = 1e-10;
    CHECK(bias_threshold_exact(kPi / 2, tiny) /
              bias_threshold_paper(kPi / 2, tiny) >
          1.0 - 1e-6);
}

TEST_CASE("acceptance-evasion soundness around the exact threshold") {
    std::mt19937_64 gen(43);
    std::uniform_real_distribution<double> theta_dist(0.1, kPi / 2);
    std::uniform_real_distribution<double> eps_dist(1e-4, 0.2);
    for (int i = 0; i < 100; ++i) {
        const double theta = theta_dist(gen);
        const double eps = eps_dist(gen);
        const double thr = bias_threshold_exact(theta, eps);
        const auto a = optimal_angles(theta);
        const auto iv = acceptance_interval(theta, eps);

        const double below =
            success_probability_biased(theta, a.psi1, a.psi2,
                                       std::max(0.0, thr - 1e-6));
        CHECK(iv.contains(below));

        if (thr + 1e-6 < 0.5) {
            const double above = success_probability_biased(
                theta, a.psi1, a.psi2, thr + 1e-6);
            CHECK(above < iv.lo);
        }
    }
}

TEST_CASE("partial-attack threshold scaling") {
    CHECK(bias_threshold_partial(kPi / 2, 0.01, 100, 100) ==
          doctest::Approx(bias_threshold_paper(kPi / 2, 0.01)).epsilon(1e-15));
    CHECK(bias_threshold_partial(kPi / 2, 0.01, 25, 100) ==
          doctest::Approx(0.3107547948060075).epsilon(1e-12));
    CHECK(bias_threshold_partial(kPi / 2, 0.01, 100, 63210) == 0.5);  // capped

    std::mt19937_64 gen(44);
    std::uniform_int_distribution<long long> r_dist(1, 1000);
    for (int i = 0; i < 100; ++i) {
        const long long r = r_dist(gen);
        const long long n = r + r_dist(gen);
        const double eps = 1e-5;
        const double ratio = bias_threshold_partial(kPi / 3, eps, r, n) /
                             bias_threshold_paper(kPi / 3, eps);
        // exact sqrt(n/r) while below the cap
        CHECK(ratio == doctest::Approx(std::sqrt(static_cast<double>(n) / r))
                           .epsilon(1e-12));
    }
    CHECK_THROWS_AS(bias_threshold_partial(kPi / 2, 0.01, 0, 10),
                    std::domain_error);
    CHECK_THROWS_AS(bias_threshold_partial(kPi / 2, 0.01, 11, 10),
                    std::domain_error);
}

TEST_CASE("leakage fractions") {
    CHECK(leakage_fraction(kPi / 2, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(leakage_fraction(kPi / 2, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(leakage_fraction(kPi / 6, 0.1) == doctest::Approx(0.13).epsilon(1e-12));
    CHECK(additional_leakage(kPi / 2, 0.0) == 0.0);
    CHECK(additional_leakage(kPi / 2, 0.1) == doctest::Approx(0.01).epsilon(1e-12));
    // at the paper threshold the additional leakage is 2 eps p_max / cos psi1
    const double thr = bias_threshold_paper(kPi / 2, 0.01);
    CHECK(additional_leakage(kPi / 2, thr) ==
          doctest::Approx(0.024142135623730954).epsilon(1e-12));
    CHECK_THROWS_AS(leakage_fraction(kPi / 2, 0.6), std::domain_error);
}

TEST_CASE("leakage difference is twice the additional-leakage quantity") {
    std::mt19937_64 gen(45);
    std::uniform_real_distribution<double> theta_dist(0.1, kPi / 2);
    std::uniform_real_distribution<double> eps_dist(0.0, 0.5);
    for (int i = 0; i < 200; ++i) {
        const double theta = theta_dist(gen);
        const double eps_a = eps_dist(gen);
        CHECK(std::abs(leakage_fraction(theta, eps_a) -
                       leakage_fraction(theta, 0.0) -
                       2.0 * additional_leakage(theta, eps_a)) < 1e-15);
    }
}

TEST_CASE("attack sweep flips the accepted flag at the exact threshold") {
    const double theta = kPi / 2, eps = 0.01;
    const double thr = bias_threshold_exact(theta, eps);
    const auto rows = attack_sweep(theta, eps, 0.0, 0.5, 51);
    REQUIRE(rows.size() == 51);
    for (const auto& row : rows) {
        CHECK(row.accepted == (row.eps_a <= thr));
    }
}
