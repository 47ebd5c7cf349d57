#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "diqpq/chsh.hpp"
#include "oracle.hpp"

using namespace diqpq;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("optimal angles at theta = pi/2") {
    const auto a = optimal_angles(kPi / 2);
    CHECK(a.phi == doctest::Approx(kPi / 4).epsilon(1e-12));
    CHECK(a.psi1 == doctest::Approx(kPi / 4).epsilon(1e-12));
    CHECK(a.psi2 == doctest::Approx(3 * kPi / 4).epsilon(1e-12));
}

TEST_CASE("optimal angles at theta = pi/6") {
    const auto a = optimal_angles(kPi / 6);
    CHECK(a.phi == doctest::Approx(1.1071487177940904).epsilon(1e-12));
    CHECK(a.psi1 == doctest::Approx(0.4636476090008061).epsilon(1e-12));
    CHECK(a.psi2 == doctest::Approx(2.6779450445889870).epsilon(1e-12));
}

TEST_CASE("psi1 + psi2 = pi for every optimal configuration") {
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> theta_dist(1e-6, kPi / 2);
    for (int i = 0; i < 200; ++i) {
        const auto a = optimal_angles(theta_dist(gen));
        CHECK(std::abs(a.psi1 + a.psi2 - kPi) < 1e-12);
        CHECK(a.psi1 > 0.0);
        CHECK(a.psi1 < kPi / 2);
    }
}

TEST_CASE("success probability hits cos^2(pi/8) at the optimal point") {
    const double p = success_probability(kPi / 2, kPi / 4, 3 * kPi / 4);
    const double cos2 = std::cos(kPi / 8) * std::cos(kPi / 8);
    CHECK(std::abs(p - cos2) < 1e-12);
}

TEST_CASE("success probability degenerates to 1/2 at psi1 = psi2 = 0") {
    for (double theta : {0.2, 0.9, kPi / 2}) {
        CHECK(success_probability(theta, 0.0, 0.0) ==
              doctest::Approx(0.5).epsilon(1e-15));
    }
}

TEST_CASE("closed form matches the dense oracle at a frozen point") {
    const double p = success_probability(kPi / 3, 0.5, 2.0);
    CHECK(p == doctest::Approx(0.8120498456648317).epsilon(1e-12));
    CHECK(std::abs(p - testing::chsh_success(make_honest_state(kPi / 3), 0.5,
                                             2.0)) < 1e-12);
}

TEST_CASE("biased form reduces to honest at eps_a = 0") {
    std::mt19937_64 gen(22);
    std::uniform_real_distribution<double> theta_dist(1e-6, kPi / 2);
    std::uniform_real_distribution<double> psi_dist(0.0, 2 * kPi);
    for (int i = 0; i < 100; ++i) {
        const double theta = theta_dist(gen);
        const double p1 = psi_dist(gen), p2 = psi_dist(gen);
        CHECK(std::abs(success_probability_biased(theta, p1, p2, 0.0) -
                       success_probability(theta, p1, p2)) < 1e-15);
    }
}

TEST_CASE("fully biased state at optimal angles scores 1/2 + sqrt2/8") {
    const double p =
        success_probability_biased(kPi / 2, kPi / 4, 3 * kPi / 4, 0.5);
    CHECK(p == doctest::Approx(0.5 + std::sqrt(2.0) / 8.0).epsilon(1e-12));
}

TEST_CASE("bias strictly lowers the success at the optimal angles") {
    const auto a = optimal_angles(kPi / 2);
    const double p = success_probability_biased(kPi / 2, a.psi1, a.psi2, 0.1);
    CHECK(p < p_max(kPi / 2));
}

TEST_CASE("p_max closed form") {
    CHECK(p_max(kPi / 2) == doctest::Approx(0.8535533905932737).epsilon(1e-12));
    CHECK(p_max(kPi / 6) == doctest::Approx(0.7795084971874737).epsilon(1e-12));
    CHECK(p_max(1e-8) == doctest::Approx(0.75).epsilon(1e-9));
}

TEST_CASE("p_max equals the success probability at the optimal angles") {
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> theta_dist(1e-6, kPi / 2);
    for (int i = 0; i < 200; ++i) {
        const double theta = theta_dist(gen);
        const auto a = optimal_angles(theta);
        CHECK(std::abs(p_max(theta) -
                       success_probability(theta, a.psi1, a.psi2)) < 1e-12);
    }
}

TEST_CASE("closed forms agree with oracle_success_probability on 1000 draws") {
    std::mt19937_64 gen(24);
    std::uniform_real_distribution<double> theta_dist(1e-6, kPi / 2);
    std::uniform_real_distribution<double> psi_dist(0.0, 2 * kPi);
    std::uniform_real_distribution<double> eps_dist(0.0, 0.5);
    for (int i = 0; i < 1000; ++i) {
        const double theta = theta_dist(gen);
        const double p1 = psi_dist(gen), p2 = psi_dist(gen);
        const double eps_a = eps_dist(gen);
        const GameAngles angles{theta, 0.0, p1, p2};
        CHECK(std::abs(success_probability(theta, p1, p2) -
                       oracle_success_probability(make_honest_state(theta),
                                                  angles)) < 1e-12);
        CHECK(std::abs(success_probability_biased(theta, p1, p2, eps_a) -
                       oracle_success_probability(
                           make_biased_state(theta, eps_a), angles)) < 1e-12);
    }
}

TEST_CASE("oracle on the biased product state reproduces the paper point") {
    const auto angles = optimal_angles(kPi / 2);
    const double p =
        oracle_success_probability(make_biased_state(kPi / 2, 0.5), angles);
    CHECK(p == doctest::Approx(0.6767766952966369).epsilon(1e-12));
}

TEST_CASE("optimal angles are stationary and unimprovable") {
    std::mt19937_64 gen(25);
    std::uniform_real_distribution<double> theta_dist(1e-6, kPi / 2);
    std::uniform_real_distribution<double> psi_dist(0.0, 2 * kPi);
    const double h = 1e-5;
    for (int t = 0; t < 100; ++t) {
        const double theta = theta_dist(gen);
        const auto a = optimal_angles(theta);
        const double pm = p_max(theta);

        const double g1 = (success_probability(theta, a.psi1 + h, a.psi2) -
                           success_probability(theta, a.psi1 - h, a.psi2)) /
                          (2 * h);
        const double g2 = (success_probability(theta, a.psi1, a.psi2 + h) -
                           success_probability(theta, a.psi1, a.psi2 - h)) /
                          (2 * h);
        CHECK(std::abs(g1) < 1e-8);
        CHECK(std::abs(g2) < 1e-8);

        for (int i = 0; i < 1000; ++i) {
            CHECK(pm + 1e-12 >=
                  success_probability(theta, psi_dist(gen), psi_dist(gen)));
        }
    }
}

TEST_CASE("biased success is non-increasing in eps_a at the optimal angles") {
    for (double theta : {0.3, 1.0, kPi / 2}) {
        const auto a = optimal_angles(theta);
        double prev = success_probability_biased(theta, a.psi1, a.psi2, 0.0);
        for (int i = 1; i <= 50; ++i) {
            const double cur =
                success_probability_biased(theta, a.psi1, a.psi2, 0.01 * i);
            CHECK(cur <= prev + 1e-15);
            prev = cur;
        }
    }
}

TEST_CASE("pmax_curve endpoints, monotonicity and symmetry") {
    const auto rows = pmax_curve(1e-6, kPi / 2, 100);
    REQUIRE(rows.size() == 100);
    CHECK(rows.front().second == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(rows.back().second == doctest::Approx(0.8535533905932737).epsilon(1e-12));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].second >= rows[i - 1].second - 1e-15);
    }

    // full-range emission is symmetric about pi/2
    const auto full = pmax_curve(0.2, kPi - 0.2, 7, true);
    CHECK(std::abs(full.front().second - full.back().second) < 1e-12);

    const auto single = pmax_curve(0.4, 1.0, 1);
    REQUIRE(single.size() == 1);
    CHECK(single[0].first == 0.4);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(optimal_angles(0.0), std::domain_error);
    CHECK_THROWS_AS(optimal_angles(2.0), std::domain_error);
    CHECK_THROWS_AS(success_probability(0.0, 1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(success_probability_biased(1.0, 1.0, 2.0, 0.6),
                    std::domain_error);
    CHECK_THROWS_AS(p_max(-1.0), std::domain_error);
    CHECK_THROWS_AS(pmax_curve(0.0, 1.0, 10), std::domain_error);
    CHECK_THROWS_AS(pmax_curve(0.5, 2.0, 10), std::domain_error);
    CHECK_THROWS_AS(pmax_curve(0.5, 1.0, 0), std::domain_error);
}
