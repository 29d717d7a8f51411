#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "xrego/conic_bounds.hpp"

using namespace xrego;
using std::numbers::pi;

TEST_CASE("paper example: Circ_2(pi/6), the cone of total aperture pi/3") {
    CHECK(circ_intrinsic_volume(2, pi / 6, 0) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(circ_intrinsic_volume(2, pi / 6, 1) == doctest::Approx(1.0 / 2).epsilon(1e-12));
    CHECK(circ_intrinsic_volume(2, pi / 6, 2) == doctest::Approx(1.0 / 6).epsilon(1e-12));
}

TEST_CASE("half-space limit") {
    const double alpha = pi / 2 - 1e-12;
    for (int D : {2, 5, 17}) {
        CHECK(circ_intrinsic_volume(D, alpha, D) == doctest::Approx(0.5));
        CHECK(circ_intrinsic_volume(D, alpha, D - 1) == doctest::Approx(0.5));
        for (int k = 0; k + 1 < D; ++k) CHECK(circ_intrinsic_volume(D, alpha, k) == 0.0);
    }
}

TEST_CASE("intrinsic volumes form a probability distribution") {
    const auto iv = circ_intrinsic_volumes(10, 0.3);
    CHECK(iv.sum() == doctest::Approx(1.0).epsilon(1e-10));
    for (double v : iv.values) CHECK(v <= 0.5 + 1e-12);
}

TEST_CASE("Gauss-Bonnet half sums on a grid") {
    for (int D = 2; D <= 60; ++D) {
        for (int i = 0; i < 20; ++i) {
            const double alpha = 0.01 + i * (pi / 2 - 0.02 - 0.01) / 19.0;
            const auto iv = circ_intrinsic_volumes(D, alpha);
            CHECK(std::abs(iv.sum() - 1.0) <= 1e-10);
            CHECK(std::abs(iv.even_sum() - 0.5) <= 1e-10);
            CHECK(std::abs(iv.odd_sum() - 0.5) <= 1e-10);
        }
    }
}

TEST_CASE("subspace intrinsic volumes") {
    CHECK(subspace_intrinsic_volume(5, 2, 2) == 1);
    CHECK(subspace_intrinsic_volume(5, 2, 3) == 0);
    CHECK(subspace_intrinsic_volume(1, 1, 1) == 1);
}

TEST_CASE("domain errors") {
    CHECK_THROWS(circ_intrinsic_volume(2, -0.1, 1));
    CHECK_THROWS(circ_intrinsic_volume(2, pi / 2 + 0.1, 1));
    CHECK_THROWS(circ_intrinsic_volume(1, 0.3, 0));
    CHECK_THROWS(tau(0.0, 1, 5));
    CHECK_THROWS(tau(1.0, 1, 5));
    CHECK_THROWS(tau(0.5, 5, 5));
    CHECK_THROWS(tau_us(-1.0, 1.0, 3));
}

TEST_CASE("crofton tail: planar example and monotonicity") {
    CHECK(crofton_tail(2, 1, {2, pi / 6}) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(crofton_tail(10, 3, {10, 0.2}) < crofton_tail(10, 3, {10, 0.4}));
    for (int D : {4, 9, 15}) {
        for (int d : {1, 2, 3}) {
            for (double alpha : {0.2, 0.8, 1.3}) {
                const double t = crofton_tail(D, d, {D, alpha});
                CHECK(t <= 1.0);
                CHECK(t >= 2.0 * circ_intrinsic_volume(D, alpha, D - d + 1) - 1e-15);
            }
        }
    }
}

TEST_CASE("tau closed forms") {
    CHECK(tau(0.5, 1, 2).tau == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(tau(0.5, 1, 2).tau ==
          doctest::Approx(2.0 / pi * std::asin(0.5)).epsilon(1e-12));
    CHECK(tau(0.5, 2, 10).tau == doctest::Approx(0.00390625).epsilon(1e-14));
    CHECK(tau(0.5, 1, 2).tau ==
          doctest::Approx(2.0 * circ_intrinsic_volume(2, pi / 6, 2)).epsilon(1e-12));
}

TEST_CASE("tau equals twice the leading intrinsic volume on a grid") {
    for (int D : {3, 5, 10, 30, 60}) {
        std::vector<int> dims;
        for (int d = 1; d < std::min(D, 6); ++d) dims.push_back(d);
        dims.push_back(D - 2);  // both edges of the allowed range
        dims.push_back(D - 1);
        for (int d : dims) {
            if (d < 1) continue;
            for (double r : {0.05, 0.2, 0.5, 0.8, 0.95}) {
                const double t = tau(r, d, D).tau;
                const double v = 2.0 * circ_intrinsic_volume(D, std::asin(r), D - d + 1);
                if (v > 0.0) CHECK(t == doctest::Approx(v).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("log-space crofton tail stays finite past linear underflow") {
    // narrow cone in high dimension: every term underflows linearly
    const CircularCone cone{400, 0.05};
    CHECK(crofton_tail(400, 2, cone) == 0.0);
    const double lg = log_crofton_tail(400, 2, cone);
    CHECK(std::isfinite(lg));
    CHECK(lg < -700.0);
    // and matches tau's log value up to the (tiny) tail beyond the lead term
    CHECK(lg >= tau(std::sin(0.05), 2, 400).log10_tau * std::numbers::ln10 - 1e-12);
}

TEST_CASE("tau monotone in r and d on the small-cone grid") {
    // The single-term bound is monotone only where the theory uses it:
    // d well below D and r below the peak of r^{D-d}(1-r^2)^{(d-2)/2}.
    // Outside that regime it genuinely wiggles; the full Crofton sum is
    // the monotone quantity there (next test case).
    for (int D : {6, 13, 20, 47, 100}) {
        const int d_max = std::min(6, D / 2);
        for (int d = 1; d <= d_max; ++d) {
            double prev = 0.0;
            for (double r = 0.02; r <= 0.601; r += 0.02) {
                const double t = tau(r, d, D).tau;
                CHECK(t >= prev - 1e-13);
                prev = t;
            }
        }
        for (double r : {0.1, 0.3, 0.5}) {
            double prev = 0.0;
            for (int d = 1; d <= d_max; ++d) {
                const double t = tau(r, d, D).tau;
                CHECK(t >= prev - 1e-13);
                prev = t;
            }
        }
    }
}

TEST_CASE("crofton tail is monotone in d and alpha everywhere") {
    for (int D : {5, 12, 31}) {
        for (double alpha : {0.2, 0.7, 1.2, 1.5}) {
            double prev = 0.0;
            for (int d = 1; d < D; ++d) {
                const double t = crofton_tail(D, d, {D, alpha});
                CHECK(t >= prev - 1e-12);
                prev = t;
            }
        }
        for (int d : {1, 2, D - 1}) {
            double prev = 0.0;
            for (double alpha = 0.05; alpha < 1.55; alpha += 0.05) {
                const double t = crofton_tail(D, d, {D, alpha});
                CHECK(t >= prev - 1e-12);
                prev = t;
            }
        }
    }
}

TEST_CASE("crofton tail dominates tau") {
    for (int D : {3, 5, 10, 20}) {
        for (int d : {1, 2, 3}) {
            if (d >= D) continue;
            for (double r : {0.2, 0.5, 0.8}) {
                CHECK(crofton_tail(D, d, {D, std::asin(r)}) >= tau(r, d, D).tau - 1e-15);
            }
        }
    }
}

TEST_CASE("tau_pointwise") {
    CHECK(tau_pointwise(1, 1, 2, 1, 2).tau == doctest::Approx(1.0 / 3).epsilon(1e-12));
    const auto inside = tau_pointwise(1, 1, 0.5, 1, 5);
    CHECK(inside.tau == 1.0);
    CHECK(inside.certain);
    // boundary distance: r is clamped just below 1
    const auto edge = tau_pointwise(1, 1, 1 + 1e-9, 1, 5);
    CHECK(edge.tau < 1.0);
    CHECK(edge.tau > 0.9);
}

TEST_CASE("tau_uniform") {
    const auto pointwise = tau_pointwise(0.5, 2.0, 3.0, 2, 12);
    const auto uniform = tau_uniform(0.5, 2.0, 3.0, 2, 12);
    CHECK(uniform.tau == doctest::Approx(pointwise.tau));
    CHECK(tau_uniform(0.5, 2.0, 6.0, 2, 12).tau < uniform.tau);

    // d=2 closed form in log space: tau = 0.05^48
    const auto deep = tau_uniform(0.1, 1.0, 2.0, 2, 50);
    CHECK(deep.log10_tau == doctest::Approx(48.0 * std::log10(0.05)).epsilon(1e-12));
}

TEST_CASE("tau_asymptotic") {
    // d = 2 is exact
    for (int D : {10, 100, 400}) {
        CHECK(tau_asymptotic_log10(0.3, 2, D) ==
              doctest::Approx(tau(0.3, 2, D).log10_tau).epsilon(1e-12));
    }
    CHECK(std::abs(tau_asymptotic_log10(0.3, 1, 100) - tau(0.3, 1, 100).log10_tau) <= 1.0);
    for (int D = 50; D <= 500; D += 50) {
        const double gap = tau(0.2, 3, D).log10_tau - tau_asymptotic_log10(0.2, 3, D);
        CHECK(std::abs(gap) <= 1.0);  // ratio within [0.1, 10]
    }
}

TEST_CASE("tau_us") {
    CHECK(tau_us(1, 1, 2).tau == doctest::Approx(pi / 4).epsilon(1e-13));
    CHECK(tau_us(0.5, 1, 2).tau == doctest::Approx(pi / 16).epsilon(1e-13));
    const auto deep = tau_us(0.1, 1, 100);
    const double expected = 50.0 * std::log10(pi) - 100.0 * std::log10(2.0) -
                            std::lgamma(51.0) / std::numbers::ln10 - 100.0;
    CHECK(deep.log10_tau == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::isfinite(deep.log10_tau));
    CHECK(tau_us(2.0, 1.0, 4).vacuous_risk);
}

TEST_CASE("crossover straddles Delta0") {
    const auto at100 = crossover(1, 1, 3.0, 2, 100);
    CHECK(at100.delta0 == doctest::Approx(std::sqrt(200.0 / (pi * std::numbers::e))).epsilon(1e-12));
    CHECK(at100.delta0 == doctest::Approx(4.8394).epsilon(1e-4));

    const double sqrtD = std::sqrt(1000.0);
    CHECK(crossover(1, 1, 0.4 * sqrtD, 2, 1000).embedding_favored);
    CHECK_FALSE(crossover(1, 1, 0.6 * sqrtD, 2, 1000).embedding_favored);
}

TEST_CASE("tau_led") {
    CHECK(tau_led(1, 1, 5.0, 5, 3).tau == 1.0);
    CHECK(tau_led(1, 1, 2.0, 1, 2).tau == doctest::Approx(1.0 / 3).epsilon(1e-12));
    // no ambient-dimension argument exists; nothing about D can leak in
    const auto a = tau_led(0.3, 2.0, 1.7, 2, 4);
    const auto b = tau_led(0.3, 2.0, 1.7, 2, 4);
    CHECK(a.tau == b.tau);
    CHECK(a.log10_tau == b.log10_tau);
}

TEST_CASE("k_xi") {
    CHECK(k_xi(1.0 - std::exp(-1.0), 1.0, 1.0).k_xi == 1);
    CHECK(k_xi(0.99, 0.1, 1.0).k_xi == 47);
    CHECK(k_xi(0.5, 1.0, 0.5).k_xi == 2);
    CHECK_THROWS(k_xi(0.5, 0.0, 1.0));
    // the formula's value certifies the probability bound
    for (double xi : {0.5, 0.9, 0.99}) {
        for (double tr : {0.05, 0.3, 0.9}) {
            const auto params = k_xi(xi, tr, 1.0);
            CHECK(success_curve(params.k_xi, tr, 1.0) >= xi);
        }
    }
}

TEST_CASE("bound reports stay consistent between linear and log space") {
    for (const auto& rep : {tau(0.5, 2, 10), tau(0.37, 1, 23), tau_us(0.8, 1.0, 12),
                            tau_led(1.0, 1.0, 2.0, 1, 2)}) {
        CHECK(rep.tau >= 0.0);
        CHECK(rep.tau <= 1.0);
        if (rep.log10_tau > -300.0) {
            CHECK(rep.tau == doctest::Approx(std::pow(10.0, rep.log10_tau)).epsilon(1e-9));
        } else {
            CHECK(rep.tau == 0.0);
        }
    }
    // deep-underflow report: log is finite, linear value is pinned to zero
    const auto deep = tau_uniform(1.0, 1.0, 1e4, 2, 200);
    CHECK(deep.tau == 0.0);
    CHECK(std::isfinite(deep.log10_tau));
    CHECK(deep.log10_tau < -300.0);
}

TEST_CASE("success_curve") {
    CHECK(success_curve(1, 0.3, 1.0) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(success_curve(5, 0.3, 1.0) == doctest::Approx(1.0 - std::pow(0.7, 5)).epsilon(1e-12));
    CHECK(success_curve(5, 0.3, 1.0) == doctest::Approx(0.83193).epsilon(1e-5));
    CHECK(success_curve(4, 0.1, 1.0, 3, 0.9) >= 0.9);
    CHECK(success_curve(2, 0.1, 1.0, 3, 0.9) == doctest::Approx(1.0 - 0.81).epsilon(1e-12));
}
