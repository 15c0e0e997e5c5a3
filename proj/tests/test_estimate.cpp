#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "citenet/estimate.hpp"

using namespace citenet;

TEST_CASE("expected burned count", "[estimate]") {
    REQUIRE(expected_burned(0.0) == Catch::Approx(1.0));
    REQUIRE(expected_burned(0.3) == Catch::Approx(1.75));
    REQUIRE(expected_burned(0.369) == Catch::Approx(0.631 / 0.262).margin(1e-9));
    REQUIRE_THROWS_AS(expected_burned(0.5), std::domain_error);
    REQUIRE_THROWS_AS(expected_burned(-0.01), std::domain_error);
}

TEST_CASE("expected degree with isolated-node correction", "[estimate]") {
    // v = 1 at p = 0: 2*0.5*1 / (0.5 - 0.25) = 4
    REQUIRE(expected_degree(0.0, 0.5) == Catch::Approx(4.0));

    // direct substitution at the fitted parameter pair
    const double v = expected_burned(0.369);
    const double direct = 2.0 * 0.593 * v / (1.0 - 0.593 - std::pow(0.407, v + 1.0));
    REQUIRE(expected_degree(0.369, 0.593) == Catch::Approx(direct));
    REQUIRE(direct == Catch::Approx(7.93).margin(0.005));

    const double v2 = expected_burned(0.3);
    const double direct2 = 2.0 * 0.75 * v2 / (0.25 - std::pow(0.25, v2 + 1.0));
    REQUIRE(expected_degree(0.3, 0.75) == Catch::Approx(direct2));
    REQUIRE(direct2 == Catch::Approx(11.5).margin(0.05));

    REQUIRE_THROWS_AS(expected_degree(0.3, 0.0), std::domain_error);
    REQUIRE_THROWS_AS(expected_degree(0.3, 1.0), std::domain_error);
}

TEST_CASE("expected values are monotone on the valid domain", "[estimate]") {
    double prev = expected_burned(0.0);
    for (int i = 1; i < 50; ++i) {
        const double p = 0.01 * i * 0.98;  // stays below 1/2
        const double v = expected_burned(p * 0.5 / 0.49);
        REQUIRE(v > prev);
        prev = v;
    }

    for (int qi = 1; qi <= 20; ++qi) {
        const double q = qi / 21.0;
        double last = 0.0;
        for (int pi = 0; pi < 20; ++pi) {
            const double p = pi * 0.49 / 19.0;
            const double k = expected_degree(p, q);
            REQUIRE(k > last);
            last = k;
        }
    }
    for (int pi = 0; pi < 20; ++pi) {
        const double p = pi * 0.49 / 19.0;
        double last = 0.0;
        for (int qi = 1; qi <= 20; ++qi) {
            const double q = qi / 21.0;
            const double k = expected_degree(p, q);
            REQUIRE(k > last);
            last = k;
        }
    }
}

TEST_CASE("degree inversion round-trips", "[estimate]") {
    REQUIRE(estimate_p(expected_degree(0.3, 0.75), 0.75) == Catch::Approx(0.3).margin(1e-6));
    for (int pi = 0; pi < 20; ++pi) {
        for (int qi = 1; qi <= 20; ++qi) {
            const double p = pi * 0.49 / 19.0;
            const double q = qi / 21.0;
            const double p_hat = estimate_p(expected_degree(p, q), q);
            REQUIRE(p_hat == Catch::Approx(p).margin(1e-6));
            REQUIRE(expected_degree(p_hat, q) ==
                    Catch::Approx(expected_degree(p, q)).margin(1e-9));
        }
    }
}

TEST_CASE("infeasible degree targets are rejected with the range", "[estimate]") {
    // the p=0 floor at q=0.5 is 4
    REQUIRE_THROWS_WITH(estimate_p(0.1, 0.5), Catch::Matchers::ContainsSubstring("feasible range"));
    REQUIRE_THROWS_AS(estimate_p(0.1, 0.5), std::domain_error);
    REQUIRE_THROWS_AS(estimate_p(-1.0, 0.5), std::domain_error);
    REQUIRE_THROWS_AS(estimate_p(5.0, 0.0), std::domain_error);
}

TEST_CASE("read fraction", "[estimate]") {
    REQUIRE(read_fraction(0.0, 2.0) == Catch::Approx(1.0));
    REQUIRE(read_fraction(0.3, 7.0) == Catch::Approx(0.5));
    // computed value for the citation-network fit; noticeably below the
    // rounded 0.66 sometimes quoted for these inputs
    REQUIRE(read_fraction(0.369, 7.697) == Catch::Approx(0.626).margin(0.001));
    REQUIRE_THROWS_AS(read_fraction(0.3, 0.0), std::domain_error);
}

TEST_CASE("closed-form burning-model fit", "[estimate]") {
    // 2(1-p)/(1-2p) = k  =>  p = (k-2)/(2k-2)
    for (const double p : {0.0, 0.1, 0.25, 0.4, 0.45}) {
        const double k = ff_expected_degree(p);
        REQUIRE(estimate_p_ff(k) == Catch::Approx(p).margin(1e-12));
    }
    REQUIRE_THROWS_AS(estimate_p_ff(1.5), std::domain_error);

    const FitResult fit = fit_ff(7.697);
    REQUIRE(fit.p_hat == Catch::Approx((7.697 - 2.0) / (2.0 * 7.697 - 2.0)));
    REQUIRE_FALSE(fit.q_fixed.has_value());
    REQUIRE(fit.k_pred == Catch::Approx(7.697).margin(1e-9));
}

TEST_CASE("copying-model fit bundles the derived quantities", "[estimate]") {
    const FitResult fit = fit_cit(7.697, 0.593);
    REQUIRE(fit.q_fixed == Catch::Approx(0.593));
    REQUIRE(expected_degree(fit.p_hat, 0.593) == Catch::Approx(7.697).margin(1e-9));
    REQUIRE(fit.v_bar == Catch::Approx(expected_burned(fit.p_hat)));
    REQUIRE(fit.read_fraction == Catch::Approx(2.0 * fit.v_bar / 7.697));
    // inverting the corrected-degree formula at this target lands in the
    // expected parameter region
    REQUIRE(fit.p_hat > 0.33);
    REQUIRE(fit.p_hat < 0.40);
}
