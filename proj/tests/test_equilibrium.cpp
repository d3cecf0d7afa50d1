#include <doctest.h>

#include <cmath>

#include "helpers.hpp"

using namespace statusnet;
using testing::four_agent_fixture;
using testing::random_instance;

TEST_CASE("closed form on the 4-agent fixture") {
    const ModelParams params;
    const EquilibriumSolution sol = solve_closed_form(four_agent_fixture(), params);
    CHECK(sol.x[0] == doctest::Approx(0.6).epsilon(1e-13));
    CHECK(sol.x[1] == doctest::Approx(0.6).epsilon(1e-13));
    CHECK(sol.x[2] == doctest::Approx(6.0 / 11.0).epsilon(1e-13));
    CHECK(sol.x[3] == doctest::Approx(6.0 / 11.0).epsilon(1e-13));
    CHECK(sol.y_a == doctest::Approx(1.1).epsilon(1e-13));
    CHECK(sol.y_a * sol.y_b == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sol.method == "closed_form");
    CHECK(sol.assumption1_ok);
    CHECK(sol.residual < 1e-12);
    CHECK(sol.r[0] == doctest::Approx(0.3).epsilon(1e-13));
}

TEST_CASE("group status") {
    std::vector<Identity> ids{Identity::A, Identity::B};

    SUBCASE("equal means give unit status") {
        Eigen::VectorXd x(2);
        x << 0.7, 0.7;
        const auto [y_a, y_b] = group_status(x, ids);
        CHECK(y_a == doctest::Approx(1.0));
        CHECK(y_b == doctest::Approx(1.0));
    }
    SUBCASE("fixture means give 1.1") {
        Eigen::VectorXd x(2);
        x << 0.6, 6.0 / 11.0;
        const auto [y_a, y_b] = group_status(x, ids);
        CHECK(y_a == doctest::Approx(1.1).epsilon(1e-14));
        CHECK(y_a * y_b == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("prestige-only ratio at zero consumption") {
        const Eigen::VectorXd x = Eigen::VectorXd::Zero(2);
        PrestigeParams prestige{0.5, 0.1};
        const auto [y_a, y_b] = group_status(x, ids, prestige);
        CHECK(y_a == doctest::Approx(5.0));
        CHECK_THROWS_AS(group_status(x, ids), Error);
    }
}

TEST_CASE("best-response oracle agrees with the closed form") {
    Rng rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        const auto inst = random_instance(rng, 30);
        const EquilibriumSolution closed = solve_closed_form(inst.net, inst.params);
        CHECK(closed.y_a * closed.y_b == doctest::Approx(1.0).epsilon(1e-12));

        for (int start = 0; start < 3; ++start) {
            Eigen::VectorXd x0(inst.net.size());
            for (int j = 0; j < inst.net.size(); ++j) x0[j] = rng.uniform(0.0, 2.0);
            const EquilibriumSolution oracle =
                best_response_oracle(inst.net, inst.params, std::nullopt, {}, x0);
            CHECK((closed.x - oracle.x).lpNorm<Eigen::Infinity>() <= 1e-8);
        }
    }
}

TEST_CASE("no profitable unilateral deviation at equilibrium") {
    Rng rng(5150);
    const auto inst = random_instance(rng, 16);
    const EquilibriumSolution sol = solve_closed_form(inst.net, inst.params);
    const Eigen::MatrixXd ghat = mask_by_identity(inst.net);
    for (int j = 0; j < inst.net.size(); ++j) {
        const double y = sol.y(inst.net.identities[j]);
        const double r = ghat.row(j).dot(sol.x);
        const auto payoff = [&](double xj) {
            const double gap = xj - r;
            return inst.params.alpha * xj + y - inst.params.gamma * xj * y -
                   0.5 * inst.params.beta * gap * gap -
                   xj * xj / (2.0 * inst.net.incomes[j]);
        };
        const double at_eq = payoff(sol.x[j]);
        for (int g = 0; g <= 40; ++g) {
            const double deviation = 2.0 * sol.x[j] * g / 40.0;
            CHECK(payoff(deviation) <= at_eq + 1e-9);
        }
    }
}

TEST_CASE("formula monotonicity in the centrality arguments") {
    const ModelParams params;
    const auto x_of = [&](double c_j, double c_bar_own, double c_bar_other) {
        const double z = c_bar_own / c_bar_other;
        return (params.alpha * params.alpha - params.gamma * params.gamma) /
               (params.alpha + params.gamma * z) * c_j;
    };
    CHECK(x_of(0.7, 0.6, 0.5) > x_of(0.6, 0.6, 0.5));   // increasing in C_j
    CHECK(x_of(0.6, 0.7, 0.5) < x_of(0.6, 0.6, 0.5));   // decreasing in own group mean
    CHECK(x_of(0.6, 0.6, 0.55) > x_of(0.6, 0.6, 0.5));  // increasing in other group mean
}

TEST_CASE("prestige closed form") {
    const ModelParams params;
    const Network net = four_agent_fixture();

    SUBCASE("zero prestige reproduces the base model exactly") {
        const EquilibriumSolution base = solve_closed_form(net, params);
        const EquilibriumSolution prestige = solve_closed_form_prestige(net, params, {0.0, 0.0});
        CHECK((base.x - prestige.x).lpNorm<Eigen::Infinity>() == 0.0);
        CHECK(prestige.y_a == base.y_a);
    }
    SUBCASE("hand-evaluated P_A = 0.5 solution") {
        // Cbar_A = 2/3, Cbar_B = 1/2: Y_A = (4/3 + 1/2 + 1/2)/(1 + 2/3) = 1.4.
        const EquilibriumSolution sol = solve_closed_form_prestige(net, params, {0.5, 0.0});
        CHECK(sol.y_a == doctest::Approx(1.4).epsilon(1e-14));
        CHECK(sol.x[0] == doctest::Approx((2.0 - 1.4) * 2.0 / 3.0).epsilon(1e-13));
        CHECK(sol.x[2] == doctest::Approx((2.0 - 5.0 / 7.0) * 0.5).epsilon(1e-13));

        // The induced statuses are a fixed point of the prestige definition.
        const auto [y_a, y_b] = group_status(sol.x, net.identities, PrestigeParams{0.5, 0.0});
        CHECK(y_a == doctest::Approx(sol.y_a).epsilon(1e-13));
        CHECK(y_b == doctest::Approx(sol.y_b).epsilon(1e-13));
    }
    SUBCASE("prestige oracle agreement") {
        const PrestigeParams prestige{0.3, 0.1};
        const EquilibriumSolution closed = solve_closed_form_prestige(net, params, prestige);
        const EquilibriumSolution oracle = best_response_oracle(net, params, prestige);
        CHECK((closed.x - oracle.x).lpNorm<Eigen::Infinity>() <= 1e-8);
    }
    SUBCASE("prestige outside the region is rejected") {
        CHECK_THROWS_AS(solve_closed_form_prestige(net, params, {50.0, 0.0}), Error);
        CHECK_THROWS_AS(solve_closed_form_prestige(net, params, {-0.1, 0.0}), Error);
    }
}

TEST_CASE("enforcement of the dispersion condition") {
    ModelParams tight;
    tight.alpha = 1.05;
    tight.gamma = 1.0;
    tight.beta = 0.01;  // weak dissonance: centralities approach the incomes
    Network net = four_agent_fixture();
    net.incomes *= 50.0;  // drives centralities past the tight bound
    CHECK_THROWS_AS(solve_closed_form(net, tight, /*enforce_assumptions=*/true), Error);
    const EquilibriumSolution sol = solve_closed_form(net, tight, /*enforce_assumptions=*/false);
    bool any_flagged = false;
    for (bool ok : sol.assumption2_ok) any_flagged = any_flagged || !ok;
    CHECK(any_flagged);
}

TEST_CASE("utility evaluation matches the assembled solution") {
    const ModelParams params;
    const Network net = four_agent_fixture();
    const EquilibriumSolution sol = solve_closed_form(net, params);
    for (int j = 0; j < net.size(); ++j)
        CHECK(utility(net, params, sol.x, j) == doctest::Approx(sol.u[j]).epsilon(1e-12));
}
