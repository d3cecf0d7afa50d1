#pragma once

#include <cstdint>

#include "statusnet/equilibrium.hpp"
#include "statusnet/generate.hpp"
#include "statusnet/network.hpp"

namespace statusnet::testing {

/// 4-agent hand fixture: A-pair with a symmetric 0.5 link, two isolated
/// B agents, unit incomes. With alpha=2, beta=1, gamma=1 the equilibrium is
/// x_A = 0.6, x_B = 6/11, Y_A = 1.1.
inline Network four_agent_fixture() {
    Network net;
    net.incomes = Eigen::VectorXd::Ones(4);
    net.identities = {Identity::A, Identity::A, Identity::B, Identity::B};
    net.links = Eigen::MatrixXd::Zero(4, 4);
    net.links(0, 1) = 0.5;
    net.links(1, 0) = 0.5;
    return net;
}

inline Network empty_network(int j_count, double income = 1.0) {
    Network net;
    net.incomes = Eigen::VectorXd::Constant(j_count, income);
    net.identities.assign(j_count, Identity::A);
    for (int j = j_count / 2; j < j_count; ++j) net.identities[j] = Identity::B;
    net.links = Eigen::MatrixXd::Zero(j_count, j_count);
    return net;
}

struct RandomInstance {
    Network net;
    ModelParams params;
};

/// Seeded random two-group instance that satisfies both assumptions; used by
/// the oracle-agreement and derivative property suites.
inline RandomInstance random_instance(Rng& rng, int max_agents = 60) {
    for (;;) {
        RandomInstance inst;
        inst.params.alpha = rng.uniform(1.8, 2.2);
        inst.params.gamma = rng.uniform(0.2, 0.4);
        inst.params.beta = rng.uniform(0.5, 1.5);

        const int j_count = 4 + 2 * static_cast<int>(rng.below((max_agents - 4) / 2 + 1));
        Network& net = inst.net;
        net.incomes.resize(j_count);
        net.identities.resize(j_count);
        net.links = Eigen::MatrixXd::Zero(j_count, j_count);
        for (int j = 0; j < j_count; ++j) {
            net.identities[j] = j < j_count / 2 ? Identity::A : Identity::B;
            net.incomes[j] = rng.uniform(0.6, 1.4);
        }
        for (int j = 0; j < j_count; ++j)
            for (int k = 0; k < j_count; ++k)
                if (j != k && rng.uniform01() < 0.3) net.links(j, k) = rng.uniform(0.05, 0.4);

        for (int attempt = 0; attempt < 40; ++attempt) {
            if (spectral_radius(build_h(net, inst.params)).lambda1 <= 0.45) break;
            net.links *= 0.7;
        }
        try {
            solve_closed_form(net, inst.params, /*enforce_assumptions=*/true);
            return inst;
        } catch (const Error&) {
            continue;  // dispersion condition failed; redraw
        }
    }
}

}  // namespace statusnet::testing
