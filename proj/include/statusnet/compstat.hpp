#pragma once

#include <optional>
#include <string>
#include <vector>

#include "statusnet/community.hpp"
#include "statusnet/equilibrium.hpp"
#include "statusnet/network.hpp"

namespace statusnet {

struct CompStatReport {
    int target = 0;         // agent j
    int shocked = 0;        // agent k whose income moves
    double step = 0.0;      // finite-difference step actually used
    double total = 0.0;     // central finite difference of dx*_j / dw_k
    double own_channel = 0.0;
    double group_channel = 0.0;
    double analytic_total = 0.0;  // own_channel + group_channel
    bool cross_identity = false;
};

/// Income-derivative decomposition of equilibrium consumption. Same-identity
/// shocks split into the own-centrality and group-average channels; a
/// cross-identity shock has no own channel and works through the other
/// group's average centrality.
CompStatReport slutsky_decomposition(const Network& net, const ModelParams& params, int j, int k);

struct NbarReport {
    int n_bar = 0;
    std::pair<int, int> binding_pair{-1, -1};
    double max_rhs = 0.0;
    /// RHS value per evaluated same-community (j, k) pair.
    std::vector<std::tuple<int, int, double>> rhs_values;
    int skipped_pairs = 0;  // pairs with a vanishing own-centrality derivative
};

/// Minimal community count making the own-centrality channel dominate for
/// every same-community income shock: the smallest integer strictly greater
/// than the largest per-pair bound.
NbarReport n_bar(const Network& net, const CommunityStructure& structure,
                 const ModelParams& params);

struct SignCheckRow {
    std::string experiment_id;
    int agent = 0;
    Identity identity = Identity::A;
    int community = -1;
    double baseline_x = 0.0;
    double shocked_x = 0.0;
    double delta = 0.0;
    int expected_sign = 0;  // -1, 0, +1
    bool sign_ok = true;
};

struct ExperimentReport {
    std::vector<SignCheckRow> rows;
    int checks = 0;
    int violations = 0;
};

/// Raise incomes of one community by epsilon per agent, re-solve, and check
/// the communities-network sign claims: same-identity consumption falls
/// outside the shocked community, rises inside it, rises for the other
/// identity, and the out-of-community response scales with own income.
ExperimentReport community_income_shock_experiment(const Network& net,
                                                   const CommunityStructure& structure,
                                                   const ModelParams& params,
                                                   int shocked_community, double epsilon,
                                                   double sign_tolerance = 1e-9);

struct SwapEffectReport {
    SwapDirection direction = SwapDirection::Neutral;
    bool masked_changed = false;
    Eigen::VectorXd delta_c;  // centrality change, all agents
    Eigen::VectorXd delta_x;  // equilibrium change, all agents
    /// Whether the centrality deltas of agents sharing j's identity match the
    /// direction implied by the homophily classification. Within-identity
    /// rewires (j, k, l all one group) are homophily-neutral but still move
    /// Ghat, so no direction is implied and signs_checked is false.
    bool signs_checked = false;
    bool signs_ok = true;
};

SwapEffectReport homophily_swap_effect(const Network& net, const ModelParams& params, int j, int k,
                                       int l, double tolerance = 1e-12);

}  // namespace statusnet
