#pragma once

#include <Eigen/Dense>
#include <vector>

#include "statusnet/community.hpp"
#include "statusnet/network.hpp"

namespace statusnet {

struct CentralityProfile {
    Eigen::VectorXd c;        // per-agent generalized centrality
    double c_bar_a = 0.0;     // group means
    double c_bar_b = 0.0;
    double z_a = 0.0;         // z_a = c_bar_a / c_bar_b, z_b = 1 / z_a
    double z_b = 0.0;

    double group_mean(Identity id) const { return id == Identity::A ? c_bar_a : c_bar_b; }
    double z(Identity id) const { return id == Identity::A ? z_a : z_b; }
};

/// C = (I - H)^{-1} v with v_k = w_k/(beta*w_k + 1), by direct LU solve.
/// Requires the spectral radius of H to pass the safety-margined gate.
CentralityProfile generalized_centrality(const Network& net, const ModelParams& params);

/// C^bon = (I - Ghat)^{-1} * 1. Requires rho(Ghat) below the same gate.
Eigen::VectorXd standard_bonacich(const Eigen::MatrixXd& ghat);

/// D_n = sum over pairs (j,k) in community n of (I - Ghat)^{-1}_{jk};
/// equals the sum of standard Bonacich centralities over the community.
/// Requires the partition to be block-disconnected in Ghat.
Eigen::VectorXd community_density(const Eigen::MatrixXd& ghat, const CommunityStructure& structure);

struct Assumption2Report {
    std::vector<bool> ok;       // per agent: C_j strictly below the bound
    Eigen::VectorXd bound;      // (1/(alpha^2-gamma^2)) * (alpha/gamma + Z_theta)
    Eigen::VectorXd x_implied;  // equilibrium-consumption form of the same condition
    bool all_ok = true;
};

/// Per-agent check of the centrality-dispersion condition. Reports, never throws.
Assumption2Report check_assumption_2(const Network& net, const CentralityProfile& profile,
                                     const ModelParams& params);

/// Full analytic Jacobian dC/dw; entry (j, k) is dC_j / dw_k.
Eigen::MatrixXd centrality_income_jacobian(const Network& net, const ModelParams& params);

struct UniformCommunityCentrality {
    /// w_n * row sums of (I - Ghat_n)^{-1}, per agent of the community.
    Eigen::VectorXd simplified;
    /// Definition-1 centralities of the same agents, for comparison.
    Eigen::VectorXd generalized;
    double max_discrepancy = 0.0;
    bool consistent = false;  // discrepancy <= 1e-8

    static constexpr double kConsistencyTol = 1e-8;
};

/// Income-scaled standard-Bonacich centrality of a uniform-income community,
/// cross-checked against the generalized definition. The two routes agree
/// only on link-free communities; the report carries the measured gap rather
/// than silently trusting either side. Throws NONUNIFORM_INCOME when incomes
/// differ within the community, and optionally (strict=true) when the routes
/// disagree beyond kConsistencyTol.
UniformCommunityCentrality uniform_community_centrality(const Network& net,
                                                        const std::vector<int>& community_agents,
                                                        const ModelParams& params,
                                                        bool strict = false);

}  // namespace statusnet
