#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "statusnet/centrality.hpp"
#include "statusnet/network.hpp"

namespace statusnet {

struct PrestigeParams {
    double p_a = 0.0;
    double p_b = 0.0;

    double of(Identity id) const { return id == Identity::A ? p_a : p_b; }
    bool zero() const { return p_a == 0.0 && p_b == 0.0; }
};

struct EquilibriumSolution {
    Eigen::VectorXd x;   // status-good consumption
    double y_a = 0.0;    // group statuses
    double y_b = 0.0;
    Eigen::VectorXd r;   // reference points, R = Ghat * x
    Eigen::VectorXd u;   // utilities
    std::string method;  // "closed_form" or "best_response"
    double residual = 0.0;
    bool assumption1_ok = false;
    std::vector<bool> assumption2_ok;
    CentralityProfile centrality;

    double y(Identity id) const { return id == Identity::A ? y_a : y_b; }
};

/// Group statuses (Y_A, Y_B) from a consumption vector, prestige-augmented
/// when prestige is supplied. Throws DEGENERATE_STATUS on a zero denominator.
std::pair<double, double> group_status(const Eigen::VectorXd& x,
                                       const std::vector<Identity>& identities,
                                       const std::optional<PrestigeParams>& prestige = std::nullopt);

/// Utility of agent j at consumption profile x, with Y computed from x.
double utility(const Network& net, const ModelParams& params, const Eigen::VectorXd& x, int j,
               const std::optional<PrestigeParams>& prestige = std::nullopt);

/// Closed-form equilibrium: x_j = (alpha^2 - gamma^2)/(alpha + gamma Z_theta) * C_j.
/// With enforce_assumptions, a violated dispersion condition is fatal; otherwise
/// it is only reported in the solution.
EquilibriumSolution solve_closed_form(const Network& net, const ModelParams& params,
                                      bool enforce_assumptions = true);

/// Prestige extension: Y_theta = (alpha Cbar_theta + gamma Cbar_-theta + P_theta)
/// / (alpha Cbar_-theta + gamma Cbar_theta + P_-theta), x_j = (alpha - gamma Y) C_j.
/// Throws NEGATIVE_CONSUMPTION when alpha - gamma Y_theta <= 0 for either group.
EquilibriumSolution solve_closed_form_prestige(const Network& net, const ModelParams& params,
                                               const PrestigeParams& prestige);

struct OracleOptions {
    double tol = 1e-10;
    int max_iter = 100000;
    double damping = 0.5;
};

/// Damped best-response fixed-point iteration, the independent check on the
/// closed form. Y is recomputed from the current iterate each sweep (seeded
/// at Y = 1 while both group means are still zero in the base model).
EquilibriumSolution best_response_oracle(const Network& net, const ModelParams& params,
                                         const std::optional<PrestigeParams>& prestige = std::nullopt,
                                         const OracleOptions& options = {},
                                         const std::optional<Eigen::VectorXd>& start = std::nullopt);

}  // namespace statusnet
