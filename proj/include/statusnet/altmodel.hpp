#pragma once

#include <Eigen/Dense>
#include <vector>

#include "statusnet/network.hpp"

namespace statusnet {

/// Parameters of the square-root comparison variant: common income w, linear
/// consumption cost, and a concave benefit of consuming above the reference
/// point. Interiority requires alpha < 1/w.
struct AltParams {
    double alpha = 0.5;
    double beta = 1.0;
    double gamma = 0.25;
    double w = 1.0;

    void validate() const;
};

struct AltEquilibrium {
    Eigen::VectorXd x;
    double y_a = 0.0;
    double y_b = 0.0;
    Eigen::VectorXd c_bon;  // standard Bonacich centralities on Ghat
    double root_residual = 0.0;
    Eigen::VectorXd r;  // reference points Ghat * x

    double y(Identity id) const { return id == Identity::A ? y_a : y_b; }
};

/// Unique nonnegative root of
///   F(Y) = gamma Y^{5/2} + (1/w - alpha) Y^{3/2} - (1/w - alpha) sqrt(r) Y - gamma sqrt(r),
/// where r is the ratio of group-average Bonacich centralities. Bracketed
/// bisection with a Newton polish; F(0) < 0 and F -> +inf guarantee a bracket.
double solve_quintic_y(double r, const AltParams& params);

/// Closed-form equilibrium of the variant:
/// x_j = beta^2/4 * (1/w - alpha + gamma Y_theta)^{-2} * C^bon_j.
/// Verifies x_j >= R_j and gamma Y - alpha + 1/w > 0 for both groups;
/// violations raise COMPARISON_INFEASIBLE.
AltEquilibrium solve_alt(const Eigen::MatrixXd& ghat, const std::vector<Identity>& identities,
                         const AltParams& params);

/// Fixed-point iteration x_j <- R_j(x) + beta^2/4 (gamma Y(x) - alpha + 1/w)^{-2},
/// with Y recomputed each sweep (seeded at 1). Independent check on solve_alt.
AltEquilibrium alt_best_response_oracle(const Eigen::MatrixXd& ghat,
                                        const std::vector<Identity>& identities,
                                        const AltParams& params, double tol = 1e-12,
                                        int max_iter = 100000);

}  // namespace statusnet
