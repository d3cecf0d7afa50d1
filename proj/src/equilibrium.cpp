#include "statusnet/equilibrium.hpp"

#include <cmath>

namespace statusnet {

namespace {

std::pair<double, double> group_means(const Eigen::VectorXd& x,
                                      const std::vector<Identity>& identities) {
    double sum_a = 0.0, sum_b = 0.0;
    int count_a = 0, count_b = 0;
    for (int j = 0; j < static_cast<int>(identities.size()); ++j) {
        if (identities[j] == Identity::A) {
            sum_a += x[j];
            ++count_a;
        } else {
            sum_b += x[j];
            ++count_b;
        }
    }
    if (count_a == 0 || count_b == 0)
        fail(errc::schema, "both identity groups must be nonempty");
    return {sum_a / count_a, sum_b / count_b};
}

Eigen::VectorXd utilities(const Network& net, const ModelParams& params, const Eigen::VectorXd& x,
                          const Eigen::MatrixXd& ghat, double y_a, double y_b) {
    const int j_count = net.size();
    const Eigen::VectorXd r = ghat * x;
    Eigen::VectorXd u(j_count);
    for (int j = 0; j < j_count; ++j) {
        const double y = net.identities[j] == Identity::A ? y_a : y_b;
        const double gap = x[j] - r[j];
        u[j] = params.alpha * x[j] + y - params.gamma * x[j] * y -
               0.5 * params.beta * gap * gap - x[j] * x[j] / (2.0 * net.incomes[j]);
    }
    return u;
}

EquilibriumSolution assemble(const Network& net, const ModelParams& params,
                             const CentralityProfile& profile, const Eigen::VectorXd& x,
                             double y_a, double y_b, std::string method) {
    EquilibriumSolution sol;
    sol.x = x;
    sol.y_a = y_a;
    sol.y_b = y_b;
    const Eigen::MatrixXd ghat = mask_by_identity(net);
    sol.r = ghat * x;
    sol.u = utilities(net, params, x, ghat, y_a, y_b);
    sol.method = std::move(method);
    sol.assumption1_ok = true;  // centrality solve already passed the gate
    sol.assumption2_ok = check_assumption_2(net, profile, params).ok;
    sol.centrality = profile;

    // Best-response residual as a diagnostic: x_j vs w_j/(bw_j+1)(a - gY + bR_j).
    double residual = 0.0;
    for (int j = 0; j < net.size(); ++j) {
        const double y = net.identities[j] == Identity::A ? y_a : y_b;
        const double br = std::max(
            0.0, net.incomes[j] / (params.beta * net.incomes[j] + 1.0) *
                     (params.alpha - params.gamma * y + params.beta * sol.r[j]));
        residual = std::max(residual, std::abs(x[j] - br));
    }
    sol.residual = residual;
    return sol;
}

}  // namespace

std::pair<double, double> group_status(const Eigen::VectorXd& x,
                                       const std::vector<Identity>& identities,
                                       const std::optional<PrestigeParams>& prestige) {
    const auto [mean_a, mean_b] = group_means(x, identities);
    const double p_a = prestige ? prestige->p_a : 0.0;
    const double p_b = prestige ? prestige->p_b : 0.0;
    const double num_a = mean_a + p_a;
    const double num_b = mean_b + p_b;
    if (num_a <= 0.0 || num_b <= 0.0)
        fail(errc::degenerate_status, "group status has a nonpositive denominator");
    return {num_a / num_b, num_b / num_a};
}

double utility(const Network& net, const ModelParams& params, const Eigen::VectorXd& x, int j,
               const std::optional<PrestigeParams>& prestige) {
    const auto [y_a, y_b] = group_status(x, net.identities, prestige);
    const Eigen::MatrixXd ghat = mask_by_identity(net);
    return utilities(net, params, x, ghat, y_a, y_b)[j];
}

EquilibriumSolution solve_closed_form(const Network& net, const ModelParams& params,
                                      bool enforce_assumptions) {
    params.validate();
    const CentralityProfile profile = generalized_centrality(net, params);
    const Assumption2Report dispersion = check_assumption_2(net, profile, params);
    if (enforce_assumptions && !dispersion.all_ok)
        fail(errc::assumption2, "centrality dispersion condition violated");

    const double spread = params.alpha * params.alpha - params.gamma * params.gamma;
    const int j_count = net.size();
    Eigen::VectorXd x(j_count);
    for (int j = 0; j < j_count; ++j) {
        const double z = profile.z(net.identities[j]);
        x[j] = spread / (params.alpha + params.gamma * z) * profile.c[j];
    }
    const double y_a =
        (params.alpha * profile.z_a + params.gamma) / (params.alpha + params.gamma * profile.z_a);
    const double y_b =
        (params.alpha * profile.z_b + params.gamma) / (params.alpha + params.gamma * profile.z_b);
    return assemble(net, params, profile, x, y_a, y_b, "closed_form");
}

EquilibriumSolution solve_closed_form_prestige(const Network& net, const ModelParams& params,
                                               const PrestigeParams& prestige) {
    params.validate();
    if (prestige.p_a < 0.0 || prestige.p_b < 0.0)
        fail(errc::schema, "prestige must be nonnegative");
    // At P = 0 the formulas below agree with the base model only up to
    // rounding; route through the base solver so the reduction is exact.
    if (prestige.zero()) return solve_closed_form(net, params, /*enforce_assumptions=*/false);
    const CentralityProfile profile = generalized_centrality(net, params);

    const double y_a =
        (params.alpha * profile.c_bar_a + params.gamma * profile.c_bar_b + prestige.p_a) /
        (params.alpha * profile.c_bar_b + params.gamma * profile.c_bar_a + prestige.p_b);
    const double y_b =
        (params.alpha * profile.c_bar_b + params.gamma * profile.c_bar_a + prestige.p_b) /
        (params.alpha * profile.c_bar_a + params.gamma * profile.c_bar_b + prestige.p_a);
    if (params.alpha - params.gamma * y_a <= 0.0 || params.alpha - params.gamma * y_b <= 0.0)
        fail(errc::negative_consumption,
             "alpha - gamma*Y_theta <= 0: prestige parameters outside the model's region");

    const int j_count = net.size();
    Eigen::VectorXd x(j_count);
    for (int j = 0; j < j_count; ++j) {
        const double y = net.identities[j] == Identity::A ? y_a : y_b;
        x[j] = (params.alpha - params.gamma * y) * profile.c[j];
    }
    return assemble(net, params, profile, x, y_a, y_b, "closed_form");
}

EquilibriumSolution best_response_oracle(const Network& net, const ModelParams& params,
                                         const std::optional<PrestigeParams>& prestige,
                                         const OracleOptions& options,
                                         const std::optional<Eigen::VectorXd>& start) {
    params.validate();
    const CentralityProfile profile = generalized_centrality(net, params);  // A1 gate

    const int j_count = net.size();
    const Eigen::MatrixXd ghat = mask_by_identity(net);
    Eigen::VectorXd x = start.value_or(Eigen::VectorXd::Zero(j_count));

    const auto status_at = [&](const Eigen::VectorXd& consumption) -> std::pair<double, double> {
        const auto [mean_a, mean_b] = group_means(consumption, net.identities);
        if (!prestige || prestige->zero()) {
            // The base model leaves Y undefined at x = 0; seed symmetric status.
            if (mean_a <= 0.0 || mean_b <= 0.0) return {1.0, 1.0};
            return {mean_a / mean_b, mean_b / mean_a};
        }
        const double num_a = mean_a + prestige->p_a;
        const double num_b = mean_b + prestige->p_b;
        return {num_a / num_b, num_b / num_a};
    };

    Eigen::VectorXd response(j_count);
    double residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it <= options.max_iter; ++it) {
        const auto [y_a, y_b] = status_at(x);
        for (int j = 0; j < j_count; ++j) {
            const double y = net.identities[j] == Identity::A ? y_a : y_b;
            const double raw = net.incomes[j] / (params.beta * net.incomes[j] + 1.0) *
                               (params.alpha - params.gamma * y +
                                params.beta * ghat.row(j).dot(x));
            response[j] = std::max(0.0, raw);
        }
        residual = (x - response).lpNorm<Eigen::Infinity>();
        if (residual < options.tol) break;
        x = (1.0 - options.damping) * x + options.damping * response;
        if (x.lpNorm<Eigen::Infinity>() > 1e12)
            fail(errc::no_convergence, "best-response iterates diverged");
    }
    if (residual >= options.tol)
        fail(errc::no_convergence,
             "best response did not converge; final residual " + std::to_string(residual));

    const auto [y_a, y_b] = status_at(x);
    EquilibriumSolution sol = assemble(net, params, profile, x, y_a, y_b, "best_response");
    sol.residual = residual;
    return sol;
}

}  // namespace statusnet
