#include "statusnet/altmodel.hpp"

#include <cmath>

#include "statusnet/centrality.hpp"

namespace statusnet {

namespace {

std::pair<double, double> bonacich_group_means(const Eigen::VectorXd& c_bon,
                                               const std::vector<Identity>& identities) {
    double sum_a = 0.0, sum_b = 0.0;
    int count_a = 0, count_b = 0;
    for (int j = 0; j < static_cast<int>(identities.size()); ++j) {
        if (identities[j] == Identity::A) {
            sum_a += c_bon[j];
            ++count_a;
        } else {
            sum_b += c_bon[j];
            ++count_b;
        }
    }
    if (count_a == 0 || count_b == 0) fail(errc::schema, "both identity groups must be nonempty");
    return {sum_a / count_a, sum_b / count_b};
}

AltEquilibrium assemble(const Eigen::MatrixXd& ghat, const std::vector<Identity>& identities,
                        const AltParams& params, const Eigen::VectorXd& c_bon, double y_a) {
    AltEquilibrium eq;
    eq.c_bon = c_bon;
    eq.y_a = y_a;
    eq.y_b = 1.0 / y_a;

    const double cost_gap = 1.0 / params.w - params.alpha;  // > 0 by interiority
    for (Identity id : {Identity::A, Identity::B}) {
        const double margin = params.gamma * (id == Identity::A ? eq.y_a : eq.y_b) + cost_gap;
        if (!(margin > 0.0))
            fail(errc::comparison_infeasible,
                 "marginal comparison condition fails for group " + std::string(1, to_char(id)));
    }

    const int j_count = static_cast<int>(identities.size());
    eq.x.resize(j_count);
    for (int j = 0; j < j_count; ++j) {
        const double y = identities[j] == Identity::A ? eq.y_a : eq.y_b;
        const double denom = cost_gap + params.gamma * y;
        eq.x[j] = params.beta * params.beta / 4.0 / (denom * denom) * c_bon[j];
    }
    eq.r = ghat * eq.x;
    for (int j = 0; j < j_count; ++j)
        if (eq.x[j] < eq.r[j] - 1e-12)
            fail(errc::comparison_infeasible,
                 "consumption falls below the reference point at agent " + std::to_string(j));
    return eq;
}

}  // namespace

void AltParams::validate() const {
    if (!(w > 0.0)) fail(errc::schema, "income must be > 0");
    if (!(beta > 0.0)) fail(errc::non_positive_beta, "beta must be > 0");
    if (!(gamma > 0.0)) fail(errc::schema, "gamma must be > 0");
    if (!(alpha - 1.0 / w < 0.0))
        fail(errc::schema, "interiority requires alpha < 1/w");
}

double solve_quintic_y(double r, const AltParams& params) {
    params.validate();
    if (!(r > 0.0)) fail(errc::schema, "centrality ratio must be positive");
    const double cost_gap = 1.0 / params.w - params.alpha;
    const double root_r = std::sqrt(r);
    const auto f = [&](double y) {
        return params.gamma * std::pow(y, 2.5) + cost_gap * std::pow(y, 1.5) -
               cost_gap * root_r * y - params.gamma * root_r;
    };
    const auto df = [&](double y) {
        return 2.5 * params.gamma * std::pow(y, 1.5) + 1.5 * cost_gap * std::sqrt(y) -
               cost_gap * root_r;
    };

    // F(0) < 0 and F grows without bound: double the upper end into a bracket.
    double lo = 0.0;
    double hi = 1.0;
    int expansions = 0;
    while (f(hi) < 0.0) {
        hi *= 2.0;
        if (++expansions > 200) fail(errc::root_not_bracketed, "no upper bracket for F");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-8 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    double y = 0.5 * (lo + hi);
    for (int it = 0; it < 200 && std::abs(f(y)) > 1e-13; ++it) {
        const double slope = df(y);
        if (slope == 0.0) break;
        const double next = y - f(y) / slope;
        if (!(next > lo * 0.5) || !(next < hi * 2.0 + 1.0)) break;  // keep the polish local
        y = next;
    }
    return y;
}

AltEquilibrium solve_alt(const Eigen::MatrixXd& ghat, const std::vector<Identity>& identities,
                         const AltParams& params) {
    params.validate();
    const Eigen::VectorXd c_bon = standard_bonacich(ghat);
    const auto [mean_a, mean_b] = bonacich_group_means(c_bon, identities);
    const double y_a = solve_quintic_y(mean_a / mean_b, params);
    AltEquilibrium eq = assemble(ghat, identities, params, c_bon, y_a);

    const double cost_gap = 1.0 / params.w - params.alpha;
    const double root_r = std::sqrt(mean_a / mean_b);
    eq.root_residual = std::abs(params.gamma * std::pow(y_a, 2.5) + cost_gap * std::pow(y_a, 1.5) -
                                cost_gap * root_r * y_a - params.gamma * root_r);
    return eq;
}

AltEquilibrium alt_best_response_oracle(const Eigen::MatrixXd& ghat,
                                        const std::vector<Identity>& identities,
                                        const AltParams& params, double tol, int max_iter) {
    params.validate();
    const Eigen::VectorXd c_bon = standard_bonacich(ghat);
    const int j_count = static_cast<int>(identities.size());
    const double cost_gap = 1.0 / params.w - params.alpha;

    Eigen::VectorXd x = Eigen::VectorXd::Zero(j_count);
    Eigen::VectorXd response(j_count);
    double residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it <= max_iter; ++it) {
        double mean_a = 0.0, mean_b = 0.0;
        int count_a = 0, count_b = 0;
        for (int j = 0; j < j_count; ++j) {
            if (identities[j] == Identity::A) {
                mean_a += x[j];
                ++count_a;
            } else {
                mean_b += x[j];
                ++count_b;
            }
        }
        mean_a /= count_a;
        mean_b /= count_b;
        const double y_a = (mean_a <= 0.0 || mean_b <= 0.0) ? 1.0 : mean_a / mean_b;
        const double y_b = 1.0 / y_a;

        const Eigen::VectorXd reference = ghat * x;
        for (int j = 0; j < j_count; ++j) {
            const double margin =
                params.gamma * (identities[j] == Identity::A ? y_a : y_b) + cost_gap;
            if (!(margin > 0.0))
                fail(errc::comparison_infeasible, "marginal comparison condition fails mid-iteration");
            response[j] =
                reference[j] + params.beta * params.beta / 4.0 / (margin * margin);
        }
        residual = (x - response).lpNorm<Eigen::Infinity>();
        if (residual < tol) break;
        // Damping keeps the status-ratio feedback from two-cycling on
        // asymmetric instances; the fixed point itself is unchanged.
        x = 0.5 * (x + response);
        if (x.lpNorm<Eigen::Infinity>() > 1e12)
            fail(errc::no_convergence, "alt best-response iterates diverged");
    }
    if (residual >= tol)
        fail(errc::no_convergence,
             "alt best response did not converge; residual " + std::to_string(residual));

    double mean_a = 0.0, mean_b = 0.0;
    int count_a = 0, count_b = 0;
    for (int j = 0; j < j_count; ++j) {
        if (identities[j] == Identity::A) {
            mean_a += x[j];
            ++count_a;
        } else {
            mean_b += x[j];
            ++count_b;
        }
    }
    const double y_a = (mean_a / count_a) / (mean_b / count_b);
    AltEquilibrium eq;
    eq.c_bon = c_bon;
    eq.x = x;
    eq.y_a = y_a;
    eq.y_b = 1.0 / y_a;
    eq.r = ghat * x;
    eq.root_residual = residual;
    return eq;
}

}  // namespace statusnet
