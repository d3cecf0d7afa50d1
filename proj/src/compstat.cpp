#include "statusnet/compstat.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace statusnet {

namespace {

double group_jacobian_mean(const Network& net, const Eigen::MatrixXd& jacobian, Identity id,
                           int k) {
    double sum = 0.0;
    int count = 0;
    for (int m = 0; m < net.size(); ++m) {
        if (net.identities[m] == id) {
            sum += jacobian(m, k);
            ++count;
        }
    }
    return sum / count;
}

Network with_income(const Network& net, int k, double income) {
    Network out = net;
    out.incomes[k] = income;
    return out;
}

}  // namespace

CompStatReport slutsky_decomposition(const Network& net, const ModelParams& params, int j, int k) {
    const EquilibriumSolution base = solve_closed_form(net, params, /*enforce_assumptions=*/true);
    const Eigen::MatrixXd jacobian = centrality_income_jacobian(net, params);

    CompStatReport report;
    report.target = j;
    report.shocked = k;
    report.cross_identity = net.identities[j] != net.identities[k];

    const Identity theta = net.identities[j];
    const double z = base.centrality.z(theta);
    const double factor = params.alpha + params.gamma * z;
    const double spread = params.alpha * params.alpha - params.gamma * params.gamma;
    const double c_bar_other = base.centrality.group_mean(other(theta));

    if (report.cross_identity) {
        const double d_c_bar_other = group_jacobian_mean(net, jacobian, other(theta), k);
        report.own_channel = 0.0;
        report.group_channel =
            params.gamma * z / c_bar_other * d_c_bar_other * base.x[j] / factor;
    } else {
        const double d_c_bar = group_jacobian_mean(net, jacobian, theta, k);
        report.own_channel = spread / factor * jacobian(j, k);
        report.group_channel = -params.gamma / c_bar_other * d_c_bar * base.x[j] / factor;
    }
    report.analytic_total = report.own_channel + report.group_channel;

    report.step = 1e-6 * std::max(1.0, net.incomes[k]);
    const EquilibriumSolution up =
        solve_closed_form(with_income(net, k, net.incomes[k] + report.step), params, false);
    const EquilibriumSolution down =
        solve_closed_form(with_income(net, k, net.incomes[k] - report.step), params, false);
    report.total = (up.x[j] - down.x[j]) / (2.0 * report.step);
    return report;
}

NbarReport n_bar(const Network& net, const CommunityStructure& structure,
                 const ModelParams& params) {
    structure.validate(net);
    const EquilibriumSolution base = solve_closed_form(net, params, /*enforce_assumptions=*/true);
    const Eigen::MatrixXd jacobian = centrality_income_jacobian(net, params);
    const double spread = params.alpha * params.alpha - params.gamma * params.gamma;

    NbarReport report;
    for (int n = 0; n < structure.num_communities(); ++n) {
        const auto agents = structure.members(n);
        for (int k : agents) {
            // Community-average centrality response to w_k.
            double d_community = 0.0;
            for (int m : agents) d_community += jacobian(m, k);
            d_community /= static_cast<double>(agents.size());

            for (int j : agents) {
                const double d_own = jacobian(j, k);
                if (std::abs(d_own) < 1e-14) {
                    ++report.skipped_pairs;
                    continue;
                }
                const double c_bar_other = base.centrality.group_mean(other(net.identities[j]));
                const double rhs = params.gamma / c_bar_other / spread * (d_community / d_own) *
                                   base.x[j];
                report.rhs_values.emplace_back(j, k, rhs);
                if (rhs > report.max_rhs || report.binding_pair.first < 0) {
                    report.max_rhs = rhs;
                    report.binding_pair = {j, k};
                }
            }
        }
    }
    if (report.rhs_values.empty())
        fail(errc::zero_derivative, "all same-community centrality derivatives vanish");
    report.n_bar = static_cast<int>(std::floor(report.max_rhs)) + 1;
    return report;
}

ExperimentReport community_income_shock_experiment(const Network& net,
                                                   const CommunityStructure& structure,
                                                   const ModelParams& params,
                                                   int shocked_community, double epsilon,
                                                   double sign_tolerance) {
    const NbarReport bound = n_bar(net, structure, params);
    if (structure.communities_per_identity < bound.n_bar)
        fail(errc::n_less_than_nbar,
             "need at least " + std::to_string(bound.n_bar) + " communities per identity, have " +
                 std::to_string(structure.communities_per_identity));

    const EquilibriumSolution baseline = solve_closed_form(net, params);
    Network shocked_net = net;
    for (int j : structure.members(shocked_community)) shocked_net.incomes[j] += epsilon;
    const EquilibriumSolution shocked = solve_closed_form(shocked_net, params);

    const Identity shocked_identity = structure.identity[shocked_community];
    ExperimentReport report;
    for (int j = 0; j < net.size(); ++j) {
        SignCheckRow row;
        row.experiment_id = "community_shock";
        row.agent = j;
        row.identity = net.identities[j];
        row.community = structure.assignment[j];
        row.baseline_x = baseline.x[j];
        row.shocked_x = shocked.x[j];
        row.delta = shocked.x[j] - baseline.x[j];
        if (row.community == shocked_community)
            row.expected_sign = +1;
        else if (row.identity == shocked_identity)
            row.expected_sign = -1;
        else
            row.expected_sign = +1;
        row.sign_ok = row.expected_sign > 0 ? row.delta > -sign_tolerance
                                            : row.delta < sign_tolerance;
        ++report.checks;
        if (!row.sign_ok) ++report.violations;
        report.rows.push_back(std::move(row));
    }

    // Sensitivity claim: among untouched communities with identical internal
    // topology, the richer community responds more strongly per agent.
    const Eigen::MatrixXd ghat = mask_by_identity(net);
    const auto block_of = [&](int n) {
        const auto agents = structure.members(n);
        const int s = static_cast<int>(agents.size());
        Eigen::MatrixXd block(s, s);
        for (int a = 0; a < s; ++a)
            for (int b = 0; b < s; ++b) block(a, b) = ghat(agents[a], agents[b]);
        return block;
    };
    for (int n1 = 0; n1 < structure.num_communities(); ++n1) {
        for (int n2 = n1 + 1; n2 < structure.num_communities(); ++n2) {
            if (n1 == shocked_community || n2 == shocked_community) continue;
            if (structure.identity[n1] != structure.identity[n2]) continue;
            if (structure.incomes[n1] == structure.incomes[n2]) continue;
            if ((block_of(n1) - block_of(n2)).lpNorm<Eigen::Infinity>() != 0.0) continue;
            const auto mean_abs_delta = [&](int n) {
                double sum = 0.0;
                for (int j : structure.members(n)) sum += std::abs(shocked.x[j] - baseline.x[j]);
                return sum / structure.community_size;
            };
            const int rich = structure.incomes[n1] > structure.incomes[n2] ? n1 : n2;
            const int poor = rich == n1 ? n2 : n1;
            SignCheckRow row;
            row.experiment_id = "community_shock:sensitivity";
            row.agent = -1;
            row.identity = structure.identity[n1];
            row.community = rich;
            row.baseline_x = mean_abs_delta(poor);
            row.shocked_x = mean_abs_delta(rich);
            row.delta = mean_abs_delta(rich) - mean_abs_delta(poor);
            row.expected_sign = +1;
            row.sign_ok = row.delta > -sign_tolerance;
            ++report.checks;
            if (!row.sign_ok) ++report.violations;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

SwapEffectReport homophily_swap_effect(const Network& net, const ModelParams& params, int j, int k,
                                       int l, double tolerance) {
    const SwapResult swap = swap_link(net, j, k, l);
    const EquilibriumSolution before = solve_closed_form(net, params);
    const EquilibriumSolution after = solve_closed_form(swap.net, params);

    SwapEffectReport report;
    report.direction = swap.direction;
    report.masked_changed = swap.masked_changed;
    report.delta_c = after.centrality.c - before.centrality.c;
    report.delta_x = after.x - before.x;

    if (swap.direction == SwapDirection::Neutral && swap.masked_changed) {
        report.signs_checked = false;
        return report;
    }
    report.signs_checked = true;
    for (int m = 0; m < net.size(); ++m) {
        const double dc = report.delta_c[m];
        switch (swap.direction) {
            case SwapDirection::Raising:
                if (net.identities[m] == net.identities[j] && dc < -tolerance)
                    report.signs_ok = false;
                break;
            case SwapDirection::Lowering:
                if (net.identities[m] == net.identities[j] && dc > tolerance)
                    report.signs_ok = false;
                break;
            case SwapDirection::Neutral:
                // Cross-to-cross swap: Ghat untouched, nothing may move.
                if (std::abs(dc) > tolerance || std::abs(report.delta_x[m]) > tolerance)
                    report.signs_ok = false;
                break;
        }
    }
    return report;
}

}  // namespace statusnet
