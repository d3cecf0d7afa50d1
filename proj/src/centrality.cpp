#include "statusnet/centrality.hpp"

#include <cmath>

namespace statusnet {

namespace {

void require_assumption1(const Eigen::MatrixXd& h) {
    const SpectralReport spectral = spectral_radius(h);
    if (!spectral.assumption1_satisfied())
        fail(errc::assumption1,
             "spectral radius of H is " + std::to_string(spectral.lambda1) + ", must be < 1");
}

Eigen::VectorXd solve_resolvent(const Eigen::MatrixXd& m, const Eigen::VectorXd& rhs) {
    const int n = static_cast<int>(m.rows());
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(Eigen::MatrixXd::Identity(n, n) - m);
    const Eigen::VectorXd out = lu.solve(rhs);
    if (!out.allFinite()) fail(errc::solve_failed, "singular (I - M) system");
    return out;
}

}  // namespace

CentralityProfile generalized_centrality(const Network& net, const ModelParams& params) {
    params.validate();
    const Eigen::MatrixXd h = build_h(net, params);
    require_assumption1(h);

    const int j_count = net.size();
    Eigen::VectorXd v(j_count);
    for (int k = 0; k < j_count; ++k)
        v[k] = net.incomes[k] / (params.beta * net.incomes[k] + 1.0);

    CentralityProfile profile;
    profile.c = solve_resolvent(h, v);

    double sum_a = 0.0, sum_b = 0.0;
    int count_a = 0, count_b = 0;
    for (int j = 0; j < j_count; ++j) {
        if (net.identities[j] == Identity::A) {
            sum_a += profile.c[j];
            ++count_a;
        } else {
            sum_b += profile.c[j];
            ++count_b;
        }
    }
    if (count_a == 0 || count_b == 0)
        fail(errc::schema, "both identity groups must be nonempty for group centrality means");
    profile.c_bar_a = sum_a / count_a;
    profile.c_bar_b = sum_b / count_b;
    profile.z_a = profile.c_bar_a / profile.c_bar_b;
    profile.z_b = 1.0 / profile.z_a;
    return profile;
}

Eigen::VectorXd standard_bonacich(const Eigen::MatrixXd& ghat) {
    const SpectralReport spectral = spectral_radius(ghat);
    if (!spectral.assumption1_satisfied())
        fail(errc::spectral_radius,
             "spectral radius of Ghat is " + std::to_string(spectral.lambda1) + ", must be < 1");
    return solve_resolvent(ghat, Eigen::VectorXd::Ones(ghat.rows()));
}

Eigen::VectorXd community_density(const Eigen::MatrixXd& ghat, const CommunityStructure& structure) {
    const int j_count = static_cast<int>(ghat.rows());
    for (int j = 0; j < j_count; ++j)
        for (int k = 0; k < j_count; ++k)
            if (structure.assignment[j] != structure.assignment[k] && ghat(j, k) != 0.0)
                fail(errc::partition_not_disconnected, "partition is not disconnected in Ghat");

    // Blocks are disconnected, so row sums of the resolvent split by community.
    const Eigen::VectorXd bonacich = standard_bonacich(ghat);
    Eigen::VectorXd density = Eigen::VectorXd::Zero(structure.num_communities());
    for (int j = 0; j < j_count; ++j) density[structure.assignment[j]] += bonacich[j];
    return density;
}

Assumption2Report check_assumption_2(const Network& net, const CentralityProfile& profile,
                                     const ModelParams& params) {
    const int j_count = net.size();
    Assumption2Report report;
    report.ok.resize(j_count);
    report.bound.resize(j_count);
    report.x_implied.resize(j_count);
    const double spread = params.alpha * params.alpha - params.gamma * params.gamma;
    for (int j = 0; j < j_count; ++j) {
        const double z = profile.z(net.identities[j]);
        report.bound[j] = (params.alpha / params.gamma + z) / spread;
        // Equivalent equilibrium form of the same condition: x*_j < 1/gamma.
        report.x_implied[j] = spread / (params.alpha + params.gamma * z) * profile.c[j];
        report.ok[j] = profile.c[j] < report.bound[j];
        report.all_ok = report.all_ok && report.ok[j];
    }
    return report;
}

Eigen::MatrixXd centrality_income_jacobian(const Network& net, const ModelParams& params) {
    params.validate();
    const Eigen::MatrixXd ghat = mask_by_identity(net);
    const Eigen::MatrixXd h = build_h(net, params);
    require_assumption1(h);

    const int j_count = net.size();
    Eigen::VectorXd v(j_count);
    for (int k = 0; k < j_count; ++k)
        v[k] = net.incomes[k] / (params.beta * net.incomes[k] + 1.0);

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(Eigen::MatrixXd::Identity(j_count, j_count) - h);
    const Eigen::VectorXd c = lu.solve(v);
    const Eigen::VectorXd reach = ghat * c;

    // dC/dw_k = (I-H)^{-1} e_k * s_k: only row k of H and entry k of v move
    // with w_k, so the whole column is a scaled resolvent column.
    Eigen::MatrixXd jacobian = lu.inverse();
    for (int k = 0; k < j_count; ++k) {
        const double denom = params.beta * net.incomes[k] + 1.0;
        const double scale = (1.0 + params.beta * reach[k]) / (denom * denom);
        jacobian.col(k) *= scale;
    }
    if (!jacobian.allFinite()) fail(errc::solve_failed, "jacobian solve produced non-finite values");
    return jacobian;
}

UniformCommunityCentrality uniform_community_centrality(const Network& net,
                                                        const std::vector<int>& community_agents,
                                                        const ModelParams& params, bool strict) {
    if (community_agents.empty()) fail(errc::schema, "empty community");
    const double w_n = net.incomes[community_agents.front()];
    for (int j : community_agents)
        if (net.incomes[j] != w_n)
            fail(errc::non_uniform_income, "community incomes are not uniform");

    const int s = static_cast<int>(community_agents.size());
    const Eigen::MatrixXd ghat = mask_by_identity(net);
    Eigen::MatrixXd block(s, s);
    for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b) block(a, b) = ghat(community_agents[a], community_agents[b]);

    UniformCommunityCentrality result;
    result.simplified = w_n * standard_bonacich(block);

    const CentralityProfile profile = generalized_centrality(net, params);
    result.generalized.resize(s);
    for (int a = 0; a < s; ++a) result.generalized[a] = profile.c[community_agents[a]];

    result.max_discrepancy = (result.simplified - result.generalized).lpNorm<Eigen::Infinity>();
    result.consistent = result.max_discrepancy <= UniformCommunityCentrality::kConsistencyTol;
    if (strict && !result.consistent)
        fail(errc::solve_failed,
             "simplified community centrality disagrees with the generalized definition by " +
                 std::to_string(result.max_discrepancy));
    return result;
}

}  // namespace statusnet
