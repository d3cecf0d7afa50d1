#include "statusnet/inequality.hpp"

#include <cmath>

namespace statusnet {

namespace {

void fill_block(Eigen::MatrixXd& links, int offset, int size, const TopologySpec& topology) {
    const double g = topology.weight;
    switch (topology.kind) {
        case TopologySpec::Kind::Complete:
            for (int a = 0; a < size; ++a)
                for (int b = 0; b < size; ++b)
                    if (a != b) links(offset + a, offset + b) = g;
            break;
        case TopologySpec::Kind::Ring:
            for (int a = 0; a < size; ++a) {
                const int b = (a + 1) % size;
                if (a != b) {
                    links(offset + a, offset + b) = g;
                    links(offset + b, offset + a) = g;
                }
            }
            break;
        case TopologySpec::Kind::Star:
            for (int leaf = 1; leaf < size; ++leaf) {
                links(offset, offset + leaf) = g;
                links(offset + leaf, offset) = g;
            }
            break;
    }
}

double dispersion_bound(const ModelParams& params, double z) {
    return (params.alpha / params.gamma + z) /
           (params.alpha * params.alpha - params.gamma * params.gamma);
}

void check_dispersion(const CommunitiesSolution& sol, const Network& net,
                      const ModelParams& params, const char* code) {
    for (int j = 0; j < net.size(); ++j) {
        const double z = net.identities[j] == Identity::A ? sol.c_bar_a / sol.c_bar_b
                                                          : sol.c_bar_b / sol.c_bar_a;
        if (sol.c[j] >= dispersion_bound(params, z))
            fail(code, "centrality dispersion condition violated at agent " + std::to_string(j));
    }
}

}  // namespace

CommunitiesNetwork build_communities(int communities_per_identity, int size,
                                     const TopologySpec& topology,
                                     const std::vector<double>& community_incomes) {
    return build_communities(
        communities_per_identity, size,
        std::vector<TopologySpec>(2 * communities_per_identity, topology), community_incomes);
}

CommunitiesNetwork build_communities(int communities_per_identity, int size,
                                     const std::vector<TopologySpec>& topologies,
                                     const std::vector<double>& community_incomes) {
    if (communities_per_identity < 1 || size < 1)
        fail(errc::schema, "need at least one community per identity and one agent per community");
    const int communities = 2 * communities_per_identity;
    if (static_cast<int>(community_incomes.size()) != communities ||
        static_cast<int>(topologies.size()) != communities)
        fail(errc::schema, "per-community inputs must have length 2N");

    CommunitiesNetwork out;
    const int j_count = communities * size;
    out.net.incomes.resize(j_count);
    out.net.identities.resize(j_count);
    out.net.links = Eigen::MatrixXd::Zero(j_count, j_count);
    out.structure.assignment.resize(j_count);
    out.structure.communities_per_identity = communities_per_identity;
    out.structure.community_size = size;
    out.structure.incomes = community_incomes;
    out.structure.identity.resize(communities);

    for (int n = 0; n < communities; ++n) {
        out.structure.identity[n] = n % 2 == 0 ? Identity::A : Identity::B;
        if (!(community_incomes[n] > 0.0))
            fail(errc::non_positive_income, "community income must be > 0");
        for (int a = 0; a < size; ++a) {
            const int j = n * size + a;
            out.structure.assignment[j] = n;
            out.net.incomes[j] = community_incomes[n];
            out.net.identities[j] = out.structure.identity[n];
        }
        fill_block(out.net.links, n * size, size, topologies[n]);
    }

    out.structure.validate(out.net);
    const SpectralReport spectral = spectral_radius(mask_by_identity(out.net));
    if (!spectral.assumption1_satisfied())
        fail(errc::spectral_radius, "identity-masked spectral radius is " +
                                        std::to_string(spectral.lambda1) + ", must be < 1");
    return out;
}

std::vector<double> apply_transfer(const CommunityStructure& structure, const TransferSpec& spec) {
    const int communities = structure.num_communities();
    if (spec.donor < 0 || spec.donor >= communities || spec.recipient < 0 ||
        spec.recipient >= communities || spec.donor == spec.recipient)
        fail(errc::schema, "invalid donor/recipient community");
    if (structure.identity[spec.donor] != structure.identity[spec.recipient])
        fail(errc::schema, "donor and recipient must share an identity");
    if (spec.epsilon < 0.0) fail(errc::schema, "transfer amount must be nonnegative");

    std::vector<double> incomes = structure.incomes;
    const double donor_before = incomes[spec.donor];
    const double recipient_before = incomes[spec.recipient];
    incomes[spec.donor] -= spec.epsilon;
    incomes[spec.recipient] += spec.epsilon;
    if (incomes[spec.donor] <= 0.0)
        fail(errc::negative_income, "transfer drives the donor income nonpositive");
    if (donor_before > recipient_before && incomes[spec.donor] <= incomes[spec.recipient])
        fail(errc::ranking_flipped, "transfer flips the donor/recipient income ranking");
    return incomes;
}

CommunitiesSolution communities_solve(const Network& net, const CommunityStructure& structure,
                                      const ModelParams& params) {
    params.validate();
    const Eigen::MatrixXd ghat = mask_by_identity(net);
    const Eigen::VectorXd bonacich = standard_bonacich(ghat);

    CommunitiesSolution sol;
    sol.c.resize(net.size());
    for (int j = 0; j < net.size(); ++j)
        sol.c[j] = structure.incomes[structure.assignment[j]] * bonacich[j];

    double sum_a = 0.0, sum_b = 0.0;
    int count_a = 0, count_b = 0;
    for (int j = 0; j < net.size(); ++j) {
        if (net.identities[j] == Identity::A) {
            sum_a += sol.c[j];
            ++count_a;
        } else {
            sum_b += sol.c[j];
            ++count_b;
        }
    }
    sol.c_bar_a = sum_a / count_a;
    sol.c_bar_b = sum_b / count_b;

    const double spread = params.alpha * params.alpha - params.gamma * params.gamma;
    const double z_a = sol.c_bar_a / sol.c_bar_b;
    const double z_b = 1.0 / z_a;
    sol.y_a = (params.alpha * z_a + params.gamma) / (params.alpha + params.gamma * z_a);
    sol.y_b = (params.alpha * z_b + params.gamma) / (params.alpha + params.gamma * z_b);
    sol.x.resize(net.size());
    for (int j = 0; j < net.size(); ++j) {
        const double z = net.identities[j] == Identity::A ? z_a : z_b;
        sol.x[j] = spread / (params.alpha + params.gamma * z) * sol.c[j];
    }
    return sol;
}

InequalityReport inequality_experiment(const CommunitiesNetwork& communities,
                                       const ModelParams& params, const TransferSpec& spec,
                                       double sign_tolerance) {
    const Network& net = communities.net;
    const CommunityStructure& structure = communities.structure;
    structure.validate(net);

    const NbarReport bound = n_bar(net, structure, params);
    if (structure.communities_per_identity < bound.n_bar + 1)
        fail(errc::n_less_than_nbar,
             "need more than " + std::to_string(bound.n_bar) + " communities per identity");

    const Eigen::VectorXd density = community_density(mask_by_identity(net), structure);
    const std::vector<double> post_incomes = apply_transfer(structure, spec);

    CommunityStructure post_structure = structure;
    post_structure.incomes = post_incomes;
    Network post_net = net;
    for (int j = 0; j < net.size(); ++j)
        post_net.incomes[j] = post_incomes[structure.assignment[j]];

    const CommunitiesSolution before = communities_solve(net, structure, params);
    check_dispersion(before, net, params, errc::assumption2);
    const CommunitiesSolution after = communities_solve(post_net, post_structure, params);
    check_dispersion(after, post_net, params, errc::assumption_post_transfer);

    InequalityReport report;
    report.density_donor = density[spec.donor];
    report.density_recipient = density[spec.recipient];
    // Exact topology ties give exactly equal sums; allow rounding noise only.
    report.density_tie =
        std::abs(report.density_donor - report.density_recipient) <= 1e-12 * density.maxCoeff();
    const int gap_sign = report.density_tie ? 0
                         : report.density_recipient < report.density_donor ? -1
                                                                           : +1;

    const Identity transfer_identity = structure.identity[spec.donor];
    for (int j = 0; j < net.size(); ++j) {
        SignCheckRow row;
        row.experiment_id = "inequality_transfer";
        row.agent = j;
        row.identity = net.identities[j];
        row.community = structure.assignment[j];
        row.baseline_x = before.x[j];
        row.shocked_x = after.x[j];
        row.delta = after.x[j] - before.x[j];
        if (row.community == spec.donor)
            row.expected_sign = -1;
        else if (row.community == spec.recipient)
            row.expected_sign = +1;
        else if (row.identity == transfer_identity)
            // Group centrality moves with the density gap; consumption moves against it.
            row.expected_sign = -gap_sign;
        else
            row.expected_sign = gap_sign;
        if (row.expected_sign > 0)
            row.sign_ok = row.delta > -sign_tolerance;
        else if (row.expected_sign < 0)
            row.sign_ok = row.delta < sign_tolerance;
        else
            row.sign_ok = std::abs(row.delta) < 10.0 * sign_tolerance;
        ++report.signs.checks;
        if (!row.sign_ok) ++report.signs.violations;
        report.signs.rows.push_back(std::move(row));
    }

    const auto phi_of = [&](const CommunityStructure& s, Identity id) {
        double phi = 0.0;
        for (int n : s.communities_of(id)) phi += s.incomes[n] * density[n];
        return phi;
    };
    const auto group_x = [&](const CommunitiesSolution& sol, Identity id) {
        double total = 0.0;
        for (int j = 0; j < net.size(); ++j)
            if (net.identities[j] == id) total += sol.x[j];
        return total;
    };
    for (int n = 0; n < structure.num_communities(); ++n) {
        CommunityRow row;
        row.community = n;
        row.density = density[n];
        row.phi_before = phi_of(structure, structure.identity[n]);
        row.phi_after = phi_of(post_structure, structure.identity[n]);
        row.x_before = group_x(before, structure.identity[n]);
        row.x_after = group_x(after, structure.identity[n]);
        report.communities.push_back(row);
    }
    return report;
}

GroupTotals group_total_consumption(const CommunitiesNetwork& communities,
                                    const ModelParams& params) {
    const Network& net = communities.net;
    const CommunityStructure& structure = communities.structure;
    const Eigen::VectorXd density = community_density(mask_by_identity(net), structure);
    const CommunitiesSolution sol = communities_solve(net, structure, params);

    GroupTotals totals;
    for (int n = 0; n < structure.num_communities(); ++n) {
        const double contribution = structure.incomes[n] * density[n];
        if (structure.identity[n] == Identity::A)
            totals.phi_a += contribution;
        else
            totals.phi_b += contribution;
    }

    const double spread = params.alpha * params.alpha - params.gamma * params.gamma;
    const double two_over_j = 2.0 / net.size();
    const auto x_total = [&](double phi, double c_bar_other) {
        return spread * c_bar_other * phi /
               (params.alpha * c_bar_other + params.gamma * two_over_j * phi);
    };
    totals.x_a = x_total(totals.phi_a, sol.c_bar_b);
    totals.x_b = x_total(totals.phi_b, sol.c_bar_a);

    double direct_a = 0.0, direct_b = 0.0;
    for (int j = 0; j < net.size(); ++j)
        (net.identities[j] == Identity::A ? direct_a : direct_b) += sol.x[j];
    if (std::abs(totals.x_a - direct_a) > 1e-9 || std::abs(totals.x_b - direct_b) > 1e-9)
        fail(errc::solve_failed, "density-form group totals disagree with the summed equilibrium");
    return totals;
}

double total_consumption_phi_derivative(double x_total, double phi, double c_bar_other, int j_count,
                                        const ModelParams& params) {
    return x_total * (1.0 / phi - 1.0 / (params.alpha * c_bar_other * j_count / (2.0 * params.gamma) +
                                         phi));
}

}  // namespace statusnet
