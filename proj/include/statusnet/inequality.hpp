#pragma once

#include <vector>

#include "statusnet/community.hpp"
#include "statusnet/compstat.hpp"
#include "statusnet/network.hpp"

namespace statusnet {

/// Community topologies. All three are strongly connected for any size.
struct TopologySpec {
    enum class Kind { Complete, Ring, Star };
    Kind kind = Kind::Complete;
    double weight = 0.3;
};

struct CommunitiesNetwork {
    Network net;
    CommunityStructure structure;
};

/// Build a communities network: 2N equal-size single-identity components
/// (identities alternating A/B by community index), uniform income within
/// each community, all components carrying the given topology. Throws when
/// the identity-masked spectral radius breaches the gate.
CommunitiesNetwork build_communities(int communities_per_identity, int size,
                                     const TopologySpec& topology,
                                     const std::vector<double>& community_incomes);

/// Per-community topologies (one spec per community) for mixed-density fixtures.
CommunitiesNetwork build_communities(int communities_per_identity, int size,
                                     const std::vector<TopologySpec>& topologies,
                                     const std::vector<double>& community_incomes);

struct TransferSpec {
    int donor = 0;
    int recipient = 0;
    double epsilon = 0.0;  // income moved per agent
};

/// New per-community incomes after the transfer. Enforces: same identity,
/// positive post-transfer incomes, and an unchanged income ranking of the
/// donor/recipient pair.
std::vector<double> apply_transfer(const CommunityStructure& structure, const TransferSpec& spec);

/// Equilibrium of the uniform-income communities model, where centralities
/// reduce to income-scaled standard-Bonacich row sums and all transfer
/// comparative statics are linear in the shock. This is the engine behind
/// the inequality experiments; it intentionally drops the income weighting
/// inside the walk matrix that the general solver carries.
struct CommunitiesSolution {
    Eigen::VectorXd c;  // c_j = w_n(j) * rowsum_j (I - Ghat)^{-1}
    Eigen::VectorXd x;
    double c_bar_a = 0.0;
    double c_bar_b = 0.0;
    double y_a = 0.0;
    double y_b = 0.0;

    double group_mean(Identity id) const { return id == Identity::A ? c_bar_a : c_bar_b; }
};

CommunitiesSolution communities_solve(const Network& net, const CommunityStructure& structure,
                                      const ModelParams& params);

struct CommunityRow {
    int community = -1;
    double density = 0.0;
    double phi_before = 0.0;  // identity-group phi the community belongs to
    double phi_after = 0.0;
    double x_before = 0.0;    // identity-group total consumption
    double x_after = 0.0;
};

struct InequalityReport {
    ExperimentReport signs;
    std::vector<CommunityRow> communities;
    double density_donor = 0.0;
    double density_recipient = 0.0;
    bool density_tie = false;
};

/// Transfer experiment: donor falls, recipient rises, and every other
/// community moves with the sign of the density gap (ties are classified
/// as "no effect"). Density ties use expected_sign = 0.
InequalityReport inequality_experiment(const CommunitiesNetwork& communities,
                                       const ModelParams& params, const TransferSpec& spec,
                                       double sign_tolerance = 1e-9);

struct GroupTotals {
    double x_a = 0.0;
    double x_b = 0.0;
    double phi_a = 0.0;  // sum over the group's communities of w_n * D_n
    double phi_b = 0.0;
};

/// Group totals X_theta from the density decomposition, cross-checked against
/// the summed communities-model equilibrium to 1e-9.
GroupTotals group_total_consumption(const CommunitiesNetwork& communities,
                                    const ModelParams& params);

/// d X_theta / d phi_theta in closed form: X * (1/phi - 1/(alpha*Cbar_other*J/(2 gamma) + phi)).
double total_consumption_phi_derivative(double x_total, double phi, double c_bar_other, int j_count,
                                        const ModelParams& params);

}  // namespace statusnet
