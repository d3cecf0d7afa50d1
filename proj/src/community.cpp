#include "statusnet/community.hpp"

#include <cmath>

namespace statusnet {

std::vector<int> CommunityStructure::members(int community) const {
    std::vector<int> out;
    for (int j = 0; j < static_cast<int>(assignment.size()); ++j)
        if (assignment[j] == community) out.push_back(j);
    return out;
}

std::vector<int> CommunityStructure::communities_of(Identity id) const {
    std::vector<int> out;
    for (int n = 0; n < num_communities(); ++n)
        if (identity[n] == id) out.push_back(n);
    return out;
}

void CommunityStructure::validate(const Network& net) const {
    const int j_count = net.size();
    if (static_cast<int>(assignment.size()) != j_count)
        fail(errc::schema, "community assignment size does not match network");
    if (num_communities() != static_cast<int>(incomes.size()) ||
        num_communities() != static_cast<int>(identity.size()))
        fail(errc::schema, "community metadata sizes disagree");
    if (community_size * num_communities() != j_count)
        fail(errc::schema, "community sizes do not partition the network");

    int per_identity_a = 0;
    for (int n = 0; n < num_communities(); ++n)
        if (identity[n] == Identity::A) ++per_identity_a;
    if (per_identity_a != communities_per_identity)
        fail(errc::schema, "communities are not split equally across identities");

    for (int j = 0; j < j_count; ++j) {
        const int n = assignment[j];
        if (n < 0 || n >= num_communities()) fail(errc::schema, "community index out of range");
        if (net.identities[j] != identity[n])
            fail(errc::schema, "agent identity disagrees with its community");
        if (net.incomes[j] != incomes[n])
            fail(errc::non_uniform_income,
                 "agent " + std::to_string(j) + " income differs from its community income");
    }

    const Eigen::MatrixXd ghat = mask_by_identity(net);
    for (int j = 0; j < j_count; ++j)
        for (int k = 0; k < j_count; ++k)
            if (assignment[j] != assignment[k] && ghat(j, k) != 0.0)
                fail(errc::partition_not_disconnected,
                     "within-identity link crosses communities: " + std::to_string(j) + "->" +
                         std::to_string(k));

    for (int n = 0; n < num_communities(); ++n) {
        const auto agents = members(n);
        if (static_cast<int>(agents.size()) != community_size)
            fail(errc::schema, "community " + std::to_string(n) + " has the wrong size");
        for (int j : agents)
            for (int k : agents)
                if (j != k && !has_walk(ghat, j, k))
                    fail(errc::not_strongly_connected,
                         "community " + std::to_string(n) + " is not strongly connected");
    }
}

}  // namespace statusnet
