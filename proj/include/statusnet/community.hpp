#pragma once

#include <vector>

#include "statusnet/network.hpp"

namespace statusnet {

/// Partition of a network into 2N equal-size, single-identity communities
/// (N per identity), each strongly connected within itself and disconnected
/// from the rest in the identity-masked network. Income is uniform within
/// each community.
struct CommunityStructure {
    std::vector<int> assignment;       // agent -> community index, [0, 2N)
    int communities_per_identity = 0;  // N
    int community_size = 0;
    std::vector<double> incomes;       // per-community income w_n
    std::vector<Identity> identity;    // per-community identity

    int num_communities() const { return 2 * communities_per_identity; }
    std::vector<int> members(int community) const;
    std::vector<int> communities_of(Identity id) const;

    /// Structural checks against a network: sizes, identity agreement,
    /// uniform incomes, block-disconnection and strong connectivity in Ghat.
    void validate(const Network& net) const;
};

}  // namespace statusnet
