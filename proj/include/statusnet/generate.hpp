#pragma once

#include <cstdint>
#include <optional>

#include "statusnet/inequality.hpp"
#include "statusnet/network.hpp"

namespace statusnet {

/// Deterministic, platform-independent random source (splitmix64 stream).
/// The distributions below avoid the implementation-defined standard-library
/// ones so equal seeds reproduce byte-identical output everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    /// Uniform in [0, 1) with 53 bits of precision.
    double uniform01();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t state_;
};

struct RandomBlockOptions {
    int agents = 20;
    double within_probability = 0.4;
    double cross_probability = 0.2;
    double min_weight = 0.2;
    double max_weight = 1.0;
    double min_income = 0.5;
    double max_income = 2.0;
    /// Target ceiling on the spectral radius of H; weights are rescaled down
    /// until the generated network clears it.
    double rho_target = 0.9;
    int max_rescale_attempts = 60;
};

/// Seeded two-block random network: identities split half/half, random
/// incomes, independent within/cross links. The result always passes the
/// eigenvalue gate by construction (weights rescaled as needed).
Network random_block_network(const RandomBlockOptions& options, const ModelParams& params,
                             std::uint64_t seed);

struct CommunitiesGenOptions {
    int communities_per_identity = 20;
    int size = 3;
    TopologySpec topology{TopologySpec::Kind::Complete, 0.3};
    double min_income = 0.5;
    double max_income = 2.0;
    double rho_target = 0.9;
    int max_rescale_attempts = 60;
};

/// Seeded communities network with per-community incomes drawn uniformly.
CommunitiesNetwork random_communities_network(const CommunitiesGenOptions& options,
                                              std::uint64_t seed);

}  // namespace statusnet
