#include "statusnet/generate.hpp"

#include <string>

namespace statusnet {

std::uint64_t Rng::next_u64() {
    // splitmix64; fixed bit stream on every platform.
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

Network random_block_network(const RandomBlockOptions& options, const ModelParams& params,
                             std::uint64_t seed) {
    params.validate();
    if (options.agents < 2 || options.agents % 2 != 0)
        fail(errc::generation_failed, "agent count must be even and at least 2");

    Rng rng(seed);
    const int j_count = options.agents;
    Network net;
    net.incomes.resize(j_count);
    net.identities.resize(j_count);
    net.links = Eigen::MatrixXd::Zero(j_count, j_count);
    for (int j = 0; j < j_count; ++j) {
        net.identities[j] = j < j_count / 2 ? Identity::A : Identity::B;
        net.incomes[j] = rng.uniform(options.min_income, options.max_income);
    }
    for (int j = 0; j < j_count; ++j) {
        for (int k = 0; k < j_count; ++k) {
            if (j == k) continue;
            const bool within = net.identities[j] == net.identities[k];
            const double p = within ? options.within_probability : options.cross_probability;
            const double draw = rng.uniform01();
            const double weight = rng.uniform(options.min_weight, options.max_weight);
            if (draw < p) net.links(j, k) = weight;
        }
    }

    for (int attempt = 0; attempt < options.max_rescale_attempts; ++attempt) {
        const SpectralReport report = spectral_radius(build_h(net, params));
        if (report.lambda1 <= options.rho_target) {
            net.validate();
            return net;
        }
        net.links *= 0.7;
    }
    fail(errc::generation_failed, "could not rescale weights below the spectral target");
}

CommunitiesNetwork random_communities_network(const CommunitiesGenOptions& options,
                                              std::uint64_t seed) {
    if (options.communities_per_identity < 1 || options.size < 1)
        fail(errc::generation_failed, "need at least one community per identity");

    Rng rng(seed);
    std::vector<double> incomes(2 * options.communities_per_identity);
    for (double& w : incomes) w = rng.uniform(options.min_income, options.max_income);

    TopologySpec topology = options.topology;
    for (int attempt = 0; attempt < options.max_rescale_attempts; ++attempt) {
        try {
            CommunitiesNetwork out = build_communities(options.communities_per_identity,
                                                       options.size, topology, incomes);
            if (spectral_radius(mask_by_identity(out.net)).lambda1 <= options.rho_target)
                return out;
        } catch (const Error& e) {
            if (e.code() != std::string(errc::spectral_radius)) throw;
        }
        topology.weight *= 0.7;
    }
    fail(errc::generation_failed, "could not rescale community weights below the spectral target");
}

}  // namespace statusnet
