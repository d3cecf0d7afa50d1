#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "statusnet/errors.hpp"

namespace statusnet {

enum class Identity { A, B };

inline Identity other(Identity id) { return id == Identity::A ? Identity::B : Identity::A; }
inline char to_char(Identity id) { return id == Identity::A ? 'A' : 'B'; }

struct ModelParams {
    double alpha = 2.0;
    double beta = 1.0;
    double gamma = 1.0;

    // alpha > gamma > 0, beta > 0
    void validate() const;
};

/// Weighted directed network with per-agent incomes and identities.
/// links(j, k) is the weight of the directed link j -> k; the diagonal is zero.
struct Network {
    Eigen::VectorXd incomes;           // w_j > 0
    std::vector<Identity> identities;  // theta_j
    Eigen::MatrixXd links;             // G, J x J nonnegative

    int size() const { return static_cast<int>(identities.size()); }
    std::vector<int> group(Identity id) const;

    /// Structural invariants: zero diagonal, nonnegative weights, positive incomes.
    void validate() const;
};

/// G with all cross-identity links zeroed. Idempotent.
Eigen::MatrixXd mask_by_identity(const Network& net);

/// H(j,k) = beta*w_j/(beta*w_j + 1) * Ghat(j,k).
Eigen::MatrixXd build_h(const Network& net, const ModelParams& params);

struct SpectralReport {
    double lambda1 = 0.0;  // largest eigenvalue modulus
    int iterations = 0;
    bool converged = false;

    static constexpr double kSafetyMargin = 1e-9;
    bool assumption1_satisfied() const { return lambda1 <= 1.0 - kSafetyMargin; }
};

/// Spectral radius of a nonnegative square matrix. Power iteration with an
/// all-ones start vector; falls back to a dense eigensolve when the iteration
/// has not settled after max_iter sweeps.
SpectralReport spectral_radius(const Eigen::MatrixXd& m, double tol = 1e-10, int max_iter = 10000);

/// Share of agent j's outgoing link weight that stays within j's identity group.
/// Throws ISOLATED_AGENT when j has no outgoing links.
double homophily_index(const Network& net, int j);

enum class SwapDirection { Raising, Lowering, Neutral };

struct SwapResult {
    Network net;
    SwapDirection direction = SwapDirection::Neutral;
    /// Whether the swap touched the identity-masked network at all. A neutral
    /// swap between two cross-identity targets leaves Ghat unchanged; a swap
    /// where j, k and l all share an identity is neutral for the homophily
    /// index but still rewires Ghat.
    bool masked_changed = false;
};

/// Move the weight of link j->k onto a new link j->l. Requires G(j,k) > 0,
/// G(j,l) = 0, l != j. Preserves j's total out-weight.
SwapResult swap_link(const Network& net, int j, int k, int l);

/// True iff a directed walk of length >= 1 exists from `from` to `to` over
/// the positive entries of m. has_walk(m, j, j) requires a cycle through j.
bool has_walk(const Eigen::MatrixXd& m, int from, int to);

}  // namespace statusnet
