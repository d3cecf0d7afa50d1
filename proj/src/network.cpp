#include "statusnet/network.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <deque>

namespace statusnet {

void ModelParams::validate() const {
    if (!(beta > 0.0)) fail(errc::non_positive_beta, "beta must be > 0, got " + std::to_string(beta));
    if (!(gamma > 0.0) || !(alpha > gamma))
        fail(errc::schema, "require alpha > gamma > 0, got alpha=" + std::to_string(alpha) +
                               " gamma=" + std::to_string(gamma));
}

std::vector<int> Network::group(Identity id) const {
    std::vector<int> out;
    for (int j = 0; j < size(); ++j)
        if (identities[j] == id) out.push_back(j);
    return out;
}

void Network::validate() const {
    const int j_count = size();
    if (incomes.size() != j_count || links.rows() != j_count || links.cols() != j_count)
        fail(errc::schema, "network field sizes disagree");
    for (int j = 0; j < j_count; ++j) {
        if (!(incomes[j] > 0.0))
            fail(errc::non_positive_income, "income of agent " + std::to_string(j) + " must be > 0");
        if (links(j, j) != 0.0) fail(errc::self_link, "agent " + std::to_string(j) + " links to itself");
        for (int k = 0; k < j_count; ++k)
            if (links(j, k) < 0.0) fail(errc::schema, "negative link weight");
    }
}

Eigen::MatrixXd mask_by_identity(const Network& net) {
    const int j_count = net.size();
    Eigen::MatrixXd ghat = net.links;
    for (int j = 0; j < j_count; ++j)
        for (int k = 0; k < j_count; ++k)
            if (net.identities[j] != net.identities[k]) ghat(j, k) = 0.0;
    return ghat;
}

Eigen::MatrixXd build_h(const Network& net, const ModelParams& params) {
    if (!(params.beta > 0.0)) fail(errc::non_positive_beta, "beta must be > 0");
    const int j_count = net.size();
    for (int j = 0; j < j_count; ++j)
        if (!(net.incomes[j] > 0.0))
            fail(errc::non_positive_income, "income of agent " + std::to_string(j) + " must be > 0");
    Eigen::MatrixXd h = mask_by_identity(net);
    for (int j = 0; j < j_count; ++j) {
        const double scale = params.beta * net.incomes[j] / (params.beta * net.incomes[j] + 1.0);
        h.row(j) *= scale;
    }
    return h;
}

SpectralReport spectral_radius(const Eigen::MatrixXd& m, double tol, int max_iter) {
    SpectralReport report;
    const int n = static_cast<int>(m.rows());
    if (n == 0) {
        report.converged = true;
        return report;
    }
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    Eigen::VectorXd y = m * x;
    for (int it = 1; it <= max_iter; ++it) {
        const double norm = y.lpNorm<Eigen::Infinity>();
        report.iterations = it;
        if (norm == 0.0) {
            // Nilpotent structure: all walks die out, radius is exactly 0.
            report.lambda1 = 0.0;
            report.converged = true;
            return report;
        }
        x = y / norm;
        y = m * x;
        // x is sup-normalized, so norm is the current eigenvalue estimate.
        // Accept only once (x, norm) is an actual eigenpair; a settled ratio
        // alone misreads nilpotent and oscillating spectra.
        if ((y - norm * x).lpNorm<Eigen::Infinity>() <= tol * std::max(1.0, norm)) {
            report.lambda1 = norm;
            report.converged = true;
            return report;
        }
    }
    // Oscillating estimates (e.g. equal-modulus complex pair): dense eigensolve.
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
    report.lambda1 = solver.eigenvalues().cwiseAbs().maxCoeff();
    report.converged = true;
    return report;
}

double homophily_index(const Network& net, int j) {
    double total = net.links.row(j).sum();
    if (total <= 0.0) fail(errc::isolated_agent, "agent " + std::to_string(j) + " has no outgoing links");
    double within = 0.0;
    for (int k = 0; k < net.size(); ++k)
        if (net.identities[k] == net.identities[j]) within += net.links(j, k);
    return within / total;
}

SwapResult swap_link(const Network& net, int j, int k, int l) {
    if (l == j) fail(errc::self_link, "cannot create a self link");
    if (!(net.links(j, k) > 0.0))
        fail(errc::no_such_link, "no link " + std::to_string(j) + "->" + std::to_string(k));
    if (net.links(j, l) != 0.0)
        fail(errc::link_exists, "link " + std::to_string(j) + "->" + std::to_string(l) + " already exists");

    SwapResult result;
    result.net = net;
    result.net.links(j, l) = net.links(j, k);
    result.net.links(j, k) = 0.0;

    const bool k_same = net.identities[k] == net.identities[j];
    const bool l_same = net.identities[l] == net.identities[j];
    if (l_same && !k_same)
        result.direction = SwapDirection::Raising;
    else if (k_same && !l_same)
        result.direction = SwapDirection::Lowering;
    else
        result.direction = SwapDirection::Neutral;
    result.masked_changed = k_same || l_same;
    return result;
}

bool has_walk(const Eigen::MatrixXd& m, int from, int to) {
    const int n = static_cast<int>(m.rows());
    std::vector<char> seen(n, 0);
    std::deque<int> frontier{from};
    while (!frontier.empty()) {
        const int node = frontier.front();
        frontier.pop_front();
        for (int k = 0; k < n; ++k) {
            if (m(node, k) > 0.0 && !seen[k]) {
                if (k == to) return true;
                seen[k] = 1;
                frontier.push_back(k);
            }
        }
    }
    return false;
}

}  // namespace statusnet
