#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace statusnet {

/// Library-wide error type. `code()` is a stable machine-readable tag;
/// the CLI prints errors as "E:<code>: <message>".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
    throw Error(code, msg);
}

namespace errc {
// net_core
inline constexpr const char* non_positive_income = "NONPOSITIVE_INCOME";
inline constexpr const char* non_positive_beta = "NONPOSITIVE_BETA";
inline constexpr const char* isolated_agent = "ISOLATED_AGENT";
inline constexpr const char* no_such_link = "NO_SUCH_LINK";
inline constexpr const char* link_exists = "LINK_EXISTS";
inline constexpr const char* self_link = "SELF_LINK";
// centrality / equilibrium
inline constexpr const char* assumption1 = "ASSUMPTION1";
inline constexpr const char* assumption2 = "ASSUMPTION2";
inline constexpr const char* solve_failed = "SOLVE_FAILED";
inline constexpr const char* spectral_radius = "SPECTRAL_RADIUS";
inline constexpr const char* partition_not_disconnected = "PARTITION_NOT_DISCONNECTED";
inline constexpr const char* non_uniform_income = "NONUNIFORM_INCOME";
inline constexpr const char* degenerate_status = "DEGENERATE_STATUS";
inline constexpr const char* negative_consumption = "NEGATIVE_CONSUMPTION";
inline constexpr const char* no_convergence = "NO_CONVERGENCE";
// compstat / inequality
inline constexpr const char* n_less_than_nbar = "N_LESS_THAN_NBAR";
inline constexpr const char* zero_derivative = "ZERO_DERIVATIVE";
inline constexpr const char* not_strongly_connected = "NOT_STRONGLY_CONNECTED";
inline constexpr const char* ranking_flipped = "RANKING_FLIPPED";
inline constexpr const char* negative_income = "NEGATIVE_INCOME";
inline constexpr const char* assumption_post_transfer = "ASSUMPTION_POST_TRANSFER";
// alt model
inline constexpr const char* root_not_bracketed = "ROOT_NOT_BRACKETED";
inline constexpr const char* comparison_infeasible = "COMPARISON_INFEASIBLE";
// cli / io
inline constexpr const char* schema = "SCHEMA";
inline constexpr const char* io = "IO";
inline constexpr const char* generation_failed = "GENERATION_FAILED";
inline constexpr const char* config = "CONFIG";
}  // namespace errc

}  // namespace statusnet
