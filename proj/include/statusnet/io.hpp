#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "statusnet/altmodel.hpp"
#include "statusnet/equilibrium.hpp"
#include "statusnet/inequality.hpp"
#include "statusnet/network.hpp"

namespace statusnet::io {

using nlohmann::json;

/// Parse a network document:
/// { "agents": [ {"id", "income", "identity"}, ... ], "links": [[from, to, weight], ...] }.
/// Agent ids must cover 0..J-1; duplicate (from, to) pairs are a SCHEMA error.
/// An optional "communities" block restores a CommunityStructure.
Network network_from_json(const json& doc);
json network_to_json(const Network& net);

std::optional<CommunityStructure> communities_from_json(const json& doc);
json communities_to_json(const CommunityStructure& structure);

json equilibrium_to_json(const EquilibriumSolution& solution, const std::string& model);
json alt_equilibrium_to_json(const AltEquilibrium& solution);

/// Sign-check rows as CSV, base schema:
/// experiment_id, agent_id, identity, community, baseline_x, shocked_x, delta,
/// expected_sign, sign_ok.
std::string experiment_csv(const ExperimentReport& report);

/// Inequality rows carry the per-community diagnostics as extra columns:
/// community density and the group's phi / total-consumption before and after.
std::string inequality_csv(const InequalityReport& report);

json load_json_file(const std::string& path);

/// Write-to-temp then rename; no partial files are left behind on failure.
void atomic_write(const std::string& path, const std::string& content);
void atomic_write_json(const std::string& path, const json& doc);

std::string read_file(const std::string& path);

}  // namespace statusnet::io
