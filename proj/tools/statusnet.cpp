#include <CLI11.hpp>
#include <atomic>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "statusnet/compstat.hpp"
#include "statusnet/equilibrium.hpp"
#include "statusnet/generate.hpp"
#include "statusnet/inequality.hpp"
#include "statusnet/io.hpp"

namespace {

using statusnet::io::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;      // IO, schema, config
constexpr int kExitAssumption = 2; // model premise violated
constexpr int kExitSigns = 3;      // proposition sign check failed

bool log_enabled() {
    const char* v = std::getenv("STATUSNET_LOG");
    return v != nullptr && *v != '\0' && std::string(v) != "0";
}

void log(const std::string& msg) {
    if (log_enabled()) std::cerr << "[statusnet] " << msg << "\n";
}

int exit_code_for(const std::string& code) {
    using namespace statusnet::errc;
    if (code == schema || code == io || code == config) return kExitUsage;
    return kExitAssumption;
}

int report_error(const statusnet::Error& e) {
    std::cerr << "E:" << e.code() << ": " << e.what() << "\n";
    return exit_code_for(e.code());
}

statusnet::ModelParams params_from_config(const json& cfg) {
    statusnet::ModelParams params;
    if (cfg.contains("params")) {
        const json& p = cfg["params"];
        params.alpha = p.value("alpha", params.alpha);
        params.beta = p.value("beta", params.beta);
        params.gamma = p.value("gamma", params.gamma);
    }
    params.validate();
    return params;
}

struct LoadedNetwork {
    statusnet::Network net;
    std::optional<statusnet::CommunityStructure> structure;
};

LoadedNetwork resolve_network(const json& spec) {
    json doc;
    if (spec.is_string())
        doc = statusnet::io::load_json_file(spec.get<std::string>());
    else if (spec.is_object())
        doc = spec;
    else
        statusnet::fail(statusnet::errc::config, "\"network\" must be a path or an inline object");
    LoadedNetwork out;
    out.net = statusnet::io::network_from_json(doc);
    out.structure = statusnet::io::communities_from_json(doc);
    if (out.structure) out.structure->validate(out.net);
    return out;
}

int cmd_solve(const std::string& config_path) {
    const json cfg = statusnet::io::load_json_file(config_path);
    const std::string model = cfg.value("model", "base");
    const std::string output = cfg.value("output", "solution.json");
    log("solve model=" + model);

    json doc;
    if (model == "alt") {
        statusnet::AltParams params;
        if (cfg.contains("alt_params")) {
            const json& p = cfg["alt_params"];
            params.alpha = p.value("alpha", params.alpha);
            params.beta = p.value("beta", params.beta);
            params.gamma = p.value("gamma", params.gamma);
            params.w = p.value("w", params.w);
        }
        const LoadedNetwork loaded = resolve_network(cfg.at("network"));
        const Eigen::MatrixXd ghat = statusnet::mask_by_identity(loaded.net);
        doc = statusnet::io::alt_equilibrium_to_json(
            statusnet::solve_alt(ghat, loaded.net.identities, params));
    } else if (model == "base" || model == "prestige") {
        const statusnet::ModelParams params = params_from_config(cfg);
        const LoadedNetwork loaded = resolve_network(cfg.at("network"));
        statusnet::EquilibriumSolution solution;
        if (model == "prestige") {
            statusnet::PrestigeParams prestige;
            const json& p = cfg.at("prestige");
            prestige.p_a = p.value("P_A", 0.0);
            prestige.p_b = p.value("P_B", 0.0);
            solution = statusnet::solve_closed_form_prestige(loaded.net, params, prestige);
        } else if (cfg.value("method", "closed_form") == "best_response") {
            solution = statusnet::best_response_oracle(loaded.net, params);
        } else {
            solution = statusnet::solve_closed_form(loaded.net, params);
        }
        doc = statusnet::io::equilibrium_to_json(solution, model);
    } else {
        statusnet::fail(statusnet::errc::config, "unknown model \"" + model + "\"");
    }
    statusnet::io::atomic_write_json(output, doc);
    log("wrote " + output);
    return kExitOk;
}

struct GenerateOptions {
    std::string kind = "communities";
    int n = 20;
    int size = 3;
    int agents = 20;
    std::uint64_t seed = 0;
    std::string topology = "complete";
    double weight = 0.3;
    double within_p = 0.4;
    double cross_p = 0.2;
    std::string output;
};

statusnet::TopologySpec::Kind topology_kind(const std::string& name) {
    if (name == "complete") return statusnet::TopologySpec::Kind::Complete;
    if (name == "ring") return statusnet::TopologySpec::Kind::Ring;
    if (name == "star") return statusnet::TopologySpec::Kind::Star;
    statusnet::fail(statusnet::errc::config, "unknown topology \"" + name + "\"");
}

int cmd_generate(const GenerateOptions& options) {
    json doc;
    statusnet::ModelParams params;
    if (options.kind == "communities") {
        statusnet::CommunitiesGenOptions gen;
        gen.communities_per_identity = options.n;
        gen.size = options.size;
        gen.topology = {topology_kind(options.topology), options.weight};
        const statusnet::CommunitiesNetwork communities =
            statusnet::random_communities_network(gen, options.seed);
        doc = statusnet::io::network_to_json(communities.net);
        doc["communities"] = statusnet::io::communities_to_json(communities.structure);
        doc["assumption2_ok"] =
            statusnet::check_assumption_2(communities.net,
                                          statusnet::generalized_centrality(communities.net, params),
                                          params)
                .all_ok;
    } else if (options.kind == "random_block") {
        statusnet::RandomBlockOptions gen;
        gen.agents = options.agents;
        gen.within_probability = options.within_p;
        gen.cross_probability = options.cross_p;
        const statusnet::Network net = statusnet::random_block_network(gen, params, options.seed);
        doc = statusnet::io::network_to_json(net);
        doc["assumption2_ok"] =
            statusnet::check_assumption_2(net, statusnet::generalized_centrality(net, params), params)
                .all_ok;
    } else {
        statusnet::fail(statusnet::errc::config, "unknown kind \"" + options.kind + "\"");
    }
    statusnet::io::atomic_write_json(options.output, doc);
    log("wrote " + options.output);
    return kExitOk;
}

struct ExperimentResult {
    std::string id;
    std::string csv;
    int checks = 0;
    int violations = 0;
};

ExperimentResult run_experiment(const json& spec, const statusnet::ModelParams& params) {
    ExperimentResult result;
    result.id = spec.value("id", spec.at("kind").get<std::string>());
    const std::string kind = spec.at("kind").get<std::string>();
    const LoadedNetwork loaded = resolve_network(spec.at("network"));

    if (kind == "prop2") {
        if (!loaded.structure)
            statusnet::fail(statusnet::errc::config, "prop2 needs a communities network");
        const int shocked = spec.at("shocked_community").get<int>();
        const double epsilon =
            spec.value("epsilon", 0.01 * loaded.structure->incomes.at(shocked));
        const statusnet::ExperimentReport report = statusnet::community_income_shock_experiment(
            loaded.net, *loaded.structure, params, shocked, epsilon);
        result.csv = statusnet::io::experiment_csv(report);
        result.checks = report.checks;
        result.violations = report.violations;
    } else if (kind == "inequality") {
        if (!loaded.structure)
            statusnet::fail(statusnet::errc::config, "inequality needs a communities network");
        statusnet::TransferSpec transfer;
        transfer.donor = spec.at("transfer").at("donor").get<int>();
        transfer.recipient = spec.at("transfer").at("recipient").get<int>();
        transfer.epsilon = spec.at("transfer").at("epsilon").get<double>();
        const statusnet::InequalityReport report = statusnet::inequality_experiment(
            {loaded.net, *loaded.structure}, params, transfer);
        result.csv = statusnet::io::inequality_csv(report);
        result.checks = report.signs.checks;
        result.violations = report.signs.violations;
    } else if (kind == "homophily_swap") {
        const int j = spec.at("j").get<int>();
        const int k = spec.at("k").get<int>();
        const int l = spec.at("l").get<int>();
        const statusnet::SwapEffectReport effect =
            statusnet::homophily_swap_effect(loaded.net, params, j, k, l);
        const statusnet::EquilibriumSolution before =
            statusnet::solve_closed_form(loaded.net, params);
        const int expected = !effect.signs_checked ? 0
                             : effect.direction == statusnet::SwapDirection::Raising ? +1
                             : effect.direction == statusnet::SwapDirection::Lowering ? -1
                                                                                      : 0;
        statusnet::ExperimentReport report;
        for (int m : loaded.net.group(loaded.net.identities[j])) {
            statusnet::SignCheckRow row;
            row.experiment_id = result.id;
            row.agent = m;
            row.identity = loaded.net.identities[m];
            row.community = -1;
            row.baseline_x = before.x[m];
            row.shocked_x = before.x[m] + effect.delta_x[m];
            row.delta = effect.delta_c[m];
            row.expected_sign = expected;
            row.sign_ok = !effect.signs_checked ||
                          (expected >= 0 ? effect.delta_c[m] >= -1e-12 : true) &&
                              (expected <= 0 ? effect.delta_c[m] <= 1e-12 : true);
            ++report.checks;
            if (!row.sign_ok) ++report.violations;
            report.rows.push_back(std::move(row));
        }
        result.csv = statusnet::io::experiment_csv(report);
        result.checks = report.checks;
        result.violations = report.violations;
    } else if (kind == "compstat") {
        const int j = spec.at("j").get<int>();
        const int k = spec.at("k").get<int>();
        const statusnet::CompStatReport cs =
            statusnet::slutsky_decomposition(loaded.net, params, j, k);
        statusnet::ExperimentReport report;
        statusnet::SignCheckRow row;
        row.experiment_id = result.id;
        row.agent = j;
        row.identity = loaded.net.identities[j];
        row.community = -1;
        row.baseline_x = cs.total;
        row.shocked_x = cs.analytic_total;
        row.delta = cs.total - cs.analytic_total;
        row.expected_sign = cs.cross_identity ? +1 : 0;
        const double tol = 1e-5 * std::max(1.0, std::abs(cs.analytic_total));
        row.sign_ok = std::abs(row.delta) <= tol && (!cs.cross_identity || cs.total > 0.0);
        ++report.checks;
        if (!row.sign_ok) ++report.violations;
        report.rows.push_back(std::move(row));
        result.csv = statusnet::io::experiment_csv(report);
        result.checks = report.checks;
        result.violations = report.violations;
    } else {
        statusnet::fail(statusnet::errc::config, "unknown experiment kind \"" + kind + "\"");
    }
    return result;
}

int cmd_experiment(const std::string& config_path, const std::string& out_dir, int jobs) {
    const json cfg = statusnet::io::load_json_file(config_path);
    const statusnet::ModelParams params = params_from_config(cfg);
    json specs = json::array();
    if (cfg.contains("experiments"))
        specs = cfg.at("experiments");
    else
        specs.push_back(cfg.at("experiment"));
    if (!specs.is_array() || specs.empty())
        statusnet::fail(statusnet::errc::config, "\"experiments\" must be a nonempty array");

    const int count = static_cast<int>(specs.size());
    std::vector<ExperimentResult> results(count);
    std::vector<std::string> errors(count);
    std::atomic<int> next{0};
    const int workers = std::max(1, std::min(jobs, count));
    const auto worker = [&] {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            try {
                results[i] = run_experiment(specs[i], params);
            } catch (const statusnet::Error& e) {
                errors[i] = std::string("E:") + e.code() + ": " + e.what();
            } catch (const std::exception& e) {
                errors[i] = std::string("E:") + statusnet::errc::config + ": " + e.what();
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    int checks = 0, violations = 0;
    for (int i = 0; i < count; ++i) {
        if (!errors[i].empty()) {
            std::cerr << errors[i] << "\n";
            const auto colon = errors[i].find(':', 2);
            const std::string code = errors[i].substr(2, colon - 2);
            return exit_code_for(code);
        }
        statusnet::io::atomic_write(out_dir + "/" + results[i].id + ".csv", results[i].csv);
        checks += results[i].checks;
        violations += results[i].violations;
    }
    statusnet::io::atomic_write_json(out_dir + "/summary.json",
                                     json{{"checks", checks}, {"violations", violations}});
    log("checks=" + std::to_string(checks) + " violations=" + std::to_string(violations));
    if (violations > 0) {
        std::cerr << "E:SIGN_VIOLATION: " << violations << " of " << checks
                  << " sign checks failed\n";
        return kExitSigns;
    }
    return kExitOk;
}

int cmd_nbar(const std::string& config_path) {
    const json cfg = statusnet::io::load_json_file(config_path);
    const statusnet::ModelParams params = params_from_config(cfg);
    const LoadedNetwork loaded = resolve_network(cfg.at("network"));
    if (!loaded.structure)
        statusnet::fail(statusnet::errc::config, "nbar needs a communities network");
    const statusnet::NbarReport report = statusnet::n_bar(loaded.net, *loaded.structure, params);
    std::cout << "N_bar=" << report.n_bar << " binding_pair=(" << report.binding_pair.first << ","
              << report.binding_pair.second << ") max_rhs=" << report.max_rhs << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"status-consumption network solver"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    int jobs = 1;
    GenerateOptions gen;

    CLI::App* solve = app.add_subcommand("solve", "solve an equilibrium from a config");
    solve->add_option("-c,--config", config_path)->required();

    CLI::App* generate = app.add_subcommand("generate", "generate a seeded network");
    generate->add_option("--kind", gen.kind);
    generate->add_option("--n", gen.n);
    generate->add_option("--size", gen.size);
    generate->add_option("--agents", gen.agents);
    generate->add_option("--seed", gen.seed);
    generate->add_option("--topology", gen.topology);
    generate->add_option("--weight", gen.weight);
    generate->add_option("--within-p", gen.within_p);
    generate->add_option("--cross-p", gen.cross_p);
    generate->add_option("-o,--output", gen.output)->required();

    CLI::App* experiment = app.add_subcommand("experiment", "run comparative-statics experiments");
    experiment->add_option("-c,--config", config_path)->required();
    experiment->add_option("-o,--output", out_dir);
    experiment->add_option("--jobs", jobs);

    CLI::App* nbar = app.add_subcommand("nbar", "community-count threshold for a fixture");
    nbar->add_option("-c,--config", config_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (solve->parsed()) return cmd_solve(config_path);
        if (generate->parsed()) return cmd_generate(gen);
        if (experiment->parsed()) return cmd_experiment(config_path, out_dir, jobs);
        if (nbar->parsed()) return cmd_nbar(config_path);
    } catch (const statusnet::Error& e) {
        return report_error(e);
    } catch (const json::exception& e) {
        std::cerr << "E:" << statusnet::errc::schema << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "E:" << statusnet::errc::config << ": " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
