#include "statusnet/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace statusnet::io {

namespace {

Identity identity_from_string(const std::string& s) {
    if (s == "A") return Identity::A;
    if (s == "B") return Identity::B;
    fail(errc::schema, "identity must be \"A\" or \"B\", got \"" + s + "\"");
}

std::string identity_to_string(Identity id) { return std::string(1, to_char(id)); }

json vector_to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (int j = 0; j < v.size(); ++j) out.push_back(v[j]);
    return out;
}

const json& expect(const json& doc, const char* key) {
    const auto it = doc.find(key);
    if (it == doc.end()) fail(errc::schema, std::string("missing key \"") + key + "\"");
    return *it;
}

std::string csv_bool(bool b) { return b ? "true" : "false"; }

std::string csv_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void sign_row_csv(std::ostringstream& out, const SignCheckRow& row) {
    out << row.experiment_id << ',' << row.agent << ',' << to_char(row.identity) << ','
        << row.community << ',' << csv_double(row.baseline_x) << ',' << csv_double(row.shocked_x)
        << ',' << csv_double(row.delta) << ',' << row.expected_sign << ',' << csv_bool(row.sign_ok);
}

}  // namespace

Network network_from_json(const json& doc) {
    if (!doc.is_object()) fail(errc::schema, "network document must be a JSON object");
    const json& agents = expect(doc, "agents");
    const json& links = expect(doc, "links");
    if (!agents.is_array() || agents.empty()) fail(errc::schema, "\"agents\" must be a nonempty array");
    if (!links.is_array()) fail(errc::schema, "\"links\" must be an array");

    const int j_count = static_cast<int>(agents.size());
    Network net;
    net.incomes.resize(j_count);
    net.identities.resize(j_count);
    net.links = Eigen::MatrixXd::Zero(j_count, j_count);

    std::set<int> seen_ids;
    for (const json& agent : agents) {
        if (!agent.is_object()) fail(errc::schema, "each agent must be an object");
        const int id = expect(agent, "id").get<int>();
        if (id < 0 || id >= j_count) fail(errc::schema, "agent ids must cover 0..J-1");
        if (!seen_ids.insert(id).second) fail(errc::schema, "duplicate agent id " + std::to_string(id));
        net.incomes[id] = expect(agent, "income").get<double>();
        net.identities[id] = identity_from_string(expect(agent, "identity").get<std::string>());
    }

    std::set<std::pair<int, int>> seen_links;
    for (const json& link : links) {
        if (!link.is_array() || link.size() != 3) fail(errc::schema, "each link must be [from, to, weight]");
        const int from = link[0].get<int>();
        const int to = link[1].get<int>();
        const double weight = link[2].get<double>();
        if (from < 0 || from >= j_count || to < 0 || to >= j_count)
            fail(errc::schema, "link endpoint out of range");
        if (from == to) fail(errc::self_link, "self-link on agent " + std::to_string(from));
        if (!(weight > 0.0)) fail(errc::schema, "link weights must be > 0");
        if (!seen_links.insert({from, to}).second)
            fail(errc::schema, "duplicate link (" + std::to_string(from) + ", " + std::to_string(to) + ")");
        net.links(from, to) = weight;
    }
    net.validate();
    return net;
}

json network_to_json(const Network& net) {
    json doc;
    doc["agents"] = json::array();
    for (int j = 0; j < net.size(); ++j)
        doc["agents"].push_back({{"id", j},
                                 {"income", net.incomes[j]},
                                 {"identity", identity_to_string(net.identities[j])}});
    doc["links"] = json::array();
    for (int j = 0; j < net.size(); ++j)
        for (int k = 0; k < net.size(); ++k)
            if (net.links(j, k) > 0.0) doc["links"].push_back({j, k, net.links(j, k)});
    return doc;
}

std::optional<CommunityStructure> communities_from_json(const json& doc) {
    const auto it = doc.find("communities");
    if (it == doc.end()) return std::nullopt;
    const json& block = *it;
    CommunityStructure s;
    s.communities_per_identity = expect(block, "per_identity").get<int>();
    s.community_size = expect(block, "size").get<int>();
    s.assignment = expect(block, "assignment").get<std::vector<int>>();
    s.incomes = expect(block, "incomes").get<std::vector<double>>();
    for (const json& id : expect(block, "identity"))
        s.identity.push_back(identity_from_string(id.get<std::string>()));
    return s;
}

json communities_to_json(const CommunityStructure& structure) {
    json block;
    block["per_identity"] = structure.communities_per_identity;
    block["size"] = structure.community_size;
    block["assignment"] = structure.assignment;
    block["incomes"] = structure.incomes;
    json ids = json::array();
    for (Identity id : structure.identity) ids.push_back(identity_to_string(id));
    block["identity"] = std::move(ids);
    return block;
}

json equilibrium_to_json(const EquilibriumSolution& solution, const std::string& model) {
    json doc;
    doc["model"] = model;
    doc["x"] = vector_to_json(solution.x);
    doc["Y_A"] = solution.y_a;
    doc["Y_B"] = solution.y_b;
    doc["R"] = vector_to_json(solution.r);
    doc["u"] = vector_to_json(solution.u);
    doc["method"] = solution.method;
    doc["residual"] = solution.residual;
    doc["assumptions"] = {{"a1", solution.assumption1_ok}, {"a2", solution.assumption2_ok}};
    return doc;
}

json alt_equilibrium_to_json(const AltEquilibrium& solution) {
    json doc;
    doc["model"] = "alt";
    doc["x"] = vector_to_json(solution.x);
    doc["Y_A"] = solution.y_a;
    doc["Y_B"] = solution.y_b;
    doc["R"] = vector_to_json(solution.r);
    doc["c_bon"] = vector_to_json(solution.c_bon);
    doc["root_residual"] = solution.root_residual;
    return doc;
}

std::string experiment_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "experiment_id,agent_id,identity,community,baseline_x,shocked_x,delta,expected_sign,"
           "sign_ok\n";
    for (const SignCheckRow& row : report.rows) {
        sign_row_csv(out, row);
        out << '\n';
    }
    return out.str();
}

std::string inequality_csv(const InequalityReport& report) {
    std::ostringstream out;
    out << "experiment_id,agent_id,identity,community,baseline_x,shocked_x,delta,expected_sign,"
           "sign_ok,density,phi_before,phi_after,X_before,X_after\n";
    for (const SignCheckRow& row : report.signs.rows) {
        sign_row_csv(out, row);
        const CommunityRow& c = report.communities.at(row.community);
        out << ',' << csv_double(c.density) << ',' << csv_double(c.phi_before) << ','
            << csv_double(c.phi_after) << ',' << csv_double(c.x_before) << ','
            << csv_double(c.x_after) << '\n';
    }
    return out.str();
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::io, "cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        fail(errc::schema, "invalid JSON in " + path + ": " + e.what());
    }
    return doc;
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(errc::io, "cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) fail(errc::io, "short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        fail(errc::io, "cannot rename into place: " + path);
    }
}

void atomic_write_json(const std::string& path, const json& doc) {
    atomic_write(path, doc.dump(2) + "\n");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::io, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace statusnet::io
