/*
 * Copyright 2026 The OPlaceRAN Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end. Runs scenarios end to end, either in process
// or against a running service.

#include <oplaceran/codec.hpp>
#include <oplaceran/errors.hpp>
#include <oplaceran/service.hpp>

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace oplaceran;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

std::atomic<bool> g_interrupted{false};

std::string fmt_ms(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

double path_latency_ms(const CrosshaulTopology& topology, const std::vector<LinkId>& path)
{
    Latency total;
    for (const auto& id : path) {
        if (const auto* link = topology.find_link(id)) {
            total += link->latency;
        }
    }
    return total.ms();
}

/// Left-aligned columns, two spaces apart.
std::string render_table(const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::size_t> widths;
    for (const auto& row : rows) {
        widths.resize(std::max(widths.size(), row.size()), 0);
        for (std::size_t i = 0; i < row.size(); ++i) {
            widths[i] = std::max(widths[i], row[i].size());
        }
    }
    std::ostringstream out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            line += row[i];
            if (i + 1 < row.size()) {
                line += std::string(widths[i] - row[i].size() + 2, ' ');
            }
        }
        out << line << "\n";
    }
    return out.str();
}

std::string placement_table(const PlacementResult& result, const CrosshaulTopology& topology)
{
    std::vector<std::vector<std::string>> rows{
        {"chain", "vRU", "vDU", "vCU", "scenario", "fronthaul_ms", "midhaul_ms", "backhaul_ms"}};
    auto placements = result.placements;
    std::sort(placements.begin(), placements.end(),
              [](const ChainPlacement& a, const ChainPlacement& b) { return a.chain_id < b.chain_id; });
    for (const auto& p : placements) {
        rows.push_back({p.chain_id, p.vru_node, p.vdu_node, p.vcu_node, std::string(to_string(classify_scenario(p))),
                        fmt_ms(path_latency_ms(topology, p.fronthaul_path)),
                        fmt_ms(path_latency_ms(topology, p.midhaul_path)),
                        fmt_ms(path_latency_ms(topology, p.backhaul_path))});
    }
    std::ostringstream out;
    out << render_table(rows);
    std::string hosts;
    for (const auto& h : result.aggregation_hosts()) {
        hosts += (hosts.empty() ? "" : ",") + h;
    }
    out << "solver: " << result.solver_id << "\n";
    out << "objective: cr_count=" << result.objective.cr_count << " cn_distance=" << result.objective.cn_distance
        << " cost=" << fmt_ms(result.objective.cost()) << "\n";
    out << "aggregation hosts: {" << hosts << "}\n";
    return out.str();
}

std::string event_log(const OrchestrationRecord& record)
{
    std::ostringstream out;
    for (const auto& e : record.events) {
        char step[8];
        std::snprintf(step, sizeof step, "%02d", e.step);
        out << "step " << step << "  " << e.name << "\n";
    }
    return out.str();
}

std::optional<std::filesystem::path> default_data_dir()
{
    if (const char* env = std::getenv("OPLACERAN_DATA_DIR"); env != nullptr && *env != '\0') {
        return std::filesystem::path(env);
    }
    return std::nullopt;
}

/// Talks to an in-process service or a remote one through the same calls.
class Endpoint
{
public:
    explicit Endpoint(Service* local) : local_(local) {}
    explicit Endpoint(std::string url) : remote_(std::move(url)) {}

    ApiResponse call(std::string_view method, const std::string& path, const std::string& body = {}) const
    {
        return local_ ? local_->handle(method, path, body) : remote_->request(method, path, body);
    }

    /// Returns the decoded body or throws with the service's error message.
    json expect(std::string_view method, const std::string& path, const std::string& body = {}) const
    {
        auto res = call(method, path, body);
        auto doc = json::parse(res.body);
        if (res.status >= 300) {
            std::string msg = doc.value("message", std::string("request failed"));
            throw Error(msg);
        }
        return doc;
    }

private:
    Service* local_ = nullptr;
    std::optional<ServiceClient> remote_;
};

int cmd_run(const std::string& scenario_path, std::string solver, bool offline, const std::string& url,
            const std::string& format, const std::string& timeline_out)
{
    const auto scenario = load_scenario_file(scenario_path);
    if (solver.empty()) {
        solver = scenario.solver;
    }

    std::unique_ptr<Service> local;
    std::optional<Endpoint> endpoint;
    if (offline) {
        Service::Options options;
        options.placer.poll_interval = std::chrono::milliseconds(2);
        local = std::make_unique<Service>(std::move(options));
        endpoint.emplace(local.get());
    } else {
        endpoint.emplace(url);
    }

    ExternalInputs inputs{scenario.chains, scenario, solver};
    const auto posted = endpoint->expect("POST", "/orchestrations", json(inputs).dump());
    const auto run_id = posted.at("run_id").get<std::string>();
    const auto doc = endpoint->expect("GET", "/orchestrations/" + run_id);
    const auto record = doc.get<OrchestrationRecord>();

    if (format == "doc") {
        std::cout << doc.dump(2) << "\n";
    } else {
        if (record.placement) {
            std::cout << placement_table(*record.placement, scenario.topology);
        }
        std::cout << "outcome: " << to_string(record.outcome) << "\n";
        if (record.outcome == WorkflowOutcome::Infeasible) {
            std::cout << "infeasible\n";
        }
        for (const auto& v : record.violations) {
            std::cout << "  violation: " << v << "\n";
        }
        if (record.error && record.outcome == WorkflowOutcome::Failed) {
            std::cout << "error at step " << record.failed_step.value_or(0) << ": " << *record.error << "\n";
        }
        std::cout << event_log(record);
    }
    if (record.deployment_id) {
        std::cerr << "deployment: " << *record.deployment_id << "\n";
        if (!timeline_out.empty() && record.outcome == WorkflowOutcome::Deployed) {
            auto res = endpoint->call("GET", "/deployments/" + *record.deployment_id + "/timeline");
            std::ofstream(timeline_out) << res.body;
        }
    }
    switch (record.outcome) {
    case WorkflowOutcome::Deployed: return kExitOk;
    case WorkflowOutcome::Infeasible: return kExitInfeasible;
    case WorkflowOutcome::Failed: return kExitError;
    }
    return kExitError;
}

int cmd_validate(const std::string& scenario_path)
{
    try {
        const auto s = load_scenario_file(scenario_path);
        std::cout << "ok: " << s.topology.nodes.size() << " nodes, " << s.topology.links.size() << " links, "
                  << s.chains.size() << " chains\n";
        return kExitOk;
    } catch (const ViolationError& e) {
        std::cout << "invalid scenario\n";
        for (const auto& v : e.violations()) {
            std::cout << "  violation: " << v << "\n";
        }
        return kExitError;
    }
}

int cmd_timeline(const std::string& deployment, const std::string& out, const std::string& url)
{
    Endpoint endpoint(url);
    auto res = endpoint.call("GET", "/deployments/" + deployment + "/timeline");
    if (res.status != 200) {
        throw Error(json::parse(res.body).value("message", std::string("timeline request failed")));
    }
    if (out.empty() || out == "-") {
        std::cout << res.body;
    } else {
        std::ofstream(out) << res.body;
    }
    return kExitOk;
}

int cmd_compare(const std::string& scenario_path, const std::vector<std::string>& solvers)
{
    const auto scenario = load_scenario_file(scenario_path);
    const auto registry = SolverRegistry::with_builtins();
    std::vector<std::vector<std::string>> rows{{"solver", "cr_count", "cn_distance", "cost", "solve_time_s", "hosts"}};
    int rc = kExitOk;
    for (const auto& id : solvers) {
        try {
            const auto r = registry->solve(request_from_scenario(scenario, id));
            std::string hosts;
            for (const auto& h : r.aggregation_hosts()) {
                hosts += (hosts.empty() ? "" : ",") + h;
            }
            char t[32];
            std::snprintf(t, sizeof t, "%.6f", r.solve_time);
            rows.push_back({id, std::to_string(r.objective.cr_count), std::to_string(r.objective.cn_distance),
                            fmt_ms(r.objective.cost()), t, "{" + hosts + "}"});
        } catch (const InfeasibleRequest&) {
            rows.push_back({id, "infeasible", "-", "-", "-", "-"});
            rc = kExitInfeasible;
        }
    }
    std::cout << render_table(rows);
    return rc;
}

int cmd_oracle(const std::string& scenario_path, const std::string& objective)
{
    const auto kind = objective_kind_from_string(objective);
    if (!kind) {
        std::cerr << "unknown objective " << objective << " (expected aggregation or du-pinned)\n";
        return kExitUsage;
    }
    const auto scenario = load_scenario_file(scenario_path);
    try {
        const auto r = brute_force_oracle(request_from_scenario(scenario), *kind);
        std::cout << placement_table(r, scenario.topology);
        return kExitOk;
    } catch (const InfeasibleRequest& e) {
        std::cout << "infeasible\n";
        for (const auto& v : e.violations()) {
            std::cout << "  violation: " << v << "\n";
        }
        return kExitInfeasible;
    }
}

int cmd_serve(const std::optional<std::filesystem::path>& data_dir, const std::string& host, int port,
              const std::string& scenario_path)
{
    Service::Options options;
    options.data_dir = data_dir;
    if (!scenario_path.empty()) {
        options.seed = load_scenario_file(scenario_path);
    }
    Service service(std::move(options));
    HttpServer server(service);
    const int bound = server.bind(host, port);
    std::cout << "listening on " << host << ":" << bound << std::endl;

    std::signal(SIGINT, [](int) { g_interrupted = true; });
    std::signal(SIGTERM, [](int) { g_interrupted = true; });
    std::thread watcher([&] {
        while (!g_interrupted) {
            std::this_thread::sleep_for(std::chrono::milliseconds(100));
        }
        server.stop();
    });
    server.listen();
    g_interrupted = true;
    watcher.join();
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"OPlaceRAN: placement and deployment of disaggregated vRAN functions"};
    app.require_subcommand(1);

    std::string scenario, solver, url = "http://127.0.0.1:" + std::to_string(kDefaultPort);
    std::string format = "table", timeline_out, deployment, out, objective = "aggregation", host = "127.0.0.1";
    std::string data_dir;
    std::vector<std::string> solvers;
    bool offline = false;
    int port = kDefaultPort;

    auto* serve = app.add_subcommand("serve", "Start the service");
    serve->add_option("--data-dir", data_dir, "Catalog directory (default $OPLACERAN_DATA_DIR)");
    serve->add_option("--port", port, "TCP port")->capture_default_str();
    serve->add_option("--host", host, "Listen address")->capture_default_str();
    serve->add_option("--scenario", scenario, "Seed catalogs and infrastructure from a scenario")
        ->check(CLI::ExistingFile);

    auto* run = app.add_subcommand("run", "Run the full workflow for a scenario");
    run->add_option("--scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    run->add_option("--solver", solver, "Solver id (default: the scenario's)");
    run->add_flag("--offline", offline, "Run in-process without a service");
    run->add_option("--url", url, "Service base URL")->capture_default_str();
    run->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "doc"}))->capture_default_str();
    run->add_option("--timeline-out", timeline_out, "Write the deployment timeline here");

    auto* validate = app.add_subcommand("validate", "Parse and validate a scenario");
    validate->add_option("--scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);

    auto* timeline = app.add_subcommand("timeline", "Export a deployment's event log");
    timeline->add_option("--deployment", deployment, "Deployment id")->required();
    timeline->add_option("--out", out, "Output file (default stdout)");
    timeline->add_option("--url", url, "Service base URL")->capture_default_str();

    auto* compare = app.add_subcommand("compare", "Solve a scenario with several solvers");
    compare->add_option("--scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    compare->add_option("--solvers", solvers, "Comma separated solver ids")->required()->delimiter(',');

    auto* oracle = app.add_subcommand("oracle", "Run the brute-force oracle");
    oracle->add_option("--scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    oracle->add_option("--objective", objective, "aggregation or du-pinned")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*serve) {
            std::optional<std::filesystem::path> dir = default_data_dir();
            if (!data_dir.empty()) {
                dir = data_dir;
            }
            return cmd_serve(dir, host, port, scenario);
        }
        if (*run) {
            return cmd_run(scenario, solver, offline, url, format, timeline_out);
        }
        if (*validate) {
            return cmd_validate(scenario);
        }
        if (*timeline) {
            return cmd_timeline(deployment, out, url);
        }
        if (*compare) {
            return cmd_compare(scenario, solvers);
        }
        if (*oracle) {
            return cmd_oracle(scenario, objective);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}
