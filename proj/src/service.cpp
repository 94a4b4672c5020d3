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

#include <oplaceran/codec.hpp>
#include <oplaceran/errors.hpp>
#include <oplaceran/service.hpp>

#include <httplib.h>


namespace oplaceran {

namespace {

std::vector<std::string> split_path(std::string_view path)
{
    if (auto q = path.find('?'); q != std::string_view::npos) {
        path = path.substr(0, q);
    }
    std::vector<std::string> parts;
    std::size_t i = 0;
    while (i < path.size()) {
        auto j = path.find('/', i);
        if (j == std::string_view::npos) {
            j = path.size();
        }
        if (j > i) {
            parts.emplace_back(path.substr(i, j - i));
        }
        i = j + 1;
    }
    return parts;
}

ApiResponse ok(const json& doc, int status = 200)
{
    return {status, doc.dump(2) + "\n"};
}

ApiResponse error_response(const ApiError& e)
{
    json doc{{"code", to_string(e.code)}, {"message", e.message}, {"detail", e.detail}};
    return {http_status(e.code), doc.dump(2) + "\n"};
}

json parse_body(std::string_view body)
{
    try {
        return json::parse(body.begin(), body.end());
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed request body: ") + e.what());
    }
}

template <typename T>
T decode(const json& doc, const char* what)
{
    try {
        return doc.get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed ") + what + ": " + e.what());
    }
}

Scenario decode_scenario(const json& doc)
{
    auto s = decode<Scenario>(doc, "scenario");
    auto report = validate_scenario_inputs(s.topology, s.nfvi, s.chains, s.split_profile, s.cnf_specs);
    if (!report.ok()) {
        throw ValidationError("invalid scenario", std::move(report.violations));
    }
    return s;
}

} // namespace

int http_status(ApiErrorCode code) noexcept
{
    switch (code) {
    case ApiErrorCode::BadRequest: return 400;
    case ApiErrorCode::NotFound: return 404;
    case ApiErrorCode::Conflict: return 409;
    case ApiErrorCode::Infeasible: return 422;
    case ApiErrorCode::Internal: return 500;
    }
    return 500;
}

std::string_view to_string(ApiErrorCode code) noexcept
{
    switch (code) {
    case ApiErrorCode::BadRequest: return "BadRequest";
    case ApiErrorCode::NotFound: return "NotFound";
    case ApiErrorCode::Conflict: return "Conflict";
    case ApiErrorCode::Infeasible: return "Infeasible";
    case ApiErrorCode::Internal: return "Internal";
    }
    return "Internal";
}

std::optional<ApiErrorCode> api_error_code_from_string(std::string_view s) noexcept
{
    for (auto c : {ApiErrorCode::BadRequest, ApiErrorCode::NotFound, ApiErrorCode::Conflict, ApiErrorCode::Infeasible,
                   ApiErrorCode::Internal}) {
        if (to_string(c) == s) {
            return c;
        }
    }
    return std::nullopt;
}

ApiError to_api_error(const std::exception& e)
{
    ApiError out{ApiErrorCode::Internal, e.what(), {}};
    if (const auto* ve = dynamic_cast<const ViolationError*>(&e)) {
        std::string detail;
        for (const auto& v : ve->violations()) {
            detail += detail.empty() ? "" : "\n";
            detail += v;
        }
        out.detail = std::move(detail);
    }
    if (dynamic_cast<const InfeasibleRequest*>(&e)) {
        out.code = ApiErrorCode::Infeasible;
    } else if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ValidationError*>(&e) ||
               dynamic_cast<const UnknownSolver*>(&e) || dynamic_cast<const UnknownNode*>(&e) ||
               dynamic_cast<const DuplicateId*>(&e) || dynamic_cast<const NoPath*>(&e) ||
               dynamic_cast<const TooLarge*>(&e)) {
        out.code = ApiErrorCode::BadRequest;
    } else if (dynamic_cast<const UnknownToken*>(&e) || dynamic_cast<const UnknownDeployment*>(&e) ||
               dynamic_cast<const MissingEntry*>(&e)) {
        out.code = ApiErrorCode::NotFound;
    } else if (dynamic_cast<const CatalogUnavailable*>(&e) || dynamic_cast<const SimulatorUnavailable*>(&e) ||
               dynamic_cast<const InsufficientResources*>(&e) || dynamic_cast<const LinkOverCommit*>(&e)) {
        out.code = ApiErrorCode::Conflict;
    }
    return out;
}

// ---------------------------------------------------------------------------

Service::Service(Options options) : options_(std::move(options))
{
    catalogs_ = options_.data_dir ? std::make_unique<RanCatalogs>(*options_.data_dir) : std::make_unique<RanCatalogs>();
    registry_ = SolverRegistry::with_builtins(catalogs_.get());
    if (options_.data_dir && !options_.jobs.persist_dir) {
        options_.jobs.persist_dir = options_.data_dir;
    }
    jobs_ = std::make_unique<JobRunner>(*registry_, options_.jobs);
    if (options_.seed) {
        catalogs_->seed(*options_.seed);
        ensure_simulator(&*options_.seed);
    } else if (catalogs_->has_topology() && !catalogs_->nfvi()->entries.empty()) {
        ensure_simulator(nullptr);
    }
    if (options_.data_dir) {
        restore_orchestrations();
    }
}

Service::~Service() = default;

void Service::ensure_simulator(const Scenario* hint)
{
    std::lock_guard lock(infra_mu_);
    if (simulator_) {
        return;
    }
    if (hint != nullptr) {
        simulator_ = std::make_unique<NfviSimulator>(hint->topology, hint->nfvi, options_.simulator);
    } else {
        if (!catalogs_->has_topology()) {
            throw SimulatorUnavailable("no infrastructure described: seed a scenario first");
        }
        simulator_ = std::make_unique<NfviSimulator>(catalogs_->topology_inputs()->topology, catalogs_->nfvi()->entries,
                                                     options_.simulator);
    }
    placer_ = std::make_unique<Placer>(*catalogs_, *jobs_, *simulator_, options_.placer);
}

NfviSimulator& Service::simulator()
{
    ensure_simulator(nullptr);
    return *simulator_;
}

Placer& Service::placer()
{
    ensure_simulator(nullptr);
    return *placer_;
}

ApiResponse Service::handle(std::string_view method, std::string_view path, std::string_view body)
{
    try {
        return dispatch(method, path, body);
    } catch (const std::exception& e) {
        return error_response(to_api_error(e));
    }
}

ApiResponse Service::dispatch(std::string_view method, std::string_view path, std::string_view body)
{
    const auto parts = split_path(path);
    const auto n = parts.size();
    auto is = [&](std::string_view m, std::initializer_list<std::string_view> shape) {
        if (method != m || shape.size() != n) {
            return false;
        }
        std::size_t i = 0;
        for (auto s : shape) {
            if (s != "*" && s != parts[i]) {
                return false;
            }
            ++i;
        }
        return true;
    };

    if (is("GET", {"catalog", "topology"})) {
        return ok(*catalogs_->topology_inputs());
    }
    if (is("PUT", {"catalog", "topology"})) {
        return put_topology(body);
    }
    if (is("GET", {"catalog", "nfvi"})) {
        return ok(*catalogs_->nfvi());
    }
    if (is("POST", {"catalog", "nfvi", "refresh"})) {
        return refresh_nfvi();
    }
    if (is("GET", {"catalog", "solvers"})) {
        return ok(catalogs_->solvers());
    }
    if (is("GET", {"catalog", "cnfs"})) {
        return ok(catalogs_->cnf_images());
    }
    if (is("POST", {"placements"})) {
        return post_placement(body);
    }
    if (is("GET", {"placements", "*"})) {
        return ok(jobs_->status(parts[1]));
    }
    if (is("POST", {"orchestrations"})) {
        return post_orchestration(body);
    }
    if (is("GET", {"orchestrations", "*"})) {
        return get_orchestration(parts[1]);
    }
    if (is("POST", {"deployments"})) {
        return post_deployment(body);
    }
    if (is("GET", {"deployments", "*"})) {
        auto record = simulator().deployment(parts[1]);
        if (!record) {
            throw UnknownDeployment("unknown deployment " + parts[1]);
        }
        return ok(*record);
    }
    if (is("DELETE", {"deployments", "*"})) {
        auto& sim = simulator();
        sim.release_deployment(parts[1]);
        return ok(*sim.deployment(parts[1]));
    }
    if (is("GET", {"deployments", "*", "timeline"})) {
        return {200, simulator().export_timeline(parts[1]), "text/plain"};
    }
    if (is("GET", {"metrics"})) {
        return ok(simulator().metrics());
    }
    return error_response({ApiErrorCode::NotFound, "no route for " + std::string(method) + " " + std::string(path), {}});
}

ApiResponse Service::put_topology(std::string_view body)
{
    catalogs_->set_topology_inputs(decode<TopologyInputs>(parse_body(body), "topology inputs"));
    return ok(*catalogs_->topology_inputs());
}

ApiResponse Service::refresh_nfvi()
{
    placer().refresh_nfvi_view();
    return ok(*catalogs_->nfvi());
}

ApiResponse Service::post_placement(std::string_view body)
{
    const auto doc = parse_body(body);
    PlacementRequest request;
    if (doc.contains("scenario")) {
        const auto scenario = decode_scenario(doc.at("scenario"));
        request = request_from_scenario(scenario, doc.value("solver_id", scenario.solver));
    } else {
        const auto topo = catalogs_->topology_inputs();
        const auto nfvi = catalogs_->nfvi();
        request.topology = topo->topology;
        request.split_profile = topo->split_profile;
        request.nfvi = nfvi->entries;
        request.nfvi_seq = nfvi->seq;
        request.cnf_specs = catalogs_->cnf_specs();
        request.chains = decode<std::vector<Chain>>(doc.value("chains", json::array()), "chains");
        request.solver_id = doc.value("solver_id", std::string{});
    }
    auto topology = request.topology;
    auto token = jobs_->submit(std::move(request));
    {
        std::lock_guard lock(runs_mu_);
        job_topologies_.emplace(token, std::move(topology));
    }
    return ok(json{{"token", token}}, 202);
}

ApiResponse Service::post_orchestration(std::string_view body)
{
    auto inputs = decode<ExternalInputs>(parse_body(body), "external inputs");
    if (inputs.scenario) {
        auto report = validate_scenario_inputs(inputs.scenario->topology, inputs.scenario->nfvi, inputs.scenario->chains,
                                               inputs.scenario->split_profile, inputs.scenario->cnf_specs);
        if (!report.ok()) {
            throw ValidationError("invalid scenario", std::move(report.violations));
        }
        ensure_simulator(&*inputs.scenario);
    }
    auto record = placer().run_workflow(inputs);
    persist(record);
    const auto run_id = record.run_id;
    {
        std::lock_guard lock(runs_mu_);
        runs_.emplace(run_id, std::move(record));
    }
    return ok(json{{"run_id", run_id}}, 201);
}

ApiResponse Service::get_orchestration(const std::string& run_id)
{
    std::lock_guard lock(runs_mu_);
    auto it = runs_.find(run_id);
    if (it == runs_.end()) {
        throw MissingEntry("unknown orchestration run " + run_id);
    }
    return ok(it->second);
}

ApiResponse Service::post_deployment(std::string_view body)
{
    const auto doc = parse_body(body);
    AllocationPlan plan;
    if (doc.contains("plan")) {
        plan = decode<AllocationPlan>(doc.at("plan"), "allocation plan");
    } else if (doc.contains("token")) {
        const auto token = doc.at("token").get<std::string>();
        const auto ticket = jobs_->status(token);
        if (ticket.status == JobStatus::Infeasible) {
            throw InfeasibleRequest("placement " + token + " is infeasible", ticket.violations);
        }
        if (ticket.status != JobStatus::Succeeded) {
            return error_response({ApiErrorCode::Conflict,
                                   "placement " + token + " is " + std::string(to_string(ticket.status)),
                                   ticket.error.value_or("")});
        }
        CrosshaulTopology topology;
        {
            std::lock_guard lock(runs_mu_);
            auto it = job_topologies_.find(token);
            topology = it != job_topologies_.end() ? it->second : catalogs_->topology_inputs()->topology;
        }
        plan = build_allocation_plan(*ticket.result, *catalogs_, topology);
    } else {
        throw ParseError("deployment request needs a plan or a token");
    }
    return ok(simulator().apply_plan(plan), 201);
}

void Service::persist(const OrchestrationRecord& record) const
{
    if (!options_.data_dir) {
        return;
    }
    const auto dir = *options_.data_dir / "orchestrations";
    std::filesystem::create_directories(dir);
    write_file_atomically(dir / (record.run_id + ".json"), json(record).dump(2) + "\n");
}

void Service::restore_orchestrations()
{
    const auto dir = *options_.data_dir / "orchestrations";
    if (!std::filesystem::exists(dir)) {
        return;
    }
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".json") {
            continue;
        }
        auto record = json::parse(read_file(entry.path())).get<OrchestrationRecord>();
        runs_.emplace(record.run_id, std::move(record));
    }
}

// ---------------------------------------------------------------------------

HttpServer::HttpServer(Service& service) : service_(service), server_(std::make_unique<httplib::Server>())
{
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
        auto out = service_.handle(req.method, req.path, req.body);
        res.status = out.status;
        res.set_content(out.body, out.content_type);
    };
    const std::string any = R"(/.*)";
    server_->Get(any, forward);
    server_->Post(any, forward);
    server_->Put(any, forward);
    server_->Delete(any, forward);
}

HttpServer::~HttpServer()
{
    stop();
}

int HttpServer::bind(const std::string& host, int port)
{
    if (port == 0) {
        return server_->bind_to_any_port(host);
    }
    if (!server_->bind_to_port(host, port)) {
        throw Error("cannot bind " + host + ":" + std::to_string(port));
    }
    return port;
}

void HttpServer::listen()
{
    server_->listen_after_bind();
}

void HttpServer::stop()
{
    if (server_->is_running()) {
        server_->stop();
    }
}

// ---------------------------------------------------------------------------

ServiceClient::ServiceClient(std::string base_url) : base_url_(std::move(base_url))
{
}

ApiResponse ServiceClient::request(std::string_view method, const std::string& path, const std::string& body) const
{
    httplib::Client client(base_url_);
    client.set_read_timeout(std::chrono::minutes(5));
    httplib::Result res;
    const char* type = "application/json";
    if (method == "GET") {
        res = client.Get(path);
    } else if (method == "POST") {
        res = client.Post(path, body, type);
    } else if (method == "PUT") {
        res = client.Put(path, body, type);
    } else if (method == "DELETE") {
        res = client.Delete(path);
    } else {
        throw Error("unsupported method " + std::string(method));
    }
    if (!res) {
        throw Error("cannot reach service at " + base_url_ + ": " + httplib::to_string(res.error()));
    }
    return {res->status, res->body, res->get_header_value("Content-Type")};
}

} // namespace oplaceran
