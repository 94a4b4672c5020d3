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

#ifndef OPLACERAN_SERVICE_HPP
#define OPLACERAN_SERVICE_HPP

#include <oplaceran/catalogs.hpp>
#include <oplaceran/deployer.hpp>
#include <oplaceran/jobs.hpp>
#include <oplaceran/optimizer.hpp>
#include <oplaceran/placer.hpp>

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace httplib {
class Server;
}

namespace oplaceran {

inline constexpr int kDefaultPort = 8080;

enum class ApiErrorCode { BadRequest, NotFound, Conflict, Infeasible, Internal };

struct ApiError
{
    ApiErrorCode code = ApiErrorCode::Internal;
    std::string message;
    std::string detail;
};

int http_status(ApiErrorCode code) noexcept;
std::string_view to_string(ApiErrorCode code) noexcept;
std::optional<ApiErrorCode> api_error_code_from_string(std::string_view s) noexcept;

/// Maps a module exception onto the wire error.
ApiError to_api_error(const std::exception& e);

struct ApiResponse
{
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

/// The orchestrator behind the wire interface. Owns every module instance
/// and maps requests onto module calls. `handle` is transport independent; the
/// HTTP server below only forwards to it.
class Service
{
public:
    struct Options
    {
        std::optional<std::filesystem::path> data_dir;
        /// Seeds the catalogs and defines the simulated infrastructure.
        std::optional<Scenario> seed;
        JobRunner::Options jobs;
        NfviSimulator::Options simulator;
        Placer::Options placer;
    };

    explicit Service(Options options);
    Service() : Service(Options{}) {}
    ~Service();

    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    ApiResponse handle(std::string_view method, std::string_view path, std::string_view body);

    RanCatalogs& catalogs() noexcept { return *catalogs_; }
    JobRunner& jobs() noexcept { return *jobs_; }
    const SolverRegistry& solvers() const noexcept { return *registry_; }
    /// Throws SimulatorUnavailable when no infrastructure has been described yet.
    NfviSimulator& simulator();

private:
    ApiResponse dispatch(std::string_view method, std::string_view path, std::string_view body);

    ApiResponse put_topology(std::string_view body);
    ApiResponse refresh_nfvi();
    ApiResponse post_placement(std::string_view body);
    ApiResponse post_orchestration(std::string_view body);
    ApiResponse get_orchestration(const std::string& run_id);
    ApiResponse post_deployment(std::string_view body);

    Placer& placer();
    void ensure_simulator(const Scenario* hint);
    void persist(const OrchestrationRecord& record) const;
    void restore_orchestrations();

    Options options_;
    std::unique_ptr<RanCatalogs> catalogs_;
    std::unique_ptr<SolverRegistry> registry_;
    std::unique_ptr<JobRunner> jobs_;

    std::mutex infra_mu_;
    std::unique_ptr<NfviSimulator> simulator_;
    std::unique_ptr<Placer> placer_;

    std::mutex runs_mu_;
    std::map<std::string, OrchestrationRecord> runs_;
    std::map<std::string, CrosshaulTopology> job_topologies_;
};

/// Serves a Service over HTTP/1.1.
class HttpServer
{
public:
    explicit HttpServer(Service& service);
    ~HttpServer();

    /// Binds and returns the port; pass 0 for an ephemeral one.
    int bind(const std::string& host, int port);
    /// Blocks until stop().
    void listen();
    void stop();

private:
    Service& service_;
    std::unique_ptr<httplib::Server> server_;
};

/// Minimal client for a running service.
class ServiceClient
{
public:
    /// `base_url` like "http://127.0.0.1:8080".
    explicit ServiceClient(std::string base_url);

    /// Throws Error when the service cannot be reached.
    ApiResponse request(std::string_view method, const std::string& path, const std::string& body = {}) const;

private:
    std::string base_url_;
};

} // namespace oplaceran

#endif // OPLACERAN_SERVICE_HPP
