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
#include <oplaceran/jobs.hpp>

#include <array>
#include <random>

namespace oplaceran {

Timestamp now_timestamp()
{
    using namespace std::chrono;
    return duration_cast<microseconds>(system_clock::now().time_since_epoch()).count();
}

std::string random_token(std::string_view prefix)
{
    static constexpr char kHex[] = "0123456789abcdef";
    std::random_device rd;
    std::string out(prefix);
    for (int i = 0; i < 4; ++i) {
        std::uint32_t word = rd();
        for (int j = 0; j < 8; ++j) {
            out.push_back(kHex[word & 0xF]);
            word >>= 4;
        }
    }
    return out;
}

JobRunner::JobRunner(const SolverRegistry& solvers, Options options)
    : solvers_(solvers), options_(std::move(options))
{
    if (options_.persist_dir) {
        restore();
    }
    const std::size_t n = std::max<std::size_t>(1, options_.max_concurrent);
    for (std::size_t i = 0; i < n; ++i) {
        workers_.emplace_back([this] { worker_loop(); });
    }
}

JobRunner::~JobRunner()
{
    {
        std::lock_guard lock(mu_);
        stopping_ = true;
    }
    cv_.notify_all();
    for (auto& t : workers_) {
        t.join();
    }
}

std::string JobRunner::submit(PlacementRequest request)
{
    validate_request(request);
    if (!solvers_.contains(request.solver_id)) {
        throw UnknownSolver("unknown solver " + request.solver_id);
    }
    JobTicket ticket;
    ticket.token = random_token();
    ticket.submitted_at = now_timestamp();
    const std::string token = ticket.token;
    {
        std::lock_guard lock(mu_);
        tickets_.emplace(token, std::move(ticket));
        queue_.emplace_back(token, std::move(request));
    }
    cv_.notify_one();
    return token;
}

JobTicket JobRunner::status(const std::string& token) const
{
    std::lock_guard lock(mu_);
    auto it = tickets_.find(token);
    if (it == tickets_.end()) {
        throw UnknownToken("unknown token " + token);
    }
    return it->second;
}

JobTicket JobRunner::wait(const std::string& token, std::chrono::milliseconds poll_interval,
                          std::chrono::milliseconds timeout) const
{
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    while (true) {
        auto ticket = status(token);
        if (ticket.terminal() || std::chrono::steady_clock::now() >= deadline) {
            return ticket;
        }
        std::this_thread::sleep_for(poll_interval);
    }
}

void JobRunner::worker_loop()
{
    while (true) {
        std::pair<std::string, PlacementRequest> job;
        {
            std::unique_lock lock(mu_);
            cv_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
            if (stopping_ && queue_.empty()) {
                return;
            }
            job = std::move(queue_.front());
            queue_.pop_front();
            tickets_.at(job.first).status = JobStatus::Running;
        }
        execute(job.first, job.second);
    }
}

void JobRunner::execute(const std::string& token, const PlacementRequest& request)
{
    JobStatus status = JobStatus::Failed;
    std::optional<PlacementResult> result;
    std::optional<std::string> error;
    std::vector<std::string> violations;
    try {
        const auto start = std::chrono::steady_clock::now();
        if (options_.injected_delay.count() > 0) {
            std::this_thread::sleep_for(options_.injected_delay);
        }
        result = solvers_.solve(request);
        result->solve_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        status = JobStatus::Succeeded;
    } catch (const InfeasibleRequest& e) {
        status = JobStatus::Infeasible;
        violations = e.violations();
    } catch (const std::exception& e) {
        error = e.what();
    }

    JobTicket snapshot;
    {
        std::lock_guard lock(mu_);
        auto& ticket = tickets_.at(token);
        ticket.status = status;
        ticket.result = std::move(result);
        ticket.error = std::move(error);
        ticket.violations = std::move(violations);
        ticket.finished_at = std::max(now_timestamp(), ticket.submitted_at);
        snapshot = ticket;
    }
    if (options_.persist_dir) {
        persist(snapshot);
    }
}

void JobRunner::persist(const JobTicket& ticket) const
{
    const auto dir = *options_.persist_dir / "placements";
    std::filesystem::create_directories(dir);
    write_file_atomically(dir / (ticket.token + ".json"), nlohmann::json(ticket).dump(2));
}

void JobRunner::restore()
{
    const auto dir = *options_.persist_dir / "placements";
    if (!std::filesystem::exists(dir)) {
        return;
    }
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".json") {
            continue;
        }
        auto ticket = nlohmann::json::parse(read_file(entry.path())).get<JobTicket>();
        tickets_.emplace(ticket.token, std::move(ticket));
    }
}

std::string_view to_string(JobStatus s) noexcept
{
    switch (s) {
    case JobStatus::Pending: return "Pending";
    case JobStatus::Running: return "Running";
    case JobStatus::Succeeded: return "Succeeded";
    case JobStatus::Failed: return "Failed";
    case JobStatus::Infeasible: return "Infeasible";
    }
    return "?";
}

std::optional<JobStatus> job_status_from_string(std::string_view s) noexcept
{
    for (auto st : {JobStatus::Pending, JobStatus::Running, JobStatus::Succeeded, JobStatus::Failed,
                    JobStatus::Infeasible}) {
        if (to_string(st) == s) {
            return st;
        }
    }
    return std::nullopt;
}

} // namespace oplaceran
