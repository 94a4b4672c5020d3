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

#ifndef OPLACERAN_JOBS_HPP
#define OPLACERAN_JOBS_HPP

#include <oplaceran/optimizer.hpp>

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace oplaceran {

enum class JobStatus { Pending, Running, Succeeded, Failed, Infeasible };

/// Microseconds since the Unix epoch.
using Timestamp = std::int64_t;
Timestamp now_timestamp();

struct JobTicket
{
    std::string token;
    JobStatus status = JobStatus::Pending;
    std::optional<PlacementResult> result;   // iff Succeeded
    std::optional<std::string> error;        // iff Failed
    std::vector<std::string> violations;     // why a job ended Infeasible
    Timestamp submitted_at = 0;
    std::optional<Timestamp> finished_at;

    bool terminal() const noexcept
    {
        return status == JobStatus::Succeeded || status == JobStatus::Failed || status == JobStatus::Infeasible;
    }
};

/// 128 random bits, hex encoded, with an optional prefix.
std::string random_token(std::string_view prefix = {});

/// Placement Jobs: runs solves on a fixed pool of worker threads and hands
/// back a token per submission. Succeeded results are written under
/// `<persist_dir>/placements/<token>.json` and reloaded on construction.
class JobRunner
{
public:
    struct Options
    {
        std::size_t max_concurrent = 2;
        /// Sleep inserted before each solve; a test hook for slow solvers.
        std::chrono::milliseconds injected_delay{0};
        std::optional<std::filesystem::path> persist_dir;
    };

    JobRunner(const SolverRegistry& solvers, Options options);
    explicit JobRunner(const SolverRegistry& solvers) : JobRunner(solvers, Options{}) {}
    ~JobRunner();

    JobRunner(const JobRunner&) = delete;
    JobRunner& operator=(const JobRunner&) = delete;

    /// Validates and enqueues; never waits for the solve. Throws
    /// ValidationError or UnknownSolver.
    std::string submit(PlacementRequest request);

    /// Throws UnknownToken.
    JobTicket status(const std::string& token) const;

    /// Polls until the ticket is terminal or `timeout` passes.
    JobTicket wait(const std::string& token, std::chrono::milliseconds poll_interval,
                   std::chrono::milliseconds timeout = std::chrono::minutes(5)) const;

    const SolverRegistry& solvers() const noexcept { return solvers_; }

private:
    void worker_loop();
    void execute(const std::string& token, const PlacementRequest& request);
    void persist(const JobTicket& ticket) const;
    void restore();

    const SolverRegistry& solvers_;
    Options options_;

    mutable std::mutex mu_;
    std::condition_variable cv_;
    std::map<std::string, JobTicket> tickets_;
    std::deque<std::pair<std::string, PlacementRequest>> queue_;
    bool stopping_ = false;
    std::vector<std::thread> workers_;
};

std::string_view to_string(JobStatus s) noexcept;
std::optional<JobStatus> job_status_from_string(std::string_view s) noexcept;

} // namespace oplaceran

#endif // OPLACERAN_JOBS_HPP
