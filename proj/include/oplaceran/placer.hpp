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

#ifndef OPLACERAN_PLACER_HPP
#define OPLACERAN_PLACER_HPP

#include <oplaceran/catalogs.hpp>
#include <oplaceran/deployer.hpp>
#include <oplaceran/jobs.hpp>

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace oplaceran {

/// What the operator hands in at step 01. With no scenario the workflow
/// uses the Topology Inputs already in the catalogs.
struct ExternalInputs
{
    std::vector<Chain> operator_chains;
    std::optional<Scenario> scenario;
    std::string solver_id;
};

struct WorkflowEvent
{
    int step = 0;
    std::string name;
    Timestamp at = 0;
    std::string detail;
};

enum class WorkflowOutcome { Deployed, Infeasible, Failed };

struct OrchestrationRecord
{
    std::string run_id;
    std::vector<WorkflowEvent> events;
    WorkflowOutcome outcome = WorkflowOutcome::Failed;
    std::optional<PlacementResult> placement;
    std::optional<std::string> deployment_id;
    std::optional<std::string> token;
    /// Set when outcome is Failed: the step that could not complete and why.
    std::optional<int> failed_step;
    std::optional<std::string> error;
    std::vector<std::string> violations;
    std::uint64_t nfvi_seq_committed = 0; // step 09
    std::uint64_t nfvi_seq_requested = 0; // carried by the step-10 request
};

/// Names of the twenty sequence steps, index 0 is step 1.
const std::vector<std::string>& workflow_step_names();

/// RANPlacer. Walks the twenty-step orchestration sequence, calling into
/// the catalogs and the deployer.
class Placer
{
public:
    struct Options
    {
        std::chrono::milliseconds poll_interval{50};
        std::chrono::milliseconds job_timeout{std::chrono::minutes(5)};
        /// Test hook: throw at the start of this step.
        std::optional<int> fail_at_step;
    };

    Placer(RanCatalogs& catalogs, JobRunner& jobs, NfviSimulator& nfvi, Options options);
    Placer(RanCatalogs& catalogs, JobRunner& jobs, NfviSimulator& nfvi)
        : Placer(catalogs, jobs, nfvi, Options{})
    {
    }

    OrchestrationRecord run_workflow(const ExternalInputs& inputs);

    /// Pulls the simulator's view into the NFVI catalog (steps 03-07 and 09).
    /// Throws SimulatorUnavailable.
    std::uint64_t refresh_nfvi_view();

private:
    RanCatalogs& catalogs_;
    JobRunner& jobs_;
    NfviSimulator& nfvi_;
    Options options_;
};

std::string_view to_string(WorkflowOutcome o) noexcept;
std::optional<WorkflowOutcome> workflow_outcome_from_string(std::string_view s) noexcept;

} // namespace oplaceran

#endif // OPLACERAN_PLACER_HPP
