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

#include "support.hpp"

#include <oplaceran/codec.hpp>
#include <oplaceran/errors.hpp>
#include <oplaceran/placer.hpp>

#include <doctest.h>

using namespace oplaceran;
using namespace oplaceran::testing;

namespace {

struct Rig
{
    Scenario scenario;
    RanCatalogs catalogs;
    std::unique_ptr<SolverRegistry> registry = SolverRegistry::with_builtins(&catalogs);
    JobRunner jobs{*registry};
    NfviSimulator sim;
    Placer placer;

    explicit Rig(const std::string& fixture, std::optional<int> fail_at = std::nullopt)
        : scenario(load_fixture(fixture)), sim(scenario.topology, scenario.nfvi),
          placer(catalogs, jobs, sim, {std::chrono::milliseconds(1), std::chrono::minutes(1), fail_at})
    {
        catalogs.seed(scenario);
    }

    OrchestrationRecord run(const std::string& solver = "aggregation-max")
    {
        return placer.run_workflow({scenario.chains, scenario, solver});
    }
};

std::vector<int> steps(const OrchestrationRecord& r)
{
    std::vector<int> out;
    for (const auto& e : r.events) {
        out.push_back(e.step);
    }
    return out;
}

std::vector<int> prefix(int k)
{
    std::vector<int> out;
    for (int i = 1; i <= k; ++i) {
        out.push_back(i);
    }
    return out;
}

} // namespace

TEST_CASE("fixture workflow deploys in twenty steps")
{
    Rig rig("testbed.scn");
    const auto r = rig.run();
    CHECK(r.outcome == WorkflowOutcome::Deployed);
    CHECK(steps(r) == prefix(20));
    for (std::size_t i = 0; i < r.events.size(); ++i) {
        CHECK(r.events[i].name == workflow_step_names()[i]);
        if (i > 0) {
            CHECK(r.events[i - 1].at <= r.events[i].at);
        }
    }
    REQUIRE(r.placement.has_value());
    CHECK(r.placement->aggregation_hosts() == std::set<NodeId>{"W1", "W3"});
    REQUIRE(r.deployment_id.has_value());
    CHECK(rig.sim.deployment(*r.deployment_id)->status == DeploymentStatus::Active);
    CHECK(r.nfvi_seq_requested == r.nfvi_seq_committed);
    CHECK(rig.catalogs.nfvi()->seq == r.nfvi_seq_committed);
}

TEST_CASE("infeasible request stops after the placement returns")
{
    Rig rig("tight_latency.scn");
    const auto before = rig.sim.state();
    const auto r = rig.run();
    CHECK(r.outcome == WorkflowOutcome::Infeasible);
    CHECK(steps(r) == prefix(13));
    CHECK_FALSE(r.violations.empty());
    CHECK_FALSE(r.deployment_id.has_value());
    CHECK(rig.sim.state() == before);
}

TEST_CASE("empty operator input fails at step two")
{
    Rig rig("testbed.scn");
    const auto r = rig.placer.run_workflow({{}, rig.scenario, "aggregation-max"});
    CHECK(r.outcome == WorkflowOutcome::Failed);
    CHECK(r.failed_step == 2);
    CHECK(steps(r) == prefix(1));
}

TEST_CASE("unknown solver fails at step eleven")
{
    Rig rig("testbed.scn");
    const auto r = rig.run("simplex");
    CHECK(r.outcome == WorkflowOutcome::Failed);
    CHECK(r.failed_step == 11);
    CHECK(r.error->find("simplex") != std::string::npos);
}

TEST_CASE("a failure after reservation leaves no trace in the NFVI")
{
    for (int step : {17, 18, 19, 20}) {
        CAPTURE(step);
        Rig rig("testbed.scn", step);
        const auto before = rig.sim.state();
        const auto r = rig.run();
        CHECK(r.outcome == WorkflowOutcome::Failed);
        CHECK(r.failed_step == step);
        CHECK(steps(r) == prefix(step - 1));
        CHECK(rig.sim.state() == before);
    }
}

TEST_CASE("workflow reads the catalog topology when no scenario is given")
{
    Rig rig("testbed.scn");
    const auto r = rig.placer.run_workflow({rig.scenario.chains, std::nullopt, "du-pinned"});
    CHECK(r.outcome == WorkflowOutcome::Deployed);
    CHECK(r.placement->aggregation_hosts() == std::set<NodeId>{"W1", "W2", "W3", "W4"});
}

TEST_CASE("NFVI refresh copies the simulator view into the catalog")
{
    Rig rig("testbed.scn");
    const auto first = rig.placer.refresh_nfvi_view();
    auto view = *rig.catalogs.nfvi();
    CHECK(json(view.entries).dump() != "");
    for (const auto& e : view.entries) {
        CHECK(e.allocated == ComputeCapacity{});
        CHECK(e.capacity == rig.sim.node_capacity(e.node));
    }

    const auto r = rig.run();
    REQUIRE(r.outcome == WorkflowOutcome::Deployed);
    const auto second = rig.placer.refresh_nfvi_view();
    CHECK(second > first);
    std::map<NodeId, ComputeCapacity> used;
    for (const auto& [node, load] : r.placement->node_loads) {
        used[node] = load;
    }
    for (const auto& e : rig.catalogs.nfvi()->entries) {
        CHECK(e.allocated == used[e.node]);
        CHECK(e.free() == e.capacity - used[e.node]);
    }

    auto a = *rig.catalogs.nfvi();
    rig.placer.refresh_nfvi_view();
    auto b = *rig.catalogs.nfvi();
    CHECK(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].allocated == b.entries[i].allocated);
        CHECK(a.entries[i].capacity == b.entries[i].capacity);
    }

    rig.sim.stop();
    CHECK_THROWS_AS(rig.placer.refresh_nfvi_view(), SimulatorUnavailable);
}

TEST_CASE("outcome names round-trip")
{
    for (auto o : {WorkflowOutcome::Deployed, WorkflowOutcome::Infeasible, WorkflowOutcome::Failed}) {
        CHECK(workflow_outcome_from_string(to_string(o)) == o);
    }
}
