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

#include <oplaceran/errors.hpp>
#include <oplaceran/placer.hpp>

#include <unordered_set>

namespace oplaceran {

const std::vector<std::string>& workflow_step_names()
{
    // Reconstructed from the orchestration sequence: one entry per message hop.
    static const std::vector<std::string> names = {
        "inputs collected",          // 01
        "inputs processed",          // 02
        "VIM CR update requested",   // 03
        "NFVI view requested",       // 04
        "NFVI view returned",        // 05
        "NFVI update notified",      // 06
        "NFVI view updated",         // 07
        "topology inputs updated",   // 08
        "catalogs updated",          // 09
        "placement requested",       // 10
        "solver selected",           // 11
        "placement job submitted",   // 12
        "placement returned",        // 13
        "plan sent to deployer",     // 14
        "CNF images requested",      // 15
        "CNF images fetched",        // 16
        "CNFs sent to VNFM",         // 17
        "CNF chaining allocated",    // 18
        "VNFs allocated",            // 19
        "notification",              // 20
    };
    return names;
}

Placer::Placer(RanCatalogs& catalogs, JobRunner& jobs, NfviSimulator& nfvi, Options options)
    : catalogs_(catalogs), jobs_(jobs), nfvi_(nfvi), options_(options)
{
}

std::uint64_t Placer::refresh_nfvi_view()
{
    return catalogs_.update_nfvi(nfvi_.report());
}

OrchestrationRecord Placer::run_workflow(const ExternalInputs& inputs)
{
    OrchestrationRecord record;
    record.run_id = random_token("run-");
    const auto& names = workflow_step_names();

    int step = 0;
    auto begin = [&](int s) {
        step = s;
        if (options_.fail_at_step && *options_.fail_at_step == s) {
            throw Error("injected failure at step " + std::to_string(s));
        }
    };
    auto done = [&](std::string detail = {}) {
        record.events.push_back({step, names[static_cast<std::size_t>(step - 1)], now_timestamp(), std::move(detail)});
    };

    try {
        begin(1);
        done(std::to_string(inputs.operator_chains.size()) + " chains, solver " + inputs.solver_id);

        begin(2);
        if (inputs.operator_chains.empty()) {
            throw ValidationError("invalid external inputs", {"no chains to place"});
        }
        TopologyInputs topo;
        if (inputs.scenario) {
            topo = TopologyInputs{inputs.scenario->topology, inputs.scenario->split_profile};
        } else {
            topo = *catalogs_.topology_inputs();
        }
        {
            auto v = validate_topology(topo.topology).violations;
            std::unordered_set<std::string> pins;
            for (const auto& c : inputs.operator_chains) {
                const auto* node = topo.topology.find_node(c.vru_node);
                if (node == nullptr || node->kind != NodeKind::ComputeWorker) {
                    v.push_back("chain " + c.chain_id + " pins vRU to non-worker " + c.vru_node);
                }
                if (!pins.insert(c.vru_node).second) {
                    v.push_back("vRU pin " + c.vru_node + " used twice");
                }
            }
            if (!v.empty()) {
                throw ValidationError("invalid external inputs", std::move(v));
            }
        }
        done("topology with " + std::to_string(topo.topology.nodes.size()) + " nodes");

        begin(3);
        done();
        begin(4);
        done();
        begin(5);
        auto view = nfvi_.report();
        done(std::to_string(view.size()) + " compute nodes");
        begin(6);
        done();
        begin(7);
        done();

        begin(8);
        catalogs_.set_topology_inputs(topo);
        if (inputs.scenario) {
            std::vector<CnfImageEntry> images;
            for (auto f : kRanFunctions) {
                const auto& spec = inputs.scenario->cnf_specs.of(f);
                images.push_back({f, spec.image_ref, spec});
            }
            catalogs_.set_cnf_images(std::move(images));
        }
        done();

        begin(9);
        const auto seq = catalogs_.update_nfvi(view);
        record.nfvi_seq_committed = seq;
        for (auto& e : view) {
            e.snapshot_seq = seq;
        }
        done("nfvi snapshot " + std::to_string(seq));

        begin(10);
        PlacementRequest request;
        request.topology = topo.topology;
        request.split_profile = topo.split_profile;
        request.nfvi = view;
        request.nfvi_seq = seq;
        request.chains = inputs.operator_chains;
        request.cnf_specs = catalogs_.cnf_specs();
        request.solver_id = inputs.solver_id;
        record.nfvi_seq_requested = request.nfvi_seq;
        done();

        begin(11);
        if (!jobs_.solvers().contains(inputs.solver_id)) {
            throw UnknownSolver("unknown solver " + inputs.solver_id);
        }
        done(inputs.solver_id);

        begin(12);
        record.token = jobs_.submit(std::move(request));
        done(*record.token);

        begin(13);
        const auto ticket = jobs_.wait(*record.token, options_.poll_interval, options_.job_timeout);
        if (ticket.status == JobStatus::Infeasible) {
            done("infeasible");
            record.outcome = WorkflowOutcome::Infeasible;
            record.violations = ticket.violations;
            return record;
        }
        if (ticket.status != JobStatus::Succeeded) {
            throw Error("optimizer failure: " + ticket.error.value_or("job did not finish"));
        }
        record.placement = ticket.result;
        done("cr_count " + std::to_string(ticket.result->objective.cr_count));

        begin(14);
        done();
        begin(15);
        done();
        begin(16);
        const auto plan = build_allocation_plan(*record.placement, catalogs_, topo.topology);
        done(std::to_string(plan.pod_specs.size()) + " pods");

        begin(17);
        const auto applying = nfvi_.begin_apply(plan);
        record.deployment_id = applying.deployment_id;
        done(applying.deployment_id);

        begin(18);
        const auto active = nfvi_.complete_apply(applying.deployment_id);
        done();

        begin(19);
        if (active.status != DeploymentStatus::Active) {
            throw Error("deployment " + active.deployment_id + " did not become active");
        }
        done();

        begin(20);
        done("deployment " + active.deployment_id + " active");
        record.outcome = WorkflowOutcome::Deployed;
    } catch (const std::exception& e) {
        record.outcome = WorkflowOutcome::Failed;
        record.failed_step = step;
        record.error = e.what();
        if (const auto* ve = dynamic_cast<const ViolationError*>(&e)) {
            record.violations = ve->violations();
        }
        if (record.deployment_id) {
            try {
                nfvi_.release_deployment(*record.deployment_id);
            } catch (const UnknownDeployment&) {
                // never reserved
            }
        }
    }
    return record;
}

std::string_view to_string(WorkflowOutcome o) noexcept
{
    switch (o) {
    case WorkflowOutcome::Deployed: return "Deployed";
    case WorkflowOutcome::Infeasible: return "Infeasible";
    case WorkflowOutcome::Failed: return "Failed";
    }
    return "?";
}

std::optional<WorkflowOutcome> workflow_outcome_from_string(std::string_view s) noexcept
{
    for (auto o : {WorkflowOutcome::Deployed, WorkflowOutcome::Infeasible, WorkflowOutcome::Failed}) {
        if (to_string(o) == s) {
            return o;
        }
    }
    return std::nullopt;
}

} // namespace oplaceran
