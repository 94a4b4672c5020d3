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

#include <oplaceran/deployer.hpp>
#include <oplaceran/errors.hpp>
#include <oplaceran/jobs.hpp>

#include <cstdio>
#include <sstream>

namespace oplaceran {

Latency ChainingPlan::end_to_end() const noexcept
{
    Latency total;
    for (const auto& h : hops) {
        total += h.latency;
    }
    return total;
}

AllocationPlan build_allocation_plan(const PlacementResult& result, const RanCatalogs& catalogs,
                                     const CrosshaulTopology& topology)
{
    const CnfImageEntry images[] = {catalogs.get_cnf_image(RanFunction::vRU), catalogs.get_cnf_image(RanFunction::vDU),
                                    catalogs.get_cnf_image(RanFunction::vCU)};
    auto path_latency = [&](const std::vector<LinkId>& path) {
        Latency total;
        for (const auto& id : path) {
            const auto* link = topology.find_link(id);
            if (link == nullptr) {
                throw ValidationError("plan references unknown link", {id});
            }
            total += link->latency;
        }
        return total;
    };

    AllocationPlan plan;
    plan.plan_id = random_token("plan-");
    const NodeId& cn = topology.cn_anchor();
    for (const auto& p : result.placements) {
        const std::pair<RanFunction, const NodeId*> hosts[] = {
            {RanFunction::vRU, &p.vru_node}, {RanFunction::vDU, &p.vdu_node}, {RanFunction::vCU, &p.vcu_node}};
        for (const auto& [fn, node] : hosts) {
            const auto& img = images[static_cast<std::size_t>(fn)];
            plan.pod_specs.push_back(PodSpec{p.chain_id, fn, *node, img.spec, img.image_ref});
        }
        ChainingPlan chain{p.chain_id, {}};
        chain.hops.push_back({"O6", p.vru_node, p.vdu_node, p.fronthaul_path, path_latency(p.fronthaul_path)});
        chain.hops.push_back({"O2", p.vdu_node, p.vcu_node, p.midhaul_path, path_latency(p.midhaul_path)});
        chain.hops.push_back({"CN", p.vcu_node, cn, p.backhaul_path, path_latency(p.backhaul_path)});
        plan.chaining.push_back(std::move(chain));
    }
    plan.link_reservations = result.link_reservations;
    return plan;
}

// ---------------------------------------------------------------------------

NfviSimulator::NfviSimulator(const CrosshaulTopology& topology, const std::vector<NfviResourceEntry>& nfvi,
                             Options options)
    : options_(options)
{
    for (const auto& n : topology.nodes) {
        if (n.is_compute()) {
            nodes_[n.id].kind = n.kind;
        }
    }
    for (const auto& e : nfvi) {
        auto it = nodes_.find(e.node);
        if (it == nodes_.end()) {
            throw UnknownNode("nfvi entry for unknown compute node " + e.node);
        }
        it->second.capacity = e.capacity;
        it->second.background = e.allocated;
    }
    for (const auto& l : topology.links) {
        links_[l.id] = LinkState{l.capacity, l.residual, {}};
    }
}

void NfviSimulator::require_running() const
{
    if (!running_) {
        throw SimulatorUnavailable("NFVI simulator is stopped");
    }
}

ComputeCapacity NfviSimulator::usage_locked(const NodeState& n) const noexcept
{
    return options_.base_overhead + n.background + n.pods;
}

void NfviSimulator::advance_locked(SimTime to)
{
    if (to <= clock_) {
        return;
    }
    const double dt = static_cast<double>((to - clock_).ms);
    for (auto& [id, n] : nodes_) {
        const auto u = usage_locked(n);
        n.cpu_integral += static_cast<double>(u.cpu) * dt;
        n.memory_integral += static_cast<double>(u.memory) * dt;
    }
    clock_ = to;
}

DeploymentRecord NfviSimulator::begin_apply(const AllocationPlan& plan)
{
    std::lock_guard lock(mu_);
    require_running();

    DeploymentRecord record;
    record.deployment_id = random_token("dep-");
    record.plan = plan;
    record.origin = clock_;

    auto reject = [&](auto exception) -> DeploymentRecord {
        record.status = DeploymentStatus::Rejected;
        record.error = exception.what();
        deployments_.emplace(record.deployment_id, record);
        throw exception;
    };

    std::map<NodeId, ComputeCapacity> demand;
    for (const auto& pod : plan.pod_specs) {
        if (nodes_.count(pod.node) == 0) {
            return reject(UnknownNode("pod target " + pod.node + " is not a compute node"));
        }
        demand[pod.node] += pod.spec.demand;
    }
    for (const auto& [node, need] : demand) {
        const auto& n = nodes_.at(node);
        const auto free = n.capacity - n.background - n.pods;
        if (!need.fits_within(free)) {
            std::ostringstream os;
            os << "node " << node << " needs " << need.cpu << " m / " << need.memory << " MiB, has " << free.cpu
               << " m / " << free.memory << " MiB free";
            return reject(InsufficientResources(os.str()));
        }
    }
    for (const auto& [link, need] : plan.link_reservations) {
        auto it = links_.find(link);
        if (it == links_.end()) {
            return reject(LinkOverCommit("unknown link " + link));
        }
        const auto residual = it->second.baseline - it->second.reserved;
        if (need > residual) {
            std::ostringstream os;
            os << "link " << link << " needs " << need.mbps() << " Mbps, has " << residual.mbps() << " Mbps";
            return reject(LinkOverCommit(os.str()));
        }
    }

    for (const auto& [node, need] : demand) {
        nodes_.at(node).pods += need;
    }
    for (const auto& [link, need] : plan.link_reservations) {
        links_.at(link).reserved += need;
    }

    const auto& off = options_.offsets;
    record.timeline = {
        {"t0", SimTime{}, "workflow start"},
        {"placement_complete", off.placement_complete, "placement complete"},
        {"deployer_handoff", off.deployer_handoff, "allocation plan handed to the VNFM"},
    };
    int seq = 0;
    for (const auto& pod : plan.pod_specs) {
        PodRecord rec;
        rec.pod_id = record.deployment_id + "-" + pod.chain_id + "-" + std::string(to_string(pod.function)) + "-" +
                     std::to_string(seq++);
        rec.node = pod.node;
        rec.function = pod.function;
        rec.chain_id = pod.chain_id;
        rec.demand = pod.spec.demand;
        rec.history.push_back({PodPhase::PendingImage, off.deployer_handoff});
        record.pods.push_back(std::move(rec));
    }
    record.status = DeploymentStatus::Applying;
    deployments_.emplace(record.deployment_id, record);
    return record;
}

DeploymentRecord NfviSimulator::complete_apply(const std::string& deployment_id)
{
    std::lock_guard lock(mu_);
    require_running();
    auto it = deployments_.find(deployment_id);
    if (it == deployments_.end() || it->second.status != DeploymentStatus::Applying) {
        throw UnknownDeployment("no deployment " + deployment_id + " is applying");
    }
    auto& record = it->second;
    const auto& off = options_.offsets;
    for (auto& pod : record.pods) {
        pod.started_at = off.pods_started;
        pod.history.push_back({PodPhase::Starting, off.pods_started});
        pod.history.push_back({PodPhase::Configuring, off.t1});
        pod.history.push_back({PodPhase::Running, off.t3});
        pod.phase = PodPhase::Running;
    }
    const std::pair<const char*, std::pair<SimTime, const char*>> rest[] = {
        {"pods_started", {off.pods_started, "CNF pods started"}},
        {"t1", {off.t1, "all CNFs allocated"}},
        {"t2", {off.t2, "radio units configured"}},
        {"t3", {off.t3, "OAI load finished"}},
        {"t4", {off.t4, "OAI processing started"}},
        {"t5", {off.t5, "vRU-CN tunnel established"}},
        {"t6", {off.t6, "UE tunnel established, traffic started"}},
        {"t7", {off.t7, "traffic finished"}},
    };
    for (const auto& [marker, value] : rest) {
        record.timeline.push_back({marker, value.first, value.second});
    }
    record.status = DeploymentStatus::Active;
    advance_locked(record.origin + off.t7);
    return record;
}

DeploymentRecord NfviSimulator::apply_plan(const AllocationPlan& plan)
{
    const auto record = begin_apply(plan);
    return complete_apply(record.deployment_id);
}

void NfviSimulator::release_locked(DeploymentRecord& record)
{
    std::map<NodeId, ComputeCapacity> demand;
    for (auto& pod : record.pods) {
        demand[pod.node] += pod.demand;
        pod.phase = PodPhase::Released;
        const SimTime last = pod.history.empty() ? SimTime{} : pod.history.back().second;
        pod.history.push_back({PodPhase::Released, std::max(clock_ - record.origin, last)});
    }
    for (const auto& [node, need] : demand) {
        nodes_.at(node).pods -= need;
    }
    for (const auto& [link, need] : record.plan.link_reservations) {
        links_.at(link).reserved -= need;
    }
    record.status = DeploymentStatus::ReleasedOk;
}

void NfviSimulator::release_deployment(const std::string& deployment_id)
{
    std::lock_guard lock(mu_);
    require_running();
    auto it = deployments_.find(deployment_id);
    if (it == deployments_.end() || (it->second.status != DeploymentStatus::Applying &&
                                     it->second.status != DeploymentStatus::Active)) {
        throw UnknownDeployment("no active deployment " + deployment_id);
    }
    release_locked(it->second);
}

std::optional<DeploymentRecord> NfviSimulator::deployment(const std::string& deployment_id) const
{
    std::lock_guard lock(mu_);
    auto it = deployments_.find(deployment_id);
    if (it == deployments_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<DeploymentRecord> NfviSimulator::deployments() const
{
    std::lock_guard lock(mu_);
    std::vector<DeploymentRecord> out;
    for (const auto& [id, rec] : deployments_) {
        out.push_back(rec);
    }
    return out;
}

ClusterState NfviSimulator::state() const
{
    std::lock_guard lock(mu_);
    ClusterState s;
    for (const auto& [id, n] : nodes_) {
        s.node_free[id] = n.capacity - n.background - n.pods;
    }
    for (const auto& [id, l] : links_) {
        s.link_residual[id] = l.baseline - l.reserved;
    }
    for (const auto& [id, rec] : deployments_) {
        if (rec.status == DeploymentStatus::Applying || rec.status == DeploymentStatus::Active) {
            s.active_deployments.push_back(id);
        }
    }
    return s;
}

ClusterMetrics NfviSimulator::metrics() const
{
    std::lock_guard lock(mu_);
    ClusterMetrics m;
    m.at = clock_;
    for (const auto& [id, n] : nodes_) {
        NodeMetrics nm;
        nm.node = id;
        nm.kind = n.kind;
        nm.capacity = n.capacity;
        nm.current = usage_locked(n);
        if (clock_.ms > 0) {
            nm.avg_cpu = n.cpu_integral / static_cast<double>(clock_.ms);
            nm.avg_memory = n.memory_integral / static_cast<double>(clock_.ms);
        } else {
            nm.avg_cpu = static_cast<double>(nm.current.cpu);
            nm.avg_memory = static_cast<double>(nm.current.memory);
        }
        m.nodes.push_back(std::move(nm));
    }
    for (const auto& [id, l] : links_) {
        m.links.push_back({id, l.capacity, l.baseline - l.reserved});
    }
    for (const auto& [id, rec] : deployments_) {
        if (rec.status != DeploymentStatus::Active) {
            continue;
        }
        for (const auto& chain : rec.plan.chaining) {
            m.chains.push_back({id, chain.chain_id, chain.end_to_end()});
        }
    }
    return m;
}

std::vector<NfviResourceEntry> NfviSimulator::report() const
{
    std::lock_guard lock(mu_);
    require_running();
    std::vector<NfviResourceEntry> out;
    for (const auto& [id, n] : nodes_) {
        out.push_back({id, n.capacity, n.background + n.pods, 0});
    }
    return out;
}

ComputeCapacity NfviSimulator::node_capacity(const NodeId& node) const
{
    std::lock_guard lock(mu_);
    auto it = nodes_.find(node);
    if (it == nodes_.end()) {
        throw UnknownNode("unknown compute node " + node);
    }
    return it->second.capacity;
}

Bandwidth NfviSimulator::link_capacity(const LinkId& link) const
{
    std::lock_guard lock(mu_);
    return links_.at(link).capacity;
}

void NfviSimulator::advance_clock(SimTime by)
{
    std::lock_guard lock(mu_);
    advance_locked(clock_ + by);
}

SimTime NfviSimulator::now() const
{
    std::lock_guard lock(mu_);
    return clock_;
}

void NfviSimulator::stop()
{
    std::lock_guard lock(mu_);
    running_ = false;
}

void NfviSimulator::start()
{
    std::lock_guard lock(mu_);
    running_ = true;
}

bool NfviSimulator::running() const
{
    std::lock_guard lock(mu_);
    return running_;
}

std::string NfviSimulator::export_timeline(const std::string& deployment_id) const
{
    auto rec = deployment(deployment_id);
    if (!rec) {
        throw UnknownDeployment("unknown deployment " + deployment_id);
    }
    return oplaceran::export_timeline(*rec);
}

std::string export_timeline(const DeploymentRecord& record)
{
    std::string out;
    char buf[32];
    for (const auto& m : record.timeline) {
        std::snprintf(buf, sizeof buf, "%.3f", m.at.as_seconds());
        out += buf;
        out += ' ';
        out += m.marker;
        out += ' ';
        out += m.detail;
        out += '\n';
    }
    return out;
}

std::string_view to_string(PodPhase p) noexcept
{
    switch (p) {
    case PodPhase::PendingImage: return "PendingImage";
    case PodPhase::Starting: return "Starting";
    case PodPhase::Configuring: return "Configuring";
    case PodPhase::Running: return "Running";
    case PodPhase::Released: return "Released";
    }
    return "?";
}

std::string_view to_string(DeploymentStatus s) noexcept
{
    switch (s) {
    case DeploymentStatus::Applying: return "Applying";
    case DeploymentStatus::Active: return "Active";
    case DeploymentStatus::ReleasedOk: return "ReleasedOk";
    case DeploymentStatus::Rejected: return "Rejected";
    }
    return "?";
}

std::optional<PodPhase> pod_phase_from_string(std::string_view s) noexcept
{
    for (auto p : {PodPhase::PendingImage, PodPhase::Starting, PodPhase::Configuring, PodPhase::Running,
                   PodPhase::Released}) {
        if (to_string(p) == s) {
            return p;
        }
    }
    return std::nullopt;
}

std::optional<DeploymentStatus> deployment_status_from_string(std::string_view s) noexcept
{
    for (auto st : {DeploymentStatus::Applying, DeploymentStatus::Active, DeploymentStatus::ReleasedOk,
                    DeploymentStatus::Rejected}) {
        if (to_string(st) == s) {
            return st;
        }
    }
    return std::nullopt;
}

} // namespace oplaceran
