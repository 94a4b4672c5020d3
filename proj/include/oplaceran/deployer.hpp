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

#ifndef OPLACERAN_DEPLOYER_HPP
#define OPLACERAN_DEPLOYER_HPP

#include <oplaceran/catalogs.hpp>
#include <oplaceran/domain.hpp>
#include <oplaceran/optimizer.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace oplaceran {

/// Simulated clock value in milliseconds.
struct SimTime
{
    std::int64_t ms = 0;

    static constexpr SimTime seconds(double s) { return {static_cast<std::int64_t>(s * 1000.0 + (s >= 0 ? 0.5 : -0.5))}; }
    double as_seconds() const noexcept { return static_cast<double>(ms) / 1000.0; }
    friend SimTime operator+(SimTime a, SimTime b) noexcept { return {a.ms + b.ms}; }
    friend SimTime operator-(SimTime a, SimTime b) noexcept { return {a.ms - b.ms}; }
    friend auto operator<=>(const SimTime&, const SimTime&) = default;
};

struct PodSpec
{
    std::string chain_id;
    RanFunction function = RanFunction::vRU;
    NodeId node;
    CnfSpec spec;
    std::string image_ref;
    friend bool operator==(const PodSpec&, const PodSpec&) = default;
};

/// One adjacency in a chain: vRU-vDU over O6, vDU-vCU over O2, vCU-CN.
struct ChainHop
{
    std::string interface; // "O6", "O2" or "CN"
    NodeId from;
    NodeId to;
    std::vector<LinkId> path;
    Latency latency;
    friend bool operator==(const ChainHop&, const ChainHop&) = default;
};

struct ChainingPlan
{
    std::string chain_id;
    std::vector<ChainHop> hops;

    Latency end_to_end() const noexcept;
    friend bool operator==(const ChainingPlan&, const ChainingPlan&) = default;
};

struct AllocationPlan
{
    std::string plan_id;
    std::vector<PodSpec> pod_specs;
    std::vector<ChainingPlan> chaining;
    std::map<LinkId, Bandwidth> link_reservations;
    friend bool operator==(const AllocationPlan&, const AllocationPlan&) = default;
};

/// One pod per (chain, function), images and demands resolved from the RAN
/// CNFs catalog. Throws MissingEntry when an image is not catalogued.
AllocationPlan build_allocation_plan(const PlacementResult& result, const RanCatalogs& catalogs,
                                     const CrosshaulTopology& topology);

enum class PodPhase { PendingImage, Starting, Configuring, Running, Released };

struct PodRecord
{
    std::string pod_id;
    PodPhase phase = PodPhase::PendingImage;
    NodeId node;
    RanFunction function = RanFunction::vRU;
    std::string chain_id;
    ComputeCapacity demand;
    SimTime started_at;
    std::vector<std::pair<PodPhase, SimTime>> history;
};

struct TimelineMarker
{
    std::string marker;
    SimTime at; // relative to the deployment's t0
    std::string detail;
};

enum class DeploymentStatus { Applying, Active, ReleasedOk, Rejected };

struct DeploymentRecord
{
    std::string deployment_id;
    AllocationPlan plan;
    std::vector<PodRecord> pods;
    std::vector<TimelineMarker> timeline;
    DeploymentStatus status = DeploymentStatus::Applying;
    SimTime origin; // simulated clock value at t0
    std::string error; // set when Rejected
};

/// Offsets of every timeline marker from t0. The first four follow the
/// measured prototype run; t2..t7 are presentation defaults.
struct TimelineOffsets
{
    SimTime placement_complete = SimTime::seconds(1.2);
    SimTime deployer_handoff = SimTime::seconds(31.5);
    SimTime pods_started = SimTime::seconds(34);
    SimTime t1 = SimTime::seconds(70);
    SimTime t2 = SimTime::seconds(75);
    SimTime t3 = SimTime::seconds(80);
    SimTime t4 = SimTime::seconds(90);
    SimTime t5 = SimTime::seconds(95);
    SimTime t6 = SimTime::seconds(100);
    SimTime t7 = SimTime::seconds(160);
};

/// Snapshot of what the simulated NFVI has left.
struct ClusterState
{
    std::map<NodeId, ComputeCapacity> node_free;
    std::map<LinkId, Bandwidth> link_residual;
    std::vector<std::string> active_deployments;
    friend bool operator==(const ClusterState&, const ClusterState&) = default;
};

struct NodeMetrics
{
    NodeId node;
    NodeKind kind = NodeKind::ComputeWorker;
    ComputeCapacity capacity;
    ComputeCapacity current;
    double avg_cpu = 0.0;
    double avg_memory = 0.0;
};

struct LinkMetrics
{
    LinkId link;
    Bandwidth capacity;
    Bandwidth residual;
};

struct ChainLatencyMetric
{
    std::string deployment_id;
    std::string chain_id;
    Latency end_to_end;
};

struct ClusterMetrics
{
    SimTime at;
    std::vector<NodeMetrics> nodes;
    std::vector<LinkMetrics> links;
    std::vector<ChainLatencyMetric> chains;
};

/// Simulated VNFM/VIM/NFVI. All mutation and the simulated clock go
/// through one mutex; readers get copies of committed state.
class NfviSimulator
{
public:
    struct Options
    {
        TimelineOffsets offsets;
        /// Constant load reported for every compute node (control plane, agents).
        ComputeCapacity base_overhead;
    };

    NfviSimulator(const CrosshaulTopology& topology, const std::vector<NfviResourceEntry>& nfvi, Options options);
    NfviSimulator(const CrosshaulTopology& topology, const std::vector<NfviResourceEntry>& nfvi)
        : NfviSimulator(topology, nfvi, Options{})
    {
    }

    /// Reserves everything the plan needs or nothing. A plan that does not
    /// fit throws InsufficientResources or LinkOverCommit.
    DeploymentRecord begin_apply(const AllocationPlan& plan);
    /// Drives pods through their phases and records the full timeline.
    DeploymentRecord complete_apply(const std::string& deployment_id);
    DeploymentRecord apply_plan(const AllocationPlan& plan);

    /// Returns every reservation of an Applying or Active deployment.
    /// Throws UnknownDeployment otherwise.
    void release_deployment(const std::string& deployment_id);

    std::optional<DeploymentRecord> deployment(const std::string& deployment_id) const;
    std::vector<DeploymentRecord> deployments() const;

    ClusterState state() const;
    ClusterMetrics metrics() const;
    /// NFVI view as catalog entries (capacity, allocated). Throws SimulatorUnavailable.
    std::vector<NfviResourceEntry> report() const;

    ComputeCapacity node_capacity(const NodeId& node) const;
    Bandwidth link_capacity(const LinkId& link) const;

    void advance_clock(SimTime by);
    SimTime now() const;

    void stop();
    void start();
    bool running() const;

    /// "<sim_seconds> <marker> <detail>" lines. Throws UnknownDeployment.
    std::string export_timeline(const std::string& deployment_id) const;

private:
    struct NodeState
    {
        NodeKind kind = NodeKind::ComputeWorker;
        ComputeCapacity capacity;
        ComputeCapacity background;
        ComputeCapacity pods;
        double cpu_integral = 0.0;    // millicore-ms
        double memory_integral = 0.0; // MiB-ms
    };
    struct LinkState
    {
        Bandwidth capacity;
        Bandwidth baseline; // residual when the simulator was built
        Bandwidth reserved;
    };

    void advance_locked(SimTime to);
    ComputeCapacity usage_locked(const NodeState& n) const noexcept;
    void release_locked(DeploymentRecord& record);
    void require_running() const;

    Options options_;
    mutable std::mutex mu_;
    bool running_ = true;
    SimTime clock_;
    std::map<NodeId, NodeState> nodes_;
    std::map<LinkId, LinkState> links_;
    std::map<std::string, DeploymentRecord> deployments_;
};

std::string export_timeline(const DeploymentRecord& record);

std::string_view to_string(PodPhase p) noexcept;
std::string_view to_string(DeploymentStatus s) noexcept;
std::optional<PodPhase> pod_phase_from_string(std::string_view s) noexcept;
std::optional<DeploymentStatus> deployment_status_from_string(std::string_view s) noexcept;

} // namespace oplaceran

#endif // OPLACERAN_DEPLOYER_HPP
