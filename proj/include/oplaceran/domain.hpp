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

#ifndef OPLACERAN_DOMAIN_HPP
#define OPLACERAN_DOMAIN_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace oplaceran {

using NodeId = std::string;
using LinkId = std::string;

/// Link or path latency, kept as integer microseconds so sums compare exactly.
/// Configuration and wire formats use (fractional) milliseconds.
struct Latency
{
    std::int64_t us = 0;

    static Latency from_ms(double ms);
    double ms() const noexcept { return static_cast<double>(us) / 1000.0; }

    friend Latency operator+(Latency a, Latency b) noexcept { return {a.us + b.us}; }
    Latency& operator+=(Latency o) noexcept { us += o.us; return *this; }
    friend auto operator<=>(const Latency&, const Latency&) = default;
};

/// Bandwidth in kbit/s. Wire formats use Mbps.
struct Bandwidth
{
    std::int64_t kbps = 0;

    static Bandwidth from_mbps(double mbps);
    double mbps() const noexcept { return static_cast<double>(kbps) / 1000.0; }

    friend Bandwidth operator+(Bandwidth a, Bandwidth b) noexcept { return {a.kbps + b.kbps}; }
    friend Bandwidth operator-(Bandwidth a, Bandwidth b) noexcept { return {a.kbps - b.kbps}; }
    Bandwidth& operator+=(Bandwidth o) noexcept { kbps += o.kbps; return *this; }
    Bandwidth& operator-=(Bandwidth o) noexcept { kbps -= o.kbps; return *this; }
    friend auto operator<=>(const Bandwidth&, const Bandwidth&) = default;
};

/// CPU in millicores, memory in MiB.
struct ComputeCapacity
{
    std::int64_t cpu = 0;
    std::int64_t memory = 0;

    friend ComputeCapacity operator+(ComputeCapacity a, ComputeCapacity b) noexcept
    {
        return {a.cpu + b.cpu, a.memory + b.memory};
    }
    friend ComputeCapacity operator-(ComputeCapacity a, ComputeCapacity b) noexcept
    {
        return {a.cpu - b.cpu, a.memory - b.memory};
    }
    ComputeCapacity& operator+=(ComputeCapacity o) noexcept { cpu += o.cpu; memory += o.memory; return *this; }
    ComputeCapacity& operator-=(ComputeCapacity o) noexcept { cpu -= o.cpu; memory -= o.memory; return *this; }
    friend bool operator==(const ComputeCapacity&, const ComputeCapacity&) = default;

    /// Componentwise <=.
    bool fits_within(const ComputeCapacity& o) const noexcept { return cpu <= o.cpu && memory <= o.memory; }
    bool non_negative() const noexcept { return cpu >= 0 && memory >= 0; }
};

enum class NodeKind { ComputeWorker, ComputeMaster, VirtualSwitch, PhysicalSwitch, CoreNetworkAnchor };

struct TopologyNode
{
    NodeId id;
    NodeKind kind = NodeKind::ComputeWorker;

    bool is_compute() const noexcept { return kind == NodeKind::ComputeWorker || kind == NodeKind::ComputeMaster; }
    friend bool operator==(const TopologyNode&, const TopologyNode&) = default;
};

struct Link
{
    LinkId id;
    NodeId a;
    NodeId b;
    Latency latency;
    Bandwidth capacity;
    Bandwidth residual;

    bool touches(const NodeId& n) const noexcept { return a == n || b == n; }
    const NodeId& other(const NodeId& n) const noexcept { return a == n ? b : a; }
    friend bool operator==(const Link&, const Link&) = default;
};

/// Undirected crosshaul graph. Node and link order is the load order.
struct CrosshaulTopology
{
    std::vector<TopologyNode> nodes;
    std::vector<Link> links;

    const TopologyNode* find_node(std::string_view id) const noexcept;
    const Link* find_link(std::string_view id) const noexcept;
    const Link* link_between(std::string_view x, std::string_view y) const noexcept;

    /// Worker ids sorted by id.
    std::vector<NodeId> workers() const;
    /// Worker and master ids sorted by id.
    std::vector<NodeId> compute_nodes() const;
    /// The single CN anchor; throws ValidationError when absent or ambiguous.
    const NodeId& cn_anchor() const;

    friend bool operator==(const CrosshaulTopology&, const CrosshaulTopology&) = default;
};

enum class SplitOption { O2, O6 };

struct SegmentRequirement
{
    Latency max_latency;
    Bandwidth bitrate;
    friend bool operator==(const SegmentRequirement&, const SegmentRequirement&) = default;
};

struct SplitProfile
{
    SegmentRequirement fronthaul_o6;
    SegmentRequirement midhaul_o2;
    SegmentRequirement backhaul_cn;
    friend bool operator==(const SplitProfile&, const SplitProfile&) = default;
};

enum class RanFunction { vRU = 0, vDU = 1, vCU = 2 };
inline constexpr std::array<RanFunction, 3> kRanFunctions{RanFunction::vRU, RanFunction::vDU, RanFunction::vCU};

struct CnfSpec
{
    RanFunction function = RanFunction::vRU;
    ComputeCapacity demand;
    std::string image_ref;
    friend bool operator==(const CnfSpec&, const CnfSpec&) = default;
};

/// One CnfSpec per radio function, indexed by RanFunction.
struct CnfSpecSet
{
    std::array<CnfSpec, 3> specs;

    const CnfSpec& of(RanFunction f) const noexcept { return specs[static_cast<std::size_t>(f)]; }
    CnfSpec& of(RanFunction f) noexcept { return specs[static_cast<std::size_t>(f)]; }
    friend bool operator==(const CnfSpecSet&, const CnfSpecSet&) = default;
};

struct Chain
{
    std::string chain_id;
    NodeId vru_node;
    friend bool operator==(const Chain&, const Chain&) = default;
};

struct Route
{
    std::vector<LinkId> links;
    std::vector<NodeId> nodes; // src .. dst
    Latency latency;

    std::size_t hops() const noexcept { return links.size(); }
    friend bool operator==(const Route&, const Route&) = default;
};

struct ChainPlacement
{
    std::string chain_id;
    NodeId vru_node;
    NodeId vdu_node;
    NodeId vcu_node;
    std::vector<LinkId> fronthaul_path;
    std::vector<LinkId> midhaul_path;
    std::vector<LinkId> backhaul_path;
    /// Splits whose two sides run on different nodes.
    std::set<SplitOption> splits_used;

    friend bool operator==(const ChainPlacement&, const ChainPlacement&) = default;
};

enum class ScenarioKind { FullySplit, CuDuColocated, CRan_DuRuIntegrated, DRan_Monolithic };

struct ValidationReport
{
    std::vector<std::string> violations;
    bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate_topology(const CrosshaulTopology& topology);
ValidationReport validate_split_profile(const SplitProfile& profile);
ValidationReport validate_cnf_specs(const CnfSpecSet& specs);

/// Minimum-latency route. Ties go to fewer hops, then to the lexicographically
/// smallest node-id sequence. Throws UnknownNode or NoPath.
Route min_latency_path(const CrosshaulTopology& topology, const NodeId& src, const NodeId& dst);

ScenarioKind classify_scenario(const ChainPlacement& p) noexcept;

std::set<SplitOption> splits_for(const NodeId& vru, const NodeId& vdu, const NodeId& vcu);

std::string_view to_string(NodeKind k) noexcept;
std::string_view to_string(SplitOption s) noexcept;
std::string_view to_string(RanFunction f) noexcept;
std::string_view to_string(ScenarioKind k) noexcept;
std::optional<NodeKind> node_kind_from_string(std::string_view s) noexcept;
std::optional<SplitOption> split_option_from_string(std::string_view s) noexcept;
std::optional<RanFunction> ran_function_from_string(std::string_view s) noexcept;
std::optional<ScenarioKind> scenario_kind_from_string(std::string_view s) noexcept;

} // namespace oplaceran

#endif // OPLACERAN_DOMAIN_HPP
