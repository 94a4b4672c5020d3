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

#include <oplaceran/domain.hpp>
#include <oplaceran/errors.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace oplaceran {

Latency Latency::from_ms(double ms)
{
    return {static_cast<std::int64_t>(std::llround(ms * 1000.0))};
}

Bandwidth Bandwidth::from_mbps(double mbps)
{
    return {static_cast<std::int64_t>(std::llround(mbps * 1000.0))};
}

const TopologyNode* CrosshaulTopology::find_node(std::string_view id) const noexcept
{
    for (const auto& n : nodes) {
        if (n.id == id) {
            return &n;
        }
    }
    return nullptr;
}

const Link* CrosshaulTopology::find_link(std::string_view id) const noexcept
{
    for (const auto& l : links) {
        if (l.id == id) {
            return &l;
        }
    }
    return nullptr;
}

const Link* CrosshaulTopology::link_between(std::string_view x, std::string_view y) const noexcept
{
    for (const auto& l : links) {
        if ((l.a == x && l.b == y) || (l.a == y && l.b == x)) {
            return &l;
        }
    }
    return nullptr;
}

std::vector<NodeId> CrosshaulTopology::workers() const
{
    std::vector<NodeId> out;
    for (const auto& n : nodes) {
        if (n.kind == NodeKind::ComputeWorker) {
            out.push_back(n.id);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<NodeId> CrosshaulTopology::compute_nodes() const
{
    std::vector<NodeId> out;
    for (const auto& n : nodes) {
        if (n.is_compute()) {
            out.push_back(n.id);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

const NodeId& CrosshaulTopology::cn_anchor() const
{
    const TopologyNode* found = nullptr;
    for (const auto& n : nodes) {
        if (n.kind == NodeKind::CoreNetworkAnchor) {
            if (found != nullptr) {
                throw ValidationError("invalid topology", {"multiple CN anchors"});
            }
            found = &n;
        }
    }
    if (found == nullptr) {
        throw ValidationError("invalid topology", {"missing CN anchor"});
    }
    return found->id;
}

ValidationReport validate_topology(const CrosshaulTopology& topology)
{
    ValidationReport report;
    auto& v = report.violations;

    std::unordered_set<std::string> node_ids;
    std::size_t anchors = 0;
    for (const auto& n : topology.nodes) {
        if (n.id.empty()) {
            v.push_back("node with empty id");
        } else if (!node_ids.insert(n.id).second) {
            v.push_back("duplicate node id " + n.id);
        }
        if (n.kind == NodeKind::CoreNetworkAnchor) {
            ++anchors;
        }
    }
    if (anchors == 0) {
        v.push_back("missing CN anchor");
    } else if (anchors > 1) {
        v.push_back("multiple CN anchors");
    }

    std::unordered_set<std::string> link_ids;
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& l : topology.links) {
        if (l.id.empty()) {
            v.push_back("link with empty id");
        } else if (!link_ids.insert(l.id).second) {
            v.push_back("duplicate link id " + l.id);
        }
        for (const auto* end : {&l.a, &l.b}) {
            if (node_ids.count(*end) == 0) {
                v.push_back("link " + l.id + " references unknown node " + *end);
            }
        }
        if (l.a == l.b) {
            v.push_back("link " + l.id + " is a self-loop on " + l.a);
        }
        auto key = std::minmax(l.a, l.b);
        if (!pairs.insert({key.first, key.second}).second) {
            v.push_back("link " + l.id + " duplicates node pair " + key.first + "-" + key.second);
        }
        if (l.latency.us < 0) {
            v.push_back("link " + l.id + " has negative latency");
        }
        if (l.capacity.kbps <= 0) {
            v.push_back("link " + l.id + " has non-positive capacity");
        }
        if (l.residual.kbps < 0 || l.residual > l.capacity) {
            v.push_back("link " + l.id + " residual outside [0, capacity]");
        }
    }

    if (anchors == 1 && !topology.nodes.empty()) {
        const NodeId& cn = topology.cn_anchor();
        std::unordered_map<std::string, std::vector<std::string>> adj;
        for (const auto& l : topology.links) {
            adj[l.a].push_back(l.b);
            adj[l.b].push_back(l.a);
        }
        std::unordered_set<std::string> seen{cn};
        std::vector<std::string> stack{cn};
        while (!stack.empty()) {
            auto cur = stack.back();
            stack.pop_back();
            for (const auto& nb : adj[cur]) {
                if (seen.insert(nb).second) {
                    stack.push_back(nb);
                }
            }
        }
        for (const auto& n : topology.nodes) {
            if (seen.count(n.id) == 0) {
                v.push_back("disconnected: node " + n.id + " unreachable from CN anchor " + cn);
            }
        }
    }
    return report;
}

ValidationReport validate_split_profile(const SplitProfile& p)
{
    ValidationReport report;
    auto& v = report.violations;
    const std::pair<const char*, const SegmentRequirement*> segments[] = {
        {"fronthaul_o6", &p.fronthaul_o6}, {"midhaul_o2", &p.midhaul_o2}, {"backhaul_cn", &p.backhaul_cn}};
    for (const auto& [name, seg] : segments) {
        if (seg->max_latency.us <= 0) {
            v.push_back(std::string(name) + " max_latency must be positive");
        }
        if (seg->bitrate.kbps <= 0) {
            v.push_back(std::string(name) + " bitrate must be positive");
        }
    }
    if (p.fronthaul_o6.max_latency > p.midhaul_o2.max_latency) {
        v.push_back("fronthaul_o6 max_latency exceeds midhaul_o2 max_latency");
    }
    if (p.midhaul_o2.max_latency > p.backhaul_cn.max_latency) {
        v.push_back("midhaul_o2 max_latency exceeds backhaul_cn max_latency");
    }
    return report;
}

ValidationReport validate_cnf_specs(const CnfSpecSet& specs)
{
    ValidationReport report;
    for (auto f : kRanFunctions) {
        const auto& s = specs.of(f);
        if (s.function != f) {
            report.violations.push_back("cnf spec slot " + std::string(to_string(f)) + " holds " +
                                        std::string(to_string(s.function)));
        }
        if (s.demand.cpu <= 0 || s.demand.memory <= 0) {
            report.violations.push_back(std::string(to_string(f)) + " demands must be positive");
        }
    }
    return report;
}

namespace {

struct Label
{
    Latency latency;
    std::size_t hops = 0;
    std::vector<NodeId> nodes;

    bool operator<(const Label& o) const
    {
        if (latency != o.latency) {
            return latency < o.latency;
        }
        if (hops != o.hops) {
            return hops < o.hops;
        }
        return nodes < o.nodes;
    }
};

} // namespace

Route min_latency_path(const CrosshaulTopology& topology, const NodeId& src, const NodeId& dst)
{
    if (topology.find_node(src) == nullptr) {
        throw UnknownNode("unknown node " + src);
    }
    if (topology.find_node(dst) == nullptr) {
        throw UnknownNode("unknown node " + dst);
    }
    if (src == dst) {
        return Route{{}, {src}, {}};
    }

    std::unordered_map<std::string, std::vector<const Link*>> adj;
    for (const auto& l : topology.links) {
        adj[l.a].push_back(&l);
        adj[l.b].push_back(&l);
    }

    // Label-setting search on (latency, hops, node sequence). The order is
    // preserved under extension, so the first settled label for dst is optimal.
    std::map<NodeId, Label> best;
    std::unordered_set<NodeId> settled;
    best[src] = Label{{}, 0, {src}};
    while (true) {
        const NodeId* pick = nullptr;
        for (const auto& [id, label] : best) {
            if (settled.count(id) != 0) {
                continue;
            }
            if (pick == nullptr || label < best[*pick]) {
                pick = &id;
            }
        }
        if (pick == nullptr) {
            throw NoPath("no path from " + src + " to " + dst);
        }
        const NodeId cur = *pick;
        settled.insert(cur);
        const Label here = best[cur];
        if (cur == dst) {
            Route r;
            r.nodes = here.nodes;
            r.latency = here.latency;
            for (std::size_t i = 0; i + 1 < r.nodes.size(); ++i) {
                r.links.push_back(topology.link_between(r.nodes[i], r.nodes[i + 1])->id);
            }
            return r;
        }
        for (const Link* l : adj[cur]) {
            const NodeId& nb = l->other(cur);
            if (settled.count(nb) != 0) {
                continue;
            }
            Label cand{here.latency + l->latency, here.hops + 1, here.nodes};
            cand.nodes.push_back(nb);
            auto it = best.find(nb);
            if (it == best.end() || cand < it->second) {
                best[nb] = std::move(cand);
            }
        }
    }
}

ScenarioKind classify_scenario(const ChainPlacement& p) noexcept
{
    const bool ru_du = p.vru_node == p.vdu_node;
    const bool du_cu = p.vdu_node == p.vcu_node;
    if (ru_du && du_cu) {
        return ScenarioKind::DRan_Monolithic;
    }
    if (ru_du) {
        return ScenarioKind::CRan_DuRuIntegrated;
    }
    if (du_cu) {
        return ScenarioKind::CuDuColocated;
    }
    // vRU == vCU with a remote vDU has no named deployment; it is still three
    // separately hosted hops, so it counts as fully split.
    return ScenarioKind::FullySplit;
}

std::set<SplitOption> splits_for(const NodeId& vru, const NodeId& vdu, const NodeId& vcu)
{
    std::set<SplitOption> out;
    if (vru != vdu) {
        out.insert(SplitOption::O6);
    }
    if (vdu != vcu) {
        out.insert(SplitOption::O2);
    }
    return out;
}

std::string_view to_string(NodeKind k) noexcept
{
    switch (k) {
    case NodeKind::ComputeWorker: return "ComputeWorker";
    case NodeKind::ComputeMaster: return "ComputeMaster";
    case NodeKind::VirtualSwitch: return "VirtualSwitch";
    case NodeKind::PhysicalSwitch: return "PhysicalSwitch";
    case NodeKind::CoreNetworkAnchor: return "CoreNetworkAnchor";
    }
    return "?";
}

std::string_view to_string(SplitOption s) noexcept
{
    return s == SplitOption::O2 ? "O2" : "O6";
}

std::string_view to_string(RanFunction f) noexcept
{
    switch (f) {
    case RanFunction::vRU: return "vRU";
    case RanFunction::vDU: return "vDU";
    case RanFunction::vCU: return "vCU";
    }
    return "?";
}

std::string_view to_string(ScenarioKind k) noexcept
{
    switch (k) {
    case ScenarioKind::FullySplit: return "FullySplit";
    case ScenarioKind::CuDuColocated: return "CuDuColocated";
    case ScenarioKind::CRan_DuRuIntegrated: return "CRan_DuRuIntegrated";
    case ScenarioKind::DRan_Monolithic: return "DRan_Monolithic";
    }
    return "?";
}

std::optional<NodeKind> node_kind_from_string(std::string_view s) noexcept
{
    for (auto k : {NodeKind::ComputeWorker, NodeKind::ComputeMaster, NodeKind::VirtualSwitch,
                   NodeKind::PhysicalSwitch, NodeKind::CoreNetworkAnchor}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    return std::nullopt;
}

std::optional<SplitOption> split_option_from_string(std::string_view s) noexcept
{
    if (s == "O2") {
        return SplitOption::O2;
    }
    if (s == "O6") {
        return SplitOption::O6;
    }
    return std::nullopt;
}

std::optional<RanFunction> ran_function_from_string(std::string_view s) noexcept
{
    for (auto f : kRanFunctions) {
        if (to_string(f) == s) {
            return f;
        }
    }
    return std::nullopt;
}

std::optional<ScenarioKind> scenario_kind_from_string(std::string_view s) noexcept
{
    for (auto k : {ScenarioKind::FullySplit, ScenarioKind::CuDuColocated, ScenarioKind::CRan_DuRuIntegrated,
                   ScenarioKind::DRan_Monolithic}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    return std::nullopt;
}

} // namespace oplaceran
