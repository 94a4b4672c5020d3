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

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

namespace oplaceran::testing {

std::filesystem::path fixtures_dir()
{
    return OPLACERAN_FIXTURES_DIR;
}

std::filesystem::path golden_dir()
{
    return OPLACERAN_GOLDEN_DIR;
}

Scenario load_fixture(const std::string& name)
{
    return load_scenario_file(fixtures_dir() / name);
}

namespace {

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items)
{
    std::uniform_int_distribution<std::size_t> d(0, items.size() - 1);
    return items[d(rng)];
}

int uniform(Rng& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(Rng& rng, double p)
{
    return std::bernoulli_distribution(p)(rng);
}

Link make_link(const NodeId& a, const NodeId& b, double latency_ms, double mbps)
{
    Link l;
    l.id = a + "-" + b;
    l.a = a;
    l.b = b;
    l.latency = Latency::from_ms(latency_ms);
    l.capacity = Bandwidth::from_mbps(mbps);
    l.residual = l.capacity;
    return l;
}

} // namespace

Scenario random_scenario(Rng& rng, const RandomScenarioOptions& options)
{
    Scenario s;
    const int workers = uniform(rng, options.min_workers, options.max_workers);
    const int switches = uniform(rng, 1, 2);
    auto& topo = s.topology;

    std::vector<NodeId> worker_ids;
    for (int i = 1; i <= workers; ++i) {
        worker_ids.push_back("W" + std::to_string(i));
        topo.nodes.push_back({worker_ids.back(), NodeKind::ComputeWorker});
    }
    std::vector<NodeId> switch_ids;
    for (int i = 1; i <= switches; ++i) {
        switch_ids.push_back("S" + std::to_string(i));
        topo.nodes.push_back({switch_ids.back(), i == 1 ? NodeKind::PhysicalSwitch : NodeKind::VirtualSwitch});
    }
    topo.nodes.push_back({"CN", NodeKind::CoreNetworkAnchor});
    const bool master = chance(rng, 0.3);
    if (master) {
        topo.nodes.push_back({"M1", NodeKind::ComputeMaster});
    }

    const std::vector<double> access_latency{0.0, 0.5, 1.0, 1.5, 2.0};
    const std::vector<double> access_capacity{300, 500, 1000, 10000};
    for (const auto& w : worker_ids) {
        auto l = make_link(w, pick(rng, switch_ids), pick(rng, access_latency), pick(rng, access_capacity));
        if (chance(rng, 0.2)) {
            l.residual = Bandwidth{l.capacity.kbps / 2};
        }
        topo.links.push_back(l);
    }
    if (switches == 2) {
        topo.links.push_back(make_link("S1", "S2", pick(rng, std::vector<double>{0.0, 0.5, 1.0}),
                                       pick(rng, std::vector<double>{1000, 10000})));
    }
    topo.links.push_back(make_link(pick(rng, switch_ids), "CN", pick(rng, std::vector<double>{0.0, 1.0, 2.0}),
                                   pick(rng, std::vector<double>{600, 1000, 10000})));
    if (master) {
        topo.links.push_back(make_link("M1", pick(rng, switch_ids), 1.0, 10000));
    }
    for (int i = 0; i < workers; ++i) {
        for (int j = i + 1; j < workers; ++j) {
            if (chance(rng, 0.25)) {
                topo.links.push_back(make_link(worker_ids[i], worker_ids[j],
                                               pick(rng, std::vector<double>{0.5, 1.0, 2.0}),
                                               pick(rng, std::vector<double>{300, 1000})));
            }
        }
    }

    for (const auto& w : worker_ids) {
        NfviResourceEntry e;
        e.node = w;
        e.capacity = {250 * uniform(rng, 4, 20), 100 * uniform(rng, 2, 20)};
        if (chance(rng, 0.25)) {
            e.allocated = {250 * uniform(rng, 0, 2), 50 * uniform(rng, 0, 2)};
            e.allocated.cpu = std::min(e.allocated.cpu, e.capacity.cpu);
            e.allocated.memory = std::min(e.allocated.memory, e.capacity.memory);
        }
        s.nfvi.push_back(e);
    }
    if (master) {
        s.nfvi.push_back({"M1", {2000, 4000}, {}, 0});
    }

    auto pins = worker_ids;
    std::shuffle(pins.begin(), pins.end(), rng);
    const int chains = std::min(uniform(rng, options.min_chains, options.max_chains), workers);
    for (int i = 0; i < chains; ++i) {
        s.chains.push_back({"c" + std::to_string(i + 1), pins[static_cast<std::size_t>(i)]});
    }

    s.split_profile = default_split_profile();
    const double fh = pick(rng, std::vector<double>{0.5, 1.0, 2.0, 3.0});
    const double mh = fh + pick(rng, std::vector<double>{0.0, 1.0, 3.0, 8.0});
    const double bh = mh + pick(rng, std::vector<double>{0.0, 2.0, 20.0});
    s.split_profile.fronthaul_o6.max_latency = Latency::from_ms(fh);
    s.split_profile.midhaul_o2.max_latency = Latency::from_ms(mh);
    s.split_profile.backhaul_cn.max_latency = Latency::from_ms(bh);
    s.cnf_specs = default_cnf_specs();
    s.solver = "aggregation-max";
    return s;
}

namespace {

std::map<NodeId, std::vector<const Link*>> adjacency(const CrosshaulTopology& topology)
{
    std::map<NodeId, std::vector<const Link*>> adj;
    for (const auto& l : topology.links) {
        adj[l.a].push_back(&l);
        adj[l.b].push_back(&l);
    }
    return adj;
}

} // namespace

std::optional<Route> brute_force_path(const CrosshaulTopology& topology, const NodeId& src, const NodeId& dst)
{
    const auto adj = adjacency(topology);
    std::optional<Route> best;
    std::vector<NodeId> nodes{src};
    std::vector<LinkId> links;
    std::set<NodeId> on_path{src};

    auto key = [](const Route& r) { return std::make_tuple(r.latency.us, r.links.size(), r.nodes); };

    std::function<void(const NodeId&, Latency)> dfs = [&](const NodeId& at, Latency latency) {
        if (at == dst) {
            Route r{links, nodes, latency};
            if (!best || key(r) < key(*best)) {
                best = r;
            }
            return;
        }
        auto it = adj.find(at);
        if (it == adj.end()) {
            return;
        }
        for (const Link* l : it->second) {
            const NodeId next = l->a == at ? l->b : l->a;
            if (on_path.count(next) != 0) {
                continue;
            }
            on_path.insert(next);
            nodes.push_back(next);
            links.push_back(l->id);
            dfs(next, latency + l->latency);
            links.pop_back();
            nodes.pop_back();
            on_path.erase(next);
        }
    };
    dfs(src, Latency{});
    return best;
}

std::vector<LinkId> random_simple_path(const CrosshaulTopology& topology, const NodeId& src, const NodeId& dst,
                                       Rng& rng)
{
    const auto adj = adjacency(topology);
    std::vector<LinkId> links;
    std::set<NodeId> on_path{src};
    std::function<bool(const NodeId&)> dfs = [&](const NodeId& at) {
        if (at == dst) {
            return true;
        }
        auto it = adj.find(at);
        if (it == adj.end()) {
            return false;
        }
        auto options = it->second;
        std::shuffle(options.begin(), options.end(), rng);
        for (const Link* l : options) {
            const NodeId next = l->a == at ? l->b : l->a;
            if (on_path.count(next) != 0) {
                continue;
            }
            on_path.insert(next);
            links.push_back(l->id);
            if (dfs(next)) {
                return true;
            }
            links.pop_back();
        }
        return false;
    };
    dfs(src);
    return links;
}

ReferenceVerdict straight_line_check(const std::vector<ChainPlacement>& placements, const PlacementRequest& request)
{
    ReferenceVerdict verdict;
    std::map<LinkId, const Link*> links;
    for (const auto& l : request.topology.links) {
        links[l.id] = &l;
    }

    std::map<LinkId, std::int64_t> kbps;
    std::map<NodeId, std::int64_t> cpu;
    std::map<NodeId, std::int64_t> mem;
    const auto& sp = request.split_profile;
    for (const auto& p : placements) {
        std::int64_t fh = 0;
        std::int64_t mh = 0;
        std::int64_t bh = 0;
        for (const auto& id : p.fronthaul_path) {
            fh += links.at(id)->latency.us;
            kbps[id] += sp.fronthaul_o6.bitrate.kbps;
        }
        for (const auto& id : p.midhaul_path) {
            mh += links.at(id)->latency.us;
            kbps[id] += sp.midhaul_o2.bitrate.kbps;
        }
        for (const auto& id : p.backhaul_path) {
            bh += links.at(id)->latency.us;
            kbps[id] += sp.backhaul_cn.bitrate.kbps;
        }
        if (fh > sp.fronthaul_o6.max_latency.us || mh > sp.midhaul_o2.max_latency.us ||
            bh > sp.backhaul_cn.max_latency.us) {
            verdict.violations.insert({ViolationKind::Latency, p.chain_id});
        }
        const std::pair<const NodeId*, RanFunction> hosted[] = {
            {&p.vru_node, RanFunction::vRU}, {&p.vdu_node, RanFunction::vDU}, {&p.vcu_node, RanFunction::vCU}};
        for (const auto& [node, f] : hosted) {
            cpu[*node] += request.cnf_specs.of(f).demand.cpu;
            mem[*node] += request.cnf_specs.of(f).demand.memory;
        }
    }
    for (const auto& [id, used] : kbps) {
        if (used > links.at(id)->residual.kbps) {
            verdict.violations.insert({ViolationKind::Bandwidth, id});
        }
    }
    for (const auto& [node, used] : cpu) {
        std::int64_t free_cpu = 0;
        std::int64_t free_mem = 0;
        for (const auto& e : request.nfvi) {
            if (e.node == node) {
                free_cpu = e.capacity.cpu - e.allocated.cpu;
                free_mem = e.capacity.memory - e.allocated.memory;
            }
        }
        if (used > free_cpu || mem[node] > free_mem) {
            verdict.violations.insert({ViolationKind::Compute, node});
        }
    }
    return verdict;
}

Route reference_route(const CrosshaulTopology& topology, const NodeId& a, const NodeId& b)
{
    if (b < a) {
        auto r = *brute_force_path(topology, b, a);
        std::reverse(r.links.begin(), r.links.end());
        std::reverse(r.nodes.begin(), r.nodes.end());
        return r;
    }
    return *brute_force_path(topology, a, b);
}

ObjectiveValue reference_objective(const std::vector<ChainPlacement>& placements, const PlacementRequest& request,
                                   ObjectiveKind kind)
{
    std::map<LinkId, std::int64_t> latency;
    for (const auto& l : request.topology.links) {
        latency[l.id] = l.latency.us;
    }
    ObjectiveValue v;
    std::set<NodeId> hosts;
    std::set<NodeId> cu_hosts;
    std::int64_t total_us = 0;
    for (const auto& p : placements) {
        hosts.insert(p.vdu_node);
        hosts.insert(p.vcu_node);
        cu_hosts.insert(p.vcu_node);
        v.cn_distance += static_cast<int>(p.backhaul_path.size());
        for (const auto* path : {&p.fronthaul_path, &p.midhaul_path, &p.backhaul_path}) {
            for (const auto& id : *path) {
                total_us += latency.at(id);
            }
        }
    }
    v.cr_count = static_cast<int>(hosts.size());
    if (kind == ObjectiveKind::DuPinned) {
        v.cost_milli = 100 * 1000 * static_cast<std::int64_t>(cu_hosts.size()) + total_us;
    }
    return v;
}

std::vector<ChainPlacement> route_assignment(const PlacementRequest& request,
                                             const std::vector<std::pair<NodeId, NodeId>>& hosts)
{
    NodeId cn;
    for (const auto& n : request.topology.nodes) {
        if (n.kind == NodeKind::CoreNetworkAnchor) {
            cn = n.id;
        }
    }
    std::vector<ChainPlacement> out;
    for (std::size_t i = 0; i < request.chains.size(); ++i) {
        ChainPlacement p;
        p.chain_id = request.chains[i].chain_id;
        p.vru_node = request.chains[i].vru_node;
        p.vdu_node = hosts[i].first;
        p.vcu_node = hosts[i].second;
        p.fronthaul_path = reference_route(request.topology, p.vru_node, p.vdu_node).links;
        p.midhaul_path = reference_route(request.topology, p.vdu_node, p.vcu_node).links;
        p.backhaul_path = brute_force_path(request.topology, p.vcu_node, cn)->links;
        out.push_back(std::move(p));
    }
    return out;
}

std::optional<ObjectiveValue> reference_optimum(const PlacementRequest& request, ObjectiveKind kind)
{
    std::vector<NodeId> workers;
    for (const auto& n : request.topology.nodes) {
        if (n.kind == NodeKind::ComputeWorker) {
            workers.push_back(n.id);
        }
    }
    std::sort(workers.begin(), workers.end());
    const std::size_t chains = request.chains.size();

    // Every per-chain option, already routed; the enumeration then only
    // concatenates options.
    std::vector<std::vector<ChainPlacement>> options(chains);
    for (std::size_t i = 0; i < chains; ++i) {
        for (const auto& d : workers) {
            if (kind == ObjectiveKind::DuPinned && d != request.chains[i].vru_node) {
                continue;
            }
            for (const auto& c : workers) {
                PlacementRequest single = request;
                single.chains = {request.chains[i]};
                options[i].push_back(route_assignment(single, {{d, c}}).front());
            }
        }
    }

    std::optional<ObjectiveValue> best;
    std::vector<std::size_t> digit(chains, 0);
    std::vector<ChainPlacement> current(chains);
    while (true) {
        for (std::size_t i = 0; i < chains; ++i) {
            current[i] = options[i][digit[i]];
        }
        if (straight_line_check(current, request).feasible()) {
            const auto v = reference_objective(current, request, kind);
            const bool better =
                !best || (kind == ObjectiveKind::DuPinned
                              ? v.cost_milli < best->cost_milli
                              : std::tie(v.cr_count, v.cn_distance) < std::tie(best->cr_count, best->cn_distance));
            if (better) {
                best = v;
            }
        }
        std::size_t i = chains;
        while (i > 0) {
            --i;
            if (++digit[i] < options[i].size()) {
                break;
            }
            digit[i] = 0;
            if (i == 0) {
                return best;
            }
        }
        if (chains == 0) {
            return best;
        }
    }
}

} // namespace oplaceran::testing
