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

#include <cmath>
#include <unordered_set>

namespace oplaceran {

namespace {

template <class E, class Parse>
E enum_from(const json& j, Parse parse, const char* what)
{
    const auto s = j.get<std::string>();
    const auto v = parse(s);
    if (!v) {
        throw ParseError(std::string("unknown ") + what + " '" + s + "'");
    }
    return *v;
}

template <class T>
void optional_field(const json& j, const char* key, T& out)
{
    auto it = j.find(key);
    if (it != j.end() && !it->is_null()) {
        out = it->get<T>();
    }
}

template <class T>
void optional_field(const json& j, const char* key, std::optional<T>& out)
{
    auto it = j.find(key);
    if (it != j.end() && !it->is_null()) {
        out = it->get<T>();
    } else {
        out.reset();
    }
}

template <class T>
void put_optional(json& j, const char* key, const std::optional<T>& v)
{
    if (v) {
        j[key] = *v;
    }
}

Latency latency_from(const json& j) { return Latency::from_ms(j.get<double>()); }
Bandwidth bandwidth_from(const json& j) { return Bandwidth::from_mbps(j.get<double>()); }
SimTime sim_from(const json& j) { return SimTime::seconds(j.get<double>()); }

json link_map(const std::map<LinkId, Bandwidth>& m)
{
    json j = json::object();
    for (const auto& [id, bw] : m) {
        j[id] = bw.mbps();
    }
    return j;
}

std::map<LinkId, Bandwidth> link_map_from(const json& j)
{
    std::map<LinkId, Bandwidth> m;
    for (auto it = j.begin(); it != j.end(); ++it) {
        m[it.key()] = bandwidth_from(it.value());
    }
    return m;
}

} // namespace

void to_json(json& j, const TopologyNode& v)
{
    j = json{{"id", v.id}, {"kind", to_string(v.kind)}};
}

void from_json(const json& j, TopologyNode& v)
{
    v.id = j.at("id").get<std::string>();
    v.kind = enum_from<NodeKind>(j.at("kind"), node_kind_from_string, "node kind");
}

void to_json(json& j, const Link& v)
{
    j = json{{"id", v.id},
             {"endpoints", {v.a, v.b}},
             {"latency", v.latency.ms()},
             {"capacity", v.capacity.mbps()},
             {"residual", v.residual.mbps()}};
}

void from_json(const json& j, Link& v)
{
    v.id = j.at("id").get<std::string>();
    const auto& ends = j.at("endpoints");
    if (!ends.is_array() || ends.size() != 2) {
        throw ParseError("link " + v.id + ": endpoints must list two node ids");
    }
    v.a = ends[0].get<std::string>();
    v.b = ends[1].get<std::string>();
    v.latency = latency_from(j.at("latency"));
    v.capacity = bandwidth_from(j.at("capacity"));
    v.residual = j.contains("residual") ? bandwidth_from(j.at("residual")) : v.capacity;
}

void to_json(json& j, const CrosshaulTopology& v)
{
    j = json{{"nodes", v.nodes}, {"links", v.links}};
}

void from_json(const json& j, CrosshaulTopology& v)
{
    v.nodes = j.at("nodes").get<std::vector<TopologyNode>>();
    v.links = j.value("links", json::array()).get<std::vector<Link>>();
    std::unordered_set<std::string> seen;
    for (const auto& n : v.nodes) {
        if (!seen.insert(n.id).second) {
            throw ParseError("duplicate node id " + n.id);
        }
    }
    seen.clear();
    for (const auto& l : v.links) {
        if (!seen.insert(l.id).second) {
            throw ParseError("duplicate link id " + l.id);
        }
    }
}

void to_json(json& j, const ComputeCapacity& v)
{
    j = json{{"cpu", v.cpu}, {"memory", v.memory}};
}

void from_json(const json& j, ComputeCapacity& v)
{
    v.cpu = j.at("cpu").get<std::int64_t>();
    v.memory = j.at("memory").get<std::int64_t>();
}

void to_json(json& j, const SegmentRequirement& v)
{
    j = json{{"max_latency", v.max_latency.ms()}, {"bitrate", v.bitrate.mbps()}};
}

void from_json(const json& j, SegmentRequirement& v)
{
    v.max_latency = latency_from(j.at("max_latency"));
    v.bitrate = bandwidth_from(j.at("bitrate"));
}

void to_json(json& j, const SplitProfile& v)
{
    j = json{{"fronthaul_o6", v.fronthaul_o6}, {"midhaul_o2", v.midhaul_o2}, {"backhaul_cn", v.backhaul_cn}};
}

void from_json(const json& j, SplitProfile& v)
{
    v.fronthaul_o6 = j.at("fronthaul_o6").get<SegmentRequirement>();
    v.midhaul_o2 = j.at("midhaul_o2").get<SegmentRequirement>();
    v.backhaul_cn = j.at("backhaul_cn").get<SegmentRequirement>();
}

void to_json(json& j, const CnfSpec& v)
{
    j = json{{"function", to_string(v.function)},
             {"cpu_demand", v.demand.cpu},
             {"memory_demand", v.demand.memory},
             {"image_ref", v.image_ref}};
}

void from_json(const json& j, CnfSpec& v)
{
    v.function = enum_from<RanFunction>(j.at("function"), ran_function_from_string, "function");
    v.demand.cpu = j.at("cpu_demand").get<std::int64_t>();
    v.demand.memory = j.at("memory_demand").get<std::int64_t>();
    v.image_ref = j.value("image_ref", std::string{});
}

void to_json(json& j, const CnfSpecSet& v)
{
    j = json::array();
    for (const auto& s : v.specs) {
        j.push_back(s);
    }
}

void from_json(const json& j, CnfSpecSet& v)
{
    bool seen[3] = {false, false, false};
    for (const auto& item : j) {
        auto spec = item.get<CnfSpec>();
        const auto idx = static_cast<std::size_t>(spec.function);
        if (seen[idx]) {
            throw ParseError("duplicate cnf spec for " + std::string(to_string(spec.function)));
        }
        seen[idx] = true;
        v.specs[idx] = std::move(spec);
    }
    for (auto f : kRanFunctions) {
        if (!seen[static_cast<std::size_t>(f)]) {
            throw ParseError("missing cnf spec for " + std::string(to_string(f)));
        }
    }
}

void to_json(json& j, const Chain& v)
{
    j = json{{"chain_id", v.chain_id}, {"vru_node", v.vru_node}};
}

void from_json(const json& j, Chain& v)
{
    v.chain_id = j.at("chain_id").get<std::string>();
    v.vru_node = j.at("vru_node").get<std::string>();
}

void to_json(json& j, const ChainPlacement& v)
{
    json splits = json::array();
    for (auto s : v.splits_used) {
        splits.push_back(to_string(s));
    }
    j = json{{"chain_id", v.chain_id},       {"vru_node", v.vru_node},           {"vdu_node", v.vdu_node},
             {"vcu_node", v.vcu_node},       {"fronthaul_path", v.fronthaul_path}, {"midhaul_path", v.midhaul_path},
             {"backhaul_path", v.backhaul_path}, {"splits_used", splits}};
}

void from_json(const json& j, ChainPlacement& v)
{
    v.chain_id = j.at("chain_id").get<std::string>();
    v.vru_node = j.at("vru_node").get<std::string>();
    v.vdu_node = j.at("vdu_node").get<std::string>();
    v.vcu_node = j.at("vcu_node").get<std::string>();
    v.fronthaul_path = j.value("fronthaul_path", std::vector<LinkId>{});
    v.midhaul_path = j.value("midhaul_path", std::vector<LinkId>{});
    v.backhaul_path = j.value("backhaul_path", std::vector<LinkId>{});
    v.splits_used.clear();
    for (const auto& s : j.value("splits_used", json::array())) {
        v.splits_used.insert(enum_from<SplitOption>(s, split_option_from_string, "split option"));
    }
}

void to_json(json& j, const NfviResourceEntry& v)
{
    j = json{{"node", v.node}, {"capacity", v.capacity}, {"allocated", v.allocated}, {"snapshot_seq", v.snapshot_seq}};
}

void from_json(const json& j, NfviResourceEntry& v)
{
    v.node = j.at("node").get<std::string>();
    v.capacity = j.at("capacity").get<ComputeCapacity>();
    v.allocated = ComputeCapacity{};
    optional_field(j, "allocated", v.allocated);
    v.snapshot_seq = j.value("snapshot_seq", std::uint64_t{0});
}

void to_json(json& j, const SolverDescriptor& v)
{
    j = json{{"solver_id", v.solver_id}, {"kind", to_string(v.kind)}, {"description", v.description}};
}

void from_json(const json& j, SolverDescriptor& v)
{
    v.solver_id = j.at("solver_id").get<std::string>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "Exact") {
        v.kind = SolverKind::Exact;
    } else if (kind == "Heuristic") {
        v.kind = SolverKind::Heuristic;
    } else {
        throw ParseError("unknown solver kind '" + kind + "'");
    }
    v.description = j.value("description", std::string{});
}

void to_json(json& j, const CnfImageEntry& v)
{
    j = json{{"function", to_string(v.function)}, {"image_ref", v.image_ref}, {"spec", v.spec}};
}

void from_json(const json& j, CnfImageEntry& v)
{
    v.function = enum_from<RanFunction>(j.at("function"), ran_function_from_string, "function");
    v.image_ref = j.at("image_ref").get<std::string>();
    v.spec = j.at("spec").get<CnfSpec>();
}

void to_json(json& j, const Scenario& v)
{
    j = json{{"topology", v.topology},       {"nfvi", v.nfvi},         {"chains", v.chains},
             {"split_profile", v.split_profile}, {"cnf_specs", v.cnf_specs}, {"solver", v.solver}};
}

void from_json(const json& j, Scenario& v)
{
    v.topology = j.at("topology").get<CrosshaulTopology>();
    v.nfvi = j.value("nfvi", json::array()).get<std::vector<NfviResourceEntry>>();
    v.chains = j.value("chains", json::array()).get<std::vector<Chain>>();
    v.split_profile = j.contains("split_profile") ? j.at("split_profile").get<SplitProfile>() : default_split_profile();
    v.cnf_specs = j.contains("cnf_specs") ? j.at("cnf_specs").get<CnfSpecSet>() : default_cnf_specs();
    v.solver = j.value("solver", std::string("aggregation-max"));
}

void to_json(json& j, const TopologyInputs& v)
{
    j = json{{"topology", v.topology}, {"split_profile", v.split_profile}};
}

void from_json(const json& j, TopologyInputs& v)
{
    v.topology = j.at("topology").get<CrosshaulTopology>();
    v.split_profile = j.contains("split_profile") ? j.at("split_profile").get<SplitProfile>() : default_split_profile();
}

void to_json(json& j, const NfviSnapshot& v)
{
    j = json{{"seq", v.seq}, {"entries", v.entries}};
}

void from_json(const json& j, NfviSnapshot& v)
{
    v.seq = j.at("seq").get<std::uint64_t>();
    v.entries = j.at("entries").get<std::vector<NfviResourceEntry>>();
}

void to_json(json& j, const PlacementRequest& v)
{
    j = json{{"topology", v.topology},       {"nfvi", v.nfvi},           {"chains", v.chains},
             {"split_profile", v.split_profile}, {"cnf_specs", v.cnf_specs}, {"solver_id", v.solver_id},
             {"nfvi_seq", v.nfvi_seq}};
}

void from_json(const json& j, PlacementRequest& v)
{
    v.topology = j.at("topology").get<CrosshaulTopology>();
    v.nfvi = j.value("nfvi", json::array()).get<std::vector<NfviResourceEntry>>();
    v.chains = j.value("chains", json::array()).get<std::vector<Chain>>();
    v.split_profile = j.contains("split_profile") ? j.at("split_profile").get<SplitProfile>() : default_split_profile();
    v.cnf_specs = j.contains("cnf_specs") ? j.at("cnf_specs").get<CnfSpecSet>() : default_cnf_specs();
    v.solver_id = j.at("solver_id").get<std::string>();
    v.nfvi_seq = j.value("nfvi_seq", std::uint64_t{0});
}

void to_json(json& j, const ObjectiveValue& v)
{
    j = json{{"cr_count", v.cr_count}, {"cn_distance", v.cn_distance}, {"cost", v.cost()}};
}

void from_json(const json& j, ObjectiveValue& v)
{
    v.cr_count = j.at("cr_count").get<int>();
    v.cn_distance = j.at("cn_distance").get<int>();
    v.cost_milli = std::llround(j.value("cost", 0.0) * 1000.0);
}

void to_json(json& j, const PlacementResult& v)
{
    json loads = json::object();
    for (const auto& [id, c] : v.node_loads) {
        loads[id] = c;
    }
    j = json{{"placements", v.placements},
             {"objective", v.objective},
             {"link_reservations", link_map(v.link_reservations)},
             {"node_loads", loads},
             {"solver_id", v.solver_id},
             {"solve_time", v.solve_time}};
}

void from_json(const json& j, PlacementResult& v)
{
    v.placements = j.at("placements").get<std::vector<ChainPlacement>>();
    v.objective = j.at("objective").get<ObjectiveValue>();
    v.link_reservations = link_map_from(j.value("link_reservations", json::object()));
    v.node_loads.clear();
    const auto loads = j.value("node_loads", json::object());
    for (const auto& [id, c] : loads.items()) {
        v.node_loads[id] = c.get<ComputeCapacity>();
    }
    v.solver_id = j.value("solver_id", std::string{});
    v.solve_time = j.value("solve_time", 0.0);
}

void to_json(json& j, const Violation& v)
{
    j = json{{"kind", to_string(v.kind)}, {"subject", v.subject}, {"message", v.message}};
}

void from_json(const json& j, Violation& v)
{
    const auto kind = j.at("kind").get<std::string>();
    for (auto k : {ViolationKind::Structure, ViolationKind::Latency, ViolationKind::Bandwidth, ViolationKind::Compute}) {
        if (to_string(k) == kind) {
            v.kind = k;
        }
    }
    v.subject = j.value("subject", std::string{});
    v.message = j.value("message", std::string{});
}

void to_json(json& j, const JobTicket& v)
{
    j = json{{"token", v.token},
             {"status", to_string(v.status)},
             {"violations", v.violations},
             {"submitted_at", v.submitted_at}};
    put_optional(j, "result", v.result);
    put_optional(j, "error", v.error);
    put_optional(j, "finished_at", v.finished_at);
}

void from_json(const json& j, JobTicket& v)
{
    v.token = j.at("token").get<std::string>();
    v.status = enum_from<JobStatus>(j.at("status"), job_status_from_string, "job status");
    optional_field(j, "result", v.result);
    optional_field(j, "error", v.error);
    v.violations = j.value("violations", std::vector<std::string>{});
    v.submitted_at = j.at("submitted_at").get<Timestamp>();
    optional_field(j, "finished_at", v.finished_at);
}

void to_json(json& j, const PodSpec& v)
{
    j = json{{"chain_id", v.chain_id},
             {"function", to_string(v.function)},
             {"node", v.node},
             {"spec", v.spec},
             {"image_ref", v.image_ref}};
}

void from_json(const json& j, PodSpec& v)
{
    v.chain_id = j.at("chain_id").get<std::string>();
    v.function = enum_from<RanFunction>(j.at("function"), ran_function_from_string, "function");
    v.node = j.at("node").get<std::string>();
    v.spec = j.at("spec").get<CnfSpec>();
    v.image_ref = j.value("image_ref", v.spec.image_ref);
}

void to_json(json& j, const ChainHop& v)
{
    j = json{{"interface", v.interface}, {"from", v.from}, {"to", v.to}, {"path", v.path}, {"latency", v.latency.ms()}};
}

void from_json(const json& j, ChainHop& v)
{
    v.interface = j.at("interface").get<std::string>();
    v.from = j.at("from").get<std::string>();
    v.to = j.at("to").get<std::string>();
    v.path = j.value("path", std::vector<LinkId>{});
    v.latency = latency_from(j.at("latency"));
}

void to_json(json& j, const ChainingPlan& v)
{
    j = json{{"chain_id", v.chain_id}, {"hops", v.hops}};
}

void from_json(const json& j, ChainingPlan& v)
{
    v.chain_id = j.at("chain_id").get<std::string>();
    v.hops = j.at("hops").get<std::vector<ChainHop>>();
}

void to_json(json& j, const AllocationPlan& v)
{
    j = json{{"plan_id", v.plan_id},
             {"pod_specs", v.pod_specs},
             {"chaining", v.chaining},
             {"link_reservations", link_map(v.link_reservations)}};
}

void from_json(const json& j, AllocationPlan& v)
{
    v.plan_id = j.value("plan_id", std::string{});
    v.pod_specs = j.at("pod_specs").get<std::vector<PodSpec>>();
    v.chaining = j.value("chaining", json::array()).get<std::vector<ChainingPlan>>();
    v.link_reservations = link_map_from(j.value("link_reservations", json::object()));
}

void to_json(json& j, const PodRecord& v)
{
    json history = json::array();
    for (const auto& [phase, at] : v.history) {
        history.push_back({{"phase", to_string(phase)}, {"at", at.as_seconds()}});
    }
    j = json{{"pod_id", v.pod_id},
             {"phase", to_string(v.phase)},
             {"node", v.node},
             {"function", to_string(v.function)},
             {"chain_id", v.chain_id},
             {"demand", v.demand},
             {"started_at", v.started_at.as_seconds()},
             {"history", history}};
}

void from_json(const json& j, PodRecord& v)
{
    v.pod_id = j.at("pod_id").get<std::string>();
    v.phase = enum_from<PodPhase>(j.at("phase"), pod_phase_from_string, "pod phase");
    v.node = j.at("node").get<std::string>();
    v.function = enum_from<RanFunction>(j.at("function"), ran_function_from_string, "function");
    v.chain_id = j.value("chain_id", std::string{});
    v.demand = j.at("demand").get<ComputeCapacity>();
    v.started_at = sim_from(j.at("started_at"));
    v.history.clear();
    for (const auto& h : j.value("history", json::array())) {
        v.history.push_back({enum_from<PodPhase>(h.at("phase"), pod_phase_from_string, "pod phase"), sim_from(h.at("at"))});
    }
}

void to_json(json& j, const TimelineMarker& v)
{
    j = json{{"marker", v.marker}, {"at", v.at.as_seconds()}, {"detail", v.detail}};
}

void from_json(const json& j, TimelineMarker& v)
{
    v.marker = j.at("marker").get<std::string>();
    v.at = sim_from(j.at("at"));
    v.detail = j.value("detail", std::string{});
}

void to_json(json& j, const DeploymentRecord& v)
{
    j = json{{"deployment_id", v.deployment_id},
             {"plan", v.plan},
             {"pods", v.pods},
             {"timeline", v.timeline},
             {"status", to_string(v.status)},
             {"origin", v.origin.as_seconds()}};
    if (!v.error.empty()) {
        j["error"] = v.error;
    }
}

void from_json(const json& j, DeploymentRecord& v)
{
    v.deployment_id = j.at("deployment_id").get<std::string>();
    v.plan = j.at("plan").get<AllocationPlan>();
    v.pods = j.value("pods", json::array()).get<std::vector<PodRecord>>();
    v.timeline = j.value("timeline", json::array()).get<std::vector<TimelineMarker>>();
    v.status = enum_from<DeploymentStatus>(j.at("status"), deployment_status_from_string, "deployment status");
    v.origin = sim_from(j.value("origin", json(0.0)));
    v.error = j.value("error", std::string{});
}

void to_json(json& j, const ClusterState& v)
{
    json nodes = json::object();
    for (const auto& [id, c] : v.node_free) {
        nodes[id] = c;
    }
    j = json{{"node_free", nodes}, {"link_residual", link_map(v.link_residual)},
             {"active_deployments", v.active_deployments}};
}

void from_json(const json& j, ClusterState& v)
{
    v.node_free.clear();
    for (const auto& [id, c] : j.at("node_free").items()) {
        v.node_free[id] = c.get<ComputeCapacity>();
    }
    v.link_residual = link_map_from(j.at("link_residual"));
    v.active_deployments = j.value("active_deployments", std::vector<std::string>{});
}

void to_json(json& j, const NodeMetrics& v)
{
    j = json{{"node", v.node},       {"kind", to_string(v.kind)}, {"capacity", v.capacity},
             {"current", v.current}, {"avg_cpu", v.avg_cpu},     {"avg_memory", v.avg_memory}};
}

void from_json(const json& j, NodeMetrics& v)
{
    v.node = j.at("node").get<std::string>();
    v.kind = enum_from<NodeKind>(j.at("kind"), node_kind_from_string, "node kind");
    v.capacity = j.at("capacity").get<ComputeCapacity>();
    v.current = j.at("current").get<ComputeCapacity>();
    v.avg_cpu = j.at("avg_cpu").get<double>();
    v.avg_memory = j.at("avg_memory").get<double>();
}

void to_json(json& j, const LinkMetrics& v)
{
    j = json{{"link", v.link}, {"capacity", v.capacity.mbps()}, {"residual", v.residual.mbps()}};
}

void from_json(const json& j, LinkMetrics& v)
{
    v.link = j.at("link").get<std::string>();
    v.capacity = bandwidth_from(j.at("capacity"));
    v.residual = bandwidth_from(j.at("residual"));
}

void to_json(json& j, const ChainLatencyMetric& v)
{
    j = json{{"deployment_id", v.deployment_id}, {"chain_id", v.chain_id}, {"end_to_end_latency", v.end_to_end.ms()}};
}

void from_json(const json& j, ChainLatencyMetric& v)
{
    v.deployment_id = j.at("deployment_id").get<std::string>();
    v.chain_id = j.at("chain_id").get<std::string>();
    v.end_to_end = latency_from(j.at("end_to_end_latency"));
}

void to_json(json& j, const ClusterMetrics& v)
{
    j = json{{"at", v.at.as_seconds()}, {"nodes", v.nodes}, {"links", v.links}, {"chains", v.chains}};
}

void from_json(const json& j, ClusterMetrics& v)
{
    v.at = sim_from(j.at("at"));
    v.nodes = j.at("nodes").get<std::vector<NodeMetrics>>();
    v.links = j.at("links").get<std::vector<LinkMetrics>>();
    v.chains = j.at("chains").get<std::vector<ChainLatencyMetric>>();
}

void to_json(json& j, const WorkflowEvent& v)
{
    j = json{{"step", v.step}, {"name", v.name}, {"at", v.at}, {"detail", v.detail}};
}

void from_json(const json& j, WorkflowEvent& v)
{
    v.step = j.at("step").get<int>();
    v.name = j.at("name").get<std::string>();
    v.at = j.value("at", Timestamp{0});
    v.detail = j.value("detail", std::string{});
}

void to_json(json& j, const OrchestrationRecord& v)
{
    j = json{{"run_id", v.run_id},
             {"events", v.events},
             {"outcome", to_string(v.outcome)},
             {"violations", v.violations},
             {"nfvi_seq_committed", v.nfvi_seq_committed},
             {"nfvi_seq_requested", v.nfvi_seq_requested}};
    put_optional(j, "placement", v.placement);
    put_optional(j, "deployment_id", v.deployment_id);
    put_optional(j, "token", v.token);
    put_optional(j, "failed_step", v.failed_step);
    put_optional(j, "error", v.error);
}

void from_json(const json& j, OrchestrationRecord& v)
{
    v.run_id = j.at("run_id").get<std::string>();
    v.events = j.at("events").get<std::vector<WorkflowEvent>>();
    v.outcome = enum_from<WorkflowOutcome>(j.at("outcome"), workflow_outcome_from_string, "outcome");
    v.violations = j.value("violations", std::vector<std::string>{});
    v.nfvi_seq_committed = j.value("nfvi_seq_committed", std::uint64_t{0});
    v.nfvi_seq_requested = j.value("nfvi_seq_requested", std::uint64_t{0});
    optional_field(j, "placement", v.placement);
    optional_field(j, "deployment_id", v.deployment_id);
    optional_field(j, "token", v.token);
    optional_field(j, "failed_step", v.failed_step);
    optional_field(j, "error", v.error);
}

void to_json(json& j, const ExternalInputs& v)
{
    j = json{{"chains", v.operator_chains}, {"solver_id", v.solver_id}};
    put_optional(j, "scenario", v.scenario);
}

void from_json(const json& j, ExternalInputs& v)
{
    optional_field(j, "scenario", v.scenario);
    if (j.contains("chains")) {
        v.operator_chains = j.at("chains").get<std::vector<Chain>>();
    } else if (v.scenario) {
        v.operator_chains = v.scenario->chains;
    } else {
        v.operator_chains.clear();
    }
    if (j.contains("solver_id")) {
        v.solver_id = j.at("solver_id").get<std::string>();
    } else if (v.scenario) {
        v.solver_id = v.scenario->solver;
    } else {
        throw ParseError("missing solver_id");
    }
}

} // namespace oplaceran
