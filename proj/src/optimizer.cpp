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
#include <oplaceran/optimizer.hpp>

#include <algorithm>
#include <chrono>
#include <limits>
#include <sstream>
#include <unordered_set>

namespace oplaceran {

namespace {

std::string fmt_ms(Latency l)
{
    std::ostringstream os;
    os << l.ms();
    return os.str();
}

std::string fmt_mbps(Bandwidth b)
{
    std::ostringstream os;
    os << b.mbps();
    return os.str();
}

} // namespace

PlacementRequest request_from_scenario(const Scenario& scenario)
{
    return request_from_scenario(scenario, scenario.solver);
}

PlacementRequest request_from_scenario(const Scenario& scenario, std::string solver_id)
{
    PlacementRequest r;
    r.topology = scenario.topology;
    r.nfvi = scenario.nfvi;
    r.chains = scenario.chains;
    r.split_profile = scenario.split_profile;
    r.cnf_specs = scenario.cnf_specs;
    r.solver_id = std::move(solver_id);
    return r;
}

void validate_request(const PlacementRequest& request)
{
    auto report = validate_scenario_inputs(request.topology, request.nfvi, request.chains, request.split_profile,
                                           request.cnf_specs);
    if (!report.ok()) {
        throw ValidationError("invalid placement request", std::move(report.violations));
    }
}

std::set<NodeId> PlacementResult::aggregation_hosts() const
{
    std::set<NodeId> out;
    for (const auto& p : placements) {
        out.insert(p.vdu_node);
        out.insert(p.vcu_node);
    }
    return out;
}

std::vector<std::string> FeasibilityVerdict::messages() const
{
    std::vector<std::string> out;
    out.reserve(violations.size());
    for (const auto& v : violations) {
        out.push_back(v.message);
    }
    return out;
}

// ---------------------------------------------------------------------------
// PlacementContext

PlacementContext::PlacementContext(const PlacementRequest& request) : request_(&request)
{
    const auto& topo = request.topology;
    workers_ = topo.workers();
    n_ = static_cast<int>(workers_.size());
    for (int i = 0; i < n_; ++i) {
        worker_index_[workers_[i]] = i;
    }
    for (int i = 0; i < static_cast<int>(topo.links.size()); ++i) {
        link_index_[topo.links[i].id] = i;
    }

    auto to_info = [&](const Route& r) {
        PathInfo info;
        info.latency = r.latency;
        info.hops = static_cast<int>(r.hops());
        for (const auto& id : r.links) {
            info.links.push_back(link_index_.at(id));
        }
        return info;
    };

    pair_paths_.resize(static_cast<std::size_t>(n_) * n_);
    for (int a = 0; a < n_; ++a) {
        for (int b = 0; b < n_; ++b) {
            if (b < a) {
                // Undirected: reuse the reverse route so both directions reserve the same links.
                const auto& rev = pair_paths_[b * n_ + a];
                PathInfo info{{rev.links.rbegin(), rev.links.rend()}, rev.latency, rev.hops};
                pair_paths_[a * n_ + b] = std::move(info);
            } else {
                pair_paths_[a * n_ + b] = to_info(min_latency_path(topo, workers_[a], workers_[b]));
            }
        }
    }
    const NodeId& cn = topo.cn_anchor();
    cn_paths_.reserve(n_);
    for (int a = 0; a < n_; ++a) {
        cn_paths_.push_back(to_info(min_latency_path(topo, workers_[a], cn)));
    }

    free_.assign(n_, ComputeCapacity{});
    for (const auto& e : request.nfvi) {
        auto it = worker_index_.find(e.node);
        if (it != worker_index_.end()) {
            free_[it->second] = e.free();
        }
    }
    for (const auto& c : request.chains) {
        vru_hosts_.push_back(worker_index(c.vru_node));
    }
}

int PlacementContext::worker_index(std::string_view id) const noexcept
{
    auto it = worker_index_.find(std::string(id));
    return it == worker_index_.end() ? -1 : it->second;
}

int PlacementContext::link_index(std::string_view id) const noexcept
{
    auto it = link_index_.find(std::string(id));
    return it == link_index_.end() ? -1 : it->second;
}

ChainRouting PlacementContext::routing(int vru, int vdu, int vcu) const noexcept
{
    const auto& fh = path(vru, vdu);
    const auto& mh = path(vdu, vcu);
    const auto& bh = cn_path(vcu);
    return ChainRouting{vru, vdu, vcu, &fh.links, &mh.links, &bh.links, fh.latency, mh.latency, bh.latency};
}

bool PlacementContext::latency_ok(const ChainRouting& r) const noexcept
{
    const auto& p = request_->split_profile;
    return r.fronthaul_latency <= p.fronthaul_o6.max_latency && r.midhaul_latency <= p.midhaul_o2.max_latency &&
           r.backhaul_latency <= p.backhaul_cn.max_latency;
}

PlacementContext::Usage PlacementContext::empty_usage() const
{
    return Usage{std::vector<ComputeCapacity>(n_), std::vector<Bandwidth>(links().size())};
}

void PlacementContext::add(const ChainRouting& r, Usage& u) const noexcept
{
    const auto& specs = request_->cnf_specs;
    u.nodes[r.vru] += specs.of(RanFunction::vRU).demand;
    u.nodes[r.vdu] += specs.of(RanFunction::vDU).demand;
    u.nodes[r.vcu] += specs.of(RanFunction::vCU).demand;
    const auto& p = request_->split_profile;
    for (int l : *r.fronthaul) {
        u.links[l] += p.fronthaul_o6.bitrate;
    }
    for (int l : *r.midhaul) {
        u.links[l] += p.midhaul_o2.bitrate;
    }
    for (int l : *r.backhaul) {
        u.links[l] += p.backhaul_cn.bitrate;
    }
}

void PlacementContext::remove(const ChainRouting& r, Usage& u) const noexcept
{
    const auto& specs = request_->cnf_specs;
    u.nodes[r.vru] -= specs.of(RanFunction::vRU).demand;
    u.nodes[r.vdu] -= specs.of(RanFunction::vDU).demand;
    u.nodes[r.vcu] -= specs.of(RanFunction::vCU).demand;
    const auto& p = request_->split_profile;
    for (int l : *r.fronthaul) {
        u.links[l] -= p.fronthaul_o6.bitrate;
    }
    for (int l : *r.midhaul) {
        u.links[l] -= p.midhaul_o2.bitrate;
    }
    for (int l : *r.backhaul) {
        u.links[l] -= p.backhaul_cn.bitrate;
    }
}

bool PlacementContext::within_limits(const ChainRouting& r, const Usage& u) const noexcept
{
    for (int n : {r.vru, r.vdu, r.vcu}) {
        if (!u.nodes[n].fits_within(free_[n])) {
            return false;
        }
    }
    const auto& ls = links();
    for (const auto* segment : {r.fronthaul, r.midhaul, r.backhaul}) {
        for (int l : *segment) {
            if (u.links[l] > ls[l].residual) {
                return false;
            }
        }
    }
    return true;
}

bool PlacementContext::within_limits(const Usage& u) const noexcept
{
    for (int n = 0; n < n_; ++n) {
        if (!u.nodes[n].fits_within(free_[n])) {
            return false;
        }
    }
    const auto& ls = links();
    for (std::size_t l = 0; l < ls.size(); ++l) {
        if (u.links[l] > ls[l].residual) {
            return false;
        }
    }
    return true;
}

bool PlacementContext::evaluate(const std::vector<ChainRouting>& routings, std::vector<Violation>* sink) const
{
    const auto& p = request_->split_profile;
    bool ok = true;
    auto report = [&](ViolationKind kind, std::string subject, std::string message) {
        ok = false;
        if (sink != nullptr) {
            sink->push_back({kind, std::move(subject), std::move(message)});
        }
    };

    for (std::size_t i = 0; i < routings.size(); ++i) {
        const auto& r = routings[i];
        const auto& chain = request_->chains[i].chain_id;
        const std::pair<const char*, std::pair<Latency, Latency>> checks[] = {
            {"fronthaul", {r.fronthaul_latency, p.fronthaul_o6.max_latency}},
            {"midhaul", {r.midhaul_latency, p.midhaul_o2.max_latency}},
            {"backhaul", {r.backhaul_latency, p.backhaul_cn.max_latency}},
        };
        for (const auto& [name, values] : checks) {
            if (values.first > values.second) {
                report(ViolationKind::Latency, chain,
                       "chain " + chain + ": " + name + " latency " + fmt_ms(values.first) + " > " +
                           fmt_ms(values.second));
                if (sink == nullptr) {
                    return false;
                }
            }
        }
    }

    Usage u = empty_usage();
    for (const auto& r : routings) {
        add(r, u);
    }
    const auto& ls = links();
    for (std::size_t l = 0; l < ls.size(); ++l) {
        if (u.links[l] > ls[l].residual) {
            report(ViolationKind::Bandwidth, ls[l].id,
                   "link " + ls[l].id + ": bandwidth " + fmt_mbps(u.links[l]) + " Mbps > " + fmt_mbps(ls[l].residual) +
                       " Mbps");
            if (sink == nullptr) {
                return false;
            }
        }
    }
    for (int n = 0; n < n_; ++n) {
        const auto& used = u.nodes[n];
        const auto& cap = free_[n];
        if (used.cpu > cap.cpu) {
            report(ViolationKind::Compute, workers_[n],
                   "node " + workers_[n] + ": cpu " + std::to_string(used.cpu) + " m > " + std::to_string(cap.cpu) +
                       " m");
            if (sink == nullptr) {
                return false;
            }
        }
        if (used.memory > cap.memory) {
            report(ViolationKind::Compute, workers_[n],
                   "node " + workers_[n] + ": memory " + std::to_string(used.memory) + " MiB > " +
                       std::to_string(cap.memory) + " MiB");
            if (sink == nullptr) {
                return false;
            }
        }
    }
    return ok;
}

PlacementResult PlacementContext::build_result(const std::vector<std::pair<int, int>>& assignment,
                                               std::string solver_id, ObjectiveValue objective) const
{
    PlacementResult result;
    result.solver_id = std::move(solver_id);
    result.objective = objective;
    const auto& ls = links();
    Usage u = empty_usage();
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        const auto [vdu, vcu] = assignment[i];
        const int vru = vru_hosts_[i];
        const auto r = routing(vru, vdu, vcu);
        add(r, u);

        ChainPlacement cp;
        cp.chain_id = request_->chains[i].chain_id;
        cp.vru_node = workers_[vru];
        cp.vdu_node = workers_[vdu];
        cp.vcu_node = workers_[vcu];
        for (int l : *r.fronthaul) {
            cp.fronthaul_path.push_back(ls[l].id);
        }
        for (int l : *r.midhaul) {
            cp.midhaul_path.push_back(ls[l].id);
        }
        for (int l : *r.backhaul) {
            cp.backhaul_path.push_back(ls[l].id);
        }
        cp.splits_used = splits_for(cp.vru_node, cp.vdu_node, cp.vcu_node);
        result.placements.push_back(std::move(cp));
    }
    for (std::size_t l = 0; l < ls.size(); ++l) {
        if (u.links[l].kbps > 0) {
            result.link_reservations[ls[l].id] = u.links[l];
        }
    }
    for (int n = 0; n < n_; ++n) {
        if (u.nodes[n] != ComputeCapacity{}) {
            result.node_loads[workers_[n]] = u.nodes[n];
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// check_feasibility

namespace {

/// Walks `path` from `from` and returns the visited link indices and the end
/// node, or nullopt with a reason when the walk is broken.
struct Walk
{
    std::vector<int> links;
    Latency latency;
    NodeId end;
};

std::optional<Walk> walk_path(const PlacementContext& ctx, const NodeId& from, const std::vector<LinkId>& path,
                              std::string& reason)
{
    Walk w;
    w.end = from;
    for (const auto& id : path) {
        const int idx = ctx.link_index(id);
        if (idx < 0) {
            reason = "unknown link " + id;
            return std::nullopt;
        }
        const auto& link = ctx.links()[idx];
        if (!link.touches(w.end)) {
            reason = "link " + id + " does not continue from " + w.end;
            return std::nullopt;
        }
        w.end = link.other(w.end);
        w.latency += link.latency;
        w.links.push_back(idx);
    }
    return w;
}

} // namespace

FeasibilityVerdict check_feasibility(const std::vector<ChainPlacement>& placements, const PlacementRequest& request)
{
    FeasibilityVerdict verdict;
    auto& v = verdict.violations;
    auto structure = [&](const std::string& subject, std::string msg) {
        v.push_back({ViolationKind::Structure, subject, std::move(msg)});
    };

    const PlacementContext ctx(request);
    const NodeId& cn = request.topology.cn_anchor();

    // Order placements like the request's chains so indices line up.
    std::vector<const ChainPlacement*> ordered(request.chains.size(), nullptr);
    for (const auto& p : placements) {
        auto it = std::find_if(request.chains.begin(), request.chains.end(),
                               [&](const Chain& c) { return c.chain_id == p.chain_id; });
        if (it == request.chains.end()) {
            structure(p.chain_id, "placement for unknown chain " + p.chain_id);
            continue;
        }
        auto& slot = ordered[static_cast<std::size_t>(it - request.chains.begin())];
        if (slot != nullptr) {
            structure(p.chain_id, "chain " + p.chain_id + " placed more than once");
            continue;
        }
        slot = &p;
    }

    std::vector<std::array<std::vector<int>, 3>> owned(request.chains.size());
    std::vector<ChainRouting> routings;
    for (std::size_t i = 0; i < request.chains.size(); ++i) {
        const auto& chain = request.chains[i];
        const ChainPlacement* p = ordered[i];
        if (p == nullptr) {
            structure(chain.chain_id, "chain " + chain.chain_id + " has no placement");
            continue;
        }
        bool ok = true;
        if (p->vru_node != chain.vru_node) {
            structure(chain.chain_id, "chain " + chain.chain_id + ": vRU on " + p->vru_node + " but pinned to " +
                                          chain.vru_node);
            ok = false;
        }
        for (const auto* node : {&p->vru_node, &p->vdu_node, &p->vcu_node}) {
            if (ctx.worker_index(*node) < 0) {
                structure(chain.chain_id, "chain " + chain.chain_id + ": " + *node + " is not a compute worker");
                ok = false;
            }
        }
        if (!ok) {
            continue;
        }

        ChainRouting r;
        r.vru = ctx.worker_index(p->vru_node);
        r.vdu = ctx.worker_index(p->vdu_node);
        r.vcu = ctx.worker_index(p->vcu_node);
        const std::tuple<const char*, const NodeId*, const NodeId*, const std::vector<LinkId>*> segments[] = {
            {"fronthaul", &p->vru_node, &p->vdu_node, &p->fronthaul_path},
            {"midhaul", &p->vdu_node, &p->vcu_node, &p->midhaul_path},
            {"backhaul", &p->vcu_node, &cn, &p->backhaul_path},
        };
        Latency* latencies[] = {&r.fronthaul_latency, &r.midhaul_latency, &r.backhaul_latency};
        const std::vector<int>** paths[] = {&r.fronthaul, &r.midhaul, &r.backhaul};
        for (std::size_t s = 0; s < 3; ++s) {
            const auto& [name, from, to, path] = segments[s];
            std::string reason;
            auto walk = walk_path(ctx, *from, *path, reason);
            if (!walk) {
                structure(chain.chain_id, "chain " + chain.chain_id + ": " + name + " path broken: " + reason);
                ok = false;
                continue;
            }
            if (walk->end != *to) {
                structure(chain.chain_id, "chain " + chain.chain_id + ": " + name + " path ends at " + walk->end +
                                              " instead of " + *to);
                ok = false;
                continue;
            }
            owned[i][s] = std::move(walk->links);
            *latencies[s] = walk->latency;
            *paths[s] = &owned[i][s];
        }
        if (ok) {
            routings.push_back(r);
        }
    }

    if (!v.empty()) {
        return verdict;
    }
    ctx.evaluate(routings, &v);
    return verdict;
}

// ---------------------------------------------------------------------------
// Objectives and solvers

ObjectiveValue compute_objective(const PlacementContext& ctx, const std::vector<std::pair<int, int>>& assignment,
                                 ObjectiveKind kind, const DuPinnedWeights& weights)
{
    ObjectiveValue obj;
    std::set<int> hosts;
    std::set<int> cu_hosts;
    std::int64_t latency_us = 0;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        const auto [vdu, vcu] = assignment[i];
        hosts.insert(vdu);
        hosts.insert(vcu);
        cu_hosts.insert(vcu);
        obj.cn_distance += ctx.cn_path(vcu).hops;
        const auto r = ctx.routing(ctx.vru_hosts()[i], vdu, vcu);
        latency_us += (r.fronthaul_latency + r.midhaul_latency + r.backhaul_latency).us;
    }
    obj.cr_count = static_cast<int>(hosts.size());
    if (kind == ObjectiveKind::DuPinned) {
        obj.cost_milli = weights.alpha * 1000 * static_cast<std::int64_t>(cu_hosts.size()) + weights.beta * latency_us;
    }
    return obj;
}

namespace {

/// Depth-first branch and bound over chains in request order. Candidates
/// are visited in (vdu, vcu) worker-id order, so complete assignments are
/// met in lexicographic order and the first optimum found is the canonical
/// one; a branch is cut once its partial objective can no longer win.
class BranchAndBound
{
public:
    BranchAndBound(const PlacementContext& ctx, ObjectiveKind kind, DuPinnedWeights weights)
        : ctx_(ctx), kind_(kind), weights_(weights), usage_(ctx.empty_usage()),
          hosted_(ctx.workers().size(), 0), cu_hosted_(ctx.workers().size(), 0)
    {
        const auto& vru = ctx.vru_hosts();
        const int n = static_cast<int>(ctx.workers().size());
        candidates_.resize(vru.size());
        for (std::size_t i = 0; i < vru.size(); ++i) {
            for (int d = 0; d < n; ++d) {
                if (kind == ObjectiveKind::DuPinned && d != vru[i]) {
                    continue;
                }
                for (int c = 0; c < n; ++c) {
                    const auto r = ctx.routing(vru[i], d, c);
                    if (ctx.latency_ok(r)) {
                        candidates_[i].push_back({d, c});
                    }
                }
            }
        }
        current_.resize(vru.size());
    }

    std::optional<std::vector<std::pair<int, int>>> run()
    {
        descend(0, Key{});
        return best_;
    }

private:
    struct Key
    {
        std::int64_t primary = 0;
        std::int64_t secondary = 0;
        auto operator<=>(const Key&) const = default;
    };

    void descend(std::size_t depth, Key key)
    {
        if (depth == candidates_.size()) {
            if (!best_ || key < best_key_) {
                best_ = current_;
                best_key_ = key;
            }
            return;
        }
        const int vru = ctx_.vru_hosts()[depth];
        for (const auto& [d, c] : candidates_[depth]) {
            const auto r = ctx_.routing(vru, d, c);
            Key next = key;
            if (kind_ == ObjectiveKind::Aggregation) {
                next.primary += (hosted_[d] == 0) + (c != d && hosted_[c] == 0);
                next.secondary += ctx_.cn_path(c).hops;
            } else {
                next.primary += weights_.alpha * 1000 * (cu_hosted_[c] == 0) +
                                weights_.beta * (r.fronthaul_latency + r.midhaul_latency + r.backhaul_latency).us;
            }
            if (best_ && !(next < best_key_)) {
                continue;
            }
            ctx_.add(r, usage_);
            if (ctx_.within_limits(r, usage_)) {
                ++hosted_[d];
                ++hosted_[c];
                ++cu_hosted_[c];
                current_[depth] = {d, c};
                descend(depth + 1, next);
                --hosted_[d];
                --hosted_[c];
                --cu_hosted_[c];
            }
            ctx_.remove(r, usage_);
        }
    }

    const PlacementContext& ctx_;
    ObjectiveKind kind_;
    DuPinnedWeights weights_;
    PlacementContext::Usage usage_;
    std::vector<int> hosted_;
    std::vector<int> cu_hosted_;
    std::vector<std::vector<std::pair<int, int>>> candidates_;
    std::vector<std::pair<int, int>> current_;
    std::optional<std::vector<std::pair<int, int>>> best_;
    Key best_key_;
};

PlacementResult exact_solve(const PlacementRequest& request, ObjectiveKind kind, const DuPinnedWeights& weights,
                            const std::string& solver_id)
{
    validate_request(request);
    const PlacementContext ctx(request);
    auto best = BranchAndBound(ctx, kind, weights).run();
    if (!best) {
        throw InfeasibleRequest("infeasible", {"no feasible assignment exists for " + solver_id});
    }
    return ctx.build_result(*best, solver_id, compute_objective(ctx, *best, kind, weights));
}

} // namespace

PlacementResult solve_aggregation_max(const PlacementRequest& request)
{
    return exact_solve(request, ObjectiveKind::Aggregation, {}, "aggregation-max");
}

PlacementResult solve_du_pinned(const PlacementRequest& request, const DuPinnedWeights& weights)
{
    return exact_solve(request, ObjectiveKind::DuPinned, weights, "du-pinned");
}

PlacementResult solve_greedy(const PlacementRequest& request)
{
    validate_request(request);
    const PlacementContext ctx(request);
    const int n = static_cast<int>(ctx.workers().size());

    std::vector<std::size_t> order(request.chains.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return request.chains[a].chain_id < request.chains[b].chain_id;
    });

    auto usage = ctx.empty_usage();
    std::vector<bool> open(n, false);
    std::vector<std::pair<int, int>> assignment(request.chains.size());
    for (std::size_t i : order) {
        const int vru = ctx.vru_hosts()[i];
        struct Candidate
        {
            int opened;
            Latency added;
            int d;
            int c;
        };
        std::vector<Candidate> cands;
        for (int d = 0; d < n; ++d) {
            for (int c = 0; c < n; ++c) {
                const auto r = ctx.routing(vru, d, c);
                const int opened = (!open[d]) + (c != d && !open[c]);
                cands.push_back({opened, r.fronthaul_latency + r.midhaul_latency + r.backhaul_latency, d, c});
            }
        }
        std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
            return std::tie(a.opened, a.added, a.d, a.c) < std::tie(b.opened, b.added, b.d, b.c);
        });
        bool placed = false;
        for (const auto& cand : cands) {
            const auto r = ctx.routing(vru, cand.d, cand.c);
            if (!ctx.latency_ok(r)) {
                continue;
            }
            ctx.add(r, usage);
            if (ctx.within_limits(r, usage)) {
                open[cand.d] = true;
                open[cand.c] = true;
                assignment[i] = {cand.d, cand.c};
                placed = true;
                break;
            }
            ctx.remove(r, usage);
        }
        if (!placed) {
            throw InfeasibleRequest("infeasible", {"greedy found no feasible candidate for chain " +
                                                   request.chains[i].chain_id});
        }
    }
    return ctx.build_result(assignment, "greedy", compute_objective(ctx, assignment, ObjectiveKind::Aggregation));
}

PlacementResult brute_force_oracle(const PlacementRequest& request, ObjectiveKind objective,
                                   const DuPinnedWeights& weights)
{
    validate_request(request);
    const PlacementContext ctx(request);
    const auto n = static_cast<std::uint64_t>(ctx.workers().size());
    const std::size_t chains = request.chains.size();
    const std::uint64_t per_chain = objective == ObjectiveKind::DuPinned ? n : n * n;

    std::uint64_t total = 1;
    for (std::size_t i = 0; i < chains; ++i) {
        if (per_chain != 0 && total > kOracleGuard / per_chain) {
            throw TooLarge("oracle enumeration exceeds " + std::to_string(kOracleGuard) + " assignments");
        }
        total *= per_chain;
    }
    const std::string id = std::string("oracle:") + std::string(to_string(objective));
    if (chains == 0) {
        return ctx.build_result({}, id, ObjectiveValue{});
    }
    if (per_chain == 0) {
        throw InfeasibleRequest("infeasible", {"no compute workers"});
    }

    // Odometer over per-chain choices; the last chain varies fastest so the
    // visit order is lexicographic in (vdu, vcu) per chain order.
    std::vector<std::uint64_t> digit(chains, 0);
    std::vector<std::pair<int, int>> assignment(chains);
    std::vector<ChainRouting> routings(chains);
    std::optional<std::vector<std::pair<int, int>>> best;
    ObjectiveValue best_obj;
    auto better = [&](const ObjectiveValue& a, const ObjectiveValue& b) {
        if (objective == ObjectiveKind::DuPinned) {
            return a.cost_milli < b.cost_milli;
        }
        return std::tie(a.cr_count, a.cn_distance) < std::tie(b.cr_count, b.cn_distance);
    };

    for (std::uint64_t k = 0; k < total; ++k) {
        for (std::size_t i = 0; i < chains; ++i) {
            const int vru = ctx.vru_hosts()[i];
            int d;
            int c;
            if (objective == ObjectiveKind::DuPinned) {
                d = vru;
                c = static_cast<int>(digit[i]);
            } else {
                d = static_cast<int>(digit[i] / n);
                c = static_cast<int>(digit[i] % n);
            }
            assignment[i] = {d, c};
            routings[i] = ctx.routing(vru, d, c);
        }
        if (ctx.evaluate(routings, nullptr)) {
            const auto obj = compute_objective(ctx, assignment, objective, weights);
            if (!best || better(obj, best_obj)) {
                best = assignment;
                best_obj = obj;
            }
        }
        for (std::size_t i = chains; i-- > 0;) {
            if (++digit[i] < per_chain) {
                break;
            }
            digit[i] = 0;
        }
    }
    if (!best) {
        throw InfeasibleRequest("infeasible", {"no feasible assignment among " + std::to_string(total)});
    }
    return ctx.build_result(*best, id, best_obj);
}

// ---------------------------------------------------------------------------
// SolverRegistry

void SolverRegistry::register_solver(SolverDescriptor descriptor, SolveFunction fn)
{
    std::lock_guard lock(mu_);
    if (solvers_.count(descriptor.solver_id) != 0) {
        throw DuplicateId("solver " + descriptor.solver_id + " already registered");
    }
    if (catalog_ != nullptr && !catalog_->find_solver(descriptor.solver_id)) {
        catalog_->register_solver(descriptor);
    }
    auto id = descriptor.solver_id;
    solvers_.emplace(std::move(id), std::make_pair(std::move(descriptor), std::move(fn)));
}

bool SolverRegistry::contains(std::string_view id) const
{
    std::lock_guard lock(mu_);
    return solvers_.find(id) != solvers_.end();
}

std::vector<SolverDescriptor> SolverRegistry::descriptors() const
{
    std::lock_guard lock(mu_);
    std::vector<SolverDescriptor> out;
    for (const auto& [id, entry] : solvers_) {
        out.push_back(entry.first);
    }
    return out;
}

PlacementResult SolverRegistry::solve(const PlacementRequest& request) const
{
    SolveFunction fn;
    {
        std::lock_guard lock(mu_);
        auto it = solvers_.find(request.solver_id);
        if (it == solvers_.end()) {
            throw UnknownSolver("unknown solver " + request.solver_id);
        }
        fn = it->second.second;
    }
    const auto start = std::chrono::steady_clock::now();
    auto result = fn(request);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    result.solver_id = request.solver_id;
    result.solve_time = std::chrono::duration<double>(elapsed).count();
    return result;
}

std::unique_ptr<SolverRegistry> SolverRegistry::with_builtins(RanCatalogs* catalog)
{
    auto reg = std::make_unique<SolverRegistry>(catalog);
    reg->register_solver({"aggregation-max", SolverKind::Exact,
                          "minimizes vDU/vCU-hosting workers, then vCU-to-core hop count"},
                         [](const PlacementRequest& r) { return solve_aggregation_max(r); });
    reg->register_solver({"du-pinned", SolverKind::Exact,
                          "vDU co-located with its vRU; minimizes vCU hosts and routed latency"},
                         [](const PlacementRequest& r) { return solve_du_pinned(r); });
    reg->register_solver({"greedy", SolverKind::Heuristic,
                          "chains in id order, first feasible candidate opening the fewest workers"},
                         [](const PlacementRequest& r) { return solve_greedy(r); });
    return reg;
}

std::string_view to_string(ObjectiveKind k) noexcept
{
    return k == ObjectiveKind::Aggregation ? "aggregation" : "du-pinned";
}

std::optional<ObjectiveKind> objective_kind_from_string(std::string_view s) noexcept
{
    if (s == "aggregation" || s == "aggregation-max") {
        return ObjectiveKind::Aggregation;
    }
    if (s == "du-pinned") {
        return ObjectiveKind::DuPinned;
    }
    return std::nullopt;
}

std::string_view to_string(ViolationKind k) noexcept
{
    switch (k) {
    case ViolationKind::Structure: return "structure";
    case ViolationKind::Latency: return "latency";
    case ViolationKind::Bandwidth: return "bandwidth";
    case ViolationKind::Compute: return "compute";
    }
    return "?";
}

} // namespace oplaceran
