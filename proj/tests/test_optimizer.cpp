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

#include <oplaceran/errors.hpp>
#include <oplaceran/jobs.hpp>

#include <doctest.h>

#include <map>

using namespace oplaceran;
using namespace oplaceran::testing;

namespace {

PlacementRequest fixture_request(const std::string& solver = "aggregation-max")
{
    return request_from_scenario(load_fixture("testbed.scn"), solver);
}

bool has_violation(const FeasibilityVerdict& v, ViolationKind kind, const std::string& subject,
                   const std::string& text = {})
{
    for (const auto& x : v.violations) {
        if (x.kind == kind && x.subject == subject && x.message.find(text) != std::string::npos) {
            return true;
        }
    }
    return false;
}

PlacementRequest one_worker_request()
{
    Scenario s;
    s.topology.nodes = {{"W1", NodeKind::ComputeWorker}, {"CN", NodeKind::CoreNetworkAnchor}};
    Link l;
    l.id = "W1-CN";
    l.a = "W1";
    l.b = "CN";
    l.latency = Latency::from_ms(1);
    l.capacity = l.residual = Bandwidth::from_mbps(1000);
    s.topology.links = {l};
    s.nfvi = {{"W1", {8000, 8000}, {}, 0}};
    s.chains = {{"c1", "W1"}};
    s.split_profile = default_split_profile();
    s.cnf_specs = default_cnf_specs();
    return request_from_scenario(s, "aggregation-max");
}

} // namespace

TEST_CASE("fixture D-RAN on every pin is infeasible at W2 for cpu and memory")
{
    const auto request = fixture_request();
    std::vector<std::pair<NodeId, NodeId>> hosts;
    for (const auto& c : request.chains) {
        hosts.emplace_back(c.vru_node, c.vru_node);
    }
    const auto verdict = check_feasibility(route_assignment(request, hosts), request);
    CHECK_FALSE(verdict.feasible());
    CHECK(has_violation(verdict, ViolationKind::Compute, "W2", "cpu 1400 m > 1000 m"));
    CHECK(has_violation(verdict, ViolationKind::Compute, "W2", "memory 600 MiB > 200 MiB"));
}

TEST_CASE("single monolithic chain on W1 is feasible and uses no links")
{
    auto request = fixture_request();
    request.chains = {{"c1", "W1"}};
    const auto placements = route_assignment(request, {{"W1", "W1"}});
    CHECK(check_feasibility(placements, request).feasible());
    CHECK(placements[0].fronthaul_path.empty());
    CHECK(placements[0].midhaul_path.empty());

    const auto result = solve_aggregation_max(request);
    CHECK(result.placements[0].vdu_node == "W1");
    CHECK(result.placements[0].vcu_node == "W1");
    for (const auto& [link, bw] : result.link_reservations) {
        // Only the CN backhaul remains.
        CHECK(bw == request.split_profile.backhaul_cn.bitrate);
    }
}

TEST_CASE("fronthaul bound violation is itemized")
{
    auto request = fixture_request();
    request.chains = {{"c1", "W1"}};
    request.split_profile.fronthaul_o6.max_latency = Latency::from_ms(1);
    const auto verdict = check_feasibility(route_assignment(request, {{"W3", "W3"}}), request);
    CHECK(has_violation(verdict, ViolationKind::Latency, "c1", "fronthaul latency 2 > 1"));
}

TEST_CASE("structural problems are reported before arithmetic")
{
    const auto request = fixture_request();
    auto placements = route_assignment(request, {{"W1", "W1"}, {"W1", "W1"}, {"W1", "W1"}, {"W3", "W3"}});
    SUBCASE("missing chain")
    {
        placements.pop_back();
        CHECK(has_violation(check_feasibility(placements, request), ViolationKind::Structure, "c4"));
    }
    SUBCASE("vDU on a master")
    {
        placements[0].vdu_node = "M1";
        CHECK(has_violation(check_feasibility(placements, request), ViolationKind::Structure, "c1"));
    }
    SUBCASE("broken path")
    {
        placements[1].fronthaul_path = {"W4-pSw"};
        CHECK(has_violation(check_feasibility(placements, request), ViolationKind::Structure, "c2", "broken"));
    }
}

TEST_CASE("aggregation-max on the fixture uses W1 and W3")
{
    const auto request = fixture_request();
    const auto result = solve_aggregation_max(request);
    CHECK(result.aggregation_hosts() == std::set<NodeId>{"W1", "W3"});
    CHECK(result.objective.cr_count == 2);

    const auto oracle = brute_force_oracle(request, ObjectiveKind::Aggregation);
    CHECK(oracle.objective == result.objective);
    CHECK(oracle.placements == result.placements);
    const auto reference = reference_optimum(request, ObjectiveKind::Aggregation);
    REQUIRE(reference.has_value());
    CHECK(reference->cr_count == result.objective.cr_count);
    CHECK(reference->cn_distance == result.objective.cn_distance);
}

TEST_CASE("du-pinned on the fixture opens every worker")
{
    const auto request = fixture_request("du-pinned");
    const auto result = solve_du_pinned(request);
    for (const auto& p : result.placements) {
        CHECK(p.vdu_node == p.vru_node);
    }
    CHECK(result.aggregation_hosts() == std::set<NodeId>{"W1", "W2", "W3", "W4"});
    const auto oracle = brute_force_oracle(request, ObjectiveKind::DuPinned);
    CHECK(oracle.objective.cost_milli == result.objective.cost_milli);
    const auto reference = reference_optimum(request, ObjectiveKind::DuPinned);
    REQUIRE(reference.has_value());
    CHECK(reference->cost_milli == result.objective.cost_milli);

    const auto agg = solve_aggregation_max(request).aggregation_hosts();
    const auto du = result.aggregation_hosts();
    CHECK(std::includes(du.begin(), du.end(), agg.begin(), agg.end()));
    CHECK(du.size() > agg.size());
}

TEST_CASE("greedy on the fixture")
{
    const auto request = fixture_request("greedy");
    const auto result = solve_greedy(request);
    CHECK(result.objective.cr_count >= solve_aggregation_max(request).objective.cr_count);
    CHECK(check_feasibility(result.placements, request).feasible());
}

TEST_CASE("one chain on one roomy worker is monolithic for every solver")
{
    const auto request = one_worker_request();
    for (const auto& r : {solve_aggregation_max(request), solve_du_pinned(request), solve_greedy(request)}) {
        REQUIRE(r.placements.size() == 1);
        CHECK(classify_scenario(r.placements[0]) == ScenarioKind::DRan_Monolithic);
        CHECK(r.objective.cr_count == 1);
    }
}

TEST_CASE("oracle edge cases")
{
    auto request = fixture_request();
    request.chains.clear();
    const auto empty = brute_force_oracle(request, ObjectiveKind::Aggregation);
    CHECK(empty.placements.empty());
    CHECK(empty.objective.cr_count == 0);

    // 12 workers and 4 chains: (12 * 12)^4 > 10^7.
    Scenario big = load_fixture("testbed.scn");
    for (int i = 5; i <= 12; ++i) {
        const auto id = "W" + std::to_string(i);
        big.topology.nodes.push_back({id, NodeKind::ComputeWorker});
        Link l;
        l.id = id + "-pSw";
        l.a = id;
        l.b = "pSw";
        l.capacity = l.residual = Bandwidth::from_mbps(1000);
        big.topology.links.push_back(l);
        big.nfvi.push_back({id, {1000, 1000}, {}, 0});
    }
    CHECK_THROWS_AS(brute_force_oracle(request_from_scenario(big), ObjectiveKind::Aggregation), TooLarge);
}

TEST_CASE("registry dispatch")
{
    const auto registry = SolverRegistry::with_builtins();
    auto request = fixture_request("nope");
    CHECK_THROWS_AS(registry->solve(request), UnknownSolver);
    request.solver_id = "greedy";
    CHECK(registry->solve(request).solver_id == "greedy");
    CHECK_THROWS_AS(registry->register_solver({"greedy", SolverKind::Heuristic, ""}, solve_greedy), DuplicateId);

    registry->register_solver({"everything-on-w1", SolverKind::Heuristic, "plug-in"}, [](const PlacementRequest& r) {
        const PlacementContext ctx(r);
        std::vector<std::pair<int, int>> a(r.chains.size(), {0, 0});
        return ctx.build_result(a, "everything-on-w1", {});
    });
    request.solver_id = "everything-on-w1";
    request.chains = {{"c1", "W1"}};
    CHECK(registry->solve(request).placements[0].vcu_node == "W1");
}

TEST_CASE("solver results are sound, conserved, deterministic and ordered")
{
    Rng rng(20260101);
    int feasible = 0;
    for (int round = 0; round < 120; ++round) {
        const auto s = random_scenario(rng);
        CAPTURE(round);
        const auto request = request_from_scenario(s);
        std::optional<PlacementResult> agg;
        try {
            agg = solve_aggregation_max(request);
        } catch (const InfeasibleRequest&) {
        }
        for (auto solver : {solve_aggregation_max, solve_greedy}) {
            try {
                const auto r = solver(request);
                CHECK(check_feasibility(r.placements, request).feasible());
                CHECK(straight_line_check(r.placements, request).feasible());

                std::map<LinkId, Bandwidth> links;
                std::map<NodeId, ComputeCapacity> loads;
                for (const auto& p : r.placements) {
                    for (const auto& id : p.fronthaul_path) {
                        links[id] += request.split_profile.fronthaul_o6.bitrate;
                    }
                    for (const auto& id : p.midhaul_path) {
                        links[id] += request.split_profile.midhaul_o2.bitrate;
                    }
                    for (const auto& id : p.backhaul_path) {
                        links[id] += request.split_profile.backhaul_cn.bitrate;
                    }
                    loads[p.vru_node] += request.cnf_specs.of(RanFunction::vRU).demand;
                    loads[p.vdu_node] += request.cnf_specs.of(RanFunction::vDU).demand;
                    loads[p.vcu_node] += request.cnf_specs.of(RanFunction::vCU).demand;
                }
                CHECK(r.link_reservations == links);
                CHECK(r.node_loads == loads);
                CHECK(solver(request).placements == r.placements);
                REQUIRE(agg.has_value());
                CHECK(r.objective.cr_count >= agg->objective.cr_count);
                ++feasible;
            } catch (const InfeasibleRequest&) {
            }
        }
    }
    CHECK(feasible > 60);
}

TEST_CASE("job runner: success, infeasibility and unknown tokens")
{
    const auto registry = SolverRegistry::with_builtins();
    JobRunner jobs(*registry);

    const auto token = jobs.submit(fixture_request());
    const auto done = jobs.wait(token, std::chrono::milliseconds(1));
    CHECK(done.status == JobStatus::Succeeded);
    REQUIRE(done.result.has_value());
    CHECK(done.result->solve_time > 0.0);
    CHECK(*done.finished_at >= done.submitted_at);

    auto starving = one_worker_request();
    starving.nfvi[0].capacity = {100, 10};
    const auto bad = jobs.wait(jobs.submit(starving), std::chrono::milliseconds(1));
    CHECK(bad.status == JobStatus::Infeasible);
    CHECK_FALSE(bad.error.has_value());
    CHECK_FALSE(bad.result.has_value());
    CHECK_FALSE(bad.violations.empty());

    CHECK_THROWS_AS(jobs.status(random_token()), UnknownToken);
    CHECK_THROWS_AS(jobs.submit(fixture_request("nope")), UnknownSolver);
    auto invalid = fixture_request();
    invalid.chains.push_back({"c5", "M1"});
    CHECK_THROWS_AS(jobs.submit(invalid), ValidationError);
}

TEST_CASE("job status never regresses")
{
    const auto registry = SolverRegistry::with_builtins();
    JobRunner::Options options;
    options.injected_delay = std::chrono::milliseconds(30);
    options.max_concurrent = 1;
    JobRunner jobs(*registry, options);
    std::vector<std::string> tokens;
    for (int i = 0; i < 3; ++i) {
        tokens.push_back(jobs.submit(fixture_request()));
    }
    std::map<std::string, int> rank;
    auto order = [](JobStatus s) { return s == JobStatus::Pending ? 0 : s == JobStatus::Running ? 1 : 2; };
    bool all_done = false;
    while (!all_done) {
        all_done = true;
        for (const auto& t : tokens) {
            const auto ticket = jobs.status(t);
            const int r = order(ticket.status);
            CHECK(r >= rank[t]);
            rank[t] = r;
            CHECK(ticket.result.has_value() == (ticket.status == JobStatus::Succeeded));
            all_done = all_done && ticket.terminal();
        }
    }
}

TEST_CASE("succeeded tickets survive a restart")
{
    const auto dir = std::filesystem::temp_directory_path() / ("oplaceran-jobs-" + random_token());
    const auto registry = SolverRegistry::with_builtins();
    std::string token;
    JobTicket before;
    {
        JobRunner jobs(*registry, {2, {}, dir});
        token = jobs.submit(fixture_request());
        before = jobs.wait(token, std::chrono::milliseconds(1));
    }
    JobRunner again(*registry, {2, {}, dir});
    const auto after = again.status(token);
    CHECK(after.status == JobStatus::Succeeded);
    CHECK(after.result->placements == before.result->placements);
    std::filesystem::remove_all(dir);
}
