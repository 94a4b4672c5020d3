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

#include <doctest.h>

using namespace oplaceran;
using namespace oplaceran::testing;

namespace {

bool mentions(const ValidationReport& r, const std::string& needle)
{
    for (const auto& v : r.violations) {
        if (v.find(needle) != std::string::npos) {
            return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("canonical fixture topology validates")
{
    const auto s = load_fixture("testbed.scn");
    CHECK(validate_topology(s.topology).ok());
}

TEST_CASE("missing CN anchor and disconnection are reported")
{
    auto topo = load_fixture("testbed.scn").topology;

    auto no_cn = topo;
    no_cn.nodes.erase(std::remove_if(no_cn.nodes.begin(), no_cn.nodes.end(),
                                     [](const TopologyNode& n) { return n.kind == NodeKind::CoreNetworkAnchor; }),
                      no_cn.nodes.end());
    no_cn.links.erase(std::remove_if(no_cn.links.begin(), no_cn.links.end(), [](const Link& l) { return l.touches("CN"); }),
                      no_cn.links.end());
    CHECK(mentions(validate_topology(no_cn), "missing CN anchor"));

    auto cut = topo;
    cut.links.erase(std::remove_if(cut.links.begin(), cut.links.end(), [](const Link& l) { return l.id == "W4-pSw"; }),
                    cut.links.end());
    const auto report = validate_topology(cut);
    CHECK(mentions(report, "disconnected"));
    CHECK(mentions(report, "W4"));
}

TEST_CASE("link invariants")
{
    auto topo = load_fixture("testbed.scn").topology;
    SUBCASE("negative latency")
    {
        topo.links[0].latency = Latency{-1};
        CHECK_FALSE(validate_topology(topo).ok());
    }
    SUBCASE("residual above capacity")
    {
        topo.links[0].residual = topo.links[0].capacity + Bandwidth{1};
        CHECK_FALSE(validate_topology(topo).ok());
    }
    SUBCASE("second link for a node pair")
    {
        auto dup = topo.links[0];
        dup.id = "again";
        topo.links.push_back(dup);
        CHECK(mentions(validate_topology(topo), "duplicates node pair"));
    }
}

TEST_CASE("min_latency_path on the fixture")
{
    const auto topo = load_fixture("testbed.scn").topology;

    const auto self = min_latency_path(topo, "W1", "W1");
    CHECK(self.links.empty());
    CHECK(self.latency.us == 0);

    const auto w1w3 = min_latency_path(topo, "W1", "W3");
    CHECK(w1w3.links == std::vector<LinkId>{"W1-vSw1", "vSw1-pSw", "vSw2-pSw", "W3-vSw2"});
    CHECK(w1w3.latency == Latency::from_ms(2.0));

    const auto w1cn = min_latency_path(topo, "W1", "CN");
    CHECK(w1cn.links == std::vector<LinkId>{"W1-vSw1", "vSw1-pSw", "pSw-CN"});
    CHECK(w1cn.latency == Latency::from_ms(1.0));

    CHECK_THROWS_AS(min_latency_path(topo, "W1", "nowhere"), UnknownNode);
}

TEST_CASE("min_latency_path reports NoPath across a cut")
{
    CrosshaulTopology topo;
    topo.nodes = {{"A", NodeKind::ComputeWorker}, {"B", NodeKind::ComputeWorker}};
    CHECK_THROWS_AS(min_latency_path(topo, "A", "B"), NoPath);
}

TEST_CASE("ties break on hops, then on node sequence")
{
    // Two zero-latency routes A-B-D and A-C-D plus a direct 0 ms link A-D.
    CrosshaulTopology topo;
    for (const auto* id : {"A", "B", "C", "D"}) {
        topo.nodes.push_back({id, NodeKind::PhysicalSwitch});
    }
    auto link = [&](const char* a, const char* b) {
        Link l;
        l.id = std::string(a) + b;
        l.a = a;
        l.b = b;
        l.capacity = l.residual = Bandwidth::from_mbps(1);
        topo.links.push_back(l);
    };
    link("A", "C");
    link("C", "D");
    link("A", "B");
    link("B", "D");
    CHECK(min_latency_path(topo, "A", "D").nodes == std::vector<NodeId>{"A", "B", "D"});
    link("A", "D");
    CHECK(min_latency_path(topo, "A", "D").nodes == std::vector<NodeId>{"A", "D"});
}

TEST_CASE("min_latency_path agrees with exhaustive enumeration")
{
    Rng rng(7);
    int pairs = 0;
    for (int round = 0; round < 60; ++round) {
        const auto s = random_scenario(rng, {2, 8, 1, 1});
        REQUIRE(s.topology.nodes.size() <= 12);
        for (const auto& a : s.topology.nodes) {
            for (const auto& b : s.topology.nodes) {
                const auto fast = min_latency_path(s.topology, a.id, b.id);
                const auto slow = brute_force_path(s.topology, a.id, b.id);
                REQUIRE(slow.has_value());
                CHECK(fast.latency == slow->latency);
                CHECK(fast.links == slow->links);
                CHECK(fast.nodes == slow->nodes);
                CHECK(min_latency_path(s.topology, a.id, b.id) == fast);
                ++pairs;
            }
        }
    }
    CHECK(pairs > 1000);
}

TEST_CASE("classify_scenario is a partition")
{
    auto place = [](const char* ru, const char* du, const char* cu) {
        ChainPlacement p;
        p.vru_node = ru;
        p.vdu_node = du;
        p.vcu_node = cu;
        return classify_scenario(p);
    };
    CHECK(place("W1", "W1", "W1") == ScenarioKind::DRan_Monolithic);
    CHECK(place("W2", "W2", "W1") == ScenarioKind::CRan_DuRuIntegrated);
    CHECK(place("W2", "W1", "W1") == ScenarioKind::CuDuColocated);
    CHECK(place("W1", "W2", "W3") == ScenarioKind::FullySplit);
    CHECK(place("W1", "W2", "W1") == ScenarioKind::FullySplit);
}

TEST_CASE("splits_used lists the separated interfaces")
{
    CHECK(splits_for("W1", "W1", "W1").empty());
    CHECK(splits_for("W2", "W1", "W1") == std::set<SplitOption>{SplitOption::O6});
    CHECK(splits_for("W2", "W2", "W1") == std::set<SplitOption>{SplitOption::O2});
    CHECK(splits_for("W1", "W2", "W3") == std::set<SplitOption>{SplitOption::O2, SplitOption::O6});
}

TEST_CASE("split profile ordering and positivity")
{
    auto p = default_split_profile();
    CHECK(validate_split_profile(p).ok());
    std::swap(p.fronthaul_o6.max_latency, p.midhaul_o2.max_latency);
    CHECK_FALSE(validate_split_profile(p).ok());
    p = default_split_profile();
    p.backhaul_cn.bitrate = Bandwidth{0};
    CHECK_FALSE(validate_split_profile(p).ok());
}

TEST_CASE("default CNF demands keep the vRU the lightest")
{
    const auto specs = default_cnf_specs();
    CHECK(validate_cnf_specs(specs).ok());
    const auto ru = specs.of(RanFunction::vRU).demand;
    CHECK(ru.cpu <= specs.of(RanFunction::vDU).demand.cpu);
    CHECK(ru.cpu <= specs.of(RanFunction::vCU).demand.cpu);
    CHECK(ru.memory <= specs.of(RanFunction::vDU).demand.memory);
    CHECK(ru.memory <= specs.of(RanFunction::vCU).demand.memory);
}

TEST_CASE("unit conversions are exact on fixture values")
{
    CHECK(Latency::from_ms(1.2).us == 1200);
    CHECK(Latency::from_ms(0.1).us == 100);
    CHECK(Bandwidth::from_mbps(152).kbps == 152000);
    CHECK(Bandwidth::from_mbps(0.5).kbps == 500);
}
