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

#ifndef OPLACERAN_TESTS_SUPPORT_HPP
#define OPLACERAN_TESTS_SUPPORT_HPP

// Fixtures plus reference implementations used as oracles. Nothing here calls into the feasibility kernel.

#include <oplaceran/catalogs.hpp>
#include <oplaceran/domain.hpp>
#include <oplaceran/optimizer.hpp>

#include <filesystem>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oplaceran::testing {

std::filesystem::path fixtures_dir();
std::filesystem::path golden_dir();
Scenario load_fixture(const std::string& name);

using Rng = std::mt19937_64;

struct RandomScenarioOptions
{
    int min_workers = 2;
    int max_workers = 5;
    int min_chains = 1;
    int max_chains = 4;
};

/// Connected crosshaul with workers behind one or two switches.
/// Numbers are drawn from fixture-like ranges.
Scenario random_scenario(Rng& rng, const RandomScenarioOptions& options = {});

/// Every simple path from src to dst; the smallest by (latency, hops, node
/// sequence) wins. Exponential, meant for graphs of a dozen nodes.
std::optional<Route> brute_force_path(const CrosshaulTopology& topology, const NodeId& src, const NodeId& dst);

/// Some simple path from src to dst, found by a DFS in shuffled order.
std::vector<LinkId> random_simple_path(const CrosshaulTopology& topology, const NodeId& src, const NodeId& dst,
                                       Rng& rng);

/// Outcome of the straight-line constraint arithmetic. The subject is
/// whatever id the bound belongs to.
struct ReferenceVerdict
{
    std::set<std::pair<ViolationKind, std::string>> violations;
    bool feasible() const { return violations.empty(); }
};

/// Sums path latencies and per-link bitrates by hand, then compares with
/// the bounds. Compute demand is summed per node the same way. Paths must be well formed.
ReferenceVerdict straight_line_check(const std::vector<ChainPlacement>& placements, const PlacementRequest& request);

/// The route the kernel uses between two workers: computed from the
/// lexicographically smaller endpoint, reversed when needed.
Route reference_route(const CrosshaulTopology& topology, const NodeId& a, const NodeId& b);

/// Objective of a complete placement, computed from its paths.
ObjectiveValue reference_objective(const std::vector<ChainPlacement>& placements, const PlacementRequest& request,
                                   ObjectiveKind kind);

/// Exhaustive optimum using reference_route and straight_line_check.
std::optional<ObjectiveValue> reference_optimum(const PlacementRequest& request, ObjectiveKind kind);

/// Placement of every chain for a given (vdu, vcu) per chain, routed with reference_route.
std::vector<ChainPlacement> route_assignment(const PlacementRequest& request,
                                             const std::vector<std::pair<NodeId, NodeId>>& hosts);

} // namespace oplaceran::testing

#endif // OPLACERAN_TESTS_SUPPORT_HPP
