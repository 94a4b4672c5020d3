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

#ifndef OPLACERAN_OPTIMIZER_HPP
#define OPLACERAN_OPTIMIZER_HPP

#include <oplaceran/catalogs.hpp>
#include <oplaceran/domain.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace oplaceran {

struct PlacementRequest
{
    CrosshaulTopology topology;
    std::vector<NfviResourceEntry> nfvi;
    std::vector<Chain> chains;
    SplitProfile split_profile;
    CnfSpecSet cnf_specs;
    std::string solver_id;
    /// NFVI catalog sequence the capacities were read from (0 when ad hoc).
    std::uint64_t nfvi_seq = 0;

    friend bool operator==(const PlacementRequest&, const PlacementRequest&) = default;
};

PlacementRequest request_from_scenario(const Scenario& scenario);
PlacementRequest request_from_scenario(const Scenario& scenario, std::string solver_id);

/// Throws ValidationError listing every broken precondition.
void validate_request(const PlacementRequest& request);

struct ObjectiveValue
{
    /// Distinct workers hosting at least one vDU or vCU.
    int cr_count = 0;
    /// Sum over chains of the vCU -> CN hop count.
    int cn_distance = 0;
    /// du-pinned cost in thousandths: alpha * vCU hosts + beta * chain latency (ms).
    std::int64_t cost_milli = 0;

    double cost() const noexcept { return static_cast<double>(cost_milli) / 1000.0; }
    friend bool operator==(const ObjectiveValue&, const ObjectiveValue&) = default;
};

struct PlacementResult
{
    std::vector<ChainPlacement> placements;
    ObjectiveValue objective;
    std::map<LinkId, Bandwidth> link_reservations;
    std::map<NodeId, ComputeCapacity> node_loads;
    std::string solver_id;
    double solve_time = 0.0; // seconds

    /// Node sets hosting vDUs or vCUs.
    std::set<NodeId> aggregation_hosts() const;
};

enum class ViolationKind { Structure, Latency, Bandwidth, Compute };

struct Violation
{
    ViolationKind kind = ViolationKind::Structure;
    std::string subject; // chain, link or node id
    std::string message;
};

struct FeasibilityVerdict
{
    std::vector<Violation> violations;

    bool feasible() const noexcept { return violations.empty(); }
    std::vector<std::string> messages() const;
};

/// One chain mapped onto dense node and link indices of a PlacementContext.
struct ChainRouting
{
    int vru = -1;
    int vdu = -1;
    int vcu = -1;
    const std::vector<int>* fronthaul = nullptr;
    const std::vector<int>* midhaul = nullptr;
    const std::vector<int>* backhaul = nullptr;
    Latency fronthaul_latency;
    Latency midhaul_latency;
    Latency backhaul_latency;
};

/// Precomputed view of a request shared by the feasibility check and the
/// solvers. Holds dense indices with free capacities, plus the min-latency
/// route between every pair of workers and from each worker to the CN anchor.
class PlacementContext
{
public:
    explicit PlacementContext(const PlacementRequest& request);

    struct PathInfo
    {
        std::vector<int> links;
        Latency latency;
        int hops = 0;
    };

    const PlacementRequest& request() const noexcept { return *request_; }

    /// Workers in id order; candidate index i refers to workers()[i].
    const std::vector<NodeId>& workers() const noexcept { return workers_; }
    int worker_index(std::string_view id) const noexcept;
    const std::vector<Link>& links() const noexcept { return request_->topology.links; }
    int link_index(std::string_view id) const noexcept;

    const PathInfo& path(int from_worker, int to_worker) const noexcept { return pair_paths_[from_worker * n_ + to_worker]; }
    const PathInfo& cn_path(int worker) const noexcept { return cn_paths_[worker]; }

    const ComputeCapacity& free_capacity(int worker) const noexcept { return free_[worker]; }
    /// vRU host index per chain, in request order.
    const std::vector<int>& vru_hosts() const noexcept { return vru_hosts_; }

    ChainRouting routing(int vru, int vdu, int vcu) const noexcept;

    /// Checks one chain's segment latencies against the split profile.
    bool latency_ok(const ChainRouting& r) const noexcept;

    /// Accumulated node and link usage for a (partial) placement.
    struct Usage
    {
        std::vector<ComputeCapacity> nodes;
        std::vector<Bandwidth> links;
    };
    Usage empty_usage() const;
    void add(const ChainRouting& r, Usage& u) const noexcept;
    void remove(const ChainRouting& r, Usage& u) const noexcept;
    /// True when the chain's own additions keep every touched node/link within limits.
    bool within_limits(const ChainRouting& r, const Usage& u) const noexcept;
    bool within_limits(const Usage& u) const noexcept;

    /// Itemized check of a complete set of routings. With `sink` null it
    /// stops at the first violation and only the return value matters.
    bool evaluate(const std::vector<ChainRouting>& routings, std::vector<Violation>* sink) const;

    /// Converts solver indices (vdu, vcu per chain) into a result with paths,
    /// reservations and node loads.
    PlacementResult build_result(const std::vector<std::pair<int, int>>& assignment, std::string solver_id,
                                 ObjectiveValue objective) const;

private:
    const PlacementRequest* request_;
    std::vector<NodeId> workers_;
    int n_ = 0;
    std::unordered_map<std::string, int> worker_index_;
    std::unordered_map<std::string, int> link_index_;
    std::vector<PathInfo> pair_paths_;
    std::vector<PathInfo> cn_paths_;
    std::vector<ComputeCapacity> free_;
    std::vector<int> vru_hosts_;
};

/// Lists every violated bound along with any structural defect.
FeasibilityVerdict check_feasibility(const std::vector<ChainPlacement>& placements, const PlacementRequest& request);

enum class ObjectiveKind { Aggregation, DuPinned };

struct DuPinnedWeights
{
    std::int64_t alpha = 100;
    std::int64_t beta = 1;
};

/// Fills objective fields from a placement (cost only when kind is DuPinned).
ObjectiveValue compute_objective(const PlacementContext& ctx, const std::vector<std::pair<int, int>>& assignment,
                                 ObjectiveKind kind, const DuPinnedWeights& weights = {});

using SolveFunction = std::function<PlacementResult(const PlacementRequest&)>;

PlacementResult solve_aggregation_max(const PlacementRequest& request);
PlacementResult solve_du_pinned(const PlacementRequest& request, const DuPinnedWeights& weights = {});
PlacementResult solve_greedy(const PlacementRequest& request);

inline constexpr std::uint64_t kOracleGuard = 10'000'000;

/// Exhaustive joint enumeration. Throws TooLarge above kOracleGuard
/// assignments and InfeasibleRequest when nothing is feasible.
PlacementResult brute_force_oracle(const PlacementRequest& request, ObjectiveKind objective,
                                   const DuPinnedWeights& weights = {});

/// Solver plug-in registry. Descriptors also land in the Placement
/// Solutions catalog when one is attached.
class SolverRegistry
{
public:
    SolverRegistry() = default;
    explicit SolverRegistry(RanCatalogs* catalog) : catalog_(catalog) {}

    /// Throws DuplicateId.
    void register_solver(SolverDescriptor descriptor, SolveFunction fn);
    bool contains(std::string_view id) const;
    std::vector<SolverDescriptor> descriptors() const;

    /// Dispatches on request.solver_id. Throws UnknownSolver or InfeasibleRequest.
    PlacementResult solve(const PlacementRequest& request) const;

    /// Registry holding the built-in solvers.
    static std::unique_ptr<SolverRegistry> with_builtins(RanCatalogs* catalog = nullptr);

private:
    RanCatalogs* catalog_ = nullptr;
    mutable std::mutex mu_;
    std::map<std::string, std::pair<SolverDescriptor, SolveFunction>, std::less<>> solvers_;
};

std::string_view to_string(ObjectiveKind k) noexcept;
std::optional<ObjectiveKind> objective_kind_from_string(std::string_view s) noexcept;
std::string_view to_string(ViolationKind k) noexcept;

} // namespace oplaceran

#endif // OPLACERAN_OPTIMIZER_HPP
