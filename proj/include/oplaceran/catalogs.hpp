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

#ifndef OPLACERAN_CATALOGS_HPP
#define OPLACERAN_CATALOGS_HPP

#include <oplaceran/domain.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace oplaceran {

/// NFVI view of one compute node. Free capacity is capacity - allocated.
struct NfviResourceEntry
{
    NodeId node;
    ComputeCapacity capacity;
    ComputeCapacity allocated;
    std::uint64_t snapshot_seq = 0;

    ComputeCapacity free() const noexcept { return capacity - allocated; }
    friend bool operator==(const NfviResourceEntry&, const NfviResourceEntry&) = default;
};

enum class SolverKind { Exact, Heuristic };

struct SolverDescriptor
{
    std::string solver_id;
    SolverKind kind = SolverKind::Exact;
    std::string description;
    friend bool operator==(const SolverDescriptor&, const SolverDescriptor&) = default;
};

struct CnfImageEntry
{
    RanFunction function = RanFunction::vRU;
    std::string image_ref;
    CnfSpec spec;
    friend bool operator==(const CnfImageEntry&, const CnfImageEntry&) = default;
};

/// The canonical input document. Describes the infrastructure and the
/// chains to place on it.
struct Scenario
{
    CrosshaulTopology topology;
    std::vector<NfviResourceEntry> nfvi;
    std::vector<Chain> chains;
    SplitProfile split_profile;
    CnfSpecSet cnf_specs;
    std::string solver;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Checks the cross-references between scenario parts: nfvi entries name
/// compute nodes, vRU pins are distinct workers, plus every per-type invariant.
ValidationReport validate_scenario_inputs(const CrosshaulTopology& topology, const std::vector<NfviResourceEntry>& nfvi,
                                          const std::vector<Chain>& chains, const SplitProfile& split_profile,
                                          const CnfSpecSet& cnf_specs);

/// Throws ParseError for malformed documents (including duplicate node or
/// link ids) and ValidationError when a loaded value breaks an invariant.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(std::istream& in);
Scenario load_scenario_file(const std::filesystem::path& path);
std::string store_scenario(const Scenario& scenario);

/// Parses a scenario document and returns its validated topology.
CrosshaulTopology load_topology(std::istream& in);

SplitProfile default_split_profile();
CnfSpecSet default_cnf_specs();
std::vector<CnfImageEntry> default_cnf_catalog();

/// Topology Inputs sub-catalog payload.
struct TopologyInputs
{
    CrosshaulTopology topology;
    SplitProfile split_profile;
    friend bool operator==(const TopologyInputs&, const TopologyInputs&) = default;
};

struct NfviSnapshot
{
    std::uint64_t seq = 0;
    std::vector<NfviResourceEntry> entries; // sorted by node id

    const NfviResourceEntry* find(std::string_view node) const noexcept;
    friend bool operator==(const NfviSnapshot&, const NfviSnapshot&) = default;
};

/// The four sub-catalogs: Topology Inputs, NFVI Resources, Placement
/// Solutions and RAN CNFs.
///
/// Each sub-catalog is single-writer; readers get an immutable snapshot
/// (shared_ptr to const) that later commits never touch. When a data
/// directory is attached every commit is also written there, one JSON
/// document per sub-catalog.
class RanCatalogs
{
public:
    RanCatalogs();
    explicit RanCatalogs(std::filesystem::path data_dir);

    RanCatalogs(const RanCatalogs&) = delete;
    RanCatalogs& operator=(const RanCatalogs&) = delete;

    /// Replaces catalog contents with what the scenario describes.
    void seed(const Scenario& scenario);

    void set_topology_inputs(TopologyInputs inputs);
    /// Throws CatalogUnavailable before the first set_topology_inputs.
    std::shared_ptr<const TopologyInputs> topology_inputs() const;
    bool has_topology() const;

    /// Upserts the given entries atomically and returns the new global
    /// sequence number, which also stamps every written entry. Throws
    /// UnknownNode for entries that are not compute nodes of the topology.
    std::uint64_t update_nfvi(std::vector<NfviResourceEntry> entries);
    std::shared_ptr<const NfviSnapshot> nfvi() const;

    /// Throws DuplicateId.
    void register_solver(SolverDescriptor descriptor);
    std::vector<SolverDescriptor> solvers() const;
    std::optional<SolverDescriptor> find_solver(std::string_view id) const;

    void set_cnf_images(std::vector<CnfImageEntry> entries);
    std::vector<CnfImageEntry> cnf_images() const;
    /// Throws MissingEntry.
    CnfImageEntry get_cnf_image(RanFunction function) const;
    /// Throws MissingEntry when any function lacks an entry.
    CnfSpecSet cnf_specs() const;

    const std::optional<std::filesystem::path>& data_dir() const noexcept { return data_dir_; }

private:
    void persist_topology() const;
    void persist_nfvi() const;
    void persist_solvers() const;
    void persist_cnfs() const;
    void restore();

    std::optional<std::filesystem::path> data_dir_;

    mutable std::mutex topology_mu_;
    std::shared_ptr<const TopologyInputs> topology_;

    mutable std::mutex nfvi_mu_;
    std::mutex nfvi_writer_;
    std::shared_ptr<const NfviSnapshot> nfvi_;

    mutable std::mutex solvers_mu_;
    std::vector<SolverDescriptor> solvers_;

    mutable std::mutex cnfs_mu_;
    std::vector<CnfImageEntry> cnfs_;
};

/// Writes `content` to `path` through a temporary file and a rename.
void write_file_atomically(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

std::string_view to_string(SolverKind k) noexcept;

} // namespace oplaceran

#endif // OPLACERAN_CATALOGS_HPP
