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

#include <oplaceran/catalogs.hpp>
#include <oplaceran/codec.hpp>
#include <oplaceran/errors.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace oplaceran {

ValidationReport validate_scenario_inputs(const CrosshaulTopology& topology, const std::vector<NfviResourceEntry>& nfvi,
                                          const std::vector<Chain>& chains, const SplitProfile& split_profile,
                                          const CnfSpecSet& cnf_specs)
{
    auto report = validate_topology(topology);
    auto& v = report.violations;
    for (auto& s : validate_split_profile(split_profile).violations) {
        v.push_back(std::move(s));
    }
    for (auto& s : validate_cnf_specs(cnf_specs).violations) {
        v.push_back(std::move(s));
    }
    std::unordered_set<std::string> chain_ids;
    std::unordered_set<std::string> pins;
    for (const auto& c : chains) {
        if (c.chain_id.empty()) {
            v.push_back("chain with empty id");
        } else if (!chain_ids.insert(c.chain_id).second) {
            v.push_back("duplicate chain id " + c.chain_id);
        }
        const auto* node = topology.find_node(c.vru_node);
        if (node == nullptr) {
            v.push_back("chain " + c.chain_id + " pins vRU to unknown node " + c.vru_node);
        } else if (node->kind != NodeKind::ComputeWorker) {
            v.push_back("chain " + c.chain_id + " pins vRU to non-worker " + c.vru_node);
        }
        if (!pins.insert(c.vru_node).second) {
            v.push_back("vRU pin " + c.vru_node + " used by more than one chain");
        }
    }
    std::unordered_set<std::string> nfvi_nodes;
    for (const auto& e : nfvi) {
        const auto* node = topology.find_node(e.node);
        if (node == nullptr || !node->is_compute()) {
            v.push_back("nfvi entry for unknown compute node " + e.node);
        }
        if (!nfvi_nodes.insert(e.node).second) {
            v.push_back("duplicate nfvi entry for " + e.node);
        }
        if (!e.capacity.non_negative() || !e.allocated.non_negative() || !e.allocated.fits_within(e.capacity)) {
            v.push_back("nfvi entry for " + e.node + " breaks 0 <= allocated <= capacity");
        }
    }
    return report;
}

Scenario parse_scenario(std::string_view text)
{
    Scenario s;
    try {
        s = json::parse(text.begin(), text.end()).get<Scenario>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed scenario: ") + e.what());
    }
    auto report = validate_scenario_inputs(s.topology, s.nfvi, s.chains, s.split_profile, s.cnf_specs);
    if (!report.ok()) {
        throw ValidationError("invalid scenario", std::move(report.violations));
    }
    return s;
}

Scenario load_scenario(std::istream& in)
{
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

Scenario load_scenario_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open scenario file " + path.string());
    }
    return load_scenario(in);
}

std::string store_scenario(const Scenario& scenario)
{
    return json(scenario).dump(2) + "\n";
}

CrosshaulTopology load_topology(std::istream& in)
{
    return load_scenario(in).topology;
}

SplitProfile default_split_profile()
{
    return SplitProfile{
        {Latency::from_ms(2.0), Bandwidth::from_mbps(152)},
        {Latency::from_ms(10.0), Bandwidth::from_mbps(151)},
        {Latency::from_ms(30.0), Bandwidth::from_mbps(150)},
    };
}

CnfSpecSet default_cnf_specs()
{
    CnfSpecSet s;
    s.of(RanFunction::vRU) = {RanFunction::vRU, {400, 80}, "oplaceran/oai-vru:1.0"};
    s.of(RanFunction::vDU) = {RanFunction::vDU, {500, 120}, "oplaceran/oai-vdu:1.0"};
    s.of(RanFunction::vCU) = {RanFunction::vCU, {500, 400}, "oplaceran/oai-vcu:1.0"};
    return s;
}

std::vector<CnfImageEntry> default_cnf_catalog()
{
    std::vector<CnfImageEntry> out;
    const auto specs = default_cnf_specs();
    for (auto f : kRanFunctions) {
        out.push_back({f, specs.of(f).image_ref, specs.of(f)});
    }
    return out;
}

const NfviResourceEntry* NfviSnapshot::find(std::string_view node) const noexcept
{
    for (const auto& e : entries) {
        if (e.node == node) {
            return &e;
        }
    }
    return nullptr;
}

// ---------------------------------------------------------------------------

RanCatalogs::RanCatalogs()
    : nfvi_(std::make_shared<const NfviSnapshot>()), cnfs_(default_cnf_catalog())
{
}

RanCatalogs::RanCatalogs(std::filesystem::path data_dir) : RanCatalogs()
{
    std::filesystem::create_directories(data_dir);
    data_dir_ = std::move(data_dir);
    restore();
}

void RanCatalogs::seed(const Scenario& scenario)
{
    set_topology_inputs({scenario.topology, scenario.split_profile});
    std::vector<CnfImageEntry> images;
    for (auto f : kRanFunctions) {
        const auto& spec = scenario.cnf_specs.of(f);
        images.push_back({f, spec.image_ref, spec});
    }
    set_cnf_images(std::move(images));
    update_nfvi(scenario.nfvi);
}

void RanCatalogs::set_topology_inputs(TopologyInputs inputs)
{
    auto v = validate_topology(inputs.topology).violations;
    for (auto& s : validate_split_profile(inputs.split_profile).violations) {
        v.push_back(std::move(s));
    }
    if (!v.empty()) {
        throw ValidationError("invalid topology inputs", std::move(v));
    }
    {
        std::lock_guard lock(topology_mu_);
        topology_ = std::make_shared<const TopologyInputs>(std::move(inputs));
    }
    persist_topology();
}

std::shared_ptr<const TopologyInputs> RanCatalogs::topology_inputs() const
{
    std::lock_guard lock(topology_mu_);
    if (!topology_) {
        throw CatalogUnavailable("topology inputs catalog is empty");
    }
    return topology_;
}

bool RanCatalogs::has_topology() const
{
    std::lock_guard lock(topology_mu_);
    return topology_ != nullptr;
}

std::uint64_t RanCatalogs::update_nfvi(std::vector<NfviResourceEntry> entries)
{
    std::lock_guard writer(nfvi_writer_);
    std::shared_ptr<const TopologyInputs> topo;
    {
        std::lock_guard lock(topology_mu_);
        topo = topology_;
    }
    for (const auto& e : entries) {
        const TopologyNode* node = topo ? topo->topology.find_node(e.node) : nullptr;
        if (node == nullptr || !node->is_compute()) {
            throw UnknownNode("nfvi entry for unknown compute node " + e.node);
        }
    }

    const auto current = nfvi();
    auto next = std::make_shared<NfviSnapshot>(*current);
    next->seq = current->seq + 1;
    for (auto& e : entries) {
        e.snapshot_seq = next->seq;
        auto it = std::find_if(next->entries.begin(), next->entries.end(),
                               [&](const NfviResourceEntry& x) { return x.node == e.node; });
        if (it != next->entries.end()) {
            *it = std::move(e);
        } else {
            next->entries.push_back(std::move(e));
        }
    }
    std::sort(next->entries.begin(), next->entries.end(),
              [](const NfviResourceEntry& a, const NfviResourceEntry& b) { return a.node < b.node; });
    const auto seq = next->seq;
    {
        std::lock_guard lock(nfvi_mu_);
        nfvi_ = std::move(next);
    }
    persist_nfvi();
    return seq;
}

std::shared_ptr<const NfviSnapshot> RanCatalogs::nfvi() const
{
    std::lock_guard lock(nfvi_mu_);
    return nfvi_;
}

void RanCatalogs::register_solver(SolverDescriptor descriptor)
{
    {
        std::lock_guard lock(solvers_mu_);
        for (const auto& d : solvers_) {
            if (d.solver_id == descriptor.solver_id) {
                throw DuplicateId("solver " + descriptor.solver_id + " already registered");
            }
        }
        solvers_.push_back(std::move(descriptor));
        std::sort(solvers_.begin(), solvers_.end(),
                  [](const SolverDescriptor& a, const SolverDescriptor& b) { return a.solver_id < b.solver_id; });
    }
    persist_solvers();
}

std::vector<SolverDescriptor> RanCatalogs::solvers() const
{
    std::lock_guard lock(solvers_mu_);
    return solvers_;
}

std::optional<SolverDescriptor> RanCatalogs::find_solver(std::string_view id) const
{
    std::lock_guard lock(solvers_mu_);
    for (const auto& d : solvers_) {
        if (d.solver_id == id) {
            return d;
        }
    }
    return std::nullopt;
}

void RanCatalogs::set_cnf_images(std::vector<CnfImageEntry> entries)
{
    {
        std::lock_guard lock(cnfs_mu_);
        cnfs_ = std::move(entries);
    }
    persist_cnfs();
}

std::vector<CnfImageEntry> RanCatalogs::cnf_images() const
{
    std::lock_guard lock(cnfs_mu_);
    return cnfs_;
}

CnfImageEntry RanCatalogs::get_cnf_image(RanFunction function) const
{
    std::lock_guard lock(cnfs_mu_);
    for (const auto& e : cnfs_) {
        if (e.function == function) {
            return e;
        }
    }
    throw MissingEntry("no CNF image for " + std::string(to_string(function)));
}

CnfSpecSet RanCatalogs::cnf_specs() const
{
    CnfSpecSet s;
    for (auto f : kRanFunctions) {
        s.of(f) = get_cnf_image(f).spec;
    }
    return s;
}

void RanCatalogs::persist_topology() const
{
    if (!data_dir_) {
        return;
    }
    const auto topo = topology_inputs();
    write_file_atomically(*data_dir_ / "topology.json", json(*topo).dump(2) + "\n");
}

void RanCatalogs::persist_nfvi() const
{
    if (!data_dir_) {
        return;
    }
    write_file_atomically(*data_dir_ / "nfvi.json", json(*nfvi()).dump(2) + "\n");
}

void RanCatalogs::persist_solvers() const
{
    if (!data_dir_) {
        return;
    }
    write_file_atomically(*data_dir_ / "solvers.json", json(solvers()).dump(2) + "\n");
}

void RanCatalogs::persist_cnfs() const
{
    if (!data_dir_) {
        return;
    }
    write_file_atomically(*data_dir_ / "cnfs.json", json(cnf_images()).dump(2) + "\n");
}

void RanCatalogs::restore()
{
    const auto& dir = *data_dir_;
    try {
        if (std::filesystem::exists(dir / "topology.json")) {
            topology_ = std::make_shared<const TopologyInputs>(
                json::parse(read_file(dir / "topology.json")).get<TopologyInputs>());
        }
        if (std::filesystem::exists(dir / "nfvi.json")) {
            nfvi_ = std::make_shared<const NfviSnapshot>(json::parse(read_file(dir / "nfvi.json")).get<NfviSnapshot>());
        }
        if (std::filesystem::exists(dir / "solvers.json")) {
            solvers_ = json::parse(read_file(dir / "solvers.json")).get<std::vector<SolverDescriptor>>();
        }
        if (std::filesystem::exists(dir / "cnfs.json")) {
            cnfs_ = json::parse(read_file(dir / "cnfs.json")).get<std::vector<CnfImageEntry>>();
        }
    } catch (const json::exception& e) {
        throw ParseError("corrupt catalog in " + dir.string() + ": " + e.what());
    }
}

void write_file_atomically(const std::filesystem::path& path, const std::string& content)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write " + tmp.string());
        }
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string_view to_string(SolverKind k) noexcept
{
    return k == SolverKind::Exact ? "Exact" : "Heuristic";
}

} // namespace oplaceran
