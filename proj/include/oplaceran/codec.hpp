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

#ifndef OPLACERAN_CODEC_HPP
#define OPLACERAN_CODEC_HPP

// JSON encodings of the module types. These are the scenario file format,
// the on-disk catalog documents and the service wire format.

#include <oplaceran/catalogs.hpp>
#include <oplaceran/deployer.hpp>
#include <oplaceran/domain.hpp>
#include <oplaceran/jobs.hpp>
#include <oplaceran/optimizer.hpp>
#include <oplaceran/placer.hpp>

#include <json.hpp>

namespace oplaceran {

using nlohmann::json;

#define OPLACERAN_JSON(T)                       \
    void to_json(json& j, const T& v);          \
    void from_json(const json& j, T& v)

OPLACERAN_JSON(TopologyNode);
OPLACERAN_JSON(Link);
OPLACERAN_JSON(CrosshaulTopology);
OPLACERAN_JSON(ComputeCapacity);
OPLACERAN_JSON(SegmentRequirement);
OPLACERAN_JSON(SplitProfile);
OPLACERAN_JSON(CnfSpec);
OPLACERAN_JSON(CnfSpecSet);
OPLACERAN_JSON(Chain);
OPLACERAN_JSON(ChainPlacement);
OPLACERAN_JSON(NfviResourceEntry);
OPLACERAN_JSON(SolverDescriptor);
OPLACERAN_JSON(CnfImageEntry);
OPLACERAN_JSON(Scenario);
OPLACERAN_JSON(TopologyInputs);
OPLACERAN_JSON(NfviSnapshot);
OPLACERAN_JSON(PlacementRequest);
OPLACERAN_JSON(ObjectiveValue);
OPLACERAN_JSON(PlacementResult);
OPLACERAN_JSON(Violation);
OPLACERAN_JSON(JobTicket);
OPLACERAN_JSON(PodSpec);
OPLACERAN_JSON(ChainHop);
OPLACERAN_JSON(ChainingPlan);
OPLACERAN_JSON(AllocationPlan);
OPLACERAN_JSON(PodRecord);
OPLACERAN_JSON(TimelineMarker);
OPLACERAN_JSON(DeploymentRecord);
OPLACERAN_JSON(ClusterState);
OPLACERAN_JSON(NodeMetrics);
OPLACERAN_JSON(LinkMetrics);
OPLACERAN_JSON(ChainLatencyMetric);
OPLACERAN_JSON(ClusterMetrics);
OPLACERAN_JSON(WorkflowEvent);
OPLACERAN_JSON(OrchestrationRecord);
OPLACERAN_JSON(ExternalInputs);

#undef OPLACERAN_JSON

} // namespace oplaceran

#endif // OPLACERAN_CODEC_HPP
