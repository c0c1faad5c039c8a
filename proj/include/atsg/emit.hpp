/* Copyright 2026 The atsgc Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#pragma once

#include <string>
#include <vector>

#include "atsg/build.hpp"
#include "atsg/graph.hpp"
#include "atsg/recovery.hpp"
#include "atsg/schedule.hpp"
#include "json.hpp"

namespace atsg {

using ReportJson = nlohmann::ordered_json;

/// Graph-description text: object nodes blue boxes, motion nodes red
/// ellipses, hand nodes green diamonds; byte-deterministic node order.
std::string emit_dot(const Atsg& graph);

/// Per-image object/motion/hand counts plus entire-graph counts. Per-image
/// rows count a node once per image it serves, so shared states appear in
/// several rows; "entire" holds the distinct counts and "per_image_sum" the
/// row sums, with both conventions emitted side by side.
ReportJson emit_node_report(const Atsg& graph, const std::vector<int>& image_indices);

/// Per-image complemented part information (inherited vs excluded child
/// parts) and ground-truth-total corrections (units added/removed).
ReportJson emit_complement_report(const ReconciliationLog& log,
                                  const std::vector<UnitGroup>& groups,
                                  const std::vector<int>& image_indices);

/// Canonical executable plan: one line per unit sorted by (slot, arm), with
/// verb, both input part identities and the tool per hand. Byte equality of
/// two plans is the graph-equivalence check.
ReportJson emit_plan(const Schedule& schedule, const Atsg& graph);

}  // namespace atsg
