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

#include "atsg/catalog.hpp"
#include "atsg/graph.hpp"

namespace atsg {

struct ScheduleStep {
  int slot = 0;  // 1-based time index
  int arm = 0;
  int unit_step = 0;
  std::string tool;
};

struct Schedule {
  int arms = 1;
  std::vector<ScheduleStep> steps;  // sorted by (slot, arm)
  int makespan = 0;
  std::vector<int> tool_changes;  // per arm
};

/// Unit steps in a deterministic linear extension of the precedence order
/// (ties broken by lower step).
std::vector<int> topo_order(const Atsg& graph);

/// The tool a unit's task runs under: the first non-default hand tool, or
/// the default holder.
std::string primary_tool(const Atsg& graph, const AssemblyUnit& unit, const Catalog& catalog);

struct ToolPlan {
  std::vector<int> order;  // unit steps
  int change_count = 0;
  bool exact = false;  // true when the count is a proven minimum
};

/// Linear extension minimizing adjacent tool switches: exact for graphs of
/// at most 12 units (search over all extensions), greedy same-tool-first
/// beyond that with the achieved count reported as an upper bound.
ToolPlan minimize_tool_changes(const Atsg& graph, const Catalog& catalog);

/// Greedy list schedule over ready units with unit task durations. Ready
/// units prefer the arm's current tool, then the lower step. With
/// dedicated_tool_arm, tools are pinned round-robin to arms and units only
/// run on their tool's arm.
Schedule schedule_arms(const Atsg& graph, const Catalog& catalog, int arms,
                       bool dedicated_tool_arm = false);

}  // namespace atsg
