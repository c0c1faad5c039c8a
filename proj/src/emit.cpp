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
#include "atsg/emit.hpp"

#include <map>
#include <set>
#include <sstream>

namespace atsg {

namespace {

std::string escape_label(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string emit_dot(const Atsg& graph) {
  std::ostringstream out;
  out << "digraph atsg {\n";
  out << "  node [style=filled];\n";

  std::map<NodeId, std::string> lines;
  for (const auto& [id, node] : graph.objects()) {
    std::string label = escape_label(node.main.id());
    if (graph.producer(id) != nullptr) {
      label += "\\n(" + std::to_string(node.subs.size() + 1) + " parts)";
    }
    lines[id] = "  o" + std::to_string(id) +
                " [shape=box, fillcolor=\"lightskyblue\", label=\"" + label + "\"];\n";
  }
  for (const auto& [id, node] : graph.motions()) {
    lines[id] = "  m" + std::to_string(id) +
                " [shape=ellipse, fillcolor=\"lightcoral\", label=\"" +
                escape_label(node.verb) + "\"];\n";
  }
  for (const auto& [id, node] : graph.hands()) {
    lines[id] = "  h" + std::to_string(id) +
                " [shape=diamond, fillcolor=\"palegreen\", label=\"" +
                escape_label(node.tool) + "\"];\n";
  }
  for (const auto& [id, line] : lines) {
    out << line;
  }

  for (const AssemblyUnit& unit : graph.units()) {
    out << "  o" << unit.parent_input << " -> m" << unit.motion << ";\n";
    out << "  o" << unit.attached_input << " -> m" << unit.motion << ";\n";
    for (NodeId hand : unit.hands) {
      out << "  h" << hand << " -> m" << unit.motion << ";\n";
    }
    out << "  m" << unit.motion << " -> o" << unit.output << ";\n";
  }
  out << "}\n";
  return out.str();
}

ReportJson emit_node_report(const Atsg& graph, const std::vector<int>& image_indices) {
  ReportJson report;
  ReportJson rows = ReportJson::array();
  int object_sum = 0;
  int motion_sum = 0;
  int hand_sum = 0;
  for (int image : image_indices) {
    std::set<NodeId> objects;
    std::set<NodeId> hands;
    int motions = 0;
    for (const AssemblyUnit& unit : graph.units()) {
      if (unit.origin_image != image) continue;
      objects.insert(unit.parent_input);
      objects.insert(unit.attached_input);
      objects.insert(unit.output);
      hands.insert(unit.hands.begin(), unit.hands.end());
      ++motions;
    }
    ReportJson row;
    row["image"] = image;
    row["object"] = objects.size();
    row["motion"] = motions;
    row["hand"] = hands.size();
    rows.push_back(row);
    object_sum += static_cast<int>(objects.size());
    motion_sum += motions;
    hand_sum += static_cast<int>(hands.size());
  }
  report["per_image"] = rows;
  report["entire"] = {{"object", graph.objects().size()},
                      {"motion", graph.motions().size()},
                      {"hand", graph.hands().size()}};
  report["per_image_sum"] = {{"object", object_sum},
                             {"motion", motion_sum},
                             {"hand", hand_sum}};
  return report;
}

ReportJson emit_complement_report(const ReconciliationLog& log,
                                  const std::vector<UnitGroup>& groups,
                                  const std::vector<int>& image_indices) {
  ReportJson report;
  ReportJson rows = ReportJson::array();
  int info_add = 0;
  int info_remove = 0;
  int total_add = 0;
  int total_remove = 0;
  for (int image : image_indices) {
    int add = 0;
    int remove = 0;
    for (const UnitGroup& group : groups) {
      if (group.image_index == image) {
        add += group.added_part_info;
        remove += group.removed_part_info;
      }
    }
    ReportJson row;
    row["image"] = image;
    row["part_info"] = {{"add", add}, {"remove", remove}};
    row["total_number"] = {{"add", log.added_at(image)}, {"remove", log.removed_at(image)}};
    rows.push_back(row);
    info_add += add;
    info_remove += remove;
    total_add += log.added_at(image);
    total_remove += log.removed_at(image);
  }
  report["per_image"] = rows;
  report["all_images"] = {{"part_info", {{"add", info_add}, {"remove", info_remove}}},
                          {"total_number", {{"add", total_add}, {"remove", total_remove}}}};
  return report;
}

ReportJson emit_plan(const Schedule& schedule, const Atsg& graph) {
  ReportJson plan;
  plan["arms"] = schedule.arms;
  plan["makespan"] = schedule.makespan;
  plan["tool_changes"] = schedule.tool_changes;
  ReportJson steps = ReportJson::array();
  for (const ScheduleStep& step : schedule.steps) {
    const AssemblyUnit* unit = graph.unit_by_step(step.unit_step);
    ReportJson entry;
    entry["slot"] = step.slot;
    entry["arm"] = step.arm;
    entry["verb"] = graph.motion(unit->motion).verb;
    entry["parent"] = graph.object(unit->parent_input).main.id();
    entry["attached"] = graph.object(unit->attached_input).main.id();
    entry["parent_tool"] = graph.hand(unit->hands.at(0)).tool;
    entry["attached_tool"] = graph.hand(unit->hands.at(1)).tool;
    steps.push_back(entry);
  }
  plan["steps"] = steps;
  return plan;
}

}  // namespace atsg
