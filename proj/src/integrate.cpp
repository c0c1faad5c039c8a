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
#include "atsg/integrate.hpp"

#include <algorithm>

#include "atsg/error.hpp"

namespace atsg {

namespace {

struct PendingMarker {
  NodeId marker = -1;
  int consumer_step = 0;
};

}  // namespace

std::vector<std::string> integrate(Atsg& graph) {
  std::vector<std::string> warnings;

  std::vector<PendingMarker> pending;
  for (const auto& [id, node] : graph.objects()) {
    if (!node.pending_merge) continue;
    std::vector<const AssemblyUnit*> users = graph.consumers(id);
    if (users.empty()) {
      throw Error("integration: marker " + node.main.id() + " has no consuming unit");
    }
    int first = users.front()->step;
    for (const AssemblyUnit* unit : users) {
      first = std::min(first, unit->step);
    }
    pending.push_back({id, first});
  }
  std::sort(pending.begin(), pending.end(),
            [](const PendingMarker& a, const PendingMarker& b) {
              if (a.consumer_step != b.consumer_step) return a.consumer_step < b.consumer_step;
              return a.marker < b.marker;
            });

  for (const PendingMarker& entry : pending) {
    const PartInstance wanted = graph.object(entry.marker).main;

    // Candidates: dangling states of the same part produced before the
    // consuming step. The nearest (largest) step wins.
    NodeId best = -1;
    int best_step = -2;
    bool ambiguous = false;
    for (const auto& [id, node] : graph.objects()) {
      if (id == entry.marker || node.pending_merge || !(node.main == wanted)) continue;
      if (!graph.consumers(id).empty()) continue;
      const AssemblyUnit* unit = graph.producer(id);
      int step = unit ? unit->step : -1;
      if (step >= entry.consumer_step) continue;
      if (step > best_step) {
        best = id;
        best_step = step;
        ambiguous = false;
      } else if (step == best_step && best >= 0) {
        ambiguous = true;
        if (id < best) best = id;
      }
    }
    if (best < 0) {
      throw Error("integration: no earlier state of " + wanted.id() +
                  " to merge with (step " + std::to_string(entry.consumer_step) + ")");
    }
    if (ambiguous) {
      warnings.push_back("ambiguous merge for " + wanted.id() + " before step " +
                         std::to_string(entry.consumer_step) +
                         "; resolved toward the lower step");
    }

    // The marker survives with the union of both child sets; the earlier
    // unit's output is re-pointed at it.
    ObjectNode& survivor = graph.object(entry.marker);
    const ObjectNode& absorbed = graph.object(best);
    survivor.subs.insert(absorbed.subs.begin(), absorbed.subs.end());
    survivor.pending_merge = false;
    graph.repoint_output(best, entry.marker);
    graph.erase_object(best);
  }
  return warnings;
}

void inherit_children(Atsg& graph) {
  graph.recompute_children();
}

}  // namespace atsg
