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
#include "atsg/recovery.hpp"

#include <algorithm>

#include "atsg/error.hpp"

namespace atsg {

int ReconciliationLog::added_at(int image) const {
  int n = 0;
  for (const ReconcileAction& a : actions) {
    if (a.kind == ReconcileAction::Kind::Added && a.image == image) ++n;
  }
  return n;
}

int ReconciliationLog::removed_at(int image) const {
  int n = 0;
  for (const ReconcileAction& a : actions) {
    if (a.kind == ReconcileAction::Kind::Removed && a.image == image) ++n;
  }
  return n;
}

int ReconciliationLog::total_added() const {
  int n = 0;
  for (const ReconcileAction& a : actions) {
    if (a.kind == ReconcileAction::Kind::Added) ++n;
  }
  return n;
}

int ReconciliationLog::total_removed() const {
  int n = 0;
  for (const ReconcileAction& a : actions) {
    if (a.kind == ReconcileAction::Kind::Removed) ++n;
  }
  return n;
}

int insert_missing(Atsg& graph, const std::string& type, const Catalog& catalog) {
  if (!catalog.has(type)) {
    throw Error("insert_missing: unknown part type \"" + type + "\"");
  }
  const AssemblyUnit* tmpl = graph.last_attachment_of(type);
  if (tmpl == nullptr) {
    throw Error("unrecoverable deficiency: no assembly step ever attaches \"" + type +
                "\", cannot place the missing part");
  }
  int max_ordinal = 0;
  for (const auto& [id, node] : graph.objects()) {
    if (graph.producer(id) == nullptr && node.main.type == type) {
      max_ordinal = std::max(max_ordinal, node.main.ordinal);
    }
  }
  return graph.splice_attachment_after(tmpl->step, PartInstance{type, max_ordinal + 1});
}

void remove_excess(Atsg& graph, const std::string& type, int count) {
  if (count == 0) return;
  int available = 0;
  for (const AssemblyUnit& unit : graph.units()) {
    const ObjectNode& attached = graph.object(unit.attached_input);
    if (attached.main.type == type && attached.subs.empty() &&
        graph.producer(unit.attached_input) == nullptr) {
      ++available;
    }
  }
  if (available < count) {
    throw Error("remove_excess: only " + std::to_string(available) + " units attach \"" +
                type + "\", cannot remove " + std::to_string(count));
  }
  for (int i = 0; i < count; ++i) {
    graph.remove_attachment_unit(graph.last_attachment_of(type)->step);
  }
  graph.compact_ordinals();
  graph.recompute_children();
}

ReconciliationLog reconcile(Atsg& graph, const Catalog& catalog) {
  ReconciliationLog log;

  std::vector<NodeId> roots = graph.roots();
  if (roots.size() != 1) {
    throw Error("cannot reconcile: expected a single final output, found " +
                std::to_string(roots.size()));
  }

  // Catalog declaration order keeps the log stable.
  std::vector<const PartType*> types;
  for (const auto& [name, part] : catalog.parts()) {
    types.push_back(&part);
  }
  std::sort(types.begin(), types.end(),
            [](const PartType* a, const PartType* b) {
              return a->catalog_index < b->catalog_index;
            });

  auto closure_of_root = [&graph]() {
    return graph.closure_counts(graph.roots().front());
  };

  std::map<std::string, int> closure = closure_of_root();
  bool removed_any = false;
  for (const PartType* type : types) {
    int have = closure.count(type->name) ? closure.at(type->name) : 0;
    for (int i = type->total_count; i < have; ++i) {
      const AssemblyUnit* victim = graph.last_attachment_of(type->name);
      if (victim == nullptr) {
        throw Error("cannot reconcile: " + std::to_string(have - type->total_count) +
                    " excess \"" + type->name + "\" but no removable attachment step");
      }
      ReconcileAction action;
      action.kind = ReconcileAction::Kind::Removed;
      action.instance = graph.object(victim->attached_input).main;
      action.image = victim->origin_image;
      action.reason = "exceeds ground-truth total " + std::to_string(type->total_count);
      log.actions.push_back(action);
      graph.remove_attachment_unit(victim->step);
      removed_any = true;
    }
  }
  if (removed_any) {
    graph.compact_ordinals();
    graph.recompute_children();
  }

  closure = closure_of_root();
  for (const PartType* type : types) {
    int have = closure.count(type->name) ? closure.at(type->name) : 0;
    for (int i = have; i < type->total_count; ++i) {
      int step = insert_missing(graph, type->name, catalog);
      const AssemblyUnit* unit = graph.unit_by_step(step);
      ReconcileAction action;
      action.kind = ReconcileAction::Kind::Added;
      action.instance = graph.object(unit->attached_input).main;
      action.image = unit->origin_image;
      action.reason = "detected fewer than ground-truth total " +
                      std::to_string(type->total_count);
      log.actions.push_back(action);
    }
  }

  closure = closure_of_root();
  for (const PartType* type : types) {
    int have = closure.count(type->name) ? closure.at(type->name) : 0;
    if (have != type->total_count) {
      throw Error("reconcile did not converge for \"" + type->name + "\": " +
                  std::to_string(have) + " vs total " + std::to_string(type->total_count));
    }
  }
  for (const auto& [name, count] : closure) {
    if (!catalog.has(name)) {
      throw Error("reconcile: closure contains unknown part type \"" + name + "\"");
    }
  }
  log.converged = true;
  return log;
}

}  // namespace atsg
