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
#include "atsg/schedule.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "atsg/error.hpp"

namespace atsg {

namespace {

// Unit precedence as index lists: succ/pred via produced-consumed states.
struct Precedence {
  std::vector<const AssemblyUnit*> units;  // step-sorted
  std::vector<std::vector<int>> preds;
  std::vector<std::vector<int>> succs;
};

Precedence precedence_of(const Atsg& graph) {
  Precedence p;
  for (const AssemblyUnit& unit : graph.units()) {
    p.units.push_back(&unit);
  }
  const int n = static_cast<int>(p.units.size());
  p.preds.resize(n);
  p.succs.resize(n);
  std::map<NodeId, int> producer_of;
  for (int i = 0; i < n; ++i) {
    producer_of[p.units[i]->output] = i;
  }
  for (int i = 0; i < n; ++i) {
    for (NodeId input : {p.units[i]->parent_input, p.units[i]->attached_input}) {
      auto it = producer_of.find(input);
      if (it != producer_of.end()) {
        p.preds[i].push_back(it->second);
        p.succs[it->second].push_back(i);
      }
    }
  }
  return p;
}

}  // namespace

std::vector<int> topo_order(const Atsg& graph) {
  Precedence p = precedence_of(graph);
  const int n = static_cast<int>(p.units.size());
  std::vector<int> indegree(n, 0);
  for (int i = 0; i < n; ++i) {
    indegree[i] = static_cast<int>(p.preds[i].size());
  }
  std::set<std::pair<int, int>> ready;  // (step, index)
  for (int i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.insert({p.units[i]->step, i});
  }
  std::vector<int> order;
  while (!ready.empty()) {
    auto [step, i] = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(step);
    for (int succ : p.succs[i]) {
      if (--indegree[succ] == 0) ready.insert({p.units[succ]->step, succ});
    }
  }
  if (static_cast<int>(order.size()) != n) {
    throw Error("topo_order: cycle in unit precedence");
  }
  return order;
}

std::string primary_tool(const Atsg& graph, const AssemblyUnit& unit, const Catalog& catalog) {
  for (NodeId id : unit.hands) {
    const std::string& tool = graph.hand(id).tool;
    if (tool != catalog.default_tool()) {
      return tool;
    }
  }
  return catalog.default_tool();
}

namespace {

struct ToolSearch {
  const Precedence* p = nullptr;
  std::vector<int> tool_of;  // interned tool per unit
  int n = 0;
  std::unordered_map<uint64_t, int> memo;

  bool unit_ready(uint32_t mask, int i) const {
    if (mask & (1u << i)) return false;
    for (int pred : p->preds[i]) {
      if (!(mask & (1u << pred))) return false;
    }
    return true;
  }

  int best_changes(uint32_t mask, int last_tool) {
    if (mask == (n == 32 ? ~0u : (1u << n) - 1)) return 0;
    uint64_t key = (static_cast<uint64_t>(mask) << 8) | static_cast<uint64_t>(last_tool + 1);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int best = 1 << 28;
    for (int i = 0; i < n; ++i) {
      if (!unit_ready(mask, i)) continue;
      int cost = (last_tool >= 0 && tool_of[i] != last_tool) ? 1 : 0;
      best = std::min(best, cost + best_changes(mask | (1u << i), tool_of[i]));
    }
    memo[key] = best;
    return best;
  }
};

}  // namespace

ToolPlan minimize_tool_changes(const Atsg& graph, const Catalog& catalog) {
  Precedence p = precedence_of(graph);
  const int n = static_cast<int>(p.units.size());
  ToolPlan plan;
  if (n == 0) {
    plan.exact = true;
    return plan;
  }

  std::vector<std::string> tools(n);
  for (int i = 0; i < n; ++i) {
    tools[i] = primary_tool(graph, *p.units[i], catalog);
  }

  if (n <= 12) {
    std::map<std::string, int> intern;
    ToolSearch search;
    search.p = &p;
    search.n = n;
    search.tool_of.resize(n);
    for (int i = 0; i < n; ++i) {
      auto [it, unused] = intern.emplace(tools[i], static_cast<int>(intern.size()));
      search.tool_of[i] = it->second;
    }
    plan.change_count = search.best_changes(0, -1);
    plan.exact = true;

    // Rebuild one optimal order, preferring the lower step among optimal moves.
    uint32_t mask = 0;
    int last = -1;
    int remaining = plan.change_count;
    while (static_cast<int>(plan.order.size()) < n) {
      int pick = -1;
      int pick_step = 1 << 28;
      for (int i = 0; i < n; ++i) {
        if (!search.unit_ready(mask, i)) continue;
        int cost = (last >= 0 && search.tool_of[i] != last) ? 1 : 0;
        if (cost + search.best_changes(mask | (1u << i), search.tool_of[i]) == remaining &&
            p.units[i]->step < pick_step) {
          pick = i;
          pick_step = p.units[i]->step;
        }
      }
      if (last >= 0 && search.tool_of[pick] != last) --remaining;
      last = search.tool_of[pick];
      mask |= (1u << pick);
      plan.order.push_back(p.units[pick]->step);
    }
    return plan;
  }

  // Greedy same-tool-first; the achieved count is an upper bound.
  std::vector<int> indegree(n, 0);
  for (int i = 0; i < n; ++i) {
    indegree[i] = static_cast<int>(p.preds[i].size());
  }
  std::vector<bool> done(n, false);
  std::string current;
  bool first = true;
  for (int scheduled = 0; scheduled < n; ++scheduled) {
    int pick = -1;
    int pick_step = 1 << 28;
    bool pick_same = false;
    for (int i = 0; i < n; ++i) {
      if (done[i] || indegree[i] != 0) continue;
      bool same = !first && tools[i] == current;
      if ((same && !pick_same) || ((same == pick_same) && p.units[i]->step < pick_step)) {
        pick = i;
        pick_step = p.units[i]->step;
        pick_same = same;
      }
    }
    if (pick < 0) {
      throw Error("minimize_tool_changes: cycle in unit precedence");
    }
    if (!first && tools[pick] != current) ++plan.change_count;
    current = tools[pick];
    first = false;
    done[pick] = true;
    for (int succ : p.succs[pick]) {
      --indegree[succ];
    }
    plan.order.push_back(p.units[pick]->step);
  }
  plan.exact = false;
  return plan;
}

Schedule schedule_arms(const Atsg& graph, const Catalog& catalog, int arms,
                       bool dedicated_tool_arm) {
  if (arms < 1) {
    throw Error("schedule: need at least one arm");
  }
  Precedence p = precedence_of(graph);
  const int n = static_cast<int>(p.units.size());

  Schedule schedule;
  schedule.arms = arms;
  schedule.tool_changes.assign(arms, 0);
  if (n == 0) {
    return schedule;
  }

  std::vector<std::string> tools(n);
  std::set<std::string> distinct;
  for (int i = 0; i < n; ++i) {
    tools[i] = primary_tool(graph, *p.units[i], catalog);
    distinct.insert(tools[i]);
  }
  std::map<std::string, int> pinned_arm;
  if (dedicated_tool_arm) {
    int k = 0;
    for (const std::string& tool : distinct) {
      pinned_arm[tool] = k++ % arms;
    }
  }

  std::vector<int> finished_slot(n, -1);
  std::vector<std::string> arm_tool(arms);
  int scheduled = 0;
  int slot = 0;
  while (scheduled < n) {
    ++slot;
    std::vector<int> ready;
    for (int i = 0; i < n; ++i) {
      if (finished_slot[i] >= 0) continue;
      bool ok = true;
      for (int pred : p.preds[i]) {
        if (finished_slot[pred] < 0 || finished_slot[pred] >= slot) {
          ok = false;
          break;
        }
      }
      if (ok) ready.push_back(i);
    }
    if (ready.empty()) {
      throw Error("schedule: no ready unit; cycle in unit precedence");
    }
    std::vector<bool> taken(ready.size(), false);
    for (int arm = 0; arm < arms; ++arm) {
      int pick = -1;
      bool pick_same = false;
      int pick_step = 1 << 28;
      for (size_t r = 0; r < ready.size(); ++r) {
        if (taken[r]) continue;
        int i = ready[r];
        if (dedicated_tool_arm && pinned_arm.at(tools[i]) != arm) continue;
        bool same = !arm_tool[arm].empty() && tools[i] == arm_tool[arm];
        if ((same && !pick_same) || ((same == pick_same) && p.units[i]->step < pick_step)) {
          pick = static_cast<int>(r);
          pick_same = same;
          pick_step = p.units[i]->step;
        }
      }
      if (pick < 0) continue;
      taken[pick] = true;
      int i = ready[pick];
      finished_slot[i] = slot;
      if (!arm_tool[arm].empty() && arm_tool[arm] != tools[i]) {
        ++schedule.tool_changes[arm];
      }
      arm_tool[arm] = tools[i];
      schedule.steps.push_back({slot, arm, p.units[i]->step, tools[i]});
      ++scheduled;
    }
    schedule.makespan = slot;
  }
  std::sort(schedule.steps.begin(), schedule.steps.end(),
            [](const ScheduleStep& a, const ScheduleStep& b) {
              if (a.slot != b.slot) return a.slot < b.slot;
              return a.arm < b.arm;
            });
  return schedule;
}

}  // namespace atsg
