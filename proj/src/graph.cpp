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
#include "atsg/graph.hpp"

#include <algorithm>
#include <deque>

#include "atsg/error.hpp"

namespace atsg {

NodeId Atsg::add_object(const PartInstance& main, int origin_image, bool pending_merge) {
  ObjectNode node;
  node.id = next_id_++;
  node.main = main;
  node.origin_image = origin_image;
  node.pending_merge = pending_merge;
  objects_.emplace(node.id, node);
  return node.id;
}

NodeId Atsg::add_motion(const std::string& verb, int origin_image) {
  MotionNode node;
  node.id = next_id_++;
  node.verb = verb;
  node.origin_image = origin_image;
  motions_.emplace(node.id, node);
  return node.id;
}

NodeId Atsg::add_hand(const std::string& tool, NodeId holds) {
  HandNode node;
  node.id = next_id_++;
  node.tool = tool;
  node.holds = holds;
  hands_.emplace(node.id, node);
  return node.id;
}

void Atsg::add_unit(const AssemblyUnit& unit) {
  for (NodeId id : {unit.parent_input, unit.attached_input, unit.output}) {
    if (!objects_.count(id)) {
      throw Error("unit " + std::to_string(unit.step) + ": unknown object node " +
                  std::to_string(id));
    }
  }
  if (!motions_.count(unit.motion)) {
    throw Error("unit " + std::to_string(unit.step) + ": unknown motion node");
  }
  for (NodeId id : unit.hands) {
    if (!hands_.count(id)) {
      throw Error("unit " + std::to_string(unit.step) + ": unknown hand node");
    }
  }
  if (unit.parent_input == unit.attached_input) {
    throw Error("unit " + std::to_string(unit.step) +
                ": inputs must be two distinct object nodes");
  }
  if (unit.output == unit.parent_input || unit.output == unit.attached_input) {
    throw Error("unit " + std::to_string(unit.step) + ": output equals an input");
  }
  for (const AssemblyUnit& other : units_) {
    if (other.output == unit.output) {
      throw Error("unit " + std::to_string(unit.step) + ": output already produced by step " +
                  std::to_string(other.step));
    }
    if (other.motion == unit.motion) {
      throw Error("unit " + std::to_string(unit.step) + ": motion node already in use");
    }
  }
  if (creates_cycle(unit)) {
    throw Error("unit " + std::to_string(unit.step) + ": would introduce a cycle");
  }
  add_unit_unchecked(unit);
}

void Atsg::add_unit_unchecked(const AssemblyUnit& unit) {
  auto pos = std::upper_bound(units_.begin(), units_.end(), unit,
                              [](const AssemblyUnit& a, const AssemblyUnit& b) {
                                return a.step < b.step;
                              });
  units_.insert(pos, unit);
}

ObjectNode& Atsg::object(NodeId id) {
  auto it = objects_.find(id);
  if (it == objects_.end()) {
    throw Error("unknown object node " + std::to_string(id));
  }
  return it->second;
}

const ObjectNode& Atsg::object(NodeId id) const {
  auto it = objects_.find(id);
  if (it == objects_.end()) {
    throw Error("unknown object node " + std::to_string(id));
  }
  return it->second;
}

const MotionNode& Atsg::motion(NodeId id) const {
  auto it = motions_.find(id);
  if (it == motions_.end()) {
    throw Error("unknown motion node " + std::to_string(id));
  }
  return it->second;
}

const HandNode& Atsg::hand(NodeId id) const {
  auto it = hands_.find(id);
  if (it == hands_.end()) {
    throw Error("unknown hand node " + std::to_string(id));
  }
  return it->second;
}

std::vector<Edge> Atsg::edges() const {
  std::vector<Edge> result;
  for (const AssemblyUnit& unit : units_) {
    result.push_back({unit.parent_input, unit.motion});
    result.push_back({unit.attached_input, unit.motion});
    for (NodeId hand : unit.hands) {
      result.push_back({hand, unit.motion});
    }
    result.push_back({unit.motion, unit.output});
  }
  return result;
}

std::set<PartInstance> Atsg::children_closure(NodeId object_id) const {
  const ObjectNode& node = object(object_id);
  std::set<PartInstance> closure = node.subs;
  closure.insert(node.main);
  return closure;
}

std::map<std::string, int> Atsg::closure_counts(NodeId object_id) const {
  std::map<std::string, int> counts;
  for (const PartInstance& inst : children_closure(object_id)) {
    ++counts[inst.type];
  }
  return counts;
}

std::vector<NodeId> Atsg::roots() const {
  std::set<NodeId> consumed;
  for (const AssemblyUnit& unit : units_) {
    consumed.insert(unit.parent_input);
    consumed.insert(unit.attached_input);
  }
  std::vector<NodeId> result;
  for (const auto& [id, node] : objects_) {
    if (!consumed.count(id)) {
      result.push_back(id);
    }
  }
  return result;
}

std::optional<NodeId> Atsg::final_output() const {
  std::vector<NodeId> r = roots();
  if (r.size() == 1) {
    return r.front();
  }
  return std::nullopt;
}

const AssemblyUnit* Atsg::producer(NodeId object_id) const {
  for (const AssemblyUnit& unit : units_) {
    if (unit.output == object_id) {
      return &unit;
    }
  }
  return nullptr;
}

std::vector<const AssemblyUnit*> Atsg::consumers(NodeId object_id) const {
  std::vector<const AssemblyUnit*> result;
  for (const AssemblyUnit& unit : units_) {
    if (unit.parent_input == object_id || unit.attached_input == object_id) {
      result.push_back(&unit);
    }
  }
  return result;
}

const AssemblyUnit* Atsg::unit_by_step(int step) const {
  for (const AssemblyUnit& unit : units_) {
    if (unit.step == step) {
      return &unit;
    }
  }
  return nullptr;
}

void Atsg::recompute_children() {
  for (const AssemblyUnit& unit : units_) {
    std::set<PartInstance> merged = children_closure(unit.parent_input);
    std::set<PartInstance> attached = children_closure(unit.attached_input);
    merged.insert(attached.begin(), attached.end());
    ObjectNode& out = object(unit.output);
    merged.erase(out.main);
    out.subs = std::move(merged);
  }
}

void Atsg::renumber_steps() {
  std::stable_sort(units_.begin(), units_.end(),
                   [](const AssemblyUnit& a, const AssemblyUnit& b) { return a.step < b.step; });
  int next = 0;
  for (AssemblyUnit& unit : units_) {
    unit.step = next++;
  }
}

void Atsg::compact_ordinals() {
  // Instances in attachment order: a leaf's position is the step of the
  // first unit consuming it; standalone leaves sort last.
  std::map<std::string, std::vector<std::pair<int, PartInstance>>> by_type;
  for (const auto& [id, node] : objects_) {
    if (producer(id) != nullptr) continue;
    int first_use = 1 << 30;
    for (const AssemblyUnit* unit : consumers(id)) {
      first_use = std::min(first_use, unit->step);
    }
    by_type[node.main.type].push_back({first_use, node.main});
  }
  std::map<PartInstance, PartInstance> rename;
  for (auto& [type, entries] : by_type) {
    std::sort(entries.begin(), entries.end());
    int ordinal = 1;
    for (const auto& [step, inst] : entries) {
      PartInstance target{type, ordinal++};
      if (!(inst == target)) {
        rename[inst] = target;
      }
    }
  }
  if (rename.empty()) return;
  auto renamed = [&rename](const PartInstance& inst) {
    auto it = rename.find(inst);
    return it == rename.end() ? inst : it->second;
  };
  for (auto& [id, node] : objects_) {
    node.main = renamed(node.main);
    std::set<PartInstance> subs;
    for (const PartInstance& inst : node.subs) {
      subs.insert(renamed(inst));
    }
    node.subs = std::move(subs);
  }
}

const AssemblyUnit* Atsg::last_attachment_of(const std::string& type) const {
  const AssemblyUnit* found = nullptr;
  for (const AssemblyUnit& unit : units_) {
    const ObjectNode& attached = object(unit.attached_input);
    if (attached.main.type == type && attached.subs.empty() &&
        producer(unit.attached_input) == nullptr) {
      found = &unit;  // units are step-sorted, so the last match wins
    }
  }
  return found;
}

int Atsg::splice_attachment_after(int template_step, const PartInstance& inst) {
  const AssemblyUnit* tmpl = unit_by_step(template_step);
  if (tmpl == nullptr) {
    throw Error("splice: no unit at step " + std::to_string(template_step));
  }
  AssemblyUnit t = *tmpl;  // copy; vector mutates below
  NodeId tail = t.output;

  NodeId leaf = add_object(inst, t.origin_image);
  NodeId out = add_object(object(tail).main, t.origin_image);
  NodeId motion_id = add_motion(motion(t.motion).verb, t.origin_image);

  NodeId parent_hand;
  if (hand_policy_ == HandPolicy::SharedParent) {
    parent_hand = t.hands.at(0);
  } else {
    parent_hand = add_hand(hand(t.hands.at(0)).tool, tail);
  }
  NodeId attached_hand = add_hand(hand(t.hands.at(1)).tool, leaf);

  // Whatever consumed the template's output now consumes the new state.
  std::set<NodeId> hand_use_count_once;
  {
    std::map<NodeId, int> uses;
    for (const AssemblyUnit& unit : units_) {
      for (NodeId id : unit.hands) ++uses[id];
    }
    for (const auto& [id, count] : uses) {
      if (count == 1) hand_use_count_once.insert(id);
    }
  }
  for (AssemblyUnit& unit : units_) {
    bool repointed = false;
    if (unit.parent_input == tail) {
      unit.parent_input = out;
      repointed = true;
    }
    if (unit.attached_input == tail) {
      unit.attached_input = out;
      repointed = true;
    }
    if (repointed) {
      for (NodeId id : unit.hands) {
        auto it = hands_.find(id);
        if (it != hands_.end() && it->second.holds == tail &&
            hand_use_count_once.count(id)) {
          it->second.holds = out;
        }
      }
    }
  }
  for (AssemblyUnit& unit : units_) {
    if (unit.step > template_step) unit.step += 1;
  }

  AssemblyUnit fresh;
  fresh.step = template_step + 1;
  fresh.parent_input = tail;
  fresh.attached_input = leaf;
  fresh.motion = motion_id;
  fresh.hands = {parent_hand, attached_hand};
  fresh.output = out;
  fresh.origin_image = t.origin_image;
  add_unit_unchecked(fresh);

  renumber_steps();
  recompute_children();
  return unit_by_step(template_step + 1) != nullptr ? template_step + 1 : -1;
}

void Atsg::remove_attachment_unit(int step) {
  auto it = std::find_if(units_.begin(), units_.end(),
                         [step](const AssemblyUnit& u) { return u.step == step; });
  if (it == units_.end()) {
    throw Error("remove: no unit at step " + std::to_string(step));
  }
  AssemblyUnit victim = *it;
  const ObjectNode& attached = object(victim.attached_input);
  if (!attached.subs.empty() || producer(victim.attached_input) != nullptr) {
    throw Error("remove: unit at step " + std::to_string(step) +
                " attaches a sub-assembly, not a bare instance");
  }
  units_.erase(it);

  for (AssemblyUnit& unit : units_) {
    if (unit.parent_input == victim.output) unit.parent_input = victim.parent_input;
    if (unit.attached_input == victim.output) unit.attached_input = victim.parent_input;
  }

  motions_.erase(victim.motion);
  std::set<NodeId> still_used;
  for (const AssemblyUnit& unit : units_) {
    still_used.insert(unit.hands.begin(), unit.hands.end());
  }
  for (NodeId hand : victim.hands) {
    if (!still_used.count(hand)) {
      hands_.erase(hand);
    }
  }
  for (auto& [id, hand] : hands_) {
    if (hand.holds == victim.output || hand.holds == victim.attached_input) {
      hand.holds = victim.parent_input;
    }
  }
  objects_.erase(victim.attached_input);
  objects_.erase(victim.output);

  renumber_steps();
  recompute_children();
}

void Atsg::repoint_output(NodeId from, NodeId to) {
  for (AssemblyUnit& unit : units_) {
    if (unit.output == from) unit.output = to;
  }
}

void Atsg::erase_object(NodeId id) {
  for (const AssemblyUnit& unit : units_) {
    if (unit.parent_input == id || unit.attached_input == id || unit.output == id) {
      throw Error("erase: object node " + std::to_string(id) + " still referenced by unit " +
                  std::to_string(unit.step));
    }
  }
  for (const auto& [hand_id, hand] : hands_) {
    if (hand.holds == id) {
      throw Error("erase: object node " + std::to_string(id) + " still held by hand " +
                  std::to_string(hand_id));
    }
  }
  objects_.erase(id);
}

bool Atsg::creates_cycle(const AssemblyUnit& candidate) const {
  std::vector<AssemblyUnit> all = units_;
  all.push_back(candidate);
  const size_t n = all.size();

  std::map<NodeId, size_t> producer_of;
  for (size_t i = 0; i < n; ++i) {
    producer_of[all[i].output] = i;
  }
  std::vector<std::vector<size_t>> next(n);
  std::vector<int> indegree(n, 0);
  for (size_t i = 0; i < n; ++i) {
    for (NodeId input : {all[i].parent_input, all[i].attached_input}) {
      auto it = producer_of.find(input);
      if (it != producer_of.end()) {
        next[it->second].push_back(i);
        ++indegree[i];
      }
    }
  }
  std::deque<size_t> ready;
  for (size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  size_t seen = 0;
  while (!ready.empty()) {
    size_t cur = ready.front();
    ready.pop_front();
    ++seen;
    for (size_t succ : next[cur]) {
      if (--indegree[succ] == 0) ready.push_back(succ);
    }
  }
  return seen != n;
}

std::vector<std::string> Atsg::validate() const {
  std::vector<std::string> issues;
  auto complain = [&issues](const std::string& msg) { issues.push_back(msg); };

  int last_step = -1;
  for (const AssemblyUnit& unit : units_) {
    if (unit.step <= last_step) {
      complain("unit steps not strictly increasing at step " + std::to_string(unit.step));
    }
    last_step = unit.step;
  }

  std::map<NodeId, int> produced;
  std::map<NodeId, int> consumed;
  std::map<NodeId, int> motion_use;
  for (const AssemblyUnit& unit : units_) {
    const std::string where = "unit " + std::to_string(unit.step);
    for (NodeId id : {unit.parent_input, unit.attached_input, unit.output}) {
      if (!objects_.count(id)) complain(where + ": unknown object node");
    }
    if (!motions_.count(unit.motion)) complain(where + ": unknown motion node");
    for (NodeId id : unit.hands) {
      if (!hands_.count(id)) {
        complain(where + ": unknown hand node");
      } else if (!objects_.count(hand(id).holds)) {
        complain(where + ": hand holds an unknown object node");
      }
    }
    if (unit.parent_input == unit.attached_input) {
      complain(where + ": arity violation, inputs must be two distinct object nodes");
    }
    if (unit.output == unit.parent_input || unit.output == unit.attached_input) {
      complain(where + ": output equals an input");
    }
    if (unit.hands.size() != 2) {
      complain(where + ": expected one hand per input, got " +
               std::to_string(unit.hands.size()));
    }
    ++produced[unit.output];
    ++consumed[unit.parent_input];
    ++consumed[unit.attached_input];
    ++motion_use[unit.motion];
  }
  for (const auto& [id, count] : produced) {
    if (count > 1) complain("object node " + std::to_string(id) + " produced by " +
                            std::to_string(count) + " units");
  }
  for (const auto& [id, count] : consumed) {
    if (count > 1) complain("object node " + std::to_string(id) + " consumed by " +
                            std::to_string(count) + " units");
  }
  for (const auto& [id, count] : motion_use) {
    if (count > 1) complain("motion node " + std::to_string(id) + " shared by units");
  }
  for (const auto& [id, node] : motions_) {
    if (!motion_use.count(id)) complain("motion node " + std::to_string(id) + " has no unit");
  }
  for (const auto& [id, node] : objects_) {
    if (node.pending_merge) complain("object node " + std::to_string(id) +
                                     " is an unresolved merge marker");
  }

  if (!units_.empty() && creates_cycle(units_.back())) {
    // creates_cycle([already present unit]) topologically sorts the whole
    // unit set, so any cycle in the graph is reported here.
    complain("cycle detected in unit precedence");
  }

  // Instance bookkeeping: leaves carry each physical part exactly once and
  // every produced closure merges its inputs without loss or duplication.
  std::map<PartInstance, int> leaf_count;
  for (const auto& [id, node] : objects_) {
    if (producer(id) == nullptr) {
      ++leaf_count[node.main];
      if (!node.subs.empty()) {
        complain("leaf object node " + std::to_string(id) + " carries subordinate children");
      }
    }
  }
  for (const auto& [inst, count] : leaf_count) {
    if (count > 1) complain("instance " + inst.id() + " appears as " + std::to_string(count) +
                            " leaves");
  }
  for (const AssemblyUnit& unit : units_) {
    if (!objects_.count(unit.parent_input) || !objects_.count(unit.attached_input) ||
        !objects_.count(unit.output)) {
      continue;
    }
    const std::string where = "unit " + std::to_string(unit.step);
    std::set<PartInstance> parent = children_closure(unit.parent_input);
    std::set<PartInstance> attached = children_closure(unit.attached_input);
    std::vector<PartInstance> overlap;
    std::set_intersection(parent.begin(), parent.end(), attached.begin(), attached.end(),
                          std::back_inserter(overlap));
    if (!overlap.empty()) {
      complain(where + ": instance " + overlap.front().id() + " present in both inputs");
    }
    const ObjectNode& out = object(unit.output);
    if (!(out.main == object(unit.parent_input).main)) {
      complain(where + ": output main child differs from the parent input");
    }
    std::set<PartInstance> expected = parent;
    expected.insert(attached.begin(), attached.end());
    std::set<PartInstance> actual = out.subs;
    actual.insert(out.main);
    if (expected != actual) {
      complain(where + ": output children differ from the union of its inputs");
    }
  }
  return issues;
}

std::vector<std::string> Atsg::validate(const Catalog& catalog) const {
  std::vector<std::string> issues = validate();
  std::set<std::string> verbs;
  for (const ActionRule& rule : catalog.rules()) {
    verbs.insert(rule.verb);
  }
  for (const auto& [id, node] : motions_) {
    if (!verbs.count(node.verb)) {
      issues.push_back("motion node " + std::to_string(id) + ": verb \"" + node.verb +
                       "\" not in the catalog rule table");
    }
  }
  for (const auto& [id, node] : hands_) {
    if (!catalog.tools().count(node.tool)) {
      issues.push_back("hand node " + std::to_string(id) + ": unknown tool \"" + node.tool +
                       "\"");
    }
  }
  for (const auto& [id, node] : objects_) {
    std::set<PartInstance> closure = node.subs;
    closure.insert(node.main);
    for (const PartInstance& inst : closure) {
      if (!catalog.has(inst.type)) {
        issues.push_back("object node " + std::to_string(id) + ": unknown part type \"" +
                         inst.type + "\"");
      } else if (inst.ordinal > catalog.part(inst.type).total_count) {
        issues.push_back("object node " + std::to_string(id) + ": " + inst.id() +
                         " exceeds the ground-truth total " +
                         std::to_string(catalog.part(inst.type).total_count));
      }
    }
  }
  return issues;
}

void AssemblyRegistry::sync(const Atsg& graph) {
  assembled_.clear();
  parent_of_type_.clear();
  assembled_counts_.clear();
  roots_.clear();

  std::vector<std::pair<int, NodeId>> ordered;  // (producing step, root)
  for (NodeId id : graph.roots()) {
    const AssemblyUnit* unit = graph.producer(id);
    ordered.push_back({unit ? unit->step : -1, id});
  }
  std::sort(ordered.begin(), ordered.end());
  for (const auto& [step, id] : ordered) {
    roots_.push_back(id);
    for (const PartInstance& inst : graph.children_closure(id)) {
      assembled_[inst] = id;
      ++assembled_counts_[inst.type];
      parent_of_type_[inst.type] = id;  // later roots overwrite: most recent wins
    }
  }

  next_ordinal_.clear();
  for (const auto& [id, node] : graph.objects()) {
    auto bump = [this](const PartInstance& inst) {
      int& next = next_ordinal_[inst.type];
      next = std::max(next, inst.ordinal + 1);
    };
    bump(node.main);
    for (const PartInstance& inst : node.subs) {
      bump(inst);
    }
  }
}

NodeId AssemblyRegistry::root_of(const PartInstance& inst) const {
  auto it = assembled_.find(inst);
  return it == assembled_.end() ? -1 : it->second;
}

NodeId AssemblyRegistry::root_containing(const std::string& type) const {
  auto it = parent_of_type_.find(type);
  return it == parent_of_type_.end() ? -1 : it->second;
}

int AssemblyRegistry::assembled_count(const std::string& type) const {
  auto it = assembled_counts_.find(type);
  return it == assembled_counts_.end() ? 0 : it->second;
}

PartInstance AssemblyRegistry::mint(const std::string& type) {
  int& next = next_ordinal_[type];
  if (next < 1) next = 1;
  return PartInstance{type, next++};
}

}  // namespace atsg
