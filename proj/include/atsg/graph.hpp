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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "atsg/catalog.hpp"
#include "atsg/manual.hpp"

namespace atsg {

using NodeId = int;

/// A part (sub)assembly state. Leaf nodes carry a bare instance; nodes
/// produced by a unit accumulate subordinate children. A node created as a
/// stand-in for an earlier output keeps pending_merge until integration
/// unifies the two.
struct ObjectNode {
  NodeId id = -1;
  PartInstance main;
  std::set<PartInstance> subs;
  int origin_image = 0;
  bool pending_merge = false;

  const std::string& display_name() const { return main.type; }
};

struct MotionNode {
  NodeId id = -1;
  std::string verb;
  int origin_image = 0;
};

struct HandNode {
  NodeId id = -1;
  std::string tool;
  NodeId holds = -1;  // input object node this hand manipulates
};

/// Smallest task element: two input object nodes -> motion -> output object
/// node, with hand nodes attached to the motion. hands[0] holds the parent
/// input, hands[1] the attached input; with a shared parent hand, hands[0]
/// repeats across a chain.
struct AssemblyUnit {
  int step = 0;  // global ordering key
  NodeId parent_input = -1;
  NodeId attached_input = -1;
  NodeId motion = -1;
  std::vector<NodeId> hands;
  NodeId output = -1;
  int origin_image = 0;
};

struct Edge {
  NodeId from = -1;
  NodeId to = -1;
  auto operator<=>(const Edge&) const = default;
};

enum class HandPolicy { PerInput, SharedParent };

/// The task graph under construction and its completed form. Node ids are
/// sequential in creation order; units are kept sorted by step.
class Atsg {
 public:
  NodeId add_object(const PartInstance& main, int origin_image, bool pending_merge = false);
  NodeId add_motion(const std::string& verb, int origin_image);
  NodeId add_hand(const std::string& tool, NodeId holds);

  /// Appends a unit after checking arity, node existence and acyclicity.
  /// Throws Error on violation.
  void add_unit(const AssemblyUnit& unit);

  /// Appends without checks; passes that mutate the graph wholesale use
  /// this and re-validate afterwards.
  void add_unit_unchecked(const AssemblyUnit& unit);

  const std::map<NodeId, ObjectNode>& objects() const { return objects_; }
  const std::map<NodeId, MotionNode>& motions() const { return motions_; }
  const std::map<NodeId, HandNode>& hands() const { return hands_; }
  const std::vector<AssemblyUnit>& units() const { return units_; }

  ObjectNode& object(NodeId id);
  const ObjectNode& object(NodeId id) const;
  const MotionNode& motion(NodeId id) const;
  const HandNode& hand(NodeId id) const;

  HandPolicy hand_policy() const { return hand_policy_; }
  void set_hand_policy(HandPolicy policy) { hand_policy_ = policy; }

  /// Directed edge set derived from the units: inputs->motion, hands->motion,
  /// motion->output.
  std::vector<Edge> edges() const;

  /// Flattened child multiset of an object node: main child plus all
  /// subordinate children. Throws on unknown node.
  std::set<PartInstance> children_closure(NodeId object_id) const;
  std::map<std::string, int> closure_counts(NodeId object_id) const;

  /// Object nodes consumed by no unit, in id order.
  std::vector<NodeId> roots() const;
  std::optional<NodeId> final_output() const;

  /// Unit producing the node, if any.
  const AssemblyUnit* producer(NodeId object_id) const;
  /// Units consuming the node through either input slot.
  std::vector<const AssemblyUnit*> consumers(NodeId object_id) const;
  const AssemblyUnit* unit_by_step(int step) const;

  /// Recomputes every produced node's children from its inputs, in step
  /// order. Run after integration and after any splice.
  void recompute_children();

  /// Reassigns steps 0..n-1 preserving the current order.
  void renumber_steps();

  /// Renumbers instance ordinals per type by attachment step so removals
  /// leave no gaps. Leaves main-only types untouched.
  void compact_ordinals();

  /// Last unit whose attached input is a bare instance of the type.
  const AssemblyUnit* last_attachment_of(const std::string& type) const;

  /// Splices a unit attaching `inst` immediately after `template_step`,
  /// cloning that unit's verb, tools and hand shape. Downstream inputs are
  /// re-pointed and steps renumbered. Returns the new unit's step.
  int splice_attachment_after(int template_step, const PartInstance& inst);

  /// Splices out the unit at `step` (its output's consumers re-point to its
  /// parent input) and drops the unit's motion, hands, attached leaf and
  /// output. Only valid for units attaching a bare instance.
  void remove_attachment_unit(int step);

  /// Re-points the unit producing `from` (if any) at `to`.
  void repoint_output(NodeId from, NodeId to);

  /// Removes an object node. Throws if any unit or hand still references it.
  void erase_object(NodeId id);

  /// Structural diagnostics; empty means all invariants hold.
  std::vector<std::string> validate() const;
  /// Additionally checks verbs, tools and part types against the catalog.
  std::vector<std::string> validate(const Catalog& catalog) const;

 private:
  std::map<NodeId, ObjectNode> objects_;
  std::map<NodeId, MotionNode> motions_;
  std::map<NodeId, HandNode> hands_;
  std::vector<AssemblyUnit> units_;
  HandPolicy hand_policy_ = HandPolicy::PerInput;
  NodeId next_id_ = 0;

  bool creates_cycle(const AssemblyUnit& candidate) const;
};

/// Tracks which instances are already incorporated into which sub-assembly
/// root, and mints fresh ordinals. Synced from the graph after each image.
class AssemblyRegistry {
 public:
  void sync(const Atsg& graph);

  /// Root object node currently owning the instance, or -1.
  NodeId root_of(const PartInstance& inst) const;
  /// Most recent root whose closure contains the type, or -1.
  NodeId root_containing(const std::string& type) const;
  int assembled_count(const std::string& type) const;
  const std::map<PartInstance, NodeId>& assembled() const { return assembled_; }
  std::vector<NodeId> lineage_roots() const { return roots_; }

  PartInstance mint(const std::string& type);

 private:
  std::map<PartInstance, NodeId> assembled_;
  std::map<std::string, NodeId> parent_of_type_;
  std::map<std::string, int> assembled_counts_;
  std::map<std::string, int> next_ordinal_;
  std::vector<NodeId> roots_;
};

}  // namespace atsg
