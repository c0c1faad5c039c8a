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
#include "atsg/build.hpp"

#include <algorithm>

#include "atsg/error.hpp"

namespace atsg {

ResolvedImage resolve_image(const DetectionImage& image, const Catalog& catalog,
                            AssemblyRegistry& registry) {
  ResolvedImage resolved;
  resolved.image = image.index;

  // Assembled instances of each type, in ordinal order, for greedy matching.
  std::map<std::string, std::vector<PartInstance>> assembled_pool;
  for (const auto& [inst, root] : registry.assembled()) {
    assembled_pool[inst.type].push_back(inst);
  }
  std::map<std::string, size_t> cursor;

  for (const std::string& name : image.detected) {
    if (!catalog.has(name)) {
      throw Error("unknown part name \"" + name + "\" in image " +
                  std::to_string(image.index));
    }
    const PartType& type = catalog.part(name);
    if (type.total_count < 1) {
      throw Error("part \"" + name + "\" in image " + std::to_string(image.index) +
                  " has ground-truth total 0");
    }

    ResolvedDetection det;
    if (type.role == PartRole::Structural) {
      auto pool = assembled_pool.find(name);
      size_t& used = cursor[name];
      if (pool != assembled_pool.end() && used < pool->second.size()) {
        det.kind = ResolvedDetection::Kind::Assembled;
        det.instance = pool->second[used++];
        det.matched_root = registry.root_of(det.instance);
      } else if (pool != assembled_pool.end()) {
        // The type is already incorporated somewhere; a sighting beyond the
        // assembled count is a part attached in an earlier, occluded step.
        det.kind = ResolvedDetection::Kind::Extra;
        det.instance = registry.mint(name);
      } else {
        det.kind = ResolvedDetection::Kind::Fresh;
        det.instance = registry.mint(name);
      }
    } else {
      det.kind = ResolvedDetection::Kind::Fresh;
      det.instance = registry.mint(name);
    }
    resolved.detections.push_back(det);
  }
  return resolved;
}

Classified classify_new_parts(const ResolvedImage& resolved, const Atsg& graph,
                              const AssemblyRegistry& registry, const Catalog& catalog) {
  Classified result;
  result.image = resolved.image;

  for (const ResolvedDetection& det : resolved.detections) {
    switch (det.kind) {
      case ResolvedDetection::Kind::Fresh:
        result.fresh.push_back(det.instance);
        break;
      case ResolvedDetection::Kind::Extra:
        result.extras.push_back(det.instance);
        break;
      case ResolvedDetection::Kind::Assembled:
        result.assembled.push_back({det.instance, det.matched_root});
        ++result.matched_per_root[det.matched_root];
        break;
    }
  }

  for (const auto& [root, matched] : result.matched_per_root) {
    result.parent_roots.push_back(root);
  }
  std::sort(result.parent_roots.begin(), result.parent_roots.end(),
            [&](NodeId a, NodeId b) {
              const PartType& ta = catalog.part(graph.object(a).main.type);
              const PartType& tb = catalog.part(graph.object(b).main.type);
              if (ta.name != tb.name) return catalog.outranks(ta, tb);
              return a < b;
            });

  // A lone new part with no detected parent cannot anchor a unit by itself:
  // trust the image order and extend the most recent sub-assembly. Two or
  // more new parts form their own group (a fresh branch, like a chair base
  // appearing after the seat images).
  if (result.parent_roots.empty() && result.fresh.size() == 1) {
    std::vector<NodeId> lineages = registry.lineage_roots();
    if (!lineages.empty()) {
      result.parent_roots.push_back(lineages.back());
    }
  }

  return result;
}

bool instance_outranks(const PartInstance& a, const PartInstance& b, const Catalog& catalog) {
  if (a.type != b.type) {
    return catalog.outranks(catalog.part(a.type), catalog.part(b.type));
  }
  return a.ordinal < b.ordinal;
}

std::optional<MainChoice> select_main(const std::vector<PartInstance>& fresh,
                                      size_t parent_count, const Catalog& catalog) {
  size_t total = fresh.size() + parent_count;
  if (total < 2) {
    return std::nullopt;
  }
  MainChoice choice;
  if (parent_count > 0) {
    choice.parent_is_main = true;
    return choice;
  }
  choice.fresh_main = fresh.front();
  for (const PartInstance& inst : fresh) {
    if (instance_outranks(inst, choice.fresh_main, catalog)) {
      choice.fresh_main = inst;
    }
  }
  return choice;
}

namespace {

// One chained attachment: evolving parent state + one subordinate.
struct Attachment {
  NodeId node = -1;           // attached input node
  std::string type;           // part type driving the action rule
};

}  // namespace

UnitGroup expand_units(Atsg& graph, const Classified& classified, const Catalog& catalog,
                       HandPolicy policy) {
  UnitGroup group;
  group.image_index = classified.image;

  const std::vector<PartInstance>& fresh = classified.fresh;
  const std::vector<NodeId>& parents = classified.parent_roots;

  if (fresh.empty() && parents.size() < 2) {
    return group;  // everything in the image is already assembled
  }
  if (fresh.size() == 1 && parents.empty()) {
    // A lone first part: nothing to assemble yet, but later images attach to it.
    graph.add_object(fresh.front(), classified.image);
    return group;
  }

  // The main child: the top-precedence parent when one exists, otherwise the
  // top-precedence fresh part.
  std::optional<MainChoice> choice = select_main(fresh, parents.size(), catalog);
  if (!choice) {
    return group;
  }

  NodeId current;
  std::string main_type;
  std::vector<PartInstance> subordinates_fresh = fresh;
  if (choice->parent_is_main) {
    const ObjectNode& root = graph.object(parents.front());
    current = graph.add_object(root.main, classified.image, /*pending_merge=*/true);
    main_type = root.main.type;
  } else {
    current = graph.add_object(choice->fresh_main, classified.image);
    main_type = choice->fresh_main.type;
    subordinates_fresh.erase(std::find(subordinates_fresh.begin(), subordinates_fresh.end(),
                                       choice->fresh_main));
  }
  const PartInstance main_instance = graph.object(current).main;

  // Attachment order: fresh structural parts largest-first, then joins with
  // the remaining existing parents, then fasteners in ordinal order.
  std::vector<PartInstance> structural;
  std::vector<PartInstance> fasteners;
  for (const PartInstance& inst : subordinates_fresh) {
    (catalog.part(inst.type).role == PartRole::Fastener ? fasteners : structural)
        .push_back(inst);
  }
  auto precedence = [&](const PartInstance& a, const PartInstance& b) {
    return instance_outranks(a, b, catalog);
  };
  std::sort(structural.begin(), structural.end(), precedence);
  std::sort(fasteners.begin(), fasteners.end(), precedence);

  std::vector<Attachment> order;
  for (const PartInstance& inst : structural) {
    order.push_back({graph.add_object(inst, classified.image), inst.type});
  }
  for (size_t i = 1; i < parents.size(); ++i) {
    const ObjectNode& root = graph.object(parents[i]);
    NodeId marker = graph.add_object(root.main, classified.image, /*pending_merge=*/true);
    order.push_back({marker, root.main.type});
  }
  for (const PartInstance& inst : fasteners) {
    order.push_back({graph.add_object(inst, classified.image), inst.type});
  }

  NodeId shared_parent_hand = -1;
  for (const Attachment& attachment : order) {
    ActionBinding binding =
        catalog.action_for(catalog.part(main_type), catalog.part(attachment.type));

    NodeId parent_hand;
    if (policy == HandPolicy::SharedParent) {
      if (shared_parent_hand < 0) {
        shared_parent_hand = graph.add_hand(binding.main_tool, current);
      }
      parent_hand = shared_parent_hand;
    } else {
      parent_hand = graph.add_hand(binding.main_tool, current);
    }
    NodeId attached_hand = graph.add_hand(binding.attached_tool, attachment.node);
    NodeId motion = graph.add_motion(binding.verb, classified.image);
    NodeId output = graph.add_object(main_instance, classified.image);

    AssemblyUnit unit;
    unit.step = static_cast<int>(graph.units().size());
    unit.parent_input = current;
    unit.attached_input = attachment.node;
    unit.motion = motion;
    unit.hands = {parent_hand, attached_hand};
    unit.output = output;
    unit.origin_image = classified.image;
    graph.add_unit(unit);

    group.unit_steps.push_back(unit.step);
    current = output;
  }
  return group;
}

}  // namespace atsg
