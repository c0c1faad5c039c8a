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
#include <vector>

#include "atsg/catalog.hpp"
#include "atsg/graph.hpp"
#include "atsg/manual.hpp"

namespace atsg {

/// How one detection was matched to a physical instance.
///
/// Structural detections match instances already incorporated into a
/// sub-assembly, greedily up to the assembled count; anything beyond that is
/// a late sighting of an earlier step (Extra). Fastener detections always
/// mint fresh instances: a drawn fastener signals new fastening work, while
/// inserted fasteners disappear into the parent and stop being detected.
struct ResolvedDetection {
  enum class Kind { Fresh, Extra, Assembled };
  PartInstance instance;
  Kind kind = Kind::Fresh;
  NodeId matched_root = -1;  // owning root when kind == Assembled
};

struct ResolvedImage {
  int image = 0;
  std::vector<ResolvedDetection> detections;
};

/// Matches each detected name to an instance, minting ordinals in detection
/// order. Throws Error on names unknown to the catalog (with image index).
ResolvedImage resolve_image(const DetectionImage& image, const Catalog& catalog,
                            AssemblyRegistry& registry);

/// Per-image split of the resolved detections plus the identified parents.
struct Classified {
  int image = 0;
  std::vector<PartInstance> fresh;
  std::vector<PartInstance> extras;
  std::vector<std::pair<PartInstance, NodeId>> assembled;
  std::vector<NodeId> parent_roots;           // precedence-ordered, mains first
  std::map<NodeId, int> matched_per_root;     // detections matched into each parent
};

/// Splits detections into fresh/extra/assembled and identifies the existing
/// parents the image extends (by detected main part or any matched child).
Classified classify_new_parts(const ResolvedImage& resolved, const Atsg& graph,
                              const AssemblyRegistry& registry, const Catalog& catalog);

/// Mainness order among instances: type precedence first, then ordinal.
bool instance_outranks(const PartInstance& a, const PartInstance& b, const Catalog& catalog);

struct MainChoice {
  bool parent_is_main = false;
  PartInstance fresh_main;  // set when parent_is_main is false
};

/// Picks the main child for an image: the top existing parent when any are
/// present, otherwise the highest-precedence fresh instance. Returns nullopt
/// when fewer than two parts are in play ("nothing to assemble").
std::optional<MainChoice> select_main(const std::vector<PartInstance>& fresh,
                                      size_t parent_count, const Catalog& catalog);

/// Units built for one image. The complement counters are filled against
/// the reconciled graph, since inherited part information only settles once
/// recovery has removed false detections.
struct UnitGroup {
  int image_index = 0;
  std::vector<int> unit_steps;
  int added_part_info = 0;
  int removed_part_info = 0;
};

/// Expands an image into a chain of two-input units on the evolving main
/// parent: fresh structural parts largest-first, then joins with further
/// existing parents, then fasteners in ordinal order. Verbs and hand tools
/// come from the action table; parent inputs of existing lineages enter as
/// pending-merge markers for the integrator. A lone fresh part with no
/// parent anywhere becomes a standalone root.
UnitGroup expand_units(Atsg& graph, const Classified& classified, const Catalog& catalog,
                       HandPolicy policy);

}  // namespace atsg
