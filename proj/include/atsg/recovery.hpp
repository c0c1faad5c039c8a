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

struct ReconcileAction {
  enum class Kind { Added, Removed };
  Kind kind = Kind::Added;
  PartInstance instance;
  int image = 0;  // instruction image the affected unit belongs to
  std::string reason;
};

struct ReconciliationLog {
  std::vector<ReconcileAction> actions;
  bool converged = false;

  int added_at(int image) const;
  int removed_at(int image) const;
  int total_added() const;
  int total_removed() const;
};

/// Reconciles the integrated graph against ground-truth totals: removes the
/// latest units attaching excess parts, inserts units for missing parts
/// right after the last same-type step, and rebuilds inheritance. After a
/// successful run the final node's closure equals the catalog totals
/// exactly; running again is a no-op. Throws Error when the graph has no
/// single final output or a missing type has no step to clone.
ReconciliationLog reconcile(Atsg& graph, const Catalog& catalog);

/// Splices one new instance of `type` immediately after the last unit
/// attaching that type, cloning its verb and tools. Returns the new unit's
/// step. Throws when no such step exists.
int insert_missing(Atsg& graph, const std::string& type, const Catalog& catalog);

/// Removes the `count` latest units attaching `type` and compacts the
/// remaining ordinals. Throws when fewer such units exist.
void remove_excess(Atsg& graph, const std::string& type, int count);

}  // namespace atsg
