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

#include "atsg/graph.hpp"

namespace atsg {

/// Unifies every pending input marker with the nearest earlier output node
/// of the same main part: the marker (the later node) survives and carries
/// the union of both child sets, and the earlier unit now produces it.
/// Idempotent: a second pass finds nothing pending. Returns warnings for
/// ambiguous merges (resolved toward the lower step).
std::vector<std::string> integrate(Atsg& graph);

/// Propagates child-part information through the merged graph: every
/// output's children become the union of its two input closures. Run after
/// integrate and after any graph surgery.
void inherit_children(Atsg& graph);

}  // namespace atsg
