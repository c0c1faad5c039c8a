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
#include <set>
#include <string>
#include <vector>

namespace atsg {

enum class PartRole { Structural, Fastener };

std::string to_string(PartRole role);

/// One part taxonomy entry. size_rank is author-supplied (larger = bigger
/// part) and only its relative order matters.
struct PartType {
  std::string name;
  PartRole role = PartRole::Structural;
  int size_rank = 0;
  std::set<std::string> affordances;
  std::string tool;       // manipulator used to handle this part
  int total_count = 0;    // ground-truth quantity in the manual
  int catalog_index = 0;  // declaration order, used for tie-breaking
};

/// Maps an (affordance, affordance) pair of the manipulated objects to an
/// assembly motion and the tools held by each hand. "*" matches anything.
struct ActionRule {
  std::string main_affordance;
  std::string attached_affordance;
  std::string verb;
  std::string main_tool;
  std::string attached_tool;
};

struct ActionBinding {
  std::string verb;
  std::string main_tool;
  std::string attached_tool;
};

/// Immutable part taxonomy: part types, precedence rules, the motion rule
/// table and the tool vocabulary. Safe for concurrent reads once loaded.
class Catalog {
 public:
  /// Parses and validates a catalog document (JSON text). Throws Error with
  /// a location string on parse failures, duplicate names, missing default
  /// rule, or references to unknown tools/affordances.
  static Catalog load(const std::string& text);
  static Catalog load_file(const std::string& path);

  const std::map<std::string, PartType>& parts() const { return parts_; }
  const std::vector<ActionRule>& rules() const { return rules_; }
  const std::set<std::string>& tools() const { return tools_; }

  /// Tool of the wildcard rule; treated as the generic holder everywhere.
  const std::string& default_tool() const { return default_tool_; }

  bool has(const std::string& name) const { return parts_.count(name) > 0; }
  const PartType& part(const std::string& name) const;

  /// Strict "mainness" order: structural over fastener, then larger
  /// size_rank, then earlier declaration. False for identical types.
  bool outranks(const PartType& a, const PartType& b) const;

  /// Which of the two becomes the main child. Identical types resolve to
  /// the first argument.
  const PartType& pick_main(const PartType& a, const PartType& b) const;

  /// Most specific rule for (main, attached); total because a validated
  /// catalog always carries the wildcard rule.
  ActionBinding action_for(const PartType& main, const PartType& attached) const;

 private:
  std::map<std::string, PartType> parts_;
  std::vector<ActionRule> rules_;
  std::set<std::string> tools_;
  std::string default_tool_;
};

}  // namespace atsg
