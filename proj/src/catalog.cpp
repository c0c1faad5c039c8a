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
#include "atsg/catalog.hpp"

#include <fstream>
#include <sstream>

#include "atsg/error.hpp"
#include "json.hpp"

namespace atsg {

using nlohmann::json;

namespace {

constexpr const char* kWildcard = "*";

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw Error(where + ": unknown key \"" + item.key() + "\"");
    }
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(where + ": missing key \"" + std::string(key) + "\"");
  }
  return *it;
}

std::string as_string(const json& value, const std::string& where) {
  if (!value.is_string() || value.get<std::string>().empty()) {
    throw Error(where + ": expected a non-empty string");
  }
  return value.get<std::string>();
}

int as_int(const json& value, const std::string& where) {
  if (!value.is_number_integer()) {
    throw Error(where + ": expected an integer");
  }
  return value.get<int>();
}

PartRole parse_role(const std::string& text, const std::string& where) {
  if (text == "structural") return PartRole::Structural;
  if (text == "fastener") return PartRole::Fastener;
  throw Error(where + ": role must be \"structural\" or \"fastener\", got \"" + text + "\"");
}

}  // namespace

std::string to_string(PartRole role) {
  return role == PartRole::Fastener ? "fastener" : "structural";
}

Catalog Catalog::load(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("catalog: parse failure: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error("catalog: top level must be an object");
  }
  reject_unknown_keys(doc, {"tools", "parts", "actions"}, "catalog");

  Catalog cat;

  const json& tools = require(doc, "tools", "catalog");
  if (!tools.is_array() || tools.empty()) {
    throw Error("catalog tools: expected a non-empty array");
  }
  for (size_t i = 0; i < tools.size(); ++i) {
    std::string name = as_string(tools[i], "catalog tools[" + std::to_string(i) + "]");
    if (!cat.tools_.insert(name).second) {
      throw Error("catalog tools[" + std::to_string(i) + "]: duplicate tool \"" + name + "\"");
    }
  }

  const json& parts = require(doc, "parts", "catalog");
  if (!parts.is_array()) {
    throw Error("catalog parts: expected an array");
  }
  if (parts.empty()) {
    throw Error("catalog has no parts");
  }
  std::set<std::string> known_affordances;
  for (size_t i = 0; i < parts.size(); ++i) {
    const std::string where = "catalog parts[" + std::to_string(i) + "]";
    const json& entry = parts[i];
    if (!entry.is_object()) {
      throw Error(where + ": expected an object");
    }
    reject_unknown_keys(entry, {"name", "role", "size_rank", "affordances", "tool", "total"},
                        where);
    PartType part;
    part.name = as_string(require(entry, "name", where), where + ".name");
    part.role = parse_role(as_string(require(entry, "role", where), where + ".role"),
                           where + ".role");
    part.size_rank = as_int(require(entry, "size_rank", where), where + ".size_rank");
    const json& affs = require(entry, "affordances", where);
    if (!affs.is_array()) {
      throw Error(where + ".affordances: expected an array");
    }
    for (size_t k = 0; k < affs.size(); ++k) {
      part.affordances.insert(
          as_string(affs[k], where + ".affordances[" + std::to_string(k) + "]"));
    }
    part.tool = as_string(require(entry, "tool", where), where + ".tool");
    if (!cat.tools_.count(part.tool)) {
      throw Error(where + ": unknown tool \"" + part.tool + "\"");
    }
    part.total_count = as_int(require(entry, "total", where), where + ".total");
    if (part.total_count < 0) {
      throw Error(where + ".total: must be non-negative");
    }
    part.catalog_index = static_cast<int>(i);
    known_affordances.insert(part.affordances.begin(), part.affordances.end());
    if (!cat.parts_.emplace(part.name, part).second) {
      throw Error(where + ": duplicate part name \"" + part.name + "\"");
    }
  }

  const json& actions = require(doc, "actions", "catalog");
  if (!actions.is_array() || actions.empty()) {
    throw Error("catalog actions: expected a non-empty array");
  }
  std::set<std::pair<std::string, std::string>> rule_keys;
  bool has_default = false;
  for (size_t i = 0; i < actions.size(); ++i) {
    const std::string where = "catalog actions[" + std::to_string(i) + "]";
    const json& entry = actions[i];
    if (!entry.is_object()) {
      throw Error(where + ": expected an object");
    }
    reject_unknown_keys(entry, {"main", "attached", "verb", "main_tool", "attached_tool"},
                        where);
    ActionRule rule;
    rule.main_affordance = as_string(require(entry, "main", where), where + ".main");
    rule.attached_affordance =
        as_string(require(entry, "attached", where), where + ".attached");
    rule.verb = as_string(require(entry, "verb", where), where + ".verb");
    rule.main_tool = as_string(require(entry, "main_tool", where), where + ".main_tool");
    rule.attached_tool =
        as_string(require(entry, "attached_tool", where), where + ".attached_tool");
    for (const std::string& tool : {rule.main_tool, rule.attached_tool}) {
      if (!cat.tools_.count(tool)) {
        throw Error(where + ": unknown tool \"" + tool + "\"");
      }
    }
    for (const std::string& aff : {rule.main_affordance, rule.attached_affordance}) {
      if (aff != kWildcard && !known_affordances.count(aff)) {
        throw Error(where + ": unknown affordance \"" + aff + "\"");
      }
    }
    if (!rule_keys.emplace(rule.main_affordance, rule.attached_affordance).second) {
      throw Error(where + ": duplicate rule key (" + rule.main_affordance + ", " +
                  rule.attached_affordance + ")");
    }
    if (rule.main_affordance == kWildcard && rule.attached_affordance == kWildcard) {
      has_default = true;
      cat.default_tool_ = rule.main_tool;
    }
    cat.rules_.push_back(rule);
  }
  if (!has_default) {
    throw Error("catalog actions: missing default (\"*\", \"*\") rule");
  }

  for (const auto& [name, part] : cat.parts_) {
    if (part.role == PartRole::Fastener && part.tool == cat.default_tool_) {
      throw Error("catalog part \"" + name +
                  "\": fastener must use a fastening tool, not the default \"" +
                  cat.default_tool_ + "\"");
    }
  }
  return cat;
}

Catalog Catalog::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("catalog: cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load(buf.str());
}

const PartType& Catalog::part(const std::string& name) const {
  auto it = parts_.find(name);
  if (it == parts_.end()) {
    throw Error("unknown part type \"" + name + "\"");
  }
  return it->second;
}

bool Catalog::outranks(const PartType& a, const PartType& b) const {
  if (a.role != b.role) {
    return a.role == PartRole::Structural;
  }
  if (a.size_rank != b.size_rank) {
    return a.size_rank > b.size_rank;
  }
  return a.catalog_index < b.catalog_index;
}

const PartType& Catalog::pick_main(const PartType& a, const PartType& b) const {
  return outranks(b, a) ? b : a;
}

ActionBinding Catalog::action_for(const PartType& main, const PartType& attached) const {
  // Specificity: exact main counts double, so exact/exact > exact/* > */exact > */*.
  int best_score = -1;
  const ActionRule* best = nullptr;
  for (const ActionRule& rule : rules_) {
    bool main_exact = rule.main_affordance != kWildcard;
    bool attached_exact = rule.attached_affordance != kWildcard;
    if (main_exact && !main.affordances.count(rule.main_affordance)) continue;
    if (attached_exact && !attached.affordances.count(rule.attached_affordance)) continue;
    int score = (main_exact ? 2 : 0) + (attached_exact ? 1 : 0);
    if (score > best_score) {
      best_score = score;
      best = &rule;
    }
  }
  // A validated catalog always has the wildcard rule.
  return ActionBinding{best->verb, best->main_tool, best->attached_tool};
}

}  // namespace atsg
