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

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "atsg/catalog.hpp"
#include "atsg/emit.hpp"
#include "atsg/graph.hpp"
#include "atsg/manual.hpp"
#include "atsg/pipeline.hpp"
#include "atsg/schedule.hpp"

namespace testutil {

inline std::string fixture(const std::string& name) {
  return std::string(ATSG_FIXTURE_DIR) + "/" + name;
}

inline atsg::Catalog chair_catalog() {
  return atsg::Catalog::load_file(fixture("chair_catalog.json"));
}

inline atsg::DetectionSeries chair_full() {
  return atsg::parse_manual_file(fixture("chair_full.json"));
}

inline atsg::DetectionSeries chair_degraded() {
  return atsg::parse_manual_file(fixture("chair_degraded.json"));
}

/// Canonical textual form of a graph for structural-equality checks.
inline std::string graph_signature(const atsg::Atsg& graph) {
  std::string out = atsg::emit_dot(graph);
  for (const auto& [id, node] : graph.objects()) {
    out += std::to_string(id) + ":";
    for (const atsg::PartInstance& inst : graph.children_closure(id)) {
      out += inst.id() + ",";
    }
    out += ";";
  }
  return out;
}

/// Two-part catalog for minimal single-unit builds.
inline atsg::Catalog pair_catalog() {
  return atsg::Catalog::load(R"({
    "tools": ["gripper"],
    "parts": [
      {"name": "Seat", "role": "structural", "size_rank": 70, "affordances": ["surface"], "tool": "gripper", "total": 1},
      {"name": "Seat Plate", "role": "structural", "size_rank": 50, "affordances": ["surface"], "tool": "gripper", "total": 1}
    ],
    "actions": [{"main": "*", "attached": "*", "verb": "place", "main_tool": "gripper", "attached_tool": "gripper"}]
  })");
}

/// Closure oracle independent of the stored child sets: walks producing
/// units recursively and unions the leaf instances along every path.
inline std::set<atsg::PartInstance> closure_by_walk(const atsg::Atsg& graph,
                                                    atsg::NodeId node) {
  const atsg::AssemblyUnit* unit = graph.producer(node);
  if (unit == nullptr) {
    std::set<atsg::PartInstance> leaf = graph.object(node).subs;
    leaf.insert(graph.object(node).main);
    return leaf;
  }
  std::set<atsg::PartInstance> merged = closure_by_walk(graph, unit->parent_input);
  std::set<atsg::PartInstance> attached = closure_by_walk(graph, unit->attached_input);
  merged.insert(attached.begin(), attached.end());
  return merged;
}

struct UnitPoset {
  int n = 0;
  std::vector<int> steps;
  std::vector<std::vector<int>> preds;
  std::vector<std::vector<int>> succs;
};

inline UnitPoset unit_poset(const atsg::Atsg& graph) {
  UnitPoset p;
  std::map<atsg::NodeId, int> producer;
  for (const atsg::AssemblyUnit& unit : graph.units()) {
    producer[unit.output] = p.n;
    p.steps.push_back(unit.step);
    ++p.n;
  }
  p.preds.resize(p.n);
  p.succs.resize(p.n);
  int i = 0;
  for (const atsg::AssemblyUnit& unit : graph.units()) {
    for (atsg::NodeId input : {unit.parent_input, unit.attached_input}) {
      auto it = producer.find(input);
      if (it != producer.end()) {
        p.preds[i].push_back(it->second);
        p.succs[it->second].push_back(i);
      }
    }
    ++i;
  }
  return p;
}

/// Exhaustive minimum makespan for unit tasks on `machines` identical
/// machines: breadth-first search over completed-set states, trying every
/// subset of ready units per slot.
inline int exhaustive_min_makespan(const atsg::Atsg& graph, int machines) {
  UnitPoset p = unit_poset(graph);
  if (p.n == 0) return 0;
  const uint32_t full = (p.n == 32) ? ~0u : ((1u << p.n) - 1);

  auto ready_of = [&p](uint32_t mask) {
    std::vector<int> ready;
    for (int i = 0; i < p.n; ++i) {
      if (mask & (1u << i)) continue;
      bool ok = true;
      for (int pred : p.preds[i]) {
        if (!(mask & (1u << pred))) {
          ok = false;
          break;
        }
      }
      if (ok) ready.push_back(i);
    }
    return ready;
  };

  std::set<uint32_t> layer{0};
  int slots = 0;
  while (!layer.count(full)) {
    ++slots;
    std::set<uint32_t> next;
    for (uint32_t mask : layer) {
      std::vector<int> ready = ready_of(mask);
      const int r = static_cast<int>(ready.size());
      for (uint32_t pick = 1; pick < (1u << r); ++pick) {
        if (__builtin_popcount(pick) > machines) continue;
        uint32_t advanced = mask;
        for (int b = 0; b < r; ++b) {
          if (pick & (1u << b)) advanced |= (1u << ready[b]);
        }
        next.insert(advanced);
      }
    }
    layer = std::move(next);
    if (slots > p.n + 1) break;  // safety net; cannot trigger on a DAG
  }
  return slots;
}

/// Number of linear extensions, by dynamic programming over down-sets.
inline long long count_linear_extensions(const atsg::Atsg& graph) {
  UnitPoset p = unit_poset(graph);
  if (p.n == 0) return 1;
  std::map<uint32_t, long long> count{{0, 1}};
  const uint32_t full = (1u << p.n) - 1;
  // Process masks in popcount order.
  std::vector<std::vector<uint32_t>> by_size(p.n + 1);
  by_size[0].push_back(0);
  std::set<uint32_t> seen{0};
  for (int size = 0; size < p.n; ++size) {
    for (uint32_t mask : by_size[size]) {
      for (int i = 0; i < p.n; ++i) {
        if (mask & (1u << i)) continue;
        bool ok = true;
        for (int pred : p.preds[i]) {
          if (!(mask & (1u << pred))) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        uint32_t next = mask | (1u << i);
        count[next] += count[mask];
        if (seen.insert(next).second) {
          by_size[size + 1].push_back(next);
        }
      }
    }
  }
  return count.count(full) ? count[full] : 0;
}

/// Minimum adjacent tool switches over all linear extensions, by plain
/// recursive enumeration. Call only when count_linear_extensions is small.
inline int min_tool_changes_by_enumeration(const atsg::Atsg& graph,
                                           const atsg::Catalog& catalog) {
  UnitPoset p = unit_poset(graph);
  std::vector<std::string> tools(p.n);
  {
    int i = 0;
    for (const atsg::AssemblyUnit& unit : graph.units()) {
      tools[i++] = atsg::primary_tool(graph, unit, catalog);
    }
  }
  int best = 1 << 28;
  std::vector<int> indegree(p.n);
  for (int i = 0; i < p.n; ++i) indegree[i] = static_cast<int>(p.preds[i].size());

  std::vector<int> order;
  auto rec = [&](auto&& self, int placed, int changes, const std::string& last) -> void {
    if (changes >= best) return;
    if (placed == p.n) {
      best = changes;
      return;
    }
    for (int i = 0; i < p.n; ++i) {
      if (indegree[i] != 0) continue;
      indegree[i] = -1;
      for (int succ : p.succs[i]) --indegree[succ];
      int cost = (!last.empty() && tools[i] != last) ? 1 : 0;
      self(self, placed + 1, changes + cost, tools[i]);
      for (int succ : p.succs[i]) ++indegree[succ];
      indegree[i] = 0;
    }
  };
  if (p.n == 0) return 0;
  rec(rec, 0, 0, std::string());
  return best;
}

/// Brute-force predecessor sets per unit step (transitive closure).
inline std::map<int, std::set<int>> predecessor_sets(const atsg::Atsg& graph) {
  UnitPoset p = unit_poset(graph);
  std::map<int, std::set<int>> result;
  for (int i = 0; i < p.n; ++i) {
    std::set<int> all;
    std::queue<int> frontier;
    frontier.push(i);
    while (!frontier.empty()) {
      int cur = frontier.front();
      frontier.pop();
      for (int pred : p.preds[cur]) {
        if (all.insert(p.steps[pred]).second) {
          frontier.push(pred);
        }
      }
    }
    result[p.steps[i]] = all;
  }
  return result;
}

/// Randomized product recipes: a catalog plus a detection series that a
/// correct pipeline must reconcile, with optional noise (duplicates,
/// omissions) that recovery has to absorb.
struct RandomRecipe {
  atsg::Catalog catalog;
  atsg::DetectionSeries series;
};

inline RandomRecipe random_recipe(uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  const int structural_types = pick(2, 4);
  const int fastener_types = pick(0, 2);

  std::string catalog_text = R"({"tools": ["gripper", "driver"], "parts": [)";
  std::vector<std::string> names;
  std::vector<int> totals;
  std::vector<bool> fastener;
  for (int i = 0; i < structural_types + fastener_types; ++i) {
    bool is_fastener = i >= structural_types;
    std::string name = std::string(is_fastener ? "F" : "S") + std::to_string(i);
    int total = (i == 0) ? 1 : pick(1, is_fastener ? 4 : 3);
    names.push_back(name);
    totals.push_back(total);
    fastener.push_back(is_fastener);
    if (i) catalog_text += ",";
    catalog_text += "{\"name\": \"" + name + "\", \"role\": \"" +
                    (is_fastener ? "fastener" : "structural") +
                    "\", \"size_rank\": " + std::to_string(100 - i * 10) +
                    ", \"affordances\": [\"" + (is_fastener ? "f" : "s") +
                    "\"], \"tool\": \"" + (is_fastener ? "driver" : "gripper") +
                    "\", \"total\": " + std::to_string(total) + "}";
  }
  catalog_text += "], \"actions\": [";
  if (fastener_types > 0) {
    catalog_text +=
        R"({"main": "s", "attached": "f", "verb": "drive", "main_tool": "gripper", "attached_tool": "driver"},)";
  }
  catalog_text += R"(
    {"main": "s", "attached": "s", "verb": "place", "main_tool": "gripper", "attached_tool": "gripper"},
    {"main": "*", "attached": "*", "verb": "place", "main_tool": "gripper", "attached_tool": "gripper"}
  ]})";

  RandomRecipe recipe;
  recipe.catalog = atsg::Catalog::load(catalog_text);

  // Deal every instance except the product main into image batches; each
  // image re-detects the anchor so the parent is identifiable.
  std::vector<std::string> pool;
  for (size_t t = 1; t < names.size(); ++t) {
    for (int k = 0; k < totals[t]; ++k) {
      pool.push_back(names[t]);
    }
  }
  std::shuffle(pool.begin(), pool.end(), rng);

  recipe.series.source = "random recipe " + std::to_string(seed);
  const int images = pick(2, 4);
  size_t cursor = 0;
  for (int img = 1; img <= images; ++img) {
    atsg::DetectionImage image;
    image.index = img;
    if (img > 1) {
      image.detected.push_back(names[0]);  // anchor re-detection
    }
    size_t take = (img == images)
                      ? pool.size() - cursor
                      : std::min(pool.size() - cursor,
                                 static_cast<size_t>(pick(1, 3)));
    for (size_t k = 0; k < take; ++k) {
      image.detected.push_back(pool[cursor++]);
    }
    if (img == 1 && std::find(image.detected.begin(), image.detected.end(), names[0]) ==
                        image.detected.end()) {
      image.detected.insert(image.detected.begin(), names[0]);
    }
    // Noise: an occasional duplicate detection of something already listed.
    if (pick(0, 3) == 0 && !image.detected.empty()) {
      image.detected.push_back(image.detected[pick(0, static_cast<int>(image.detected.size()) - 1)]);
    }
    recipe.series.images.push_back(image);
  }
  // Noise: occasionally drop one non-anchor detection entirely; recovery
  // re-inserts it only if a sibling step of the same type survives, so drop
  // only when the type keeps at least one other detection.
  std::map<std::string, int> seen;
  for (const atsg::DetectionImage& image : recipe.series.images) {
    for (const std::string& name : image.detected) ++seen[name];
  }
  if (pick(0, 1) == 0) {
    for (atsg::DetectionImage& image : recipe.series.images) {
      for (size_t d = image.detected.size(); d-- > 0;) {
        const std::string& name = image.detected[d];
        if (name != names[0] && seen[name] > 1) {
          --seen[name];
          image.detected.erase(image.detected.begin() + static_cast<long>(d));
          break;
        }
      }
      if (pick(0, 1) == 0) break;
    }
  }
  return recipe;
}

/// Chair-specific masking that keeps the anchors every image needs: the
/// parent main part, at least one unassembled detected part per image with
/// any, and one sighting of every single-count type. Rebuilds from any such
/// masking land on the canonical graph.
inline atsg::DetectionSeries mask_chair_canonical(const atsg::DetectionSeries& full,
                                                  std::mt19937_64& rng) {
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  atsg::DetectionSeries masked;
  masked.source = full.source + " (masked)";
  for (const atsg::DetectionImage& image : full.images) {
    atsg::DetectionImage kept;
    kept.index = image.index;
    auto keep_names = [&](const std::string& name, int at_least, int at_most) {
      std::vector<std::string> all;
      for (const std::string& det : image.detected) {
        if (det == name) all.push_back(det);
      }
      int n = std::min<int>(at_most, static_cast<int>(all.size()));
      int lo = std::min<int>(at_least, n);
      int take = pick(lo, n);
      for (int k = 0; k < take; ++k) kept.detected.push_back(name);
    };
    switch (image.index) {
      case 1:
        kept.detected = image.detected;  // the seat branch foundation stays
        break;
      case 2:
        kept.detected.push_back("Seat");
        kept.detected.push_back("Back Rest");
        keep_names("Screw", 1, 5);
        keep_names("Seat Plate", 0, 1);
        break;
      case 3:
        keep_names("Seat", 0, 1);
        keep_names("Seat Plate", 0, 1);
        break;
      case 4:
        // A bare {Base} image reads as a continuation of the seat lineage,
        // so the base anchor keeps at least one caster with it.
        kept.detected.push_back("Base");
        keep_names("Caster", 1, 4);
        break;
      case 5:
        kept.detected.push_back("Base");
        keep_names("Cylinder", 1, 2);
        keep_names("Caster", 0, 5);
        break;
      case 6:
        kept.detected.push_back("Base");
        kept.detected.push_back("Seat");
        keep_names("Caster", 0, 5);
        keep_names("Cylinder", 0, 1);
        keep_names("Back Rest", 0, 1);
        break;
      default:
        kept.detected = image.detected;
        break;
    }
    masked.images.push_back(kept);
  }
  return masked;
}

}  // namespace testutil
