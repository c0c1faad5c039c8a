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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "atsg/error.hpp"
#include "atsg/pipeline.hpp"
#include "atsg/schedule.hpp"
#include "helpers.hpp"

using namespace atsg;

TEST_CASE("color box: sparse detections still build one converged product") {
  Catalog catalog = Catalog::load_file(testutil::fixture("colorbox_catalog.json"));
  DetectionSeries series = parse_manual_file(testutil::fixture("colorbox_manual.json"));
  BuildResult result = build_atsg(catalog, series);
  CHECK(result.log.converged);
  CHECK(result.graph.units().size() == 13);
  CHECK(result.log.total_removed() == 1);  // the duplicated nail
  auto final_node = result.graph.final_output();
  REQUIRE(final_node.has_value());
  std::map<std::string, int> counts = result.graph.closure_counts(*final_node);
  for (const auto& [name, part] : catalog.parts()) {
    CHECK(counts[name] == part.total_count);
  }
  // Lone-part images continue the existing sub-assembly.
  CHECK(result.graph.object(*final_node).main.type == "Bottom Panel");
}

TEST_CASE("steel rack: occluded bolts are restored after the last bolt step") {
  Catalog catalog = Catalog::load_file(testutil::fixture("steelrack_catalog.json"));
  DetectionSeries series = parse_manual_file(testutil::fixture("steelrack_manual.json"));
  BuildResult result = build_atsg(catalog, series);
  CHECK(result.log.converged);
  CHECK(result.graph.units().size() == 15);
  CHECK(result.log.total_added() == 3);
  CHECK(result.log.added_at(3) == 3);
  auto final_node = result.graph.final_output();
  std::map<std::string, int> counts = result.graph.closure_counts(*final_node);
  CHECK(counts.at("Bolt") == 8);
  CHECK(counts.at("Shelf") == 3);
}

TEST_CASE("build twice, byte-identical artifacts") {
  for (const char* name : {"chair_full", "chair_degraded"}) {
    Catalog catalog = testutil::chair_catalog();
    DetectionSeries series =
        parse_manual_file(testutil::fixture(std::string(name) + ".json"));
    BuildResult a = build_atsg(catalog, series);
    BuildResult b = build_atsg(catalog, series);
    CHECK(testutil::graph_signature(a.graph) == testutil::graph_signature(b.graph));
  }
}

TEST_CASE("an empty series is rejected") {
  Catalog catalog = testutil::chair_catalog();
  DetectionSeries series;
  CHECK_THROWS_AS(build_atsg(catalog, series), Error);
}

TEST_CASE("a series that never joins its branches fails loudly") {
  Catalog catalog = testutil::chair_catalog();  // full totals irrelevant: roots fail first
  DetectionSeries series;
  series.images.push_back({1, {"Seat", "Seat Plate"}});
  series.images.push_back({2, {"Base", "Caster", "Caster", "Caster", "Caster", "Caster"}});
  // No later image detects both mains, so two roots remain.
  CHECK_THROWS_AS(build_atsg(catalog, series), Error);
}

TEST_CASE("mask_series is deterministic per seed and drops detections only") {
  DetectionSeries full = testutil::chair_full();
  DetectionSeries a = mask_series(full, 0.5, 42);
  DetectionSeries b = mask_series(full, 0.5, 42);
  DetectionSeries c = mask_series(full, 0.5, 43);
  REQUIRE(a.images.size() == full.images.size());
  size_t total_a = 0;
  size_t total_c = 0;
  for (size_t i = 0; i < a.images.size(); ++i) {
    CHECK(a.images[i].index == full.images[i].index);
    CHECK(a.images[i].detected == b.images[i].detected);
    CHECK(a.images[i].detected.size() <= full.images[i].detected.size());
    total_a += a.images[i].detected.size();
    total_c += c.images[i].detected.size();
  }
  CHECK(total_a > 0);
  CHECK(total_a != total_c);  // different seeds mask differently
  CHECK(mask_series(full, 1.0, 7).images[1].detected == full.images[1].detected);
}

TEST_CASE("random recipes build, converge and hold the structural invariants") {
  int converged = 0;
  for (uint64_t seed = 1; seed <= 200; ++seed) {
    testutil::RandomRecipe recipe = testutil::random_recipe(seed);
    BuildResult result;
    try {
      result = build_atsg(recipe.catalog, recipe.series);
    } catch (const Error&) {
      continue;  // noise can make a recipe unrecoverable; it must refuse, not lie
    }
    ++converged;
    CHECK(result.log.converged);
    CHECK(result.graph.validate(recipe.catalog).empty());

    // Closure equals totals.
    auto final_node = result.graph.final_output();
    REQUIRE(final_node.has_value());
    std::map<std::string, int> counts = result.graph.closure_counts(*final_node);
    for (const auto& [name, part] : recipe.catalog.parts()) {
      CHECK(counts[name] == part.total_count);
    }

    // Fastener-last within every image's units.
    std::map<int, bool> fastener_seen;
    for (const AssemblyUnit& unit : result.graph.units()) {
      const PartType* attached = nullptr;
      const ObjectNode& node = result.graph.object(unit.attached_input);
      if (recipe.catalog.has(node.main.type)) {
        attached = &recipe.catalog.part(node.main.type);
      }
      REQUIRE(attached != nullptr);
      bool is_fastener =
          attached->role == PartRole::Fastener && node.subs.empty();
      if (is_fastener) {
        fastener_seen[unit.origin_image] = true;
      } else if (node.subs.empty()) {
        CHECK(!fastener_seen[unit.origin_image]);
      }
    }

    // Deterministic rebuild.
    BuildResult again = build_atsg(recipe.catalog, recipe.series);
    CHECK(testutil::graph_signature(again.graph) ==
          testutil::graph_signature(result.graph));

    // Reconcile is a fixed point.
    ReconciliationLog log = reconcile(result.graph, recipe.catalog);
    CHECK(log.actions.empty());
  }
  CHECK(converged >= 150);
}
