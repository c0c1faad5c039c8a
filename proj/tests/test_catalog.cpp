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

#include "atsg/catalog.hpp"
#include "atsg/error.hpp"
#include "helpers.hpp"

using namespace atsg;

TEST_CASE("chair catalog loads with seven part types") {
  Catalog catalog = testutil::chair_catalog();
  CHECK(catalog.parts().size() == 7);
  CHECK(catalog.tools().count("gripper") == 1);
  CHECK(catalog.tools().count("wrench") == 1);
  CHECK(catalog.default_tool() == "gripper");
  CHECK(catalog.part("Screw").role == PartRole::Fastener);
  CHECK(catalog.part("Screw").total_count == 8);
  CHECK(catalog.part("Caster").total_count == 5);
  CHECK(catalog.part("Seat").total_count == 1);
}

TEST_CASE("catalog rejects bad documents") {
  CHECK_THROWS_WITH_AS(
      Catalog::load(R"({"tools": ["gripper"], "parts": [], "actions": []})"),
      "catalog has no parts", Error);

  CHECK_THROWS_AS(Catalog::load("not json"), Error);

  const std::string dup = R"({
    "tools": ["gripper", "wrench"],
    "parts": [
      {"name": "Screw", "role": "fastener", "size_rank": 1, "affordances": ["thread"], "tool": "wrench", "total": 8},
      {"name": "Screw", "role": "fastener", "size_rank": 2, "affordances": ["thread"], "tool": "wrench", "total": 8}
    ],
    "actions": [{"main": "*", "attached": "*", "verb": "place", "main_tool": "gripper", "attached_tool": "gripper"}]
  })";
  CHECK_THROWS_WITH_AS(Catalog::load(dup), "catalog parts[1]: duplicate part name \"Screw\"",
                       Error);

  const std::string unknown_tool = R"({
    "tools": ["gripper"],
    "parts": [{"name": "Seat", "role": "structural", "size_rank": 1, "affordances": ["surface"], "tool": "vice", "total": 1}],
    "actions": [{"main": "*", "attached": "*", "verb": "place", "main_tool": "gripper", "attached_tool": "gripper"}]
  })";
  CHECK_THROWS_WITH_AS(Catalog::load(unknown_tool), "catalog parts[0]: unknown tool \"vice\"",
                       Error);

  const std::string unknown_affordance = R"({
    "tools": ["gripper"],
    "parts": [{"name": "Seat", "role": "structural", "size_rank": 1, "affordances": ["surface"], "tool": "gripper", "total": 1}],
    "actions": [
      {"main": "peg", "attached": "*", "verb": "insert", "main_tool": "gripper", "attached_tool": "gripper"},
      {"main": "*", "attached": "*", "verb": "place", "main_tool": "gripper", "attached_tool": "gripper"}
    ]
  })";
  CHECK_THROWS_WITH_AS(Catalog::load(unknown_affordance),
                       "catalog actions[0]: unknown affordance \"peg\"", Error);

  const std::string no_default = R"({
    "tools": ["gripper"],
    "parts": [{"name": "Seat", "role": "structural", "size_rank": 1, "affordances": ["surface"], "tool": "gripper", "total": 1}],
    "actions": [{"main": "surface", "attached": "surface", "verb": "place", "main_tool": "gripper", "attached_tool": "gripper"}]
  })";
  CHECK_THROWS_WITH_AS(Catalog::load(no_default),
                       "catalog actions: missing default (\"*\", \"*\") rule", Error);

  const std::string unknown_key = R"({
    "tools": ["gripper"],
    "parts": [{"name": "Seat", "role": "structural", "size_rank": 1, "affordances": ["surface"], "tool": "gripper", "total": 1, "color": "red"}],
    "actions": [{"main": "*", "attached": "*", "verb": "place", "main_tool": "gripper", "attached_tool": "gripper"}]
  })";
  CHECK_THROWS_WITH_AS(Catalog::load(unknown_key), "catalog parts[0]: unknown key \"color\"",
                       Error);

  const std::string soft_fastener = R"({
    "tools": ["gripper"],
    "parts": [{"name": "Screw", "role": "fastener", "size_rank": 1, "affordances": ["thread"], "tool": "gripper", "total": 8}],
    "actions": [{"main": "*", "attached": "*", "verb": "place", "main_tool": "gripper", "attached_tool": "gripper"}]
  })";
  CHECK_THROWS_AS(Catalog::load(soft_fastener), Error);
}

TEST_CASE("action lookup matches the chair motions") {
  Catalog catalog = testutil::chair_catalog();
  ActionBinding place = catalog.action_for(catalog.part("Seat"), catalog.part("Seat Plate"));
  CHECK(place.verb == "place");
  CHECK(place.main_tool == "gripper");
  CHECK(place.attached_tool == "gripper");

  ActionBinding screw = catalog.action_for(catalog.part("Seat"), catalog.part("Screw"));
  CHECK(screw.verb == "screw");
  CHECK(screw.main_tool == "gripper");
  CHECK(screw.attached_tool == "wrench");

  ActionBinding insert = catalog.action_for(catalog.part("Base"), catalog.part("Caster"));
  CHECK(insert.verb == "insert");
  CHECK(insert.main_tool == "gripper");
  CHECK(insert.attached_tool == "gripper");
}

TEST_CASE("action lookup is total over every type pair") {
  Catalog catalog = testutil::chair_catalog();
  for (const auto& [an, a] : catalog.parts()) {
    for (const auto& [bn, b] : catalog.parts()) {
      ActionBinding binding = catalog.action_for(a, b);
      CHECK(!binding.verb.empty());
      CHECK(catalog.tools().count(binding.main_tool) == 1);
      CHECK(catalog.tools().count(binding.attached_tool) == 1);
    }
  }
}

TEST_CASE("precedence: fastener never outranks structural, seat over screw") {
  Catalog catalog = testutil::chair_catalog();
  CHECK(catalog.pick_main(catalog.part("Screw"), catalog.part("Seat")).name == "Seat");
  CHECK(catalog.pick_main(catalog.part("Seat"), catalog.part("Screw")).name == "Seat");
  CHECK(catalog.pick_main(catalog.part("Seat"), catalog.part("Seat")).name == "Seat");
  CHECK(catalog.pick_main(catalog.part("Seat"), catalog.part("Base")).name == "Seat");
  CHECK(catalog.pick_main(catalog.part("Base"), catalog.part("Caster")).name == "Base");
}

TEST_CASE("precedence is a strict total order over the chair types") {
  Catalog catalog = testutil::chair_catalog();
  std::vector<const PartType*> types;
  for (const auto& [name, part] : catalog.parts()) {
    types.push_back(&part);
  }
  // Antisymmetry over all pairs.
  for (const PartType* a : types) {
    for (const PartType* b : types) {
      if (a == b) {
        CHECK(!catalog.outranks(*a, *b));
      } else {
        CHECK(catalog.outranks(*a, *b) != catalog.outranks(*b, *a));
      }
    }
  }
  // Transitivity over all triples.
  for (const PartType* a : types) {
    for (const PartType* b : types) {
      for (const PartType* c : types) {
        if (catalog.outranks(*a, *b) && catalog.outranks(*b, *c)) {
          CHECK(catalog.outranks(*a, *c));
        }
      }
    }
  }
}

TEST_CASE("load is deterministic") {
  Catalog a = testutil::chair_catalog();
  Catalog b = testutil::chair_catalog();
  CHECK(a.parts().size() == b.parts().size());
  for (const auto& [name, part] : a.parts()) {
    const PartType& other = b.part(name);
    CHECK(part.catalog_index == other.catalog_index);
    CHECK(part.size_rank == other.size_rank);
    CHECK(part.total_count == other.total_count);
    CHECK(part.affordances == other.affordances);
  }
}
