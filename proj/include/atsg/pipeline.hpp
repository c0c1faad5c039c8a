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

#include <cstdint>
#include <string>
#include <vector>

#include "atsg/build.hpp"
#include "atsg/catalog.hpp"
#include "atsg/emit.hpp"
#include "atsg/graph.hpp"
#include "atsg/manual.hpp"
#include "atsg/recovery.hpp"
#include "atsg/schedule.hpp"

namespace atsg {

struct BuildOptions {
  HandPolicy hand_policy = HandPolicy::PerInput;
};

/// Everything the sequential build produces: the reconciled graph, the
/// per-image groups with their complement counters, the recovery log and
/// any integration warnings.
struct BuildResult {
  DetectionSeries series;
  Atsg graph;
  std::vector<UnitGroup> groups;
  ReconciliationLog log;
  std::vector<std::string> warnings;

  std::vector<int> image_indices() const;
};

/// Runs ingest -> per-image embodiment -> integration -> inheritance ->
/// reconciliation. Throws Error when the series cannot converge (unknown
/// parts, no single final product, unrecoverable deficiency).
BuildResult build_atsg(const Catalog& catalog, const DetectionSeries& series,
                       const BuildOptions& options = {});

/// Drops each detection independently with probability 1 - keep_prob.
/// Images stay in place (possibly empty). Deterministic for a given seed.
DetectionSeries mask_series(const DetectionSeries& series, double keep_prob, uint64_t seed);

/// Full report document: node tables, complement tables, recovery actions,
/// final closure, validation findings and a schedule summary.
ReportJson build_report(const BuildResult& result, const Catalog& catalog,
                        const Schedule& schedule);

}  // namespace atsg
