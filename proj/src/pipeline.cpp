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
#include "atsg/pipeline.hpp"

#include <random>

#include "atsg/error.hpp"
#include "atsg/integrate.hpp"

namespace atsg {

std::vector<int> BuildResult::image_indices() const {
  std::vector<int> indices;
  for (const DetectionImage& image : series.images) {
    indices.push_back(image.index);
  }
  return indices;
}

namespace {

// What each image saw, for the post-recovery complement accounting.
struct ImageRecord {
  int image = 0;
  std::vector<PartInstance> matched;
  std::vector<PartInstance> extras;
  std::vector<PartInstance> lineages;  // main instances of identified parents
};

// Fills per-image Add/Remove counters from the reconciled graph: Add is the
// part information a parent state carried into the image beyond what the
// image detected; Remove is the detections excluded as already assembled,
// less the parent states actually consumed.
void fill_complement_counters(const Atsg& graph, const std::vector<ImageRecord>& records,
                              std::vector<UnitGroup>& groups) {
  std::set<PartInstance> present;
  for (const auto& [id, node] : graph.objects()) {
    if (graph.producer(id) == nullptr) {
      present.insert(node.main);
    }
  }

  for (size_t i = 0; i < records.size(); ++i) {
    const ImageRecord& record = records[i];
    UnitGroup& group = groups[i];

    int matched_present = 0;
    for (const PartInstance& inst : record.matched) {
      if (present.count(inst)) ++matched_present;
    }
    int extras_present = 0;
    for (const PartInstance& inst : record.extras) {
      if (present.count(inst)) ++extras_present;
    }

    int inherited = 0;
    int consumed = 0;
    for (const PartInstance& lineage : record.lineages) {
      // The lineage state as of this image: output of its last earlier-image
      // unit, or the bare leaf when no such unit survives.
      NodeId entry = -1;
      int entry_step = -1;
      for (const AssemblyUnit& unit : graph.units()) {
        if (unit.origin_image >= record.image) continue;
        if (!(graph.object(unit.output).main == lineage)) continue;
        if (unit.step > entry_step) {
          entry = unit.output;
          entry_step = unit.step;
        }
      }
      if (entry < 0) {
        for (const auto& [id, node] : graph.objects()) {
          if (graph.producer(id) == nullptr && node.main == lineage) {
            entry = id;
            break;
          }
        }
      }
      if (entry < 0) continue;
      inherited += static_cast<int>(graph.children_closure(entry).size());
      for (const AssemblyUnit* user : graph.consumers(entry)) {
        if (user->origin_image == record.image) {
          ++consumed;
          break;
        }
      }
    }
    group.added_part_info = inherited - matched_present - extras_present;
    group.removed_part_info = matched_present - consumed;
  }
}

}  // namespace

BuildResult build_atsg(const Catalog& catalog, const DetectionSeries& series,
                       const BuildOptions& options) {
  if (series.images.empty()) {
    throw Error("build: series has no images");
  }

  BuildResult result;
  result.series = series;
  result.graph.set_hand_policy(options.hand_policy);
  AssemblyRegistry registry;
  std::vector<ImageRecord> records;

  for (const DetectionImage& image : series.images) {
    ResolvedImage resolved = resolve_image(image, catalog, registry);
    Classified classified =
        classify_new_parts(resolved, result.graph, registry, catalog);

    ImageRecord record;
    record.image = image.index;
    for (const auto& [inst, root] : classified.assembled) {
      record.matched.push_back(inst);
    }
    record.extras = classified.extras;
    for (NodeId root : classified.parent_roots) {
      record.lineages.push_back(result.graph.object(root).main);
    }

    // Late sightings of parts attached in earlier occluded steps extend the
    // chain where that type was last attached, not this image's chain.
    for (const PartInstance& extra : classified.extras) {
      const AssemblyUnit* tmpl = result.graph.last_attachment_of(extra.type);
      if (tmpl == nullptr) {
        throw Error("image " + std::to_string(image.index) + ": no attachment step for \"" +
                    extra.type + "\" to extend");
      }
      result.graph.splice_attachment_after(tmpl->step, extra);
    }

    UnitGroup group = expand_units(result.graph, classified, catalog, options.hand_policy);
    std::vector<std::string> warnings = integrate(result.graph);
    result.warnings.insert(result.warnings.end(), warnings.begin(), warnings.end());
    inherit_children(result.graph);
    registry.sync(result.graph);
    result.groups.push_back(group);
    records.push_back(record);
  }

  result.log = reconcile(result.graph, catalog);
  fill_complement_counters(result.graph, records, result.groups);

  std::vector<std::string> issues = result.graph.validate(catalog);
  if (!issues.empty()) {
    std::string joined;
    for (const std::string& issue : issues) {
      joined += "\n  " + issue;
    }
    throw Error("build produced an invalid graph:" + joined);
  }
  return result;
}

DetectionSeries mask_series(const DetectionSeries& series, double keep_prob, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  DetectionSeries masked;
  masked.source = series.source;
  for (const DetectionImage& image : series.images) {
    DetectionImage kept;
    kept.index = image.index;
    for (const std::string& name : image.detected) {
      if (coin(rng) < keep_prob) {
        kept.detected.push_back(name);
      }
    }
    masked.images.push_back(kept);
  }
  return masked;
}

ReportJson build_report(const BuildResult& result, const Catalog& catalog,
                        const Schedule& schedule) {
  ReportJson report;
  report["source"] = result.series.source;
  report["converged"] = result.log.converged;
  report["node_counts"] = emit_node_report(result.graph, result.image_indices());
  report["complement"] =
      emit_complement_report(result.log, result.groups, result.image_indices());

  ReportJson actions = ReportJson::array();
  for (const ReconcileAction& action : result.log.actions) {
    ReportJson entry;
    entry["action"] = action.kind == ReconcileAction::Kind::Added ? "added" : "removed";
    entry["part"] = action.instance.id();
    entry["image"] = action.image;
    entry["reason"] = action.reason;
    actions.push_back(entry);
  }
  report["reconciliation"] = actions;

  ReportJson closure = ReportJson::object();
  if (auto final_node = result.graph.final_output()) {
    for (const auto& [type, count] : result.graph.closure_counts(*final_node)) {
      closure[type] = count;
    }
  }
  report["final_closure"] = closure;
  report["validation"] = result.graph.validate(catalog);
  report["warnings"] = result.warnings;
  report["schedule"] = {{"arms", schedule.arms},
                        {"makespan", schedule.makespan},
                        {"tool_changes", schedule.tool_changes}};
  return report;
}

}  // namespace atsg
