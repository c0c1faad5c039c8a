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
#include "atsg/cli.hpp"

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "atsg/error.hpp"
#include "atsg/pipeline.hpp"

namespace atsg {

namespace {

struct CommonArgs {
  std::string manual_path;
  std::string catalog_path;
  std::string hand_policy = "per-input";
  int arms = 1;
  bool dedicated_tool_arm = false;
  double mask_keep = 1.0;
  uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--manual", args.manual_path, "Per-image detection document (JSON)")
      ->required();
  cmd->add_option("--catalog", args.catalog_path, "Part taxonomy and action table (JSON)")
      ->required();
  cmd->add_option("--hand-policy", args.hand_policy, "Hand node materialization")
      ->check(CLI::IsMember({"per-input", "shared-parent"}));
  cmd->add_option("--arms", args.arms, "Number of arms for the schedule")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--dedicated-tool-arm", args.dedicated_tool_arm,
                "Pin each tool to one arm");
  cmd->add_option("--mask-keep", args.mask_keep,
                  "Keep each detection with this probability (masking experiments)")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--seed", args.seed, "Seed for --mask-keep");
}

BuildResult run_build(const CommonArgs& args) {
  Catalog catalog = Catalog::load_file(args.catalog_path);
  DetectionSeries series = parse_manual_file(args.manual_path);
  if (args.mask_keep < 1.0) {
    series = mask_series(series, args.mask_keep, args.seed);
  }
  BuildOptions options;
  options.hand_policy = args.hand_policy == "shared-parent" ? HandPolicy::SharedParent
                                                            : HandPolicy::PerInput;
  return build_atsg(catalog, series, options);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + path);
  }
  out << text;
}

void write_json(const std::string& path, const ReportJson& doc) {
  write_text(path, doc.dump(2) + "\n");
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Compiles per-image part detections into an executable assembly task graph"};
  app.require_subcommand(1);

  CommonArgs build_args;
  std::string dot_path;
  std::string plan_path;
  std::string report_path;
  CLI::App* build_cmd =
      app.add_subcommand("build", "Build the task graph and emit artifacts");
  add_common(build_cmd, build_args);
  build_cmd->add_option("--dot", dot_path, "Write the graph description here");
  build_cmd->add_option("--plan", plan_path, "Write the canonical plan here");
  build_cmd->add_option("--report", report_path, "Write the diagnostic report here");

  CommonArgs validate_args;
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "Build and print structural diagnostics");
  add_common(validate_cmd, validate_args);

  CommonArgs schedule_args;
  std::string schedule_plan_path;
  CLI::App* schedule_cmd =
      app.add_subcommand("schedule", "Build and print the execution schedule");
  add_common(schedule_cmd, schedule_args);
  schedule_cmd->add_option("--plan", schedule_plan_path, "Write the canonical plan here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (build_cmd->parsed()) {
      Catalog catalog = Catalog::load_file(build_args.catalog_path);
      BuildResult result = run_build(build_args);
      Schedule schedule = schedule_arms(result.graph, catalog, build_args.arms,
                                        build_args.dedicated_tool_arm);
      if (!dot_path.empty()) {
        write_text(dot_path, emit_dot(result.graph));
      }
      if (!plan_path.empty()) {
        write_json(plan_path, emit_plan(schedule, result.graph));
      }
      if (!report_path.empty()) {
        write_json(report_path, build_report(result, catalog, schedule));
      }
      std::cout << "converged: " << result.graph.units().size() << " units, "
                << result.log.total_added() << " added, " << result.log.total_removed()
                << " removed by recovery\n";
      return 0;
    }
    if (validate_cmd->parsed()) {
      Catalog catalog = Catalog::load_file(validate_args.catalog_path);
      BuildResult result = run_build(validate_args);
      std::vector<std::string> issues = result.graph.validate(catalog);
      for (const std::string& issue : issues) {
        std::cout << issue << "\n";
      }
      std::cout << (issues.empty() ? "valid" : "invalid") << ": "
                << result.graph.units().size() << " units, converged="
                << (result.log.converged ? "true" : "false") << "\n";
      return issues.empty() ? 0 : 1;
    }
    if (schedule_cmd->parsed()) {
      Catalog catalog = Catalog::load_file(schedule_args.catalog_path);
      BuildResult result = run_build(schedule_args);
      Schedule schedule = schedule_arms(result.graph, catalog, schedule_args.arms,
                                        schedule_args.dedicated_tool_arm);
      ReportJson plan = emit_plan(schedule, result.graph);
      if (!schedule_plan_path.empty()) {
        write_json(schedule_plan_path, plan);
      }
      std::cout << plan.dump(2) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace atsg
