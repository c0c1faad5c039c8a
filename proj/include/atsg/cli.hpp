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

namespace atsg {

/// CLI driver: subcommands build, validate, schedule. Returns the process
/// exit code: 0 on a converged build, 1 on build diagnostics, 2 on usage
/// errors.
int run(const std::vector<std::string>& args);

}  // namespace atsg
