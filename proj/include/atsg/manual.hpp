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

#include <compare>
#include <string>
#include <vector>

namespace atsg {

/// A uniquely identified physical part: the ordinal-th instance of a type.
struct PartInstance {
  std::string type;
  int ordinal = 0;

  auto operator<=>(const PartInstance&) const = default;

  std::string id() const { return type + "#" + std::to_string(ordinal); }
};

/// Detections of one instruction image, in detector output order.
/// Duplicates are allowed: one entry per detected instance.
struct DetectionImage {
  int index = 0;
  std::vector<std::string> detected;
};

struct DetectionSeries {
  std::string source;
  std::vector<DetectionImage> images;
};

/// Parses a per-image detection document (JSON text). Per-detection
/// confidence and bbox fields are accepted and ignored. Throws Error on
/// malformed input, an empty series, or non-increasing image indices.
DetectionSeries parse_manual(const std::string& text);
DetectionSeries parse_manual_file(const std::string& path);

}  // namespace atsg
