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
#include "atsg/manual.hpp"

#include <fstream>
#include <sstream>

#include "atsg/error.hpp"
#include "json.hpp"

namespace atsg {

using nlohmann::json;

DetectionSeries parse_manual(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("manual: parse failure: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error("manual: top level must be an object");
  }
  for (const auto& item : doc.items()) {
    if (item.key() != "source" && item.key() != "images") {
      throw Error("manual: unknown key \"" + item.key() + "\"");
    }
  }

  DetectionSeries series;
  if (doc.contains("source")) {
    if (!doc["source"].is_string()) {
      throw Error("manual source: expected a string");
    }
    series.source = doc["source"].get<std::string>();
  }

  if (!doc.contains("images") || !doc["images"].is_array()) {
    throw Error("manual: missing \"images\" array");
  }
  const json& images = doc["images"];
  if (images.empty()) {
    throw Error("manual: series has no images");
  }

  int last_index = 0;
  for (size_t i = 0; i < images.size(); ++i) {
    const std::string where = "manual images[" + std::to_string(i) + "]";
    const json& entry = images[i];
    if (!entry.is_object()) {
      throw Error(where + ": expected an object");
    }
    for (const auto& item : entry.items()) {
      if (item.key() != "index" && item.key() != "detections") {
        throw Error(where + ": unknown key \"" + item.key() + "\"");
      }
    }
    DetectionImage image;
    if (!entry.contains("index") || !entry["index"].is_number_integer()) {
      throw Error(where + ": missing integer \"index\"");
    }
    image.index = entry["index"].get<int>();
    if (image.index <= 0) {
      throw Error(where + ": image index must be positive, got " +
                  std::to_string(image.index));
    }
    if (image.index <= last_index) {
      throw Error(where + ": image indices must be strictly increasing (" +
                  std::to_string(image.index) + " after " + std::to_string(last_index) + ")");
    }
    last_index = image.index;

    if (!entry.contains("detections") || !entry["detections"].is_array()) {
      throw Error(where + ": missing \"detections\" array");
    }
    const json& detections = entry["detections"];
    for (size_t d = 0; d < detections.size(); ++d) {
      const std::string dw = where + ".detections[" + std::to_string(d) + "]";
      const json& det = detections[d];
      if (!det.is_object()) {
        throw Error(dw + ": expected an object");
      }
      for (const auto& item : det.items()) {
        // confidence/bbox come straight from detector dumps; ignored downstream
        if (item.key() != "name" && item.key() != "confidence" && item.key() != "bbox") {
          throw Error(dw + ": unknown key \"" + item.key() + "\"");
        }
      }
      if (!det.contains("name") || !det["name"].is_string() ||
          det["name"].get<std::string>().empty()) {
        throw Error(dw + ": missing part name");
      }
      image.detected.push_back(det["name"].get<std::string>());
    }
    series.images.push_back(std::move(image));
  }
  return series;
}

DetectionSeries parse_manual_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("manual: cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manual(buf.str());
}

}  // namespace atsg
