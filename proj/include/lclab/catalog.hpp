// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lclab/bodies.hpp"
#include "lclab/density.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace lclab {

/// Named measures and bodies. Entries are JSON descriptors
///   {"variant": ..., "dimension": n (optional), "parameters": {...}, "map": {...} (optional)}
/// and a lookup string is either a key or an inline descriptor.
class Catalog {
 public:
  /// Built-in entries plus the file named by LCLAB_CATALOG, if set.
  static Catalog standard();
  static Catalog builtin();

  /// Adds or replaces entries from {"measures": {...}, "bodies": {...}}.
  void merge(const nlohmann::json& doc);
  void load_file(const std::string& path);

  LogConcaveDensity measure(const std::string& key_or_json, int n) const;
  ConvexBody body(const std::string& key_or_json, int n) const;

  nlohmann::json measure_descriptor(const std::string& key_or_json) const;
  nlohmann::json body_descriptor(const std::string& key_or_json) const;

  std::vector<std::string> measure_keys() const;
  std::vector<std::string> body_keys() const;

  /// Built-in isotropic measures, in a fixed order.
  static std::vector<std::string> isotropic_keys();

 private:
  std::map<std::string, nlohmann::json> measures_;
  std::map<std::string, nlohmann::json> bodies_;
};

LogConcaveDensity measure_from_json(const nlohmann::json& descriptor, int n);
ConvexBody body_from_json(const nlohmann::json& descriptor, int n);

}  // namespace lclab
