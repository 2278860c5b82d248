#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "fiberprod/fibercore.hpp"

namespace fiberprod::cli {

struct InstanceFile {
  std::string name;
  std::string description;
  FiberInstance instance;
};

/// Validation failures are reported as ValidationError with a JSON-path
/// prefix such as "$.left.images.c: ...".
InstanceFile parse_instance(const nlohmann::json& doc);
InstanceFile load_instance(const std::filesystem::path& path);

nlohmann::json to_json(const InstanceFile& file);
nlohmann::json to_json(const PairWord& p);

}  // namespace fiberprod::cli
