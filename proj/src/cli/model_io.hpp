#pragma once

#include "hmpzeta/exact.hpp"
#include "hmpzeta/hmp.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace hmpz::cli {

struct ModelSpec {
  std::string type;
  nlohmann::json source;  // the parsed model object, echoed into outputs
  HmpModel model;
  std::optional<Case1Params> case1;
  std::optional<Case2Params> case2;
};

ModelSpec parse_model(const nlohmann::json& j);
ModelSpec load_model_file(const std::string& path);
ModelSpec load_model_text(const std::string& text);

}  // namespace hmpz::cli
