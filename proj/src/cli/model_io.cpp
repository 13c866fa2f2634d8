#include "model_io.hpp"

#include "hmpzeta/error.hpp"

#include <fstream>
#include <sstream>

namespace hmpz::cli {

namespace {

double number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("model is missing parameter \"") + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_number()) throw ValidationError(std::string("model parameter \"") + key + "\" must be a number");
  return v.get<double>();
}

Matrix matrix(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).empty())
    throw ValidationError(std::string("model needs a non-empty array of rows \"") + key + "\"");
  const auto& rows = j.at(key);
  const std::size_t cols = rows.at(0).is_array() ? rows.at(0).size() : 0;
  if (cols == 0) throw ValidationError(std::string("\"") + key + "\" rows must be non-empty arrays");
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols)
      throw ValidationError(std::string("\"") + key + "\" rows must all have " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!rows[i][k].is_number()) throw ValidationError(std::string("\"") + key + "\" entries must be numbers");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k].get<double>();
    }
  }
  return m;
}

}  // namespace

ModelSpec parse_model(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("model must be a JSON object");
  if (!j.contains("type") || !j.at("type").is_string()) throw ValidationError("model needs a string \"type\"");
  const auto type = j.at("type").get<std::string>();
  const bool row = j.value("row_stochastic", false);
  if (type == "binary_symmetric") {
    return {type, j, build_binary_symmetric(number(j, "q"), number(j, "eps")), std::nullopt, std::nullopt};
  }
  if (type == "aggregated") {
    return {type, j,
            build_aggregated(number(j, "p1"), number(j, "p2"), number(j, "q1"), number(j, "q2"), number(j, "r1"),
                             number(j, "r2")),
            std::nullopt, std::nullopt};
  }
  if (type == "aggregated_case1") {
    Case1Params p{number(j, "p1"), number(j, "p2"), number(j, "q1"), number(j, "q2")};
    validate(p);
    return {type, j, build_aggregated_case1(p.p1, p.p2, p.q1, p.q2), p, std::nullopt};
  }
  if (type == "aggregated_case2") {
    Case2Params p{number(j, "p1"), number(j, "p2"), number(j, "q"), number(j, "r")};
    validate(p);
    return {type, j, build_aggregated_case2(p.p1, p.p2, p.q, p.r), std::nullopt, p};
  }
  if (type == "explicit") {
    return {type, j,
            build_explicit(matrix(j, "P"), matrix(j, "pi"),
                           row ? Orientation::row_stochastic : Orientation::column_stochastic),
            std::nullopt, std::nullopt};
  }
  throw ValidationError("unknown model type \"" + type + "\"");
}

ModelSpec load_model_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("model JSON does not parse: ") + e.what());
  }
  return parse_model(j);
}

ModelSpec load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open model file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_model_text(ss.str());
}

}  // namespace hmpz::cli
