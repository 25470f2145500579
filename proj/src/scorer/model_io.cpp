#include <nlohmann/json.hpp>

#include "awegec/error.hpp"
#include "awegec/scorer.hpp"

namespace awegec::scorer {

std::string ScoreModel::to_json() const {
  nlohmann::json rubric_json = nlohmann::json::object();
  for (const auto& [name, rm] : rubrics)
    rubric_json[name] = {{"weights", rm.weights},   {"bias", rm.bias},         {"trained_on", rm.trained_on},
                         {"borrowed", rm.borrowed}, {"jittered", rm.jittered}};
  nlohmann::json range_json = nlohmann::json::array();
  for (const auto& [key, r] : ranges)
    range_json.push_back({{"prompt", key.first}, {"rubric", key.second}, {"min", r.first}, {"max", r.second}});
  std::vector<int> constant(standardizer.constant.begin(), standardizer.constant.end());
  nlohmann::json j = {{"format", "awegec-score-model"},
                      {"version", 1},
                      {"schema_version", schema_version},
                      {"schema", schema},
                      {"lambda", lambda},
                      {"standardizer", {{"mean", standardizer.mean}, {"std", standardizer.stddev}, {"constant", constant}}},
                      {"rubrics", rubric_json},
                      {"ranges", range_json}};
  return j.dump(2) + "\n";
}

ScoreModel ScoreModel::from_json(std::string_view json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    if (j.at("format") != "awegec-score-model" || j.at("version") != 1)
      throw Error(ErrorCode::SchemaMismatch, "not an awegec-score-model v1 checkpoint");
    ScoreModel m;
    m.schema_version = j.at("schema_version").get<std::string>();
    m.schema = j.at("schema").get<std::vector<std::string>>();
    m.lambda = j.at("lambda").get<double>();
    const auto& st = j.at("standardizer");
    m.standardizer.mean = st.at("mean").get<std::vector<double>>();
    m.standardizer.stddev = st.at("std").get<std::vector<double>>();
    for (int c : st.at("constant").get<std::vector<int>>()) m.standardizer.constant.push_back(c != 0);
    const std::size_t p = m.schema.size();
    if (m.standardizer.mean.size() != p || m.standardizer.stddev.size() != p || m.standardizer.constant.size() != p)
      throw Error(ErrorCode::SchemaMismatch, "standardizer length does not match schema");
    for (const auto& [name, r] : j.at("rubrics").items()) {
      RubricModel rm;
      rm.weights = r.at("weights").get<std::vector<double>>();
      if (rm.weights.size() != p) throw Error(ErrorCode::SchemaMismatch, "weights length mismatch for " + name);
      rm.bias = r.at("bias").get<double>();
      rm.trained_on = r.value("trained_on", std::size_t{0});
      rm.borrowed = r.value("borrowed", false);
      rm.jittered = r.value("jittered", false);
      m.rubrics[name] = std::move(rm);
    }
    for (const auto& r : j.at("ranges"))
      m.ranges[{r.at("prompt").get<int>(), r.at("rubric").get<std::string>()}] = {r.at("min").get<double>(),
                                                                                r.at("max").get<double>()};
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaMismatch, std::string("score model: ") + e.what());
  }
}

}  // namespace awegec::scorer
