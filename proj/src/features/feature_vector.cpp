#include <algorithm>

#include "awegec/error.hpp"
#include "awegec/features.hpp"

namespace awegec::features {

const std::vector<std::string>& feature_schema() {
  static const std::vector<std::string> schema = {
      "token_count",   "sentence_count", "mean_sentence_length", "mean_word_length",
      "type_token_ratio", "yngve_mean",  "yngve_max",            "frazier_mean",
      "frazier_total", "trees_missing",  "fluency",              "edit_density",
      "edited_sentence_ratio", "m_density", "u_density",         "r_density"};
  return schema;
}

void FeatureVector::set(const std::string& name, double value) {
  for (auto& [k, v] : values)
    if (k == name) {
      v = value;
      return;
    }
  values.emplace_back(name, value);
}

bool FeatureVector::has(std::string_view name) const {
  return std::any_of(values.begin(), values.end(), [&](const auto& kv) { return kv.first == name; });
}

double FeatureVector::get(std::string_view name) const {
  for (const auto& [k, v] : values)
    if (k == name) return v;
  throw Error(ErrorCode::SchemaMismatch, "missing feature '" + std::string(name) + "'");
}

void FeatureVector::merge(const FeatureVector& other) {
  for (const auto& [k, v] : other.values) set(k, v);
}

std::vector<double> FeatureVector::ordered(const std::vector<std::string>& schema) const {
  std::vector<double> out;
  out.reserve(schema.size());
  for (const auto& name : schema) out.push_back(get(name));
  return out;
}

}  // namespace awegec::features
