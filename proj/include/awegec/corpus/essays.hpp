#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace awegec::corpus {

struct EssayRecord {
  std::string essay_id;
  int prompt_id = 0;
  std::string text;
  std::map<std::string, double> gold_scores;

  friend bool operator==(const EssayRecord&, const EssayRecord&) = default;
};

// Rubric names in output order; "overall" first.
const std::vector<std::string>& rubric_names();

struct IngestConfig {
  // TSV column -> rubric name.
  std::map<std::string, std::string> rubric_columns = {{"domain1_score", "overall"}};
  std::set<int> prompts = {1, 2, 3, 4, 5, 6, 7, 8};
  // Optional fixed score ranges per (prompt, rubric); missing entries are
  // taken from the observed data.
  std::map<std::pair<int, std::string>, std::pair<double, double>> score_ranges;

  static IngestConfig from_json(std::string_view json_text);
};

// UTF-8 TSV with header. Required columns: essay_id, essay_set, essay.
// Empty score cells are treated as missing. Errors: MalformedLine, UnknownPrompt.
std::vector<EssayRecord> read_essays_tsv(std::string_view contents, const IngestConfig& config = {});

}  // namespace awegec::corpus
