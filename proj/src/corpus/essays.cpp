#include "awegec/corpus/essays.hpp"

#include <algorithm>
#include <charconv>
#include <nlohmann/json.hpp>

#include "awegec/error.hpp"
#include "awegec/text.hpp"

namespace awegec::corpus {
namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t k = line.find('\t', pos);
    if (k == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, k - pos));
    pos = k + 1;
  }
}

std::string unquote(std::string_view field) {
  if (field.size() >= 2 && field.front() == '"' && field.back() == '"') {
    std::string out;
    for (std::size_t i = 1; i + 1 < field.size(); ++i) {
      out += field[i];
      if (field[i] == '"' && field[i + 1] == '"') ++i;
    }
    return out;
  }
  return std::string(field);
}

[[noreturn]] void malformed(std::size_t line_no, const std::string& why) {
  throw Error(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": " + why,
              static_cast<std::int64_t>(line_no));
}

void check_rubric(const std::string& name) {
  const auto& names = rubric_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw Error(ErrorCode::InvalidArgument, "unknown rubric '" + name + "'");
}

}  // namespace

const std::vector<std::string>& rubric_names() {
  static const std::vector<std::string> names = {
      "overall",     "content",          "organization", "word_choice", "sentence_fluency",
      "conventions", "prompt_adherence", "language",     "narrativity"};
  return names;
}

IngestConfig IngestConfig::from_json(std::string_view json_text) {
  IngestConfig config;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("ingest config: ") + e.what());
  }
  try {
    if (j.contains("rubric_columns")) {
      config.rubric_columns.clear();
      for (auto& [column, rubric] : j.at("rubric_columns").items()) {
        check_rubric(rubric.get<std::string>());
        config.rubric_columns[column] = rubric.get<std::string>();
      }
    }
    if (j.contains("prompts")) config.prompts = j.at("prompts").get<std::set<int>>();
    if (j.contains("score_ranges")) {
      for (const auto& r : j.at("score_ranges")) {
        const auto rubric = r.at("rubric").get<std::string>();
        check_rubric(rubric);
        const double lo = r.at("min").get<double>();
        const double hi = r.at("max").get<double>();
        config.score_ranges[{r.at("prompt").get<int>(), rubric}] = {lo, hi};
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("ingest config: ") + e.what());
  }
  return config;
}

std::vector<EssayRecord> read_essays_tsv(std::string_view contents, const IngestConfig& config) {
  std::vector<EssayRecord> out;
  std::vector<std::string> header;
  int col_id = -1, col_set = -1, col_text = -1;
  std::vector<std::pair<int, std::string>> score_cols;

  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < contents.size()) {
    std::size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    std::string_view line = contents.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (line.empty()) continue;

    const auto fields = split_tabs(line);
    if (header.empty()) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        header.push_back(unquote(fields[i]));
        const auto& h = header.back();
        const int idx = static_cast<int>(i);
        if (h == "essay_id") col_id = idx;
        else if (h == "essay_set") col_set = idx;
        else if (h == "essay") col_text = idx;
        else if (auto it = config.rubric_columns.find(h); it != config.rubric_columns.end())
          score_cols.emplace_back(idx, it->second);
      }
      if (col_id < 0 || col_set < 0 || col_text < 0)
        malformed(line_no, "header must contain essay_id, essay_set and essay");
      continue;
    }
    if (fields.size() != header.size())
      malformed(line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));

    EssayRecord rec;
    rec.essay_id = text::trim(unquote(fields[col_id]));
    const std::string set = text::trim(unquote(fields[col_set]));
    auto [p, ec] = std::from_chars(set.data(), set.data() + set.size(), rec.prompt_id);
    if (ec != std::errc() || p != set.data() + set.size()) malformed(line_no, "essay_set is not an integer");
    if (!config.prompts.count(rec.prompt_id))
      throw Error(ErrorCode::UnknownPrompt, "line " + std::to_string(line_no) + ": prompt " + set,
                  static_cast<std::int64_t>(line_no));
    rec.text = unquote(fields[col_text]);
    for (const auto& [idx, rubric] : score_cols) {
      const std::string cell = text::trim(unquote(fields[idx]));
      if (cell.empty()) continue;
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        rec.gold_scores[rubric] = v;
      } catch (const std::exception&) {
        malformed(line_no, "score '" + cell + "' in column " + header[idx] + " is not numeric");
      }
    }
    out.push_back(std::move(rec));
  }
  if (header.empty()) throw Error(ErrorCode::MalformedLine, "missing header", 1);
  return out;
}

}  // namespace awegec::corpus
