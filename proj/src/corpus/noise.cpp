#include "awegec/corpus/noise.hpp"

#include "awegec/error.hpp"
#include "awegec/text.hpp"

namespace awegec::corpus {

namespace {
constexpr std::string_view kReplacementChar = "\xEF\xBF\xBD";  // U+FFFD
}

NoiseReport detect_noise(const TokenizedSentence& sentence, const NoiseConfig& config) {
  NoiseReport report;
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    const auto& tok = sentence.tokens[i];
    if (text::is_placeholder(tok)) report.entity_placeholders.emplace_back(i, tok);
    bool garbled = tok.find(kReplacementChar) != std::string::npos;
    for (const auto& pattern : config.mojibake_patterns)
      garbled = garbled || (!pattern.empty() && tok.find(pattern) != std::string::npos);
    if (garbled) report.encoding_flags.push_back(i);
  }
  report.is_noisy = !report.entity_placeholders.empty() || !report.encoding_flags.empty();
  return report;
}

NamePool NamePool::defaults() {
  NamePool pool;
  pool.names["PERSON"] = {"Alice", "Bruno", "Chen", "Dana", "Emeka", "Farah", "Gustav", "Hana"};
  pool.names["LOCATION"] = {"Springfield", "Riverton", "Lakeside", "Fairview", "Oakdale"};
  pool.names["ORGANIZATION"] = {"Northwind", "Contoso", "Globex", "Initech"};
  pool.names["DATE"] = {"Monday", "July", "Tuesday", "March", "Friday"};
  pool.names["other"] = {"Aurora", "Zenith", "Meridian", "Cobalt"};
  pool.aliases = {{"CITY", "LOCATION"},   {"STATE", "LOCATION"}, {"COUNTRY", "LOCATION"},
                  {"MONTH", "DATE"},      {"TIME", "DATE"},      {"ORG", "ORGANIZATION"},
                  {"LOC", "LOCATION"}};
  return pool;
}

std::string placeholder_category(std::string_view placeholder, const NamePool& pool) {
  std::size_t end = 1;
  while (end < placeholder.size() && placeholder[end] >= 'A' && placeholder[end] <= 'Z') ++end;
  const std::string stem(placeholder.substr(1, end - 1));
  if (pool.names.count(stem)) return stem;
  if (auto it = pool.aliases.find(stem); it != pool.aliases.end() && pool.names.count(it->second))
    return it->second;
  return "other";
}

EntitySubstituter::EntitySubstituter(const NamePool& pool, std::uint64_t seed) : pool_(pool), seed_(seed) {}

TokenizedSentence EntitySubstituter::apply(const TokenizedSentence& sentence) {
  bool changed = false;
  std::vector<std::string> tokens = sentence.tokens;
  for (auto& tok : tokens) {
    if (!text::is_placeholder(tok)) continue;
    auto it = assigned_.find(tok);
    if (it == assigned_.end()) {
      const std::string category = placeholder_category(tok, pool_);
      auto names = pool_.names.find(category);
      if (names == pool_.names.end() || names->second.empty())
        throw Error(ErrorCode::UnknownCategory, "name pool has no entries for category '" + category + "'");
      const std::size_t j = next_index_[category]++;
      const auto& name = names->second[(seed_ + j) % names->second.size()];
      if (name.empty() || name.find_first_of(" \t\n") != std::string::npos)
        throw Error(ErrorCode::InvalidArgument, "pool name '" + name + "' is not a single token");
      it = assigned_.emplace(tok, name).first;
    }
    tok = it->second;
    changed = true;
  }
  if (!changed) return sentence;
  return TokenizedSentence::from_tokens(std::move(tokens));
}

TokenizedSentence substitute_entities(const TokenizedSentence& sentence, const NamePool& pool,
                                      std::uint64_t seed) {
  EntitySubstituter sub(pool, seed);
  return sub.apply(sentence);
}

}  // namespace awegec::corpus
