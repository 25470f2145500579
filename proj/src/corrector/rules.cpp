#include "awegec/corrector.hpp"

#include <algorithm>
#include <cctype>
#include <nlohmann/json.hpp>

#include "awegec/align.hpp"
#include "awegec/corpus/tokenize.hpp"
#include "awegec/error.hpp"
#include "awegec/kernels.hpp"
#include "awegec/text.hpp"

namespace awegec::corrector {
namespace {

bool matches_at(const std::vector<std::string>& tokens, std::size_t i, const Rule& rule) {
  if (i + rule.pattern.size() > tokens.size()) return false;
  return std::equal(rule.pattern.begin(), rule.pattern.end(), tokens.begin() + static_cast<std::ptrdiff_t>(i));
}

std::string match_case(const std::string& original, std::string candidate) {
  const auto upper = [](unsigned char c) { return std::isupper(c) != 0; };
  const bool all_upper = original.size() > 1 && std::all_of(original.begin(), original.end(), upper);
  if (all_upper) {
    for (auto& c : candidate) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  } else if (!original.empty() && upper(static_cast<unsigned char>(original[0])) && !candidate.empty()) {
    candidate[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(candidate[0])));
  }
  return candidate;
}

}  // namespace

std::vector<Rule> RuleSet::rules_from_json(std::string_view json_text) {
  std::vector<Rule> rules;
  try {
    const auto j = nlohmann::json::parse(json_text);
    for (const auto& r : j.at("rules")) {
      Rule rule;
      rule.pattern = split_ws(r.at("pattern").get<std::string>());
      rule.replacement = split_ws(r.value("replacement", std::string{}));
      if (rule.pattern.empty()) throw Error(ErrorCode::InvalidArgument, "rule with empty pattern");
      rules.push_back(std::move(rule));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("rules file: ") + e.what());
  }
  return rules;
}

bool spelling_exempt(const std::string& token) {
  if (text::is_punct_token(token) || text::is_number_token(token) || text::is_placeholder(token)) return true;
  const auto& suffixes = corpus::contraction_suffixes();
  if (std::any_of(suffixes.begin(), suffixes.end(), [&](const std::string& s) { return text::iequals(s, token); }))
    return true;
  return std::none_of(token.begin(), token.end(), [](unsigned char c) { return std::isalpha(c) != 0; });
}

std::string spell_correct(const std::string& token, const Dictionary& dictionary, const SpellerConfig& speller) {
  if (spelling_exempt(token) || dictionary.contains(token)) return token;
  const std::string lower = text::ascii_lower(token);
  const std::size_t len = text::codepoint_count(lower);
  const std::size_t d = speller.max_distance;

  const std::string* best = nullptr;
  std::size_t best_dist = d + 1;
  std::uint64_t best_freq = 0;
  dictionary.for_each_with_length(len > d ? len - d : 0, len + d, [&](const std::string& word, std::uint64_t freq) {
    const std::size_t dist = text::edit_distance(lower, word, d);
    if (dist > d) return;
    const bool wins = best == nullptr || dist < best_dist || (dist == best_dist && freq > best_freq) ||
                      (dist == best_dist && freq == best_freq && word < *best);
    if (wins) {
      best = &word;
      best_dist = dist;
      best_freq = freq;
    }
  });
  return best ? match_case(token, *best) : token;
}

CorrectionResult correct_rules(const TokenizedSentence& src, const RuleSet& rules, const SpellerConfig& speller) {
  std::vector<std::string> out;
  out.reserve(src.size());
  const auto& tokens = src.tokens;
  for (std::size_t i = 0; i < tokens.size();) {
    auto rule = std::find_if(rules.rules.begin(), rules.rules.end(),
                             [&](const Rule& r) { return matches_at(tokens, i, r); });
    if (rule != rules.rules.end()) {
      out.insert(out.end(), rule->replacement.begin(), rule->replacement.end());
      i += rule->pattern.size();
    } else {
      out.push_back(tokens[i++]);
    }
  }
  for (auto& tok : out) tok = spell_correct(tok, rules.dictionary, speller);

  CorrectionResult result;
  result.source = src;
  result.corrected = out == tokens ? src : TokenizedSentence::from_tokens(std::move(out));
  result.edits = align::diff(result.source, result.corrected, rules.dictionary);
  result.backend = "rules";
  return result;
}

Backend backend_from_string(std::string_view name) {
  if (name == "rules") return Backend::Rules;
  if (name == "external") return Backend::External;
  throw Error(ErrorCode::InvalidArgument, "unknown backend '" + std::string(name) + "'");
}

Corrector::Corrector(RuleSet rules, CorrectorConfig config) : rules_(std::move(rules)), config_(std::move(config)) {}

CorrectionResult Corrector::correct(const TokenizedSentence& src) const {
  auto results = correct(std::vector<TokenizedSentence>{src});
  return std::move(results.front());
}

std::vector<CorrectionResult> Corrector::correct(const std::vector<TokenizedSentence>& sentences) const {
  if (config_.backend == Backend::Rules) return kernels::correct_rules_batch(sentences, rules_, config_.speller);
  try {
    return correct_external(sentences, config_.external, rules_.dictionary);
  } catch (const Error& e) {
    if (!config_.fallback) throw Error(ErrorCode::BackendUnavailable, e.what());
    auto results = kernels::correct_rules_batch(sentences, rules_, config_.speller);
    for (auto& r : results) r.backend = "fallback-rules";
    return results;
  }
}

}  // namespace awegec::corrector
