#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "awegec/dictionary.hpp"
#include "awegec/types.hpp"

namespace awegec::corrector {

struct Rule {
  std::vector<std::string> pattern;
  std::vector<std::string> replacement;
};

struct RuleSet {
  std::vector<Rule> rules;
  Dictionary dictionary;

  // {"rules": [{"pattern": "could of", "replacement": "could have"}, ...]}
  static std::vector<Rule> rules_from_json(std::string_view json_text);
};

struct SpellerConfig {
  std::size_t max_distance = 1;
};

struct CorrectionResult {
  TokenizedSentence source;
  TokenizedSentence corrected;
  std::vector<Edit> edits;
  std::string backend;
};

// One left-to-right pass of the pattern rules (first listed rule matching at a
// position wins; matched tokens are consumed), then the spelling pass.
CorrectionResult correct_rules(const TokenizedSentence& src, const RuleSet& rules,
                               const SpellerConfig& speller = {});

// Spelling candidate for an out-of-dictionary token: smallest edit distance
// up to max_distance, then highest frequency, then lexicographically first.
// Returns the token unchanged when it is exempt or has no candidate.
std::string spell_correct(const std::string& token, const Dictionary& dictionary, const SpellerConfig& speller = {});
bool spelling_exempt(const std::string& token);

struct ExternalConfig {
  std::string base_url = "http://127.0.0.1:8090";
  std::string path = "/correct";
  std::string auth_header;  // header name; empty disables
  std::string auth_token;
  int timeout_ms = 10000;
  std::size_t batch_size = 32;
  std::size_t max_in_flight = 4;
};

// POSTs {"sentences": [...]} per batch and expects {"corrections": [...]} of
// equal length. Returned text is re-tokenized and edits are recomputed
// locally. Errors: Timeout, BadResponse, LengthMismatch, BackendUnavailable.
std::vector<CorrectionResult> correct_external(const std::vector<TokenizedSentence>& sentences,
                                               const ExternalConfig& config, const Dictionary& dictionary);

enum class Backend { Rules, External };

Backend backend_from_string(std::string_view name);

struct CorrectorConfig {
  Backend backend = Backend::Rules;
  ExternalConfig external;
  bool fallback = true;
  SpellerConfig speller;
};

// Backend dispatch. When the external backend fails and fallback is enabled
// the rule-based result is returned tagged "fallback-rules"; otherwise the
// failure surfaces as BackendUnavailable.
class Corrector {
 public:
  Corrector(RuleSet rules, CorrectorConfig config);

  CorrectionResult correct(const TokenizedSentence& src) const;
  std::vector<CorrectionResult> correct(const std::vector<TokenizedSentence>& sentences) const;

  const RuleSet& rules() const noexcept { return rules_; }
  const CorrectorConfig& config() const noexcept { return config_; }

 private:
  RuleSet rules_;
  CorrectorConfig config_;
};

}  // namespace awegec::corrector
