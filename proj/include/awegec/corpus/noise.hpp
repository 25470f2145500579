#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "awegec/types.hpp"

namespace awegec::corpus {

struct NoiseConfig {
  // Substrings that mark a token as mis-decoded text, in addition to U+FFFD.
  std::vector<std::string> mojibake_patterns = {"Â", "â€"};
};

struct NoiseReport {
  std::vector<std::pair<std::size_t, std::string>> entity_placeholders;
  std::vector<std::size_t> encoding_flags;
  bool is_noisy = false;

  friend bool operator==(const NoiseReport&, const NoiseReport&) = default;
};

NoiseReport detect_noise(const TokenizedSentence& sentence, const NoiseConfig& config = {});

// Replacement names per entity category. Categories are PERSON, LOCATION,
// ORGANIZATION, DATE and "other"; `aliases` maps further placeholder stems
// (e.g. CITY) onto one of them.
struct NamePool {
  std::map<std::string, std::vector<std::string>> names;
  std::map<std::string, std::string> aliases;

  static NamePool defaults();
};

// Category of a placeholder such as "@PERSON1" -> "PERSON". Stems without a
// pool entry or alias resolve to "other".
std::string placeholder_category(std::string_view placeholder, const NamePool& pool);

// Tracks placeholder -> name assignments across the sentences of one essay.
// The j-th distinct placeholder of category c (first-appearance order) gets
// pool[c][(seed + j) mod |pool[c]|].
class EntitySubstituter {
 public:
  EntitySubstituter(const NamePool& pool, std::uint64_t seed);

  TokenizedSentence apply(const TokenizedSentence& sentence);
  const std::map<std::string, std::string>& assignments() const { return assigned_; }

 private:
  const NamePool& pool_;
  std::uint64_t seed_;
  std::map<std::string, std::string> assigned_;
  std::map<std::string, std::size_t> next_index_;
};

TokenizedSentence substitute_entities(const TokenizedSentence& sentence, const NamePool& pool,
                                      std::uint64_t seed);

}  // namespace awegec::corpus
