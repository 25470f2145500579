#include <set>

#include "awegec/error.hpp"
#include "awegec/features.hpp"
#include "awegec/text.hpp"

namespace awegec::features {

FeatureVector complexity_features(const std::vector<TokenizedSentence>& essay) {
  if (essay.empty()) throw Error(ErrorCode::EmptyEssay, "essay has no sentences");
  std::size_t tokens = 0, words = 0, word_chars = 0;
  std::set<std::string> types;
  for (const auto& s : essay) {
    tokens += s.size();
    for (const auto& t : s.tokens) {
      if (text::is_punct_token(t)) continue;
      ++words;
      word_chars += text::codepoint_count(t);
      types.insert(text::ascii_lower(t));
    }
  }
  const double n_sent = static_cast<double>(essay.size());
  FeatureVector fv;
  fv.set("token_count", static_cast<double>(tokens));
  fv.set("sentence_count", n_sent);
  fv.set("mean_sentence_length", static_cast<double>(tokens) / n_sent);
  fv.set("mean_word_length", words ? static_cast<double>(word_chars) / static_cast<double>(words) : 0.0);
  fv.set("type_token_ratio", words ? static_cast<double>(types.size()) / static_cast<double>(words) : 0.0);
  return fv;
}

}  // namespace awegec::features
