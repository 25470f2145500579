#include "awegec/align.hpp"
#include "awegec/error.hpp"
#include "awegec/features.hpp"

namespace awegec::features {

FeatureVector accuracy_features(const std::vector<TokenizedSentence>& sentences,
                                const std::vector<corrector::CorrectionResult>& corrections) {
  if (sentences.size() != corrections.size())
    throw Error(ErrorCode::LengthMismatch, std::to_string(sentences.size()) + " sentences but " +
                                               std::to_string(corrections.size()) + " corrections");
  std::size_t tokens = 0, edits = 0, edited = 0, m = 0, u = 0, r = 0;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    tokens += sentences[i].size();
    const auto& e = corrections[i].edits;
    edits += e.size();
    edited += !e.empty();
    for (const auto& edit : e) {
      const auto tier = align::edit_tier(edit);
      m += tier == "M";
      u += tier == "U";
      r += tier == "R";
    }
  }
  const auto density = [&](std::size_t c) { return tokens ? static_cast<double>(c) / static_cast<double>(tokens) : 0.0; };
  FeatureVector fv;
  fv.set("edit_density", density(edits));
  fv.set("edited_sentence_ratio",
         sentences.empty() ? 0.0 : static_cast<double>(edited) / static_cast<double>(sentences.size()));
  fv.set("m_density", density(m));
  fv.set("u_density", density(u));
  fv.set("r_density", density(r));
  return fv;
}

FeatureVector featurize(const EssayInput& essay, const NgramModel& model) {
  FeatureVector all;
  all.merge(complexity_features(essay.sentences));
  all.merge(syntax_features(essay.trees));
  all.set("fluency", fluency(essay.sentences, model));
  all.merge(accuracy_features(essay.sentences, essay.corrections));
  FeatureVector ordered;
  for (const auto& name : feature_schema()) ordered.set(name, all.get(name));
  return ordered;
}

}  // namespace awegec::features
