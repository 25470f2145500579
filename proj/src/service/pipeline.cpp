#include "awegec/error.hpp"
#include "awegec/service.hpp"

namespace awegec::service {

Pipeline::Pipeline(corrector::Corrector corrector, features::NgramModel lm, scorer::ScoreModel model,
                   corpus::NamePool pool)
    : corrector_(std::move(corrector)), lm_(std::move(lm)), model_(std::move(model)), pool_(std::move(pool)) {}

FeedbackDocument Pipeline::run(const std::string& submission_id, const std::string& text) const {
  std::vector<TokenizedSentence> sentences;
  for (const auto& s : corpus::split_sentences(text)) {
    auto tok = corpus::tokenize(s);
    if (!tok.empty()) sentences.push_back(std::move(tok));
  }
  if (sentences.empty()) throw Error(ErrorCode::EmptyText, "submission has no tokens");

  std::vector<corrector::CorrectionResult> corrections;
  try {
    corrections = corrector_.correct(sentences);
  } catch (const Error& e) {
    throw Error(ErrorCode::BackendUnavailable, std::string("CorrectionFailure: ") + e.what());
  }

  // Placeholders are replaced by names for the scoring features only; the
  // learner sees and gets corrections on the original tokens.
  features::EssayInput essay;
  corpus::EntitySubstituter substituter(pool_, 0);
  for (const auto& s : sentences) essay.sentences.push_back(substituter.apply(s));
  essay.trees.assign(sentences.size(), std::nullopt);
  essay.corrections = corrections;

  FeedbackDocument doc;
  doc.submission_id = submission_id;
  try {
    doc.scores = scorer::predict(model_, features::featurize(essay, lm_));
  } catch (const Error& e) {
    throw Error(e.code(), std::string("ScoringFailure: ") + e.what());
  }
  for (const auto& c : corrections) doc.sentences.push_back({c.source.tokens, c.edits, c.corrected.tokens});
  doc.segments = build_segments(doc.sentences);
  return doc;
}

}  // namespace awegec::service
