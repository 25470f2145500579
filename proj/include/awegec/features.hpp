#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "awegec/corpus/tree.hpp"
#include "awegec/corrector.hpp"
#include "awegec/types.hpp"

namespace awegec::features {

inline constexpr std::string_view kSchemaVersion = "awegec-features-1";

// Full feature order. The D-level name is reserved and never emitted.
const std::vector<std::string>& feature_schema();
inline constexpr std::string_view kReservedDLevel = "dlevel_mean";

struct FeatureVector {
  std::vector<std::pair<std::string, double>> values;
  std::string schema_version = std::string(kSchemaVersion);

  void set(const std::string& name, double value);
  double get(std::string_view name) const;
  bool has(std::string_view name) const;
  void merge(const FeatureVector& other);
  std::vector<double> ordered(const std::vector<std::string>& schema) const;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// token_count, sentence_count, mean_sentence_length, mean_word_length,
// type_token_ratio. Words are tokens that are not pure punctuation; the
// type/token ratio is over lowercased words. Throws EmptyEssay.
FeatureVector complexity_features(const std::vector<TokenizedSentence>& essay);

struct Summary {
  double mean = 0.0;
  double extreme = 0.0;  // max for Yngve, total for Frazier
};

// Children are numbered right to left from 0; a word's depth is the sum of
// numbers on its root path. Returns mean and max depth over words.
Summary yngve_depth(const corpus::ParseTree& tree);

// Per word: walk up from the preterminal while each node is its parent's
// leftmost child, counting 1 per node (1.5 for S, SBAR, SBARQ, SINV, SQ) and
// the root itself when reached. Returns mean and total over words.
Summary frazier_score(const corpus::ParseTree& tree);

std::vector<double> yngve_word_depths(const corpus::ParseTree& tree);
std::vector<double> frazier_word_scores(const corpus::ParseTree& tree);

// yngve_mean, yngve_max, frazier_mean, frazier_total, trees_missing.
// Means are averaged over available trees, yngve_max is the maximum, and
// frazier_total is the mean per-sentence total. With no trees every value is
// 0 and trees_missing is 1.
FeatureVector syntax_features(const std::vector<std::optional<corpus::ParseTree>>& trees);

// Fixed-order n-gram model with add-k smoothing and no backoff:
// P(w | c) = (count(c, w) + k) / (count(c) + k |V|), uniform when both are 0.
// Tokens are lowercased; contexts are padded with <s>; unseen tokens map to
// <unk>, which is always in the vocabulary.
class NgramModel {
 public:
  static constexpr std::string_view kUnknown = "<unk>";
  static constexpr std::string_view kStart = "<s>";

  explicit NgramModel(int order = 3, double k = 1.0);

  void train(const std::vector<std::vector<std::string>>& sentences);

  int order() const noexcept { return order_; }
  double k() const noexcept { return k_; }
  const std::vector<std::string>& vocabulary() const noexcept { return vocab_list_; }

  double probability(const std::vector<std::string>& context, const std::string& token) const;
  // Per-token probabilities of a sentence under the padded-context scheme.
  std::vector<double> sentence_probabilities(const std::vector<std::string>& tokens) const;

  std::string to_json() const;
  static NgramModel from_json(std::string_view json_text);

 private:
  std::string map_token(const std::string& token) const;
  std::vector<std::string> key(const std::vector<std::string>& context) const;
  void rebuild_vocab_list();

  int order_;
  double k_;
  std::map<std::string, bool> vocab_;
  std::vector<std::string> vocab_list_;
  std::map<std::vector<std::string>, std::map<std::string, std::uint64_t>> counts_;
  std::map<std::vector<std::string>, std::uint64_t> totals_;
};

// Probabilities below this floor are clamped before taking logs.
inline constexpr double kProbabilityFloor = 1e-10;

// Base-2 cross-entropy H over all tokens; fluency = 1 / (1 + max(0, H)).
double cross_entropy(const std::vector<TokenizedSentence>& essay, const NgramModel& model);
double fluency(const std::vector<TokenizedSentence>& essay, const NgramModel& model);

// edit_density, edited_sentence_ratio, m_density, u_density, r_density.
// Densities are edit counts over total source tokens. Throws LengthMismatch.
FeatureVector accuracy_features(const std::vector<TokenizedSentence>& sentences,
                                const std::vector<corrector::CorrectionResult>& corrections);

struct EssayInput {
  std::vector<TokenizedSentence> sentences;
  std::vector<std::optional<corpus::ParseTree>> trees;
  std::vector<corrector::CorrectionResult> corrections;
};

// All feature families in schema order.
FeatureVector featurize(const EssayInput& essay, const NgramModel& model);

}  // namespace awegec::features
