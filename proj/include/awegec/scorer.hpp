#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "awegec/features.hpp"

namespace awegec::scorer {

using RangeKey = std::pair<int, std::string>;  // (prompt, rubric)
using Range = std::pair<double, double>;
using RangeTable = std::map<RangeKey, Range>;

struct Normalized {
  double value = 0.0;
  bool degenerate = false;  // min == max, value fixed at 0.5
  bool clipped = false;     // input outside [min, max]
};

Normalized minmax(double value, double lo, double hi);
double denorm(double unit, double lo, double hi);

// Quadratic weighted kappa on integer ratings in [min_rating, max_rating].
// Returns 1.0 when expected disagreement is zero (no rating variance).
// Errors: LengthMismatch, InvalidArgument (empty input or rating out of range).
double qwk(std::span<const int> gold, std::span<const int> pred, int min_rating, int max_rating);

struct Standardizer {
  std::vector<double> mean;
  std::vector<double> stddev;    // population standard deviation
  std::vector<bool> constant;  // stddev below 1e-12; z fixed at 0

  static Standardizer fit(const std::vector<std::vector<double>>& rows);
  std::vector<double> apply(std::span<const double> x) const;
};

struct RubricModel {
  std::vector<double> weights;  // over standardized features
  double bias = 0.0;
  std::size_t trained_on = 0;
  // Too little data: weights copied from the overall model.
  bool borrowed = false;
  // Normal matrix was singular; a small diagonal jitter was added.
  bool jittered = false;
};

struct ScoreModel {
  std::string schema_version = std::string(features::kSchemaVersion);
  std::vector<std::string> schema;
  Standardizer standardizer;
  std::map<std::string, RubricModel> rubrics;
  RangeTable ranges;
  double lambda = 0.0;

  double predict_unit(std::span<const double> x, const std::string& rubric) const;

  std::string to_json() const;
  static ScoreModel from_json(std::string_view json_text);
};

struct TrainingExample {
  std::string essay_id;
  int prompt_id = 0;
  std::vector<double> features;  // ordered by the model schema
  std::map<std::string, double> gold;
};

struct TrainOptions {
  double lambda = 1.0;
  // Train only this rubric.
  std::optional<std::string> only_rubric;
  // Fixed ranges; anything missing is taken from the observed gold scores.
  RangeTable ranges;
};

// Observed per-(prompt, rubric) min and max of gold scores, overridden by
// `fixed`.
RangeTable resolve_ranges(const std::vector<TrainingExample>& examples, const RangeTable& fixed = {});

// Ridge regression per rubric on z-scored features with gold scores min-max
// normalized per (prompt, rubric). The bias is not regularized.
// Errors: DegenerateRange, InsufficientData, SchemaMismatch.
ScoreModel train(const std::vector<TrainingExample>& examples, const std::vector<std::string>& schema,
                 const TrainOptions& options);

// Raw-feature slope and intercept of a rubric model (constant features 0).
std::pair<std::vector<double>, double> raw_coefficients(const ScoreModel& model, const std::string& rubric);

struct RubricScoreSet {
  double overall = 0.0;
  std::map<std::string, double> rubrics;  // the eight non-overall rubrics

  friend bool operator==(const RubricScoreSet&, const RubricScoreSet&) = default;
};

// Every configured rubric on a 0-100 scale: clip(w.z + b, 0, 1) * 100.
// Errors: SchemaMismatch.
RubricScoreSet predict(const ScoreModel& model, std::span<const double> x);
RubricScoreSet predict(const ScoreModel& model, const features::FeatureVector& fv);

enum class QwkScale { Native, Hundred };

struct CrossPromptConfig {
  std::vector<double> lambdas = {0.0, 0.01, 0.1, 1.0, 10.0};
  std::string rubric = "overall";
  QwkScale scale = QwkScale::Native;
  RangeTable ranges;
};

struct FoldResult {
  int test_prompt = 0;
  int dev_prompt = 0;
  double lambda = 0.0;
  double dev_qwk = 0.0;
  double qwk = 0.0;
  std::size_t test_size = 0;
};

struct QwkReport {
  std::vector<FoldResult> folds;
  double average = 0.0;

  // Prompt 1..8 columns plus Average, one row of QWK values.
  std::string render_table() const;
  std::string to_json() const;
};

// Development prompt paired with a test prompt: ((p + 6) mod 8) + 1.
int dev_prompt_for(int test_prompt);

// Rounds half up.
int round_half_up(double v);

// Leave-one-prompt-out evaluation over prompts 1..8. For each test prompt the
// dev prompt picks lambda (ties to the smaller value) and the remaining six
// prompts train. Errors: MissingPrompt.
QwkReport cross_prompt_eval(const std::vector<TrainingExample>& examples, const std::vector<std::string>& schema,
                            const CrossPromptConfig& config);

}  // namespace awegec::scorer
