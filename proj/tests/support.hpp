#pragma once

// Test oracles and fixtures. The oracles deliberately avoid the library's own
// algorithms: branch-and-bound path search for alignment, explicit confusion
// matrices for QWK, the count form of F-beta, and Eigen QR for ridge.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "awegec/corpus/essays.hpp"
#include "awegec/corpus/m2.hpp"
#include "awegec/corpus/tree.hpp"
#include "awegec/features.hpp"
#include "awegec/scorer.hpp"
#include "awegec/service.hpp"
#include "awegec/types.hpp"

namespace support {

using Tokens = std::vector<std::string>;

inline const Tokens kReferenceSource = {"I", "gess", "almost", "people", "cannot", "speaking", "English", "."};
inline const Tokens kReferenceTarget = {"I", "guess", "most", "people", "cannot", "speak", "English", "."};
inline const std::string kReferenceSourceText = "I gess almost people cannot speaking English.";
inline const std::string kReferenceTargetText = "I guess most people cannot speak English.";

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::filesystem::path test_data(const std::string& name) { return std::filesystem::path(AWEGEC_TEST_DATA) / name; }
inline std::filesystem::path demo_data(const std::string& name) { return std::filesystem::path(AWEGEC_DEMO_DATA) / name; }

// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& tag) {
  static std::mt19937_64 rng{std::random_device{}()};
  auto p = std::filesystem::temp_directory_path() / ("awegec-test-" + tag + "-" + std::to_string(rng()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

// ---- alignment ----

inline double sub_cost(const std::string& a, const std::string& b) {
  if (a == b) return 0.0;
  if (a.size() == b.size() &&
      std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) { return std::tolower(x) == std::tolower(y); }))
    return 0.25;
  return 1.0;
}

// Minimum alignment cost by depth-first search over every monotone path,
// pruned only by a bound that never cuts an optimal path.
inline double exhaustive_align_cost(const Tokens& s, const Tokens& t) {
  double best = static_cast<double>(s.size() + t.size());
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j, double cost) {
    const double rest = std::abs(static_cast<double>(s.size() - i) - static_cast<double>(t.size() - j));
    if (cost + rest >= best - 1e-12) return;
    if (i == s.size() && j == t.size()) {
      best = cost;
      return;
    }
    if (i < s.size() && j < t.size()) walk(i + 1, j + 1, cost + sub_cost(s[i], t[j]));
    if (i < s.size()) walk(i + 1, j, cost + 1.0);
    if (j < t.size()) walk(i, j + 1, cost + 1.0);
  };
  walk(0, 0, 0.0);
  return best;
}

inline Tokens random_tokens(std::mt19937_64& rng, std::size_t max_len, const Tokens& vocab) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  Tokens out(len(rng));
  for (auto& t : out) t = vocab[pick(rng)];
  return out;
}

// ---- GEC evaluation ----

// F-beta from the counts directly: (1+b^2)tp / ((1+b^2)tp + b^2 fn + fp),
// with the zero-count conventions written out case by case.
inline double fbeta_closed_form(long tp, long fp, long fn, double beta) {
  if (tp == 0) return (fp == 0 && fn == 0) ? 1.0 : 0.0;
  const double b2 = beta * beta;
  return (1 + b2) * tp / ((1 + b2) * tp + b2 * fn + fp);
}

struct NaiveCounts {
  long tp = 0, fp = 0, fn = 0;
};

inline NaiveCounts naive_match(const std::vector<awegec::Edit>& hyp, const std::vector<awegec::Edit>& gold) {
  NaiveCounts c;
  for (const auto& h : hyp)
    for (const auto& g : gold)
      if (h.span.start == g.span.start && h.span.end == g.span.end && h.replacement == g.replacement) {
        ++c.tp;
        break;
      }
  c.fp = static_cast<long>(hyp.size()) - c.tp;
  c.fn = static_cast<long>(gold.size()) - c.tp;
  return c;
}

// Enumerates every combination of annotator choices and keeps the one with
// the lexicographically largest summed (tp, -fp, -fn).
inline NaiveCounts brute_force_corpus(
    const std::vector<std::pair<std::vector<awegec::Edit>, awegec::corpus::AnnotatedSentence>>& pairs) {
  std::vector<std::vector<NaiveCounts>> options;
  for (const auto& [hyp, gold] : pairs) {
    std::vector<NaiveCounts> per;
    for (const auto& [id, edits] : gold.annotations) per.push_back(naive_match(hyp, edits));
    options.push_back(per);
  }
  NaiveCounts best{-1, 0, 0};
  std::vector<std::size_t> choice(options.size(), 0);
  for (;;) {
    NaiveCounts sum;
    for (std::size_t i = 0; i < options.size(); ++i) {
      sum.tp += options[i][choice[i]].tp;
      sum.fp += options[i][choice[i]].fp;
      sum.fn += options[i][choice[i]].fn;
    }
    if (std::make_tuple(sum.tp, -sum.fp, -sum.fn) > std::make_tuple(best.tp, -best.fp, -best.fn)) best = sum;
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == options[k].size()) choice[k++] = 0;
    if (k == choice.size()) break;
  }
  return best;
}

// ---- QWK ----

// Explicit observed, expected and weight matrices.
inline double qwk_matrix(const std::vector<int>& g, const std::vector<int>& p, int lo, int hi) {
  const int k = hi - lo + 1;
  const double n = static_cast<double>(g.size());
  std::vector<std::vector<double>> obs(k, std::vector<double>(k, 0.0));
  std::vector<double> hg(k, 0.0), hp(k, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    obs[g[i] - lo][p[i] - lo] += 1.0;
    hg[g[i] - lo] += 1.0;
    hp[p[i] - lo] += 1.0;
  }
  double num = 0.0, den = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const double w = k == 1 ? 0.0 : static_cast<double>((i - j) * (i - j)) / ((k - 1) * (k - 1));
      num += w * obs[i][j];
      den += w * hg[i] * hp[j] / n;
    }
  if (den == 0.0) return 1.0;
  return 1.0 - num / den;
}

// ---- ridge ----

// Ridge weights over population z-scores and an unpenalized bias, solved as
// the augmented least-squares problem [Z; sqrt(l) I] w = [y - mean; 0] with
// column-pivoting QR.
inline std::pair<std::vector<double>, double> ridge_oracle(const std::vector<std::vector<double>>& x,
                                                           const std::vector<double>& y, double lambda) {
  const auto n = static_cast<Eigen::Index>(x.size());
  const auto p = static_cast<Eigen::Index>(x.front().size());
  Eigen::MatrixXd raw(n, p);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < p; ++j) raw(i, j) = x[i][j];
  Eigen::VectorXd mean = raw.colwise().mean();
  Eigen::MatrixXd z = raw.rowwise() - mean.transpose();
  for (Eigen::Index j = 0; j < p; ++j) {
    const double sd = std::sqrt(z.col(j).squaredNorm() / static_cast<double>(n));
    if (sd < 1e-12 * std::max(1.0, std::abs(mean(j))))
      z.col(j).setZero();
    else
      z.col(j) /= sd;
  }
  Eigen::VectorXd yy = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
  const double ymean = yy.mean();
  Eigen::MatrixXd a(n + p, p);
  a << z, std::sqrt(lambda) * Eigen::MatrixXd::Identity(p, p);
  Eigen::VectorXd b(n + p);
  b << (yy.array() - ymean).matrix(), Eigen::VectorXd::Zero(p);
  Eigen::VectorXd w = a.colPivHouseholderQr().solve(b);
  return {std::vector<double>(w.data(), w.data() + p), ymean};
}

// ---- trees ----

inline awegec::corpus::ParseTree random_tree(std::mt19937_64& rng, int depth = 0) {
  static const std::vector<std::string> phrases = {"S", "NP", "VP", "PP", "SBAR", "ADJP", "SQ"};
  static const std::vector<std::string> tags = {"DT", "NN", "VB", "IN", "JJ"};
  static const std::vector<std::string> words = {"the", "cat", "sat", "on", "red", "mat"};
  std::uniform_int_distribution<int> coin(0, 3);
  awegec::corpus::ParseTree t;
  if (depth >= 4 || (depth > 0 && coin(rng) == 0)) {
    t.label = tags[rng() % tags.size()];
    t.leaf = words[rng() % words.size()];
    return t;
  }
  t.label = phrases[rng() % phrases.size()];
  const int kids = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < kids; ++i) t.children.push_back(random_tree(rng, depth + 1));
  return t;
}

// ---- scoring fixtures ----

// Eight prompts with different native ranges. Features are uniform in
// [0, 1]; the unit score is a fixed convex combination of them, so gold is
// an exact linear function of the features on every prompt.
struct PlantedData {
  std::vector<awegec::scorer::TrainingExample> examples;
  awegec::scorer::RangeTable ranges;
};

inline PlantedData planted_dataset(std::size_t per_prompt, std::uint64_t seed, const std::string& rubric = "overall") {
  const auto& schema = awegec::features::feature_schema();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(schema.size());
  double total = 0.0;
  for (auto& v : w) total += (v = 0.2 + u(rng));
  for (auto& v : w) v /= total;

  PlantedData d;
  for (int p = 1; p <= 8; ++p) {
    const double lo = p % 2 ? 0.0 : 1.0;
    const double hi = lo + 3.0 + p;
    d.ranges[{p, rubric}] = {lo, hi};
    for (std::size_t i = 0; i < per_prompt; ++i) {
      awegec::scorer::TrainingExample ex;
      ex.essay_id = std::to_string(p) + "-" + std::to_string(i);
      ex.prompt_id = p;
      double unit = 0.0;
      for (std::size_t j = 0; j < schema.size(); ++j) {
        ex.features.push_back(u(rng));
        unit += w[j] * ex.features.back();
      }
      ex.gold[rubric] = lo + unit * (hi - lo);
      d.examples.push_back(std::move(ex));
    }
  }
  return d;
}

// A small model over the full feature schema with every rubric trained.
inline awegec::scorer::ScoreModel demo_score_model() {
  const auto& schema = awegec::features::feature_schema();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<awegec::scorer::TrainingExample> examples;
  for (int i = 0; i < 40; ++i) {
    awegec::scorer::TrainingExample ex;
    ex.essay_id = "e" + std::to_string(i);
    ex.prompt_id = 1 + i % 2;
    for (std::size_t j = 0; j < schema.size(); ++j) ex.features.push_back(u(rng));
    for (const auto& r : awegec::corpus::rubric_names()) ex.gold[r] = std::round(u(rng) * 6.0);
    examples.push_back(std::move(ex));
  }
  awegec::scorer::TrainOptions opt;
  opt.lambda = 1.0;
  for (int p = 1; p <= 2; ++p)
    for (const auto& r : awegec::corpus::rubric_names()) opt.ranges[{p, r}] = {0.0, 6.0};
  return awegec::scorer::train(examples, schema, opt);
}

// Demo rules and dictionary, an LM over the reference target, the demo score model.
inline std::shared_ptr<const awegec::service::Pipeline> demo_pipeline(awegec::corrector::CorrectorConfig config = {}) {
  awegec::corrector::RuleSet rs;
  rs.rules = awegec::corrector::RuleSet::rules_from_json(read_file(demo_data("demo.rules.json")));
  rs.dictionary = awegec::Dictionary::from_tsv(read_file(demo_data("demo.dict.tsv")));
  awegec::features::NgramModel lm;
  lm.train({kReferenceTarget, {"most", "people", "speak", "English", "."}});
  return std::make_shared<const awegec::service::Pipeline>(awegec::corrector::Corrector(std::move(rs), config),
                                                          std::move(lm), demo_score_model());
}

}  // namespace support
