#include <algorithm>
#include <cmath>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

#include "awegec/error.hpp"
#include "awegec/scorer.hpp"

namespace awegec::scorer {
namespace {

constexpr int kPrompts = 8;

struct Rated {
  std::vector<int> gold, pred;
  int lo = 0, hi = 0;
};

Rated rate(const ScoreModel& model, const std::vector<const TrainingExample*>& essays, const std::string& rubric,
           const Range& range, QwkScale scale) {
  Rated out;
  if (scale == QwkScale::Hundred) {
    out.lo = 0;
    out.hi = 100;
  } else {
    out.lo = static_cast<int>(std::ceil(range.first));
    out.hi = static_cast<int>(std::floor(range.second));
  }
  for (const auto* ex : essays) {
    const double gold = ex->gold.at(rubric);
    const double unit = std::clamp(model.predict_unit(ex->features, rubric), 0.0, 1.0);
    if (scale == QwkScale::Hundred) {
      out.gold.push_back(round_half_up(minmax(gold, range.first, range.second).value * 100.0));
      out.pred.push_back(round_half_up(unit * 100.0));
    } else {
      out.gold.push_back(std::clamp(round_half_up(gold), out.lo, out.hi));
      out.pred.push_back(std::clamp(round_half_up(denorm(unit, range.first, range.second)), out.lo, out.hi));
    }
  }
  return out;
}

}  // namespace

int dev_prompt_for(int test_prompt) { return ((test_prompt + 6) % kPrompts) + 1; }

QwkReport cross_prompt_eval(const std::vector<TrainingExample>& examples, const std::vector<std::string>& schema,
                            const CrossPromptConfig& config) {
  if (config.lambdas.empty()) throw Error(ErrorCode::InvalidArgument, "empty lambda grid");
  std::vector<std::vector<const TrainingExample*>> by_prompt(kPrompts + 1);
  for (const auto& ex : examples)
    if (ex.prompt_id >= 1 && ex.prompt_id <= kPrompts && ex.gold.count(config.rubric))
      by_prompt[static_cast<std::size_t>(ex.prompt_id)].push_back(&ex);
  for (int p = 1; p <= kPrompts; ++p)
    if (by_prompt[static_cast<std::size_t>(p)].empty())
      throw Error(ErrorCode::MissingPrompt, "prompt " + std::to_string(p) + " has no essays scored on " + config.rubric,
                  p);

  const RangeTable ranges = resolve_ranges(examples, config.ranges);
  std::vector<double> grid = config.lambdas;
  std::sort(grid.begin(), grid.end());

  QwkReport report;
  for (int test = 1; test <= kPrompts; ++test) {
    const int dev = dev_prompt_for(test);
    std::vector<TrainingExample> train_set;
    for (int p = 1; p <= kPrompts; ++p) {
      if (p == test || p == dev) continue;
      for (const auto* ex : by_prompt[static_cast<std::size_t>(p)]) {
        TrainingExample copy = *ex;
        for (auto it = copy.gold.begin(); it != copy.gold.end();)
          it = it->first == config.rubric ? std::next(it) : copy.gold.erase(it);
        train_set.push_back(std::move(copy));
      }
    }

    FoldResult fold;
    fold.test_prompt = test;
    fold.dev_prompt = dev;
    std::optional<ScoreModel> best;
    for (double lambda : grid) {
      TrainOptions opts;
      opts.lambda = lambda;
      opts.only_rubric = config.rubric;
      opts.ranges = ranges;
      ScoreModel model = train(train_set, schema, opts);
      const auto r = rate(model, by_prompt[static_cast<std::size_t>(dev)], config.rubric,
                          ranges.at({dev, config.rubric}), config.scale);
      const double k = qwk(r.gold, r.pred, r.lo, r.hi);
      if (!best || k > fold.dev_qwk) {
        fold.dev_qwk = k;
        fold.lambda = lambda;
        best = std::move(model);
      }
    }
    const auto& test_set = by_prompt[static_cast<std::size_t>(test)];
    const auto r = rate(*best, test_set, config.rubric, ranges.at({test, config.rubric}), config.scale);
    fold.qwk = qwk(r.gold, r.pred, r.lo, r.hi);
    fold.test_size = test_set.size();
    report.folds.push_back(fold);
  }
  double sum = 0.0;
  for (const auto& f : report.folds) sum += f.qwk;
  report.average = sum / static_cast<double>(report.folds.size());
  return report;
}

std::string QwkReport::render_table() const {
  std::ostringstream os;
  os << std::left << std::setw(10) << "";
  for (const auto& f : folds) os << " | " << std::setw(8) << ("Prompt " + std::to_string(f.test_prompt));
  os << " | Average\n";
  os << std::setw(10) << "QWK" << std::fixed << std::setprecision(4);
  for (const auto& f : folds) os << " | " << std::setw(8) << f.qwk;
  os << " | " << average << "\n";
  os << std::setw(10) << "lambda" << std::setprecision(2);
  for (const auto& f : folds) os << " | " << std::setw(8) << f.lambda;
  os << " |\n";
  os << std::setw(10) << "dev" << std::setprecision(0);
  for (const auto& f : folds) os << " | " << std::setw(8) << f.dev_prompt;
  os << " |\n";
  return os.str();
}

std::string QwkReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& f : folds)
    rows.push_back({{"test_prompt", f.test_prompt}, {"dev_prompt", f.dev_prompt}, {"lambda", f.lambda},
                    {"dev_qwk", f.dev_qwk},         {"qwk", f.qwk},               {"test_size", f.test_size}});
  return nlohmann::json{{"folds", rows}, {"average", average}}.dump(2) + "\n";
}

}  // namespace awegec::scorer
