#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "awegec/corpus/essays.hpp"
#include "awegec/error.hpp"
#include "awegec/kernels.hpp"
#include "awegec/scorer.hpp"

namespace awegec::scorer {
namespace {

constexpr double kConstantStd = 1e-12;

// Solves the symmetric positive definite system in place; false when a pivot
// is not positive enough.
bool cholesky_solve(std::vector<double> a, std::size_t p, std::vector<double>& b) {
  double scale = 1.0;
  for (std::size_t i = 0; i < p; ++i) scale = std::max(scale, std::fabs(a[i * p + i]));
  for (std::size_t j = 0; j < p; ++j) {
    double d = a[j * p + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * p + k] * a[j * p + k];
    if (d <= 1e-12 * scale) return false;
    d = std::sqrt(d);
    a[j * p + j] = d;
    for (std::size_t i = j + 1; i < p; ++i) {
      double s = a[i * p + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * p + k] * a[j * p + k];
      a[i * p + j] = s / d;
    }
  }
  for (std::size_t i = 0; i < p; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= a[i * p + k] * b[k];
    b[i] = s / a[i * p + i];
  }
  for (std::size_t i = p; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < p; ++k) s -= a[k * p + i] * b[k];
    b[i] = s / a[i * p + i];
  }
  return true;
}

struct RidgeFit {
  std::vector<double> weights;
  double bias = 0.0;
  bool jittered = false;
};

// Ridge with an unpenalized intercept over the non-constant columns.
RidgeFit fit_ridge(const std::vector<std::vector<double>>& z, const std::vector<double>& y,
                   const std::vector<bool>& constant, double lambda) {
  const std::size_t n = y.size();
  const std::size_t width = constant.size();
  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < width; ++j)
    if (!constant[j]) active.push_back(j);
  const std::size_t p = active.size();

  std::vector<double> zmean(p, 0.0);
  for (const auto& row : z)
    for (std::size_t a = 0; a < p; ++a) zmean[a] += row[active[a]];
  for (auto& m : zmean) m /= static_cast<double>(n);
  const double ymean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);

  std::vector<double> design(n * p), target(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t a = 0; a < p; ++a) design[r * p + a] = z[r][active[a]] - zmean[a];
    target[r] = y[r] - ymean;
  }
  auto [xtx, xty] = kernels::normal_equations(design, p, target);

  RidgeFit fit;
  fit.weights.assign(width, 0.0);
  std::vector<double> sol;
  if (p > 0) {
    for (std::size_t a = 0; a < p; ++a) xtx[a * p + a] += lambda;
    sol = xty;
    if (!cholesky_solve(xtx, p, sol)) {
      double trace = 0.0;
      for (std::size_t a = 0; a < p; ++a) trace += xtx[a * p + a];
      const double jitter = 1e-8 * std::max(1.0, trace / static_cast<double>(p));
      for (std::size_t a = 0; a < p; ++a) xtx[a * p + a] += jitter;
      sol = xty;
      if (!cholesky_solve(xtx, p, sol))
        throw Error(ErrorCode::InsufficientData, "normal equations are singular");
      fit.jittered = true;
    }
  }
  fit.bias = ymean;
  for (std::size_t a = 0; a < p; ++a) {
    fit.weights[active[a]] = sol[a];
    fit.bias -= sol[a] * zmean[a];
  }
  return fit;
}

}  // namespace

Standardizer Standardizer::fit(const std::vector<std::vector<double>>& rows) {
  Standardizer s;
  if (rows.empty()) return s;
  const std::size_t p = rows.front().size();
  const double n = static_cast<double>(rows.size());
  s.mean.assign(p, 0.0);
  s.stddev.assign(p, 0.0);
  s.constant.assign(p, false);
  for (const auto& r : rows)
    for (std::size_t j = 0; j < p; ++j) s.mean[j] += r[j];
  for (auto& m : s.mean) m /= n;
  for (const auto& r : rows)
    for (std::size_t j = 0; j < p; ++j) s.stddev[j] += (r[j] - s.mean[j]) * (r[j] - s.mean[j]);
  for (std::size_t j = 0; j < p; ++j) {
    s.stddev[j] = std::sqrt(s.stddev[j] / n);
    if (s.stddev[j] < kConstantStd * std::max(1.0, std::fabs(s.mean[j]))) {
      s.constant[j] = true;
      s.stddev[j] = 1.0;
    }
  }
  return s;
}

std::vector<double> Standardizer::apply(std::span<const double> x) const {
  if (x.size() != mean.size())
    throw Error(ErrorCode::SchemaMismatch, "expected " + std::to_string(mean.size()) + " features, got " +
                                               std::to_string(x.size()));
  std::vector<double> z(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) z[j] = constant[j] ? 0.0 : (x[j] - mean[j]) / stddev[j];
  return z;
}

double ScoreModel::predict_unit(std::span<const double> x, const std::string& rubric) const {
  auto it = rubrics.find(rubric);
  if (it == rubrics.end()) throw Error(ErrorCode::SchemaMismatch, "model has no rubric '" + rubric + "'");
  const auto z = standardizer.apply(x);
  double raw = it->second.bias;
  for (std::size_t j = 0; j < z.size(); ++j) raw += it->second.weights[j] * z[j];
  return raw;
}

RangeTable resolve_ranges(const std::vector<TrainingExample>& examples, const RangeTable& fixed) {
  RangeTable out;
  for (const auto& ex : examples) {
    for (const auto& [rubric, v] : ex.gold) {
      const RangeKey key{ex.prompt_id, rubric};
      auto [it, inserted] = out.emplace(key, Range{v, v});
      if (!inserted) {
        it->second.first = std::min(it->second.first, v);
        it->second.second = std::max(it->second.second, v);
      }
    }
  }
  for (const auto& [k, r] : fixed) out[k] = r;
  return out;
}

ScoreModel train(const std::vector<TrainingExample>& examples, const std::vector<std::string>& schema,
                 const TrainOptions& options) {
  if (examples.size() < 2) throw Error(ErrorCode::InsufficientData, "need at least two training essays");
  if (!(options.lambda >= 0)) throw Error(ErrorCode::InvalidArgument, "lambda must be >= 0");
  for (const auto& ex : examples)
    if (ex.features.size() != schema.size())
      throw Error(ErrorCode::SchemaMismatch, "essay " + ex.essay_id + " has " + std::to_string(ex.features.size()) +
                                                 " features, schema has " + std::to_string(schema.size()));

  ScoreModel model;
  model.schema = schema;
  model.lambda = options.lambda;
  model.ranges = resolve_ranges(examples, options.ranges);

  std::vector<std::vector<double>> rows;
  rows.reserve(examples.size());
  for (const auto& ex : examples) rows.push_back(ex.features);
  model.standardizer = Standardizer::fit(rows);
  std::vector<std::vector<double>> z;
  z.reserve(rows.size());
  for (const auto& r : rows) z.push_back(model.standardizer.apply(r));

  std::vector<std::string> wanted;
  if (options.only_rubric) {
    wanted.push_back(*options.only_rubric);
  } else {
    wanted = corpus::rubric_names();
  }

  std::vector<std::string> borrowers;
  for (const auto& rubric : wanted) {
    std::vector<std::vector<double>> zr;
    std::vector<double> y;
    for (std::size_t i = 0; i < examples.size(); ++i) {
      auto g = examples[i].gold.find(rubric);
      if (g == examples[i].gold.end()) continue;
      const auto& range = model.ranges.at({examples[i].prompt_id, rubric});
      if (range.first == range.second)
        throw Error(ErrorCode::DegenerateRange, "prompt " + std::to_string(examples[i].prompt_id) + " rubric " +
                                                    rubric + " has min == max");
      zr.push_back(z[i]);
      y.push_back(minmax(g->second, range.first, range.second).value);
    }
    if (y.size() < 2) {
      if (rubric == "overall" || options.only_rubric)
        throw Error(ErrorCode::InsufficientData, "fewer than two essays scored on " + rubric);
      borrowers.push_back(rubric);
      continue;
    }
    const auto fit = fit_ridge(zr, y, model.standardizer.constant, options.lambda);
    RubricModel rm;
    rm.weights = fit.weights;
    rm.bias = fit.bias;
    rm.jittered = fit.jittered;
    rm.trained_on = y.size();
    model.rubrics[rubric] = std::move(rm);
  }
  for (const auto& rubric : borrowers) {
    RubricModel rm = model.rubrics.at("overall");
    rm.borrowed = true;
    rm.trained_on = 0;
    model.rubrics[rubric] = std::move(rm);
  }
  return model;
}

std::pair<std::vector<double>, double> raw_coefficients(const ScoreModel& model, const std::string& rubric) {
  const auto& rm = model.rubrics.at(rubric);
  const auto& st = model.standardizer;
  std::vector<double> slope(rm.weights.size(), 0.0);
  double intercept = rm.bias;
  for (std::size_t j = 0; j < slope.size(); ++j) {
    if (st.constant[j]) continue;
    slope[j] = rm.weights[j] / st.stddev[j];
    intercept -= slope[j] * st.mean[j];
  }
  return {slope, intercept};
}

RubricScoreSet predict(const ScoreModel& model, std::span<const double> x) {
  RubricScoreSet out;
  const auto z = model.standardizer.apply(x);
  for (const auto& rubric : corpus::rubric_names()) {
    auto it = model.rubrics.find(rubric);
    if (it == model.rubrics.end()) it = model.rubrics.find("overall");
    if (it == model.rubrics.end()) throw Error(ErrorCode::SchemaMismatch, "model has no overall rubric");
    double raw = it->second.bias;
    for (std::size_t j = 0; j < z.size(); ++j) raw += it->second.weights[j] * z[j];
    const double score = std::clamp(raw, 0.0, 1.0) * 100.0;
    if (rubric == "overall") out.overall = score;
    else out.rubrics[rubric] = score;
  }
  return out;
}

RubricScoreSet predict(const ScoreModel& model, const features::FeatureVector& fv) {
  if (fv.schema_version != model.schema_version)
    throw Error(ErrorCode::SchemaMismatch, "feature schema " + fv.schema_version + " vs model " + model.schema_version);
  return predict(model, fv.ordered(model.schema));
}

}  // namespace awegec::scorer
