#include "awegec/geceval.hpp"

#include <iomanip>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <tuple>

#include "awegec/error.hpp"
#include "awegec/kernels.hpp"

namespace awegec::geceval {
namespace {

using EditKey = std::tuple<std::size_t, std::size_t, std::vector<std::string>>;

std::set<EditKey> keys(const std::vector<Edit>& edits) {
  std::set<EditKey> out;
  for (const auto& e : edits) out.emplace(e.span.start, e.span.end, e.replacement);
  return out;
}

bool better(const Counts& a, const Counts& b) {
  return std::make_tuple(a.tp, -a.fp, -a.fn) > std::make_tuple(b.tp, -b.fp, -b.fn);
}

}  // namespace

Counts match_edits(const std::vector<Edit>& hyp, const std::vector<Edit>& gold) {
  const auto h = keys(hyp);
  const auto g = keys(gold);
  Counts c;
  for (const auto& k : h) c.tp += g.count(k);
  c.fp = static_cast<std::int64_t>(h.size()) - c.tp;
  c.fn = static_cast<std::int64_t>(g.size()) - c.tp;
  return c;
}

EvalReport report_from_counts(const Counts& counts, double beta) {
  if (!(beta > 0)) throw Error(ErrorCode::InvalidArgument, "beta must be positive");
  EvalReport r;
  r.counts = counts;
  r.beta = beta;
  const auto proposed = counts.tp + counts.fp;
  const auto expected = counts.tp + counts.fn;
  r.degenerate = proposed == 0 || expected == 0;
  r.precision = proposed == 0 ? 1.0 : static_cast<double>(counts.tp) / static_cast<double>(proposed);
  r.recall = expected == 0 ? 1.0 : static_cast<double>(counts.tp) / static_cast<double>(expected);
  const double b2 = beta * beta;
  const double denom = b2 * r.precision + r.recall;
  r.f_beta = denom == 0.0 ? 0.0 : (1.0 + b2) * r.precision * r.recall / denom;
  return r;
}

std::pair<int, Counts> best_annotator(const std::vector<Edit>& hyp, const corpus::AnnotatedSentence& gold) {
  if (gold.annotations.empty()) throw Error(ErrorCode::NoAnnotators, "sentence has no annotators");
  std::pair<int, Counts> best{-1, {}};
  for (const auto& [id, edits] : gold.annotations) {
    const Counts c = match_edits(hyp, edits);
    if (best.first < 0 || better(c, best.second)) best = {id, c};
  }
  return best;
}

EvalReport score_corpus(const std::vector<ScoredPair>& pairs, double beta) {
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (pairs[i].second.annotations.empty())
      throw Error(ErrorCode::NoAnnotators, "sentence " + std::to_string(i) + " has no annotators",
                  static_cast<std::int64_t>(i));
  return report_from_counts(kernels::corpus_counts(pairs), beta);
}

std::vector<ScoredPair> pair_m2(const std::vector<corpus::AnnotatedSentence>& hyp,
                                const std::vector<corpus::AnnotatedSentence>& gold) {
  if (hyp.size() != gold.size())
    throw Error(ErrorCode::LengthMismatch, "hypothesis has " + std::to_string(hyp.size()) +
                                               " sentences, gold has " + std::to_string(gold.size()));
  std::vector<ScoredPair> out;
  out.reserve(hyp.size());
  for (std::size_t i = 0; i < hyp.size(); ++i) {
    if (hyp[i].source.tokens != gold[i].source.tokens)
      throw Error(ErrorCode::MalformedLine, "sentence " + std::to_string(i + 1) + ": source tokens differ",
                  static_cast<std::int64_t>(i + 1));
    std::vector<Edit> edits;
    if (!hyp[i].annotations.empty()) edits = hyp[i].annotations.begin()->second;
    out.emplace_back(std::move(edits), gold[i]);
  }
  return out;
}

std::string render_text(const EvalReport& r) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4);
  os << "TP: " << r.counts.tp << "\n"
     << "FP: " << r.counts.fp << "\n"
     << "FN: " << r.counts.fn << "\n"
     << "Precision: " << r.precision << "\n"
     << "Recall: " << r.recall << "\n"
     << "F" << std::setprecision(1) << r.beta << ": " << std::setprecision(4) << r.f_beta << "\n";
  if (r.degenerate) os << "Note: empty denominator, 1.0 convention applied\n";
  return os.str();
}

std::string render_json(const EvalReport& r) {
  nlohmann::json j = {{"tp", r.counts.tp},         {"fp", r.counts.fp},   {"fn", r.counts.fn},
                      {"precision", r.precision}, {"recall", r.recall}, {"f_beta", r.f_beta},
                      {"beta", r.beta},           {"degenerate", r.degenerate}};
  return j.dump(2) + "\n";
}

}  // namespace awegec::geceval
