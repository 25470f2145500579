#include <cmath>
#include <nlohmann/json.hpp>

#include "awegec/error.hpp"
#include "awegec/features.hpp"
#include "awegec/text.hpp"

namespace awegec::features {

NgramModel::NgramModel(int order, double k) : order_(order), k_(k) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "n-gram order must be >= 1");
  if (!(k >= 0)) throw Error(ErrorCode::InvalidArgument, "smoothing constant must be >= 0");
  vocab_[std::string(kUnknown)] = true;
  rebuild_vocab_list();
}

void NgramModel::rebuild_vocab_list() {
  vocab_list_.clear();
  for (const auto& [w, _] : vocab_) vocab_list_.push_back(w);
}

std::string NgramModel::map_token(const std::string& token) const {
  std::string lower = text::ascii_lower(token);
  return vocab_.count(lower) ? lower : std::string(kUnknown);
}

std::vector<std::string> NgramModel::key(const std::vector<std::string>& context) const {
  const std::size_t n = static_cast<std::size_t>(order_ - 1);
  std::vector<std::string> out(n, std::string(kStart));
  const std::size_t take = std::min(n, context.size());
  for (std::size_t i = 0; i < take; ++i) {
    const auto& tok = context[context.size() - take + i];
    out[n - take + i] = tok == kStart ? tok : map_token(tok);
  }
  return out;
}

void NgramModel::train(const std::vector<std::vector<std::string>>& sentences) {
  for (const auto& s : sentences)
    for (const auto& t : s) vocab_[text::ascii_lower(t)] = true;
  rebuild_vocab_list();
  for (const auto& s : sentences) {
    std::vector<std::string> history;
    for (const auto& t : s) {
      const auto ctx = key(history);
      const std::string tok = map_token(t);
      ++counts_[ctx][tok];
      ++totals_[ctx];
      history.push_back(t);
    }
  }
}

double NgramModel::probability(const std::vector<std::string>& context, const std::string& token) const {
  const auto ctx = key(context);
  const std::string tok = token == kUnknown ? token : map_token(token);
  const double v = static_cast<double>(vocab_.size());
  double count = 0, total = 0;
  if (auto it = totals_.find(ctx); it != totals_.end()) {
    total = static_cast<double>(it->second);
    const auto& row = counts_.at(ctx);
    if (auto c = row.find(tok); c != row.end()) count = static_cast<double>(c->second);
  }
  const double denom = total + k_ * v;
  if (denom == 0.0) return 1.0 / v;
  return (count + k_) / denom;
}

std::vector<double> NgramModel::sentence_probabilities(const std::vector<std::string>& tokens) const {
  std::vector<double> out;
  out.reserve(tokens.size());
  std::vector<std::string> history;
  for (const auto& t : tokens) {
    out.push_back(probability(history, t));
    history.push_back(t);
  }
  return out;
}

std::string NgramModel::to_json() const {
  nlohmann::json counts = nlohmann::json::array();
  for (const auto& [ctx, row] : counts_)
    for (const auto& [tok, c] : row) counts.push_back({{"context", ctx}, {"token", tok}, {"count", c}});
  nlohmann::json j = {{"format", "awegec-ngram"}, {"version", 1},       {"order", order_},
                      {"k", k_},                  {"vocabulary", vocab_list_}, {"counts", counts}};
  return j.dump() + "\n";
}

NgramModel NgramModel::from_json(std::string_view json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    if (j.at("format") != "awegec-ngram" || j.at("version") != 1)
      throw Error(ErrorCode::SchemaMismatch, "not an awegec-ngram v1 checkpoint");
    NgramModel m(j.at("order").get<int>(), j.at("k").get<double>());
    for (const auto& w : j.at("vocabulary")) m.vocab_[w.get<std::string>()] = true;
    m.rebuild_vocab_list();
    for (const auto& e : j.at("counts")) {
      const auto ctx = e.at("context").get<std::vector<std::string>>();
      if (ctx.size() != static_cast<std::size_t>(m.order_ - 1))
        throw Error(ErrorCode::SchemaMismatch, "context length does not match order");
      const auto c = e.at("count").get<std::uint64_t>();
      m.counts_[ctx][e.at("token").get<std::string>()] += c;
      m.totals_[ctx] += c;
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaMismatch, std::string("n-gram checkpoint: ") + e.what());
  }
}

double cross_entropy(const std::vector<TokenizedSentence>& essay, const NgramModel& model) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& s : essay) {
    for (double p : model.sentence_probabilities(s.tokens)) {
      sum += std::log2(std::max(p, kProbabilityFloor));
      ++n;
    }
  }
  if (n == 0) throw Error(ErrorCode::EmptyEssay, "essay has no tokens");
  return -sum / static_cast<double>(n);
}

double fluency(const std::vector<TokenizedSentence>& essay, const NgramModel& model) {
  const double h = cross_entropy(essay, model);
  return 1.0 / (1.0 + std::max(0.0, h));
}

}  // namespace awegec::features
