#include <algorithm>
#include <numeric>

#include "awegec/features.hpp"

namespace awegec::features {
namespace {

using corpus::ParseTree;

void yngve_walk(const ParseTree& node, double depth, std::vector<double>& out) {
  if (node.is_preterminal()) {
    out.push_back(depth);
    return;
  }
  const std::size_t k = node.children.size();
  for (std::size_t i = 0; i < k; ++i) yngve_walk(node.children[i], depth + static_cast<double>(k - 1 - i), out);
}

bool is_clausal(const std::string& label) {
  const std::string base = label.substr(0, label.find_first_of("-=", 1));
  return base == "S" || base == "SBAR" || base == "SBARQ" || base == "SINV" || base == "SQ";
}

double node_weight(const ParseTree& node) { return is_clausal(node.label) ? 1.5 : 1.0; }

// `chain` is the leftmost-ancestor score accumulated at `node`.
void frazier_walk(const ParseTree& node, double chain, std::vector<double>& out) {
  if (node.is_preterminal()) {
    out.push_back(chain);
    return;
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const auto& child = node.children[i];
    frazier_walk(child, i == 0 ? node_weight(child) + chain : 0.0, out);
  }
}

Summary summarize_max(const std::vector<double>& v) {
  if (v.empty()) return {};
  return {std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()),
          *std::max_element(v.begin(), v.end())};
}

}  // namespace

std::vector<double> yngve_word_depths(const ParseTree& tree) {
  std::vector<double> out;
  yngve_walk(tree, 0.0, out);
  return out;
}

std::vector<double> frazier_word_scores(const ParseTree& tree) {
  std::vector<double> out;
  frazier_walk(tree, node_weight(tree), out);
  return out;
}

Summary yngve_depth(const ParseTree& tree) { return summarize_max(yngve_word_depths(tree)); }

Summary frazier_score(const ParseTree& tree) {
  const auto scores = frazier_word_scores(tree);
  if (scores.empty()) return {};
  const double total = std::accumulate(scores.begin(), scores.end(), 0.0);
  return {total / static_cast<double>(scores.size()), total};
}

FeatureVector syntax_features(const std::vector<std::optional<ParseTree>>& trees) {
  double y_mean = 0, y_max = 0, f_mean = 0, f_total = 0;
  std::size_t n = 0;
  for (const auto& t : trees) {
    if (!t) continue;
    const auto y = yngve_depth(*t);
    const auto f = frazier_score(*t);
    y_mean += y.mean;
    y_max = std::max(y_max, y.extreme);
    f_mean += f.mean;
    f_total += f.extreme;
    ++n;
  }
  FeatureVector fv;
  const double d = n ? static_cast<double>(n) : 1.0;
  fv.set("yngve_mean", y_mean / d);
  fv.set("yngve_max", y_max);
  fv.set("frazier_mean", f_mean / d);
  fv.set("frazier_total", f_total / d);
  fv.set("trees_missing", n ? 0.0 : 1.0);
  return fv;
}

}  // namespace awegec::features
