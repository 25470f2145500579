#include "awegec/align.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "awegec/error.hpp"
#include "awegec/text.hpp"

namespace awegec::align {
namespace {

constexpr double kTieTolerance = 1e-9;

bool same_cost(double a, double b) { return std::fabs(a - b) <= kTieTolerance; }

}  // namespace

double AlignCosts::op_cost(OpKind kind, const std::string& a, const std::string& b) const {
  switch (kind) {
    case OpKind::Match: return 0.0;
    case OpKind::Ins: return insertion;
    case OpKind::Del: return deletion;
    case OpKind::Sub: return text::iequals(a, b) ? case_substitution : substitution;
  }
  return 0.0;
}

AlignmentScript align(const std::vector<std::string>& src, const std::vector<std::string>& tgt,
                      const AlignCosts& costs) {
  const std::size_t n = src.size(), m = tgt.size();
  const std::size_t w = m + 1;
  std::vector<double> cost((n + 1) * w, 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return cost[i * w + j]; };

  for (std::size_t i = 1; i <= n; ++i) at(i, 0) = at(i - 1, 0) + costs.deletion;
  for (std::size_t j = 1; j <= m; ++j) at(0, j) = at(0, j - 1) + costs.insertion;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const bool equal = src[i - 1] == tgt[j - 1];
      const double diag =
          at(i - 1, j - 1) + (equal ? 0.0 : costs.op_cost(OpKind::Sub, src[i - 1], tgt[j - 1]));
      at(i, j) = std::min({diag, at(i - 1, j) + costs.deletion, at(i, j - 1) + costs.insertion});
    }
  }

  AlignmentScript script;
  script.total_cost = at(n, m);
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const double here = at(i, j);
    if (i > 0 && j > 0) {
      const bool equal = src[i - 1] == tgt[j - 1];
      if (equal && same_cost(at(i - 1, j - 1), here)) {
        script.ops.push_back({OpKind::Match, i - 1, j - 1});
        --i, --j;
        continue;
      }
      if (!equal && same_cost(at(i - 1, j - 1) + costs.op_cost(OpKind::Sub, src[i - 1], tgt[j - 1]), here)) {
        script.ops.push_back({OpKind::Sub, i - 1, j - 1});
        --i, --j;
        continue;
      }
    }
    if (i > 0 && same_cost(at(i - 1, j) + costs.deletion, here)) {
      script.ops.push_back({OpKind::Del, i - 1, j});
      --i;
      continue;
    }
    script.ops.push_back({OpKind::Ins, i, j - 1});
    --j;
  }
  std::reverse(script.ops.begin(), script.ops.end());
  return script;
}

AlignmentScript align(const TokenizedSentence& src, const TokenizedSentence& tgt, const AlignCosts& costs) {
  return align(src.tokens, tgt.tokens, costs);
}

std::vector<Edit> extract_edits(const AlignmentScript& script, const std::vector<std::string>& /*src*/,
                                const std::vector<std::string>& tgt) {
  std::vector<Edit> edits;
  std::size_t run_begin = 0;
  bool in_run = false;

  auto flush = [&](std::size_t run_end) {
    if (!in_run) return;
    Edit e;
    e.span.start = script.ops[run_begin].src;
    e.span.end = e.span.start;
    for (std::size_t k = run_begin; k < run_end; ++k) {
      const auto& op = script.ops[k];
      if (op.kind == OpKind::Sub || op.kind == OpKind::Del) ++e.span.end;
      if (op.kind == OpKind::Sub || op.kind == OpKind::Ins) e.replacement.push_back(tgt[op.tgt]);
    }
    e.etype = edit_tier(e);
    edits.push_back(std::move(e));
    in_run = false;
  };

  for (std::size_t k = 0; k < script.ops.size(); ++k) {
    const auto kind = script.ops[k].kind;
    if (kind == OpKind::Match) {
      flush(k);
      continue;
    }
    if (in_run && kind == OpKind::Sub && script.ops[k - 1].kind == OpKind::Sub) flush(k);
    if (!in_run) {
      in_run = true;
      run_begin = k;
    }
  }
  flush(script.ops.size());
  return edits;
}

std::vector<Edit> extract_edits(const AlignmentScript& script, const TokenizedSentence& src,
                                const TokenizedSentence& tgt) {
  return extract_edits(script, src.tokens, tgt.tokens);
}

std::string edit_tier(const Edit& edit) {
  if (edit.span.size() == 0) return "M";
  if (edit.replacement.empty()) return "U";
  return "R";
}

std::string classify_edit(const Edit& edit, const std::vector<std::string>& src, const Dictionary& dictionary) {
  if (edit.span.end > src.size() || edit.span.start > edit.span.end)
    throw Error(ErrorCode::SpanOutOfRange, "edit span outside source");
  const std::string tier = edit_tier(edit);
  const auto first = src.begin() + static_cast<std::ptrdiff_t>(edit.span.start);
  const auto last = src.begin() + static_cast<std::ptrdiff_t>(edit.span.end);

  bool all_punct = true;
  for (auto it = first; it != last; ++it) all_punct = all_punct && text::is_punct_token(*it);
  for (const auto& r : edit.replacement) all_punct = all_punct && text::is_punct_token(r);
  if (all_punct) return tier + ":PUNCT";

  if (tier == "R") {
    std::string before, after;
    for (auto it = first; it != last; ++it) before += *it;
    for (const auto& r : edit.replacement) after += r;
    if (text::iequals(before, after)) return tier + ":ORTH";

    if (edit.span.size() == 1 && edit.replacement.size() == 1) {
      const std::string from = text::ascii_lower(*first);
      const std::string to = text::ascii_lower(edit.replacement.front());
      if (!dictionary.contains(from) && dictionary.contains(to) && text::edit_distance(from, to, 2) <= 2)
        return tier + ":SPELL";
    }
  }
  return tier + ":OTHER";
}

std::vector<Edit> diff(const TokenizedSentence& src, const TokenizedSentence& tgt, const Dictionary& dictionary,
                       const AlignCosts& costs) {
  auto edits = extract_edits(align(src, tgt, costs), src, tgt);
  for (auto& e : edits) e.etype = classify_edit(e, src.tokens, dictionary);
  return edits;
}

std::vector<std::string> apply_edits(const std::vector<std::string>& src, const std::vector<Edit>& edits) {
  validate_edits(edits, src.size());
  std::vector<std::string> out = src;
  for (auto it = edits.rbegin(); it != edits.rend(); ++it) {
    const auto b = out.begin() + static_cast<std::ptrdiff_t>(it->span.start);
    out.erase(b, b + static_cast<std::ptrdiff_t>(it->span.size()));
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(it->span.start), it->replacement.begin(),
               it->replacement.end());
  }
  return out;
}

TokenizedSentence apply_edits(const TokenizedSentence& src, const std::vector<Edit>& edits) {
  if (edits.empty()) {
    validate_edits(edits, src.size());
    return src;
  }
  return TokenizedSentence::from_tokens(apply_edits(src.tokens, edits));
}

}  // namespace awegec::align
