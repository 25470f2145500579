#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "awegec/corpus/m2.hpp"
#include "awegec/types.hpp"

namespace awegec::geceval {

struct Counts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  Counts& operator+=(const Counts& o) noexcept {
    tp += o.tp, fp += o.fp, fn += o.fn;
    return *this;
  }
  friend bool operator==(const Counts&, const Counts&) = default;
};

struct EvalReport {
  Counts counts;
  double precision = 1.0;
  double recall = 1.0;
  double f_beta = 0.0;
  double beta = 0.5;
  // Set when a precision or recall denominator was zero and the 1.0
  // convention was used.
  bool degenerate = false;
};

// TP iff span and replacement match exactly; the error type is ignored.
Counts match_edits(const std::vector<Edit>& hyp, const std::vector<Edit>& gold);

// P = tp/(tp+fp), R = tp/(tp+fn), each 1.0 on an empty denominator;
// F = (1+b^2)PR/(b^2 P + R), 0 when P and R are both 0.
EvalReport report_from_counts(const Counts& counts, double beta = 0.5);

// Index of the annotator maximizing (tp, -fp, -fn); lowest id on ties.
std::pair<int, Counts> best_annotator(const std::vector<Edit>& hyp, const corpus::AnnotatedSentence& gold);

using ScoredPair = std::pair<std::vector<Edit>, corpus::AnnotatedSentence>;

// Corpus-level scores from summed per-sentence counts. Throws NoAnnotators
// (position = sentence index) when a gold entry has no annotator.
EvalReport score_corpus(const std::vector<ScoredPair>& pairs, double beta = 0.5);

// Pairs hypothesis edits (annotator `hyp_annotator`, or the lowest id present)
// with gold entries. Throws LengthMismatch when sentence counts differ and
// MalformedLine (1-based sentence index) when the source tokens disagree.
std::vector<ScoredPair> pair_m2(const std::vector<corpus::AnnotatedSentence>& hyp,
                                const std::vector<corpus::AnnotatedSentence>& gold);

// "key: value" lines with four decimals.
std::string render_text(const EvalReport& report);
std::string render_json(const EvalReport& report);

}  // namespace awegec::geceval
