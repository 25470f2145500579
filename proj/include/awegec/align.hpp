#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "awegec/dictionary.hpp"
#include "awegec/types.hpp"

namespace awegec::align {

enum class OpKind { Match, Sub, Del, Ins };

// For Del the target index is the current target position; for Ins the
// source index is the current source position.
struct AlignOp {
  OpKind kind;
  std::size_t src;
  std::size_t tgt;

  friend bool operator==(const AlignOp&, const AlignOp&) = default;
};

struct AlignmentScript {
  std::vector<AlignOp> ops;
  double total_cost = 0.0;
};

struct AlignCosts {
  double insertion = 1.0;
  double deletion = 1.0;
  double substitution = 1.0;
  // Substitution between tokens equal up to ASCII case.
  double case_substitution = 0.25;

  double op_cost(OpKind kind, const std::string& a, const std::string& b) const;
};

// Minimal-cost token alignment. At every cell the backtrace prefers match,
// then substitution, deletion, insertion among the optimal predecessors.
AlignmentScript align(const std::vector<std::string>& src, const std::vector<std::string>& tgt,
                      const AlignCosts& costs = {});
AlignmentScript align(const TokenizedSentence& src, const TokenizedSentence& tgt,
                      const AlignCosts& costs = {});

// Groups consecutive non-match operations into edits. A run is cut between
// two adjacent substitutions, so word-for-word replacements stay separate
// while insertions and deletions attach to their neighbouring substitution.
// The returned edits carry only the M/U/R tier as their type.
std::vector<Edit> extract_edits(const AlignmentScript& script, const std::vector<std::string>& src,
                                const std::vector<std::string>& tgt);
std::vector<Edit> extract_edits(const AlignmentScript& script, const TokenizedSentence& src,
                                const TokenizedSentence& tgt);

// "M", "U" or "R".
std::string edit_tier(const Edit& edit);

// Tier plus the first matching subtype of PUNCT, ORTH, SPELL, OTHER.
std::string classify_edit(const Edit& edit, const std::vector<std::string>& src, const Dictionary& dictionary);

// align + extract_edits + classify_edit.
std::vector<Edit> diff(const TokenizedSentence& src, const TokenizedSentence& tgt, const Dictionary& dictionary,
                       const AlignCosts& costs = {});

// Splices replacements into src. Errors: OverlappingEdits, SpanOutOfRange.
TokenizedSentence apply_edits(const TokenizedSentence& src, const std::vector<Edit>& edits);
std::vector<std::string> apply_edits(const std::vector<std::string>& src, const std::vector<Edit>& edits);

}  // namespace awegec::align
