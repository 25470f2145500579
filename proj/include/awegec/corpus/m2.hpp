#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "awegec/types.hpp"

namespace awegec::corpus {

// One M2 block: source sentence and edits per annotator id. An annotator
// mapped to an empty list declared the sentence correct (noop line).
struct AnnotatedSentence {
  TokenizedSentence source;
  std::map<int, std::vector<Edit>> annotations;

  friend bool operator==(const AnnotatedSentence&, const AnnotatedSentence&) = default;
};

// Errors: MalformedLine (1-based line), OverlappingEdits (annotator, line).
std::vector<AnnotatedSentence> read_m2(std::string_view contents);

// Deletions are written with an empty correction field; noop annotators as
// "A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||<id>".
std::string write_m2(const std::vector<AnnotatedSentence>& entries);
std::string write_m2_block(const AnnotatedSentence& entry);

}  // namespace awegec::corpus
