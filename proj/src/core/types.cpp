#include "awegec/types.hpp"

#include <sstream>

#include "awegec/error.hpp"

namespace awegec {

TokenizedSentence TokenizedSentence::from_tokens(std::vector<std::string> tokens) {
  TokenizedSentence s;
  s.offsets.reserve(tokens.size());
  for (const auto& tok : tokens) {
    if (!s.text.empty()) s.text.push_back(' ');
    const std::size_t start = s.text.size();
    s.text += tok;
    s.offsets.push_back({start, s.text.size()});
  }
  s.tokens = std::move(tokens);
  return s;
}

std::string TokenizedSentence::joined() const { return join(tokens); }

std::string join(const std::vector<std::string>& tokens, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < text.size() && !(text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

bool edits_overlap(const Edit& a, const Edit& b) noexcept {
  if (b.span.start < a.span.end) return true;
  return a.span.size() == 0 && b.span.size() == 0 && a.span.start == b.span.start;
}

void validate_edits(const std::vector<Edit>& edits, std::size_t source_length) {
  for (std::size_t i = 0; i < edits.size(); ++i) {
    const auto& e = edits[i];
    if (e.span.start > e.span.end || e.span.end > source_length) {
      std::ostringstream msg;
      msg << "edit " << i << " span (" << e.span.start << "," << e.span.end
          << ") outside source of length " << source_length;
      throw Error(ErrorCode::SpanOutOfRange, msg.str());
    }
    if (i > 0) {
      const auto& prev = edits[i - 1];
      if (e.span < prev.span || edits_overlap(prev, e)) {
        std::ostringstream msg;
        msg << "edit " << i << " overlaps or precedes edit " << i - 1;
        throw Error(ErrorCode::OverlappingEdits, msg.str());
      }
    }
  }
}

}  // namespace awegec
