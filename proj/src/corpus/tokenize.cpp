#include "awegec/corpus/tokenize.hpp"

#include <algorithm>
#include <cctype>

#include "awegec/text.hpp"

namespace awegec::corpus {
namespace {

bool is_space(char c) noexcept { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool ends_with_ci(std::string_view s, std::string_view suffix) noexcept {
  return s.size() >= suffix.size() && text::iequals(s.substr(s.size() - suffix.size()), suffix);
}

void push(TokenizedSentence& out, std::string_view text, std::size_t b, std::size_t e) {
  out.tokens.emplace_back(text.substr(b, e - b));
  out.offsets.push_back({b, e});
}

void tokenize_chunk(TokenizedSentence& out, std::string_view text, std::size_t b, std::size_t e) {
  while (b < e) {
    if (text[b] == '@' && b + 1 < e && std::isupper(static_cast<unsigned char>(text[b + 1]))) break;
    const std::size_t n = text::punct_length_at(text, b);
    if (n == 0) break;
    push(out, text, b, b + n);
    b += n;
  }
  std::vector<Span> trailing;
  while (e > b) {
    const std::size_t n = text::punct_length_before(text, e);
    if (n == 0) break;
    trailing.push_back({e - n, e});
    e -= n;
  }
  if (e > b) {
    const std::string_view word = text.substr(b, e - b);
    std::size_t split = e;
    for (const auto& suffix : contraction_suffixes()) {
      if (word.size() > suffix.size() && ends_with_ci(word, suffix)) {
        split = e - suffix.size();
        break;
      }
    }
    push(out, text, b, split);
    if (split < e) push(out, text, split, e);
  }
  for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) push(out, text, it->start, it->end);
}

}  // namespace

const std::vector<std::string>& contraction_suffixes() {
  static const std::vector<std::string> table = {
      "n't", "'s", "'re", "'ve", "'ll", "'d", "'m",
      "n’t", "’s", "’re", "’ve", "’ll", "’d", "’m"};
  return table;
}

TokenizedSentence tokenize(std::string_view text) {
  TokenizedSentence out;
  out.text = std::string(text);
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) tokenize_chunk(out, text, start, i);
  }
  return out;
}

namespace {

bool is_terminal(char c) noexcept { return c == '.' || c == '!' || c == '?'; }

std::size_t closer_length(std::string_view s, std::size_t pos) noexcept {
  if (pos >= s.size()) return 0;
  if (s[pos] == '"' || s[pos] == '\'' || s[pos] == ')' || s[pos] == ']') return 1;
  for (std::string_view q : {std::string_view("”"), std::string_view("’")})
    if (s.substr(pos, q.size()) == q) return q.size();
  return 0;
}

std::size_t opener_length(std::string_view s, std::size_t pos) noexcept {
  if (pos >= s.size()) return 0;
  if (s[pos] == '"' || s[pos] == '\'' || s[pos] == '(' || s[pos] == '[') return 1;
  for (std::string_view q : {std::string_view("“"), std::string_view("‘")})
    if (s.substr(pos, q.size()) == q) return q.size();
  return 0;
}

bool is_upper_at(std::string_view s, std::size_t pos) noexcept {
  return pos < s.size() && std::isupper(static_cast<unsigned char>(s[pos]));
}

}  // namespace

std::vector<Span> split_sentence_spans(std::string_view text, const SplitterConfig& config) {
  std::vector<Span> cuts;  // raw [start,end) pieces before trimming
  std::size_t begin = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '\n') {
      std::size_t k = i + 1;
      while (k < text.size() && text[k] != '\n' && is_space(text[k])) ++k;
      if (k < text.size() && text[k] == '\n') {
        cuts.push_back({begin, i});
        begin = k + 1;
        i = k + 1;
        continue;
      }
    }
    if (!is_terminal(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < text.size() && is_terminal(text[j])) ++j;
    while (std::size_t n = closer_length(text, j)) j += n;
    std::size_t k = j;
    while (k < text.size() && is_space(text[k])) ++k;
    if (k == j || k >= text.size()) {
      i = j;
      continue;
    }
    std::size_t first = k;
    if (std::size_t n = opener_length(text, first)) first += n;
    if (!is_upper_at(text, first)) {
      i = j;
      continue;
    }
    if (text[i] == '.' && j == i + 1) {
      std::size_t w = i;
      while (w > begin && !is_space(text[w - 1])) --w;
      const std::string_view word = text.substr(w, i + 1 - w);
      if (std::find(config.abbreviations.begin(), config.abbreviations.end(), word) !=
          config.abbreviations.end()) {
        i = j;
        continue;
      }
    }
    cuts.push_back({begin, j});
    begin = j;
    i = j;
  }
  cuts.push_back({begin, text.size()});

  std::vector<Span> out;
  for (auto s : cuts) {
    while (s.start < s.end && is_space(text[s.start])) ++s.start;
    while (s.end > s.start && is_space(text[s.end - 1])) --s.end;
    if (s.end > s.start) out.push_back(s);
  }
  return out;
}

std::vector<std::string> split_sentences(std::string_view text, const SplitterConfig& config) {
  std::vector<std::string> out;
  for (const auto& s : split_sentence_spans(text, config)) out.emplace_back(text.substr(s.start, s.size()));
  return out;
}

}  // namespace awegec::corpus
