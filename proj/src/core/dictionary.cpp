#include "awegec/dictionary.hpp"

#include <algorithm>
#include <charconv>

#include "awegec/error.hpp"
#include "awegec/text.hpp"

namespace awegec {

void Dictionary::add(std::string_view word, std::uint64_t frequency) {
  const std::string key = text::ascii_lower(word);
  auto [it, inserted] = freq_.emplace(key, 0);
  it->second += frequency;
  if (inserted) {
    const std::size_t n = text::codepoint_count(key);
    if (by_length_.size() <= n) by_length_.resize(n + 1);
    by_length_[n].push_back(key);
  }
}

bool Dictionary::contains(std::string_view word) const { return freq_.count(text::ascii_lower(word)) > 0; }

std::uint64_t Dictionary::frequency(std::string_view word) const {
  auto it = freq_.find(text::ascii_lower(word));
  return it == freq_.end() ? 0 : it->second;
}

Dictionary Dictionary::from_tsv(std::string_view contents) {
  Dictionary d;
  std::size_t pos = 0, line_no = 0;
  while (pos < contents.size()) {
    std::size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    const std::string line = text::trim(contents.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::size_t tab = line.find('\t');
    std::uint64_t f = 1;
    if (tab != std::string::npos) {
      const std::string num = text::trim(std::string_view(line).substr(tab + 1));
      auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), f);
      if (ec != std::errc() || p != num.data() + num.size())
        throw Error(ErrorCode::MalformedLine, "dictionary line " + std::to_string(line_no) + ": bad frequency",
                    static_cast<std::int64_t>(line_no));
    }
    d.add(text::trim(std::string_view(line).substr(0, tab)), f);
  }
  return d;
}

std::string Dictionary::to_tsv() const {
  std::vector<std::pair<std::string, std::uint64_t>> rows(freq_.begin(), freq_.end());
  std::sort(rows.begin(), rows.end());
  std::string out;
  for (const auto& [w, f] : rows) out += w + "\t" + std::to_string(f) + "\n";
  return out;
}

}  // namespace awegec
