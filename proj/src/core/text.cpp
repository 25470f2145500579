#include "awegec/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <vector>

namespace awegec::text {
namespace {

constexpr std::array<std::string_view, 12> kTypographicPunct = {
    "“", "”", "‘", "’", "«", "»",
    "—", "–", "…", "¿", "¡", "·"};

std::size_t utf8_length(unsigned char lead) noexcept {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

std::vector<char32_t> decode(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    const auto lead = static_cast<unsigned char>(s[i]);
    std::size_t n = std::min(utf8_length(lead), s.size() - i);
    char32_t cp = n == 1 ? lead : (lead & (0x7F >> n));
    for (std::size_t k = 1; k < n; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
    out.push_back(cp);
    i += n;
  }
  return out;
}

}  // namespace

std::size_t codepoint_count(std::string_view s) noexcept {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool iequals(std::string_view a, std::string_view b) noexcept {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

std::size_t punct_length_at(std::string_view s, std::size_t pos) noexcept {
  if (pos >= s.size()) return 0;
  const auto c = static_cast<unsigned char>(s[pos]);
  if (c < 0x80) return std::ispunct(c) ? 1 : 0;
  for (auto p : kTypographicPunct)
    if (s.substr(pos, p.size()) == p) return p.size();
  return 0;
}

std::size_t punct_length_before(std::string_view s, std::size_t end) noexcept {
  if (end == 0 || end > s.size()) return 0;
  const auto c = static_cast<unsigned char>(s[end - 1]);
  if (c < 0x80) return std::ispunct(c) ? 1 : 0;
  for (auto p : kTypographicPunct)
    if (end >= p.size() && s.substr(end - p.size(), p.size()) == p) return p.size();
  return 0;
}

bool is_punct_token(std::string_view s) noexcept {
  if (s.empty()) return false;
  std::size_t i = 0;
  while (i < s.size()) {
    const std::size_t n = punct_length_at(s, i);
    if (n == 0) return false;
    i += n;
  }
  return true;
}

bool is_number_token(std::string_view s) noexcept {
  bool digit = false;
  for (unsigned char c : s) {
    if (std::isdigit(c)) digit = true;
    else if (c != '.' && c != ',' && c != '-' && c != '+' && c != '%') return false;
  }
  return digit;
}

bool is_placeholder(std::string_view s) noexcept {
  if (s.size() < 2 || s[0] != '@') return false;
  std::size_t i = 1;
  while (i < s.size() && s[i] >= 'A' && s[i] <= 'Z') ++i;
  if (i == 1) return false;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  return i == s.size();
}

std::size_t edit_distance(std::string_view a, std::string_view b, std::size_t limit) {
  const auto x = decode(a);
  const auto y = decode(b);
  const std::size_t diff = x.size() > y.size() ? x.size() - y.size() : y.size() - x.size();
  if (diff > limit) return limit + 1;
  std::vector<std::size_t> prev2(y.size() + 1), prev(y.size() + 1), cur(y.size() + 1);
  for (std::size_t j = 0; j <= y.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    cur[0] = i;
    std::size_t row_min = cur[0];
    for (std::size_t j = 1; j <= y.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (x[i - 1] == y[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
      if (i > 1 && j > 1 && x[i - 1] == y[j - 2] && x[i - 2] == y[j - 1]) cur[j] = std::min(cur[j], prev2[j - 2] + 1);
      row_min = std::min(row_min, cur[j]);
    }
    if (row_min > limit) return limit + 1;
    std::swap(prev2, prev);
    std::swap(prev, cur);
  }
  return std::min(prev[y.size()], limit + 1);
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace awegec::text
