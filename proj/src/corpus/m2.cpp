#include "awegec/corpus/m2.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <optional>

#include "awegec/error.hpp"

namespace awegec::corpus {
namespace {

constexpr std::string_view kSep = "|||";

[[noreturn]] void malformed(std::size_t line_no, const std::string& why) {
  throw Error(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": " + why,
              static_cast<std::int64_t>(line_no));
}

std::vector<std::string_view> split_fields(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t k = s.find(kSep, pos);
    if (k == std::string_view::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, k - pos));
    pos = k + kSep.size();
  }
}

std::optional<long> to_long(std::string_view s) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

struct PendingEntry {
  AnnotatedSentence entry;
  std::map<int, std::vector<std::size_t>> lines;  // line number per edit
};

AnnotatedSentence finish(PendingEntry pending) {
  for (auto& [annotator, edits] : pending.entry.annotations) {
    auto& lines = pending.lines[annotator];
    std::vector<std::size_t> order(edits.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return edits[a].span < edits[b].span; });
    std::vector<Edit> sorted;
    std::vector<std::size_t> sorted_lines;
    for (auto i : order) {
      sorted.push_back(std::move(edits[i]));
      sorted_lines.push_back(lines[i]);
    }
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (edits_overlap(sorted[i - 1], sorted[i])) {
        const std::size_t line = std::max(sorted_lines[i - 1], sorted_lines[i]);
        throw Error(ErrorCode::OverlappingEdits,
                    "annotator " + std::to_string(annotator) + " line " + std::to_string(line),
                    static_cast<std::int64_t>(line));
      }
    }
    edits = std::move(sorted);
  }
  return std::move(pending.entry);
}

void parse_a_line(std::string_view line, std::size_t line_no, PendingEntry& pending) {
  const auto fields = split_fields(line.substr(2));
  if (fields.size() != 6) malformed(line_no, "expected 6 '|||'-separated fields");
  const std::string_view span_field = fields[0];
  const std::size_t space = span_field.find(' ');
  if (space == std::string_view::npos) malformed(line_no, "missing edit span");
  const auto start = to_long(span_field.substr(0, space));
  const auto end = to_long(span_field.substr(space + 1));
  const auto annotator = to_long(fields[5]);
  if (!start || !end) malformed(line_no, "bad edit span");
  if (!annotator || *annotator < 0) malformed(line_no, "bad annotator id");
  const int id = static_cast<int>(*annotator);
  auto& edits = pending.entry.annotations[id];
  if (*start == -1 && *end == -1) return;
  const long n = static_cast<long>(pending.entry.source.size());
  if (*start < 0 || *end < *start || *end > n) malformed(line_no, "edit span outside sentence");
  Edit e;
  e.span = {static_cast<std::size_t>(*start), static_cast<std::size_t>(*end)};
  if (fields[2] != "-NONE-") e.replacement = split_ws(fields[2]);
  e.etype = std::string(fields[1]);
  edits.push_back(std::move(e));
  pending.lines[id].push_back(line_no);
}

}  // namespace

std::vector<AnnotatedSentence> read_m2(std::string_view contents) {
  std::vector<AnnotatedSentence> out;
  std::optional<PendingEntry> pending;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < contents.size()) {
    std::size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    std::string_view line = contents.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.empty()) {
      if (pending) out.push_back(finish(std::move(*pending)));
      pending.reset();
    } else if (line == "S" || line.starts_with("S ")) {
      if (pending) out.push_back(finish(std::move(*pending)));
      pending.emplace();
      pending->entry.source =
          TokenizedSentence::from_tokens(split_ws(line.size() > 2 ? line.substr(2) : std::string_view{}));
    } else if (line.starts_with("A ")) {
      if (!pending) malformed(line_no, "annotation without a preceding S line");
      parse_a_line(line, line_no, *pending);
    } else {
      malformed(line_no, "unrecognized line");
    }
  }
  if (pending) out.push_back(finish(std::move(*pending)));
  return out;
}

std::string write_m2_block(const AnnotatedSentence& entry) {
  std::string out = "S " + entry.source.joined() + "\n";
  for (const auto& [annotator, edits] : entry.annotations) {
    const std::string id = std::to_string(annotator);
    if (edits.empty()) {
      out += "A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||" + id + "\n";
      continue;
    }
    for (const auto& e : edits) {
      out += "A " + std::to_string(e.span.start) + " " + std::to_string(e.span.end);
      out += "|||" + e.etype + "|||" + join(e.replacement) + "|||REQUIRED|||-NONE-|||" + id + "\n";
    }
  }
  out += "\n";
  return out;
}

std::string write_m2(const std::vector<AnnotatedSentence>& entries) {
  std::string out;
  for (const auto& e : entries) out += write_m2_block(e);
  return out;
}

}  // namespace awegec::corpus
