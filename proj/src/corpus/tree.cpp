#include "awegec/corpus/tree.hpp"

#include <sstream>

#include "awegec/error.hpp"

namespace awegec::corpus {
namespace {

bool is_space(char c) noexcept { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

class TreeReader {
 public:
  explicit TreeReader(std::string_view s) : s_(s) {}

  ParseTree read() {
    skip_ws();
    if (pos_ >= s_.size()) throw Error(ErrorCode::EmptyNode, "empty input", 1);
    if (s_[pos_] != '(') fail(ErrorCode::UnexpectedToken, "expected '('", pos_);
    ParseTree tree = node();
    skip_ws();
    if (pos_ < s_.size()) {
      if (s_[pos_] == ')') fail(ErrorCode::UnbalancedParens, "unmatched ')'", pos_);
      fail(ErrorCode::UnexpectedToken, "trailing input after tree", pos_);
    }
    return tree;
  }

 private:
  [[noreturn]] void fail(ErrorCode code, const std::string& what, std::size_t at) const {
    std::ostringstream msg;
    msg << what << " at position " << at + 1;
    throw Error(code, msg.str(), static_cast<std::int64_t>(at + 1));
  }

  void skip_ws() {
    while (pos_ < s_.size() && is_space(s_[pos_])) ++pos_;
  }

  std::string atom() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && !is_space(s_[pos_]) && s_[pos_] != '(' && s_[pos_] != ')') ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  ParseTree node() {
    const std::size_t open = pos_++;
    ParseTree t;
    skip_ws();
    t.label = atom();
    for (;;) {
      skip_ws();
      if (pos_ >= s_.size()) fail(ErrorCode::UnbalancedParens, "unexpected end of input", s_.size());
      const char c = s_[pos_];
      if (c == ')') {
        if (t.children.empty() && !t.leaf) fail(ErrorCode::EmptyNode, "node without children or token", open);
        ++pos_;
        return t;
      }
      if (c == '(') {
        if (t.leaf) fail(ErrorCode::UnexpectedToken, "subtree after leaf token", pos_);
        t.children.push_back(node());
        continue;
      }
      const std::size_t at = pos_;
      std::string token = atom();
      if (t.leaf || !t.children.empty()) fail(ErrorCode::UnexpectedToken, "token '" + token + "' in inner node", at);
      t.leaf = std::move(token);
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

void collect_leaves(const ParseTree& t, std::vector<std::string>& out) {
  if (t.leaf) {
    out.push_back(*t.leaf);
    return;
  }
  for (const auto& c : t.children) collect_leaves(c, out);
}

void write(const ParseTree& t, std::string& out) {
  out += '(';
  out += t.label;
  if (t.leaf) {
    out += ' ';
    out += *t.leaf;
  }
  for (const auto& c : t.children) {
    out += ' ';
    write(c, out);
  }
  out += ')';
}

}  // namespace

std::vector<std::string> ParseTree::leaves() const {
  std::vector<std::string> out;
  collect_leaves(*this, out);
  return out;
}

ParseTree parse_tree(std::string_view bracketed) { return TreeReader(bracketed).read(); }

std::string serialize(const ParseTree& tree) {
  std::string out;
  write(tree, out);
  return out;
}

std::vector<std::optional<ParseTree>> read_tree_file(std::string_view contents) {
  std::vector<std::optional<ParseTree>> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    std::size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    std::string_view line = contents.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    bool blank = true;
    for (char c : line) blank = blank && is_space(c);
    if (blank) {
      out.emplace_back(std::nullopt);
      continue;
    }
    try {
      out.emplace_back(parse_tree(line));
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedLine, "line " + std::to_string(line_no) + ": " + e.what(),
                  static_cast<std::int64_t>(line_no));
    }
  }
  return out;
}

}  // namespace awegec::corpus
