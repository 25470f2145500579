#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace awegec::corpus {

// Constituency tree node. Either a preterminal carrying `leaf` or an inner
// node with at least one child, never both.
struct ParseTree {
  std::string label;
  std::vector<ParseTree> children;
  std::optional<std::string> leaf;

  bool is_preterminal() const noexcept { return leaf.has_value(); }
  std::vector<std::string> leaves() const;

  friend bool operator==(const ParseTree&, const ParseTree&) = default;
};

// Parses "(S (NP (DT the) (NN cat)) (VP (VBD sat)))". Errors carry a 1-based
// character position; end of input is reported as size()+1.
ParseTree parse_tree(std::string_view bracketed);

// Single-space canonical form: "(LABEL child child)" / "(TAG token)".
std::string serialize(const ParseTree& tree);

// One bracketed tree per line; blank lines are missing trees. Parse errors
// are rethrown as MalformedLine with the 1-based line number.
std::vector<std::optional<ParseTree>> read_tree_file(std::string_view contents);

}  // namespace awegec::corpus
