#include <doctest.h>

#include <random>

#include "awegec/align.hpp"
#include "awegec/dictionary.hpp"
#include "awegec/error.hpp"
#include "support.hpp"

using awegec::Dictionary;
using awegec::Edit;
using awegec::Error;
using awegec::ErrorCode;
using awegec::Span;
using awegec::TokenizedSentence;
using namespace awegec::align;
using support::Tokens;

namespace {

double script_cost(const AlignmentScript& s, const Tokens& src, const Tokens& tgt) {
  AlignCosts costs;
  double total = 0.0;
  for (const auto& op : s.ops) {
    switch (op.kind) {
      case OpKind::Match:
      case OpKind::Sub:
        total += costs.op_cost(op.kind, src[op.src], tgt[op.tgt]);
        break;
      default:
        total += 1.0;
    }
  }
  return total;
}

// ops walk a monotone path from (0,0) to (|src|,|tgt|)
bool monotone_path(const AlignmentScript& s, const Tokens& src, const Tokens& tgt) {
  std::size_t i = 0, j = 0;
  for (const auto& op : s.ops) {
    switch (op.kind) {
      case OpKind::Match:
        if (op.src != i || op.tgt != j || src[i] != tgt[j]) return false;
        ++i, ++j;
        break;
      case OpKind::Sub:
        if (op.src != i || op.tgt != j || src[i] == tgt[j]) return false;
        ++i, ++j;
        break;
      case OpKind::Del:
        if (op.src != i || op.tgt != j) return false;
        ++i;
        break;
      case OpKind::Ins:
        if (op.src != i || op.tgt != j) return false;
        ++j;
        break;
    }
  }
  return i == src.size() && j == tgt.size();
}

void check_well_formed(const std::vector<Edit>& edits, const Tokens& src) {
  for (std::size_t k = 0; k < edits.size(); ++k) {
    const auto& e = edits[k];
    CHECK(e.span.end <= src.size());
    Tokens slice(src.begin() + static_cast<std::ptrdiff_t>(e.span.start),
                 src.begin() + static_cast<std::ptrdiff_t>(e.span.end));
    CHECK(slice != e.replacement);
    if (k > 0) CHECK(edits[k - 1].span.end <= e.span.start);
    if (k > 0 && edits[k - 1].span.end == e.span.start) CHECK_FALSE((edits[k - 1].span.size() == 0 && e.span.size() == 0));
  }
}

Dictionary demo_dictionary() { return Dictionary::from_tsv(support::read_file(support::demo_data("demo.dict.tsv"))); }

}  // namespace

TEST_CASE("align examples") {
  auto s = align(Tokens{"I", "go"}, Tokens{"I", "go"});
  CHECK(s.total_cost == 0.0);
  CHECK(s.ops == std::vector<AlignOp>{{OpKind::Match, 0, 0}, {OpKind::Match, 1, 1}});

  s = align(Tokens{"The", "cat"}, Tokens{"the", "cat"});
  CHECK(s.total_cost == doctest::Approx(0.25));
  CHECK(s.ops == std::vector<AlignOp>{{OpKind::Sub, 0, 0}, {OpKind::Match, 1, 1}});

  s = align(support::kReferenceSource, support::kReferenceTarget);
  CHECK(s.total_cost == 3.0);
  std::vector<std::size_t> subs;
  for (const auto& op : s.ops)
    if (op.kind == OpKind::Sub) subs.push_back(op.src);
  CHECK(subs == std::vector<std::size_t>{1, 2, 5});
  CHECK(support::exhaustive_align_cost(support::kReferenceSource, support::kReferenceTarget) == 3.0);

  s = align(Tokens{}, Tokens{"a", "b"});
  CHECK(s.ops == std::vector<AlignOp>{{OpKind::Ins, 0, 0}, {OpKind::Ins, 0, 1}});
  s = align(Tokens{"a"}, Tokens{});
  CHECK(s.ops == std::vector<AlignOp>{{OpKind::Del, 0, 0}});
}

TEST_CASE("tie-break prefers substitution over deletion and insertion") {
  // x y -> y: the final cell prefers the match, so x is deleted. For
  // a b -> c the final cell prefers substitution over deletion.
  auto s = align(Tokens{"x", "y"}, Tokens{"y"});
  CHECK(s.ops == std::vector<AlignOp>{{OpKind::Del, 0, 0}, {OpKind::Match, 1, 0}});
  s = align(Tokens{"a", "b"}, Tokens{"c"});
  CHECK(s.total_cost == 2.0);
  CHECK(s.ops == std::vector<AlignOp>{{OpKind::Del, 0, 0}, {OpKind::Sub, 1, 0}});
}

TEST_CASE("alignment is optimal against exhaustive search") {
  std::mt19937_64 rng(101);
  const Tokens vocab = {"a", "b", "c", "A", "d"};
  for (int round = 0; round < 300; ++round) {
    const auto src = support::random_tokens(rng, 7, vocab);
    const auto tgt = support::random_tokens(rng, 7, vocab);
    const auto s = align(src, tgt);
    CHECK(monotone_path(s, src, tgt));
    CHECK(s.total_cost == doctest::Approx(script_cost(s, src, tgt)).epsilon(1e-12));
    CHECK(s.total_cost == doctest::Approx(support::exhaustive_align_cost(src, tgt)).epsilon(1e-12));
    CHECK(align(src, tgt).ops == s.ops);
  }
}

TEST_CASE("extract_edits examples") {
  const auto reference = extract_edits(align(support::kReferenceSource, support::kReferenceTarget), support::kReferenceSource,
                                   support::kReferenceTarget);
  REQUIRE(reference.size() == 3);
  CHECK(reference[0].span == Span{1, 2});
  CHECK(reference[0].replacement == Tokens{"guess"});
  CHECK(reference[1].span == Span{2, 3});
  CHECK(reference[1].replacement == Tokens{"most"});
  CHECK(reference[2].span == Span{5, 6});
  CHECK(reference[2].replacement == Tokens{"speak"});

  CHECK(extract_edits(align(Tokens{"I", "go"}, Tokens{"I", "go"}), Tokens{"I", "go"}, Tokens{"I", "go"}).empty());

  const Tokens src{"a", "b", "c"}, tgt{"a", "x", "y", "c"};
  const auto e = extract_edits(align(src, tgt), src, tgt);
  REQUIRE(e.size() == 1);
  CHECK(e[0].span == Span{1, 2});
  CHECK(e[0].replacement == Tokens{"x", "y"});
  CHECK(e[0].etype == "R");
}

TEST_CASE("edit round trip and well-formedness on random pairs") {
  std::mt19937_64 rng(7);
  const Tokens vocab = {"a", "b", "c", "A", "d", ",", "the"};
  for (int round = 0; round < 2000; ++round) {
    const auto src = support::random_tokens(rng, 10, vocab);
    const auto tgt = support::random_tokens(rng, 10, vocab);
    const auto edits = extract_edits(align(src, tgt), src, tgt);
    check_well_formed(edits, src);
    CHECK(apply_edits(src, edits) == tgt);
  }
}

TEST_CASE("classify_edit") {
  const auto dict = demo_dictionary();
  const auto& src = support::kReferenceSource;
  CHECK(classify_edit({{1, 2}, {"guess"}, ""}, src, dict) == "R:SPELL");
  CHECK(classify_edit({{2, 3}, {"most"}, ""}, src, dict) == "R:OTHER");
  CHECK(classify_edit({{5, 6}, {"speak"}, ""}, src, dict) == "R:OTHER");
  CHECK(classify_edit({{3, 3}, {","}, ""}, src, dict) == "M:PUNCT");
  CHECK(classify_edit({{7, 8}, {}, ""}, src, dict) == "U:PUNCT");
  CHECK(classify_edit({{7, 8}, {"!"}, ""}, src, dict) == "R:PUNCT");
  CHECK(classify_edit({{6, 7}, {"english"}, ""}, src, dict) == "R:ORTH");
  CHECK(classify_edit({{3, 4}, {}, ""}, src, dict) == "U:OTHER");
  CHECK(classify_edit({{3, 3}, {"the"}, ""}, src, dict) == "M:OTHER");
  const Tokens split{"every", "one"};
  CHECK(classify_edit({{0, 2}, {"Everyone"}, ""}, split, dict) == "R:ORTH");
  CHECK(edit_tier({{0, 0}, {"x"}, ""}) == "M");
}

TEST_CASE("diff classifies extracted edits") {
  const auto dict = demo_dictionary();
  const auto edits = diff(TokenizedSentence::from_tokens(support::kReferenceSource),
                          TokenizedSentence::from_tokens(support::kReferenceTarget), dict);
  REQUIRE(edits.size() == 3);
  CHECK(edits[0].etype == "R:SPELL");
  CHECK(edits[1].etype == "R:OTHER");
  CHECK(edits[2].etype == "R:OTHER");
}

TEST_CASE("apply_edits") {
  const auto src = TokenizedSentence::from_tokens(support::kReferenceSource);
  const std::vector<Edit> edits = {{{1, 2}, {"guess"}, ""}, {{2, 3}, {"most"}, ""}, {{5, 6}, {"speak"}, ""}};
  CHECK(apply_edits(src, edits).tokens == support::kReferenceTarget);
  CHECK(apply_edits(src, {}).tokens == src.tokens);
  CHECK(apply_edits(Tokens{"a"}, {{{0, 1}, {}, ""}}).empty());

  auto code = [&](const std::vector<Edit>& e) {
    try {
      apply_edits(src, e);
    } catch (const Error& err) {
      return err.code();
    }
    return ErrorCode::Io;
  };
  CHECK(code({{{1, 3}, {"x"}, ""}, {{2, 4}, {"y"}, ""}}) == ErrorCode::OverlappingEdits);
  CHECK(code({{{2, 2}, {"x"}, ""}, {{2, 2}, {"y"}, ""}}) == ErrorCode::OverlappingEdits);
  CHECK(code({{{5, 6}, {"x"}, ""}, {{1, 2}, {"y"}, ""}}) == ErrorCode::OverlappingEdits);
  CHECK(code({{{7, 9}, {"x"}, ""}}) == ErrorCode::SpanOutOfRange);
}
