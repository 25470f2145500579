#include <doctest.h>

#include <random>

#include "awegec/corpus/essays.hpp"
#include "awegec/corpus/m2.hpp"
#include "awegec/corpus/noise.hpp"
#include "awegec/corpus/tokenize.hpp"
#include "awegec/corpus/tree.hpp"
#include "awegec/error.hpp"
#include "support.hpp"

using namespace awegec;
using namespace awegec::corpus;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an awegec::Error");
  return ErrorCode::Io;
}

std::int64_t position_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.position();
  }
  FAIL("expected an awegec::Error");
  return -2;
}

void check_offsets(const TokenizedSentence& s) {
  REQUIRE(s.tokens.size() == s.offsets.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK_FALSE(s.tokens[i].empty());
    CHECK(s.text.substr(s.offsets[i].start, s.offsets[i].size()) == s.tokens[i]);
    if (i > 0) CHECK(s.offsets[i].start >= s.offsets[i - 1].end);
  }
}

}  // namespace

TEST_CASE("tokenize splits punctuation and contractions") {
  CHECK(tokenize("cannot speaking English.").tokens == std::vector<std::string>{"cannot", "speaking", "English", "."});
  CHECK(tokenize("").tokens.empty());
  CHECK(tokenize("   ").tokens.empty());
  CHECK(tokenize("don't stop").tokens == std::vector<std::string>{"do", "n't", "stop"});
  CHECK(tokenize("can't").tokens == std::vector<std::string>{"ca", "n't"});
  CHECK(tokenize("We're here, (really)!").tokens ==
        std::vector<std::string>{"We", "'re", "here", ",", "(", "really", ")", "!"});
  CHECK(tokenize("I met @PERSON1.").tokens == std::vector<std::string>{"I", "met", "@PERSON1", "."});
  CHECK(tokenize("“Quoted” text…").tokens == std::vector<std::string>{"“", "Quoted", "”", "text", "…"});
  CHECK(tokenize("John’s").tokens == std::vector<std::string>{"John", "’s"});
  check_offsets(tokenize("  He said: \"it's fine\" ...  "));
}

TEST_CASE("tokenize is deterministic and offsets map back into the text") {
  std::mt19937_64 rng(3);
  const std::vector<std::string> pieces = {"a", "Bc", "don't", ",", ".", "\"", "(x)", "@CITY2", "’", "é", " ", "  ", "\t",
                                           "?!", "we'll", "-", "…"};
  for (int round = 0; round < 500; ++round) {
    std::string text;
    const int n = static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) text += pieces[rng() % pieces.size()];
    const auto a = tokenize(text);
    const auto b = tokenize(text);
    CHECK(a == b);
    CHECK(a.text == text);
    check_offsets(a);
  }
}

TEST_CASE("split_sentences") {
  CHECK(split_sentences("I ran. He sat.") == std::vector<std::string>{"I ran.", "He sat."});
  CHECK(split_sentences("Dr. Lee ran.") == std::vector<std::string>{"Dr. Lee ran."});
  CHECK(split_sentences("One sentence") == std::vector<std::string>{"One sentence"});
  CHECK(split_sentences("") .empty());
  CHECK(split_sentences("Wait! \"Why?\" She left.") == std::vector<std::string>{"Wait!", "\"Why?\"", "She left."});
  CHECK(split_sentences("no capital. here") == std::vector<std::string>{"no capital. here"});
  CHECK(split_sentences("First part\n\nsecond part") == std::vector<std::string>{"First part", "second part"});
}

TEST_CASE("sentence spans leave only whitespace between them") {
  const std::string text = "  I ran. He sat!  Dr. Who came?\n\nnew para. Done ";
  const auto spans = split_sentence_spans(text);
  std::size_t pos = 0;
  for (const auto& s : spans) {
    for (std::size_t i = pos; i < s.start; ++i) CHECK(std::isspace(static_cast<unsigned char>(text[i])));
    pos = s.end;
  }
  for (std::size_t i = pos; i < text.size(); ++i) CHECK(std::isspace(static_cast<unsigned char>(text[i])));
  CHECK(spans.size() == 5);
}

TEST_CASE("parse_tree") {
  const auto t = parse_tree("(S (NP (DT the)))");
  CHECK(t.label == "S");
  CHECK(t.leaves() == std::vector<std::string>{"the"});
  CHECK(parse_tree("(S (NP (DT the) (NN cat)) (VP (VBD sat)))").leaves() ==
        std::vector<std::string>{"the", "cat", "sat"});

  CHECK(code_of([] { parse_tree("(S (NP"); }) == ErrorCode::UnbalancedParens);
  CHECK(position_of([] { parse_tree("(S (NP"); }) == 7);
  CHECK(code_of([] { parse_tree("(S (NP (DT the))))"); }) == ErrorCode::UnbalancedParens);
  CHECK(code_of([] { parse_tree("(S ())"); }) == ErrorCode::EmptyNode);
  CHECK(position_of([] { parse_tree("(S ())"); }) == 4);
  CHECK(code_of([] { parse_tree("(NP)"); }) == ErrorCode::EmptyNode);
  CHECK(code_of([] { parse_tree("(NP the (DT a))"); }) == ErrorCode::UnexpectedToken);
}

TEST_CASE("tree round trip normalizes whitespace") {
  CHECK(serialize(parse_tree("  (S\n  (NP (DT the)   (NN cat))\t(VP (VBD sat)))  ")) ==
        "(S (NP (DT the) (NN cat)) (VP (VBD sat)))");
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const auto t = support::random_tree(rng);
    const auto s = serialize(t);
    CHECK(parse_tree(s) == t);
    CHECK(serialize(parse_tree(s)) == s);
  }
}

TEST_CASE("tree files report line numbers") {
  const auto trees = read_tree_file("(S (NN a))\n\n(S (NN b))\n");
  REQUIRE(trees.size() == 3);
  CHECK(trees[0].has_value());
  CHECK_FALSE(trees[1].has_value());
  CHECK(code_of([] { read_tree_file("(S (NN a))\n(S (NN\n"); }) == ErrorCode::MalformedLine);
  CHECK(position_of([] { read_tree_file("(S (NN a))\n(S (NN\n"); }) == 2);
}

TEST_CASE("detect_noise") {
  auto r = detect_noise(TokenizedSentence::from_tokens({"@PERSON1", "went", "home"}));
  CHECK(r.entity_placeholders == std::vector<std::pair<std::size_t, std::string>>{{0, "@PERSON1"}});
  CHECK(r.is_noisy);
  CHECK_FALSE(detect_noise(TokenizedSentence::from_tokens({"clean", "text"})).is_noisy);
  r = detect_noise(TokenizedSentence::from_tokens({"caf\xEF\xBF\xBD"}));
  CHECK(r.encoding_flags == std::vector<std::size_t>{0});
  CHECK(r.is_noisy);
  r = detect_noise(TokenizedSentence::from_tokens({"itâ€™s", "Â", "ok"}));
  CHECK(r.encoding_flags == std::vector<std::size_t>{0, 1});
  CHECK_FALSE(detect_noise(TokenizedSentence::from_tokens({"@", "@lower", "email@X"})).is_noisy);
}

TEST_CASE("substitute_entities") {
  const auto pool = NamePool::defaults();
  auto out = substitute_entities(TokenizedSentence::from_tokens({"@PERSON1", "met", "@PERSON1"}), pool, 0);
  CHECK(out.tokens[0] == out.tokens[2]);
  CHECK(out.tokens[0] != "@PERSON1");
  CHECK(out.tokens[1] == "met");

  const auto clean = TokenizedSentence::from_tokens({"no", "entities"});
  CHECK(substitute_entities(clean, pool, 9).tokens == clean.tokens);

  // The j-th distinct placeholder of a category takes pool[(seed + j) mod n].
  const auto& persons = pool.names.at("PERSON");
  out = substitute_entities(TokenizedSentence::from_tokens({"@PERSON1", "met", "@PERSON2"}), pool, 7);
  CHECK(out.tokens[0] == persons[7 % persons.size()]);
  CHECK(out.tokens[2] == persons[8 % persons.size()]);
  CHECK(out.tokens[0] != out.tokens[2]);

  CHECK(placeholder_category("@CITY3", pool) == "LOCATION");
  CHECK(placeholder_category("@WHATEVER", pool) == "other");
  out = substitute_entities(TokenizedSentence::from_tokens({"@WHATEVER1"}), pool, 0);
  CHECK(out.tokens[0] == pool.names.at("other")[0]);
}

TEST_CASE("entity assignments persist across the sentences of an essay") {
  const auto pool = NamePool::defaults();
  EntitySubstituter sub(pool, 2);
  const auto a = sub.apply(TokenizedSentence::from_tokens({"@PERSON1", "lives", "in", "@CITY1"}));
  const auto b = sub.apply(TokenizedSentence::from_tokens({"@CITY1", "likes", "@PERSON1", "and", "@PERSON2"}));
  CHECK(a.tokens[0] == b.tokens[2]);
  CHECK(a.tokens[3] == b.tokens[0]);
  CHECK(b.tokens[4] != b.tokens[2]);
  CHECK(sub.assignments().size() == 3);
}

TEST_CASE("read_m2") {
  auto e = read_m2("S I go\nA 1 2|||R:OTHER|||went|||REQUIRED|||-NONE-|||0\n\n");
  REQUIRE(e.size() == 1);
  CHECK(e[0].source.tokens == std::vector<std::string>{"I", "go"});
  REQUIRE(e[0].annotations.count(0));
  const auto& edit = e[0].annotations.at(0).at(0);
  CHECK(edit.span == Span{1, 2});
  CHECK(edit.replacement == std::vector<std::string>{"went"});
  CHECK(edit.etype == "R:OTHER");

  e = read_m2("S I go\n\n");
  REQUIRE(e.size() == 1);
  CHECK(e[0].annotations.empty());

  CHECK(code_of([] { read_m2("A 1 2|||R:OTHER|||went|||REQUIRED|||-NONE-|||0\n"); }) == ErrorCode::MalformedLine);
  CHECK(position_of([] { read_m2("A 1 2|||R:OTHER|||went|||REQUIRED|||-NONE-|||0\n"); }) == 1);
  CHECK(position_of([] { read_m2("S a b\nA 0 x|||R|||c|||REQUIRED|||-NONE-|||0\n"); }) == 2);
  CHECK(code_of([] {
          read_m2("S a b c\nA 0 2|||R|||x|||REQUIRED|||-NONE-|||0\nA 1 3|||R|||y|||REQUIRED|||-NONE-|||0\n\n");
        }) == ErrorCode::OverlappingEdits);
  CHECK(code_of([] { read_m2("S a\nA 0 3|||R|||x|||REQUIRED|||-NONE-|||0\n\n"); }) == ErrorCode::MalformedLine);

  e = read_m2("S a b\nA -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||1\nA 0 1|||U|||-NONE-|||REQUIRED|||-NONE-|||0\n\n");
  REQUIRE(e.size() == 1);
  CHECK(e[0].annotations.at(1).empty());
  CHECK(e[0].annotations.at(0).at(0).replacement.empty());
}

TEST_CASE("write_m2 formats") {
  AnnotatedSentence s{TokenizedSentence::from_tokens(support::kReferenceSource),
                      {{0,
                        {{{1, 2}, {"guess"}, "R:SPELL"},
                         {{2, 3}, {"most"}, "R:OTHER"},
                         {{5, 6}, {"speak"}, "R:OTHER"}}}}};
  CHECK(write_m2({s}) == support::read_file(support::test_data("reference_example.m2")));

  AnnotatedSentence noop{TokenizedSentence::from_tokens({"All", "good", "."}), {{0, {}}}};
  CHECK(write_m2({noop}) == "S All good .\nA -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||0\n\n");

  AnnotatedSentence del{TokenizedSentence::from_tokens({"a", "b"}), {{0, {{{0, 1}, {}, "U:OTHER"}}}}};
  CHECK(write_m2({del}) == "S a b\nA 0 1|||U:OTHER||||||REQUIRED|||-NONE-|||0\n\n");
}

TEST_CASE("M2 round trip on random structures") {
  std::mt19937_64 rng(17);
  const std::vector<std::string> vocab = {"a", "b", "c", ",", "the"};
  for (int round = 0; round < 200; ++round) {
    std::vector<AnnotatedSentence> entries;
    for (int k = 0; k < 3; ++k) {
      AnnotatedSentence s;
      auto toks = support::random_tokens(rng, 7, vocab);
      if (toks.empty()) toks.push_back("x");
      s.source = TokenizedSentence::from_tokens(toks);
      const int annotators = static_cast<int>(rng() % 3);
      for (int a = 0; a < annotators; ++a) {
        std::vector<Edit> edits;
        std::size_t pos = 0;
        while (pos <= toks.size()) {
          if (rng() % 3 == 0) {
            const std::size_t len = std::min<std::size_t>(rng() % 2, toks.size() - pos);
            Edit e{{pos, pos + len}, {}, "R:OTHER"};
            if (len == 0 || rng() % 2) e.replacement = {vocab[rng() % vocab.size()]};
            if (len == 0 && e.replacement.empty()) e.replacement = {"y"};
            edits.push_back(e);
            pos += len + 1;
          } else {
            ++pos;
          }
        }
        s.annotations[a] = edits;
      }
      entries.push_back(s);
    }
    const auto text = write_m2(entries);
    const auto back = read_m2(text);
    CHECK(back == entries);
    CHECK(write_m2(back) == text);
  }
}

TEST_CASE("read_essays_tsv") {
  const std::string tsv =
      "\xEF\xBB\xBF" "essay_id\tessay_set\tessay\tdomain1_score\tcontent\n"
      "1\t1\t\"Dear @CAPS1, hi.\"\t8\t3\n"
      "2\t2\tSecond essay.\t\t2\n";
  IngestConfig cfg;
  cfg.rubric_columns = {{"domain1_score", "overall"}, {"content", "content"}};
  const auto essays = read_essays_tsv(tsv, cfg);
  REQUIRE(essays.size() == 2);
  CHECK(essays[0].essay_id == "1");
  CHECK(essays[0].prompt_id == 1);
  CHECK(essays[0].text == "Dear @CAPS1, hi.");
  CHECK(essays[0].gold_scores == std::map<std::string, double>{{"overall", 8}, {"content", 3}});
  CHECK(essays[1].gold_scores == std::map<std::string, double>{{"content", 2}});

  CHECK(code_of([] { read_essays_tsv("essay_id\tessay\n1\tx\n"); }) == ErrorCode::MalformedLine);
  CHECK(code_of([] { read_essays_tsv("essay_id\tessay_set\tessay\n1\t9\tx\n"); }) == ErrorCode::UnknownPrompt);
  CHECK(position_of([] { read_essays_tsv("essay_id\tessay_set\tessay\n1\t1\tx\n2\tzz\ty\n"); }) == 3);
}

TEST_CASE("ingest config from JSON") {
  const auto cfg = IngestConfig::from_json(
      R"({"rubric_columns": {"domain1_score": "overall", "rater1_domain1": "content"},
          "prompts": [1, 2],
          "score_ranges": [{"prompt": 1, "rubric": "overall", "min": 2, "max": 12}]})");
  CHECK(cfg.rubric_columns.at("rater1_domain1") == "content");
  CHECK(cfg.prompts == std::set<int>{1, 2});
  CHECK(cfg.score_ranges.at({1, "overall"}) == std::pair<double, double>{2, 12});
}
