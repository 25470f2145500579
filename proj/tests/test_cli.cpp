#include <doctest.h>

#include "support.hpp"

#include <httplib.h>

#include <chrono>
#include <csignal>
#include <nlohmann/json.hpp>
#include <random>
#include <thread>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int exit_code = -1;
  std::string out, err;
};

std::string quote(const std::string& s) { return "'" + s + "'"; }

Run run(const std::string& args, const fs::path& dir) {
  const auto out = dir / "stdout.txt", err = dir / "stderr.txt";
  const std::string cmd = quote(AWEGEC_CLI) + " " + args + " >" + quote(out) + " 2>" + quote(err);
  const int status = std::system(cmd.c_str());
  Run r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = support::read_file(out);
  r.err = support::read_file(err);
  return r;
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

std::string demo(const std::string& name) { return quote(support::demo_data(name)); }

// Eight prompts of short essays whose gold score grows with essay length and
// shrinks with the number of misspellings.
std::string synthetic_tsv(int per_prompt) {
  const std::vector<std::string> good = {"people", "speak", "English", "most", "guess", "think", "school", "friends"};
  const std::vector<std::string> bad = {"gess", "peple", "speek", "skool"};
  std::mt19937_64 rng(21);
  std::ostringstream os;
  os << "essay_id\tessay_set\tessay\tdomain1_score\n";
  int id = 1;
  for (int p = 1; p <= 8; ++p)
    for (int i = 0; i < per_prompt; ++i) {
      const int sentences = 1 + static_cast<int>(rng() % 4);
      int errors = 0;
      std::string text;
      for (int s = 0; s < sentences; ++s) {
        text += "I";
        for (int w = 0; w < 5; ++w) {
          if (rng() % 6 == 0) {
            text += " " + bad[rng() % bad.size()];
            ++errors;
          } else {
            text += " " + good[rng() % good.size()];
          }
        }
        text += ". ";
      }
      const int score = std::clamp(sentences + 2 - errors, 0, 6);
      os << id++ << "\t" << p << "\t" << text << "\t" << score << "\n";
    }
  return os.str();
}

std::vector<json> jsonl(const std::string& s) {
  std::vector<json> out;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);)
    if (!line.empty()) out.push_back(json::parse(line));
  return out;
}

}  // namespace

TEST_CASE("evaluate-gec and extract-edits on the reference example") {
  const auto dir = support::temp_dir("cli-gec");
  const auto gold = quote(support::test_data("reference_example.m2"));
  auto r = run("evaluate-gec --hyp " + gold + " --gold " + gold, dir);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("F0.5: 1.0000") != std::string::npos);

  write(dir / "src.txt", support::kReferenceSourceText + "\n");
  write(dir / "tgt.txt", support::kReferenceTargetText + "\n");
  r = run("extract-edits --src " + quote(dir / "src.txt") + " --tgt " + quote(dir / "tgt.txt") + " --dict " +
              demo("demo.dict.tsv"),
          dir);
  CHECK(r.exit_code == 0);
  CHECK(r.out == support::read_file(support::test_data("reference_example.m2")));
  const auto first = r.out;
  CHECK(run("extract-edits --src " + quote(dir / "src.txt") + " --tgt " + quote(dir / "tgt.txt") + " --dict " +
                demo("demo.dict.tsv"),
            dir)
            .out == first);

  r = run("evaluate-gec --hyp " + gold + " --gold " + gold + " --json " + quote(dir / "r.json"), dir);
  CHECK(json::parse(support::read_file(dir / "r.json")).at("f_beta") == 1.0);
  fs::remove_all(dir);
}

TEST_CASE("exit codes") {
  const auto dir = support::temp_dir("cli-exit");
  CHECK(run("", dir).exit_code == 2);
  CHECK(run("evaluate-gec --hyp only-one.m2", dir).exit_code == 2);
  CHECK(run("no-such-command", dir).exit_code == 2);

  write(dir / "bad.m2", "S a b\nA 0 1|||R:OTHER|||c\n");
  const auto bad = (dir / "bad.m2").string();
  auto r = run("evaluate-gec --hyp " + quote(bad) + " --gold " + quote(bad), dir);
  CHECK(r.exit_code == 1);
  CHECK(r.err.find(bad + ":2:") != std::string::npos);

  r = run("evaluate-gec --hyp " + quote(dir / "missing.m2") + " --gold " + quote(bad), dir);
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("missing.m2") != std::string::npos);

  write(dir / "g.txt", "1\n2\n");
  write(dir / "p.txt", "1\n");
  r = run("eval-qwk --gold " + quote(dir / "g.txt") + " --pred " + quote(dir / "p.txt") + " --min 0 --max 3", dir);
  CHECK(r.exit_code == 1);
  fs::remove_all(dir);
}

TEST_CASE("eval-qwk") {
  const auto dir = support::temp_dir("cli-qwk");
  write(dir / "g.txt", "0\n0\n1\n1\n");
  write(dir / "p.txt", "0\n1\n1\n1\n");
  const auto r = run("eval-qwk --gold " + quote(dir / "g.txt") + " --pred " + quote(dir / "p.txt") +
                         " --min 0 --max 1 --json " + quote(dir / "q.json"),
                     dir);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("0.5") != std::string::npos);
  CHECK(json::parse(support::read_file(dir / "q.json")).at("qwk").get<double>() == doctest::Approx(0.5));
  fs::remove_all(dir);
}

TEST_CASE("correct writes corrected text and M2") {
  const auto dir = support::temp_dir("cli-correct");
  write(dir / "in.txt", support::kReferenceSourceText + "\n");
  const auto r = run("correct --in " + quote(dir / "in.txt") + " --rules " + demo("demo.rules.json") + " --dict " +
                         demo("demo.dict.tsv") + " --m2 " + quote(dir / "out.m2"),
                     dir);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "I guess most people cannot speak English .\n");
  CHECK(support::read_file(dir / "out.m2") == support::read_file(support::test_data("reference_example.m2")));
  fs::remove_all(dir);
}

TEST_CASE("featurize, train, score, cross-prompt and serve") {
  const auto dir = support::temp_dir("cli-flow");
  write(dir / "essays.tsv", synthetic_tsv(8));
  const std::string copts = " --rules " + demo("demo.rules.json") + " --dict " + demo("demo.dict.tsv");

  auto r = run("featurize --data " + quote(dir / "essays.tsv") + copts + " --out " + quote(dir / "f.jsonl") +
                   " --save-lm " + quote(dir / "lm.json"),
               dir);
  REQUIRE(r.exit_code == 0);
  const auto feats = support::read_file(dir / "f.jsonl");
  const auto rows = jsonl(feats);
  REQUIRE(rows.size() == 64);
  CHECK(rows[0].at("features").size() == awegec::features::feature_schema().size());
  CHECK(rows[0].at("gold").at("overall").is_number());

  r = run("featurize --data " + quote(dir / "essays.tsv") + copts + " --out " + quote(dir / "f2.jsonl"), dir);
  CHECK(support::read_file(dir / "f2.jsonl") == feats);

  r = run("train-awe --features " + quote(dir / "f.jsonl") + " --out " + quote(dir / "model.json") + " --lambda 1",
          dir);
  REQUIRE(r.exit_code == 0);
  r = run("score --model " + quote(dir / "model.json") + " --features " + quote(dir / "f.jsonl"), dir);
  REQUIRE(r.exit_code == 0);
  const auto scores = jsonl(r.out);
  REQUIRE(scores.size() == 64);
  for (const auto& s : scores) {
    const double overall = s.at("scores").at("overall").get<double>();
    CHECK(overall >= 0.0);
    CHECK(overall <= 100.0);
  }

  r = run("cross-prompt --features " + quote(dir / "f.jsonl") + " --lambdas 0.1,1,10 --json " +
              quote(dir / "cp.json"),
          dir);
  REQUIRE(r.exit_code == 0);
  for (int p = 1; p <= 8; ++p) CHECK(r.out.find("Prompt " + std::to_string(p)) != std::string::npos);
  CHECK(r.out.find("Average") != std::string::npos);
  CHECK(json::parse(support::read_file(dir / "cp.json")).at("folds").size() == 8);
  const auto table = r.out;
  CHECK(run("cross-prompt --features " + quote(dir / "f.jsonl") + " --lambdas 0.1,1,10", dir).out == table);

  json cfg = {{"host", "127.0.0.1"},
              {"store_dir", "store"},
              {"review_mode", false},
              {"external", {{"timeout_ms", 2000}}},
              {"models",
               {{"score", "model.json"},
                {"lm", "lm.json"},
                {"rules", support::demo_data("demo.rules.json").string()},
                {"dictionary", support::demo_data("demo.dict.tsv").string()}}}};
  write(dir / "serve.json", cfg.dump(2));
  const auto log = dir / "serve.log", pidfile = dir / "serve.pid";
  const std::string cmd = quote(AWEGEC_CLI) + " serve --config " + quote(dir / "serve.json") + " --port 0 2>" +
                          quote(log) + " & echo $! >" + quote(pidfile);
  REQUIRE(std::system(cmd.c_str()) == 0);
  int port = -1;
  for (int i = 0; i < 200 && port < 0; ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
    const auto text = support::read_file(log);
    const auto at = text.find("listening on 127.0.0.1:");
    if (at != std::string::npos) port = std::stoi(text.substr(at + 23));
  }
  const int pid = std::stoi(support::read_file(pidfile));
  REQUIRE(port > 0);
  httplib::Client client("127.0.0.1", port);
  auto res = client.Post("/api/submissions",
                         json{{"learner_id", "l"}, {"prompt_id", 3}, {"text", support::kReferenceSourceText}}.dump(),
                         "application/json");
  REQUIRE(res);
  CHECK(res->status == 201);
  const auto id = json::parse(res->body).at("id").get<std::string>();
  json doc;
  for (int i = 0; i < 200; ++i) {
    res = client.Get("/api/submissions/" + id + "/feedback?role=learner");
    if (res && res->status == 200) {
      doc = json::parse(res->body);
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  REQUIRE_FALSE(doc.is_null());
  CHECK(doc.at("sentences").at(0).at("corrected") == json(support::kReferenceTarget));
  ::kill(pid, SIGTERM);
  bool exited = false;
  for (int i = 0; i < 100 && !exited; ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
    exited = ::kill(pid, 0) != 0;
  }
  CHECK(exited);
  CHECK(fs::exists(dir / "store"));
  fs::remove_all(dir);
}
