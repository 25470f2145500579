#include <csignal>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "awegec/align.hpp"
#include "awegec/corpus/essays.hpp"
#include "awegec/corpus/m2.hpp"
#include "awegec/corpus/noise.hpp"
#include "awegec/corpus/tokenize.hpp"
#include "awegec/corpus/tree.hpp"
#include "awegec/corrector.hpp"
#include "awegec/error.hpp"
#include "awegec/features.hpp"
#include "awegec/geceval.hpp"
#include "awegec/http_api.hpp"
#include "awegec/scorer.hpp"
#include "awegec/service.hpp"
#include "awegec/text.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace awegec;

namespace {

// An awegec::Error raised while handling a particular input file.
struct FileError : std::runtime_error {
  FileError(std::string p, const Error& e) : std::runtime_error(e.what()), path(std::move(p)), position(e.position()) {}
  std::string path;
  std::int64_t position;
};

template <class F>
auto in_file(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw FileError(path, e);
  } catch (const json::exception& e) {
    throw FileError(path, Error(ErrorCode::MalformedLine, e.what()));
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(path, Error(ErrorCode::Io, "cannot open file"));
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << contents)) throw FileError(path, Error(ErrorCode::Io, "cannot write file"));
}

std::vector<std::string> lines_of(const std::string& contents) {
  std::vector<std::string> lines;
  std::istringstream in(contents);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<json> read_jsonl(const std::string& path) {
  const auto lines = lines_of(read_file(path));
  std::vector<json> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty()) continue;
    auto j = json::parse(lines[i], nullptr, false);
    if (j.is_discarded() || !j.is_object())
      throw FileError(path, Error(ErrorCode::MalformedLine, "expected a JSON object", static_cast<std::int64_t>(i + 1)));
    out.push_back(std::move(j));
  }
  return out;
}

// Emits the text form on stdout and, when requested, the JSON form to a file.
void report(const std::string& text_form, const std::string& json_form, const std::string& json_path) {
  std::cout << text_form;
  if (!json_path.empty()) write_file(json_path, json_form);
}

TokenizedSentence tokenize_line(const std::string& line, bool pretokenized) {
  return pretokenized ? TokenizedSentence::from_tokens(split_ws(line)) : corpus::tokenize(line);
}

std::vector<TokenizedSentence> essay_sentences(const std::string& essay_text) {
  std::vector<TokenizedSentence> out;
  for (const auto& s : corpus::split_sentences(essay_text)) {
    auto tok = corpus::tokenize(s);
    if (!tok.empty()) out.push_back(std::move(tok));
  }
  return out;
}

Dictionary load_dictionary(const std::string& path) {
  if (path.empty()) return {};
  return in_file(path, [&] { return Dictionary::from_tsv(read_file(path)); });
}

corpus::NamePool name_pool_from_json(const json& j) {
  corpus::NamePool pool = corpus::NamePool::defaults();
  if (j.contains("names")) pool.names = j.at("names").get<std::map<std::string, std::vector<std::string>>>();
  if (j.contains("aliases")) pool.aliases = j.at("aliases").get<std::map<std::string, std::string>>();
  return pool;
}

corpus::NamePool load_name_pool(const std::string& path) {
  if (path.empty()) return corpus::NamePool::defaults();
  return in_file(path, [&] { return name_pool_from_json(json::parse(read_file(path))); });
}

corpus::IngestConfig load_ingest_config(const std::string& path) {
  if (path.empty()) return {};
  return in_file(path, [&] { return corpus::IngestConfig::from_json(read_file(path)); });
}

std::vector<corpus::EssayRecord> load_essays_tsv(const std::string& path, const corpus::IngestConfig& config) {
  return in_file(path, [&] { return corpus::read_essays_tsv(read_file(path), config); });
}

std::vector<corpus::EssayRecord> load_essays_jsonl(const std::string& path) {
  std::vector<corpus::EssayRecord> out;
  for (const auto& j : read_jsonl(path)) {
    in_file(path, [&] {
      corpus::EssayRecord r;
      r.essay_id = j.at("essay_id").get<std::string>();
      r.prompt_id = j.at("prompt_id").get<int>();
      r.text = j.at("text").get<std::string>();
      if (j.contains("gold")) r.gold_scores = j.at("gold").get<std::map<std::string, double>>();
      out.push_back(std::move(r));
      return 0;
    });
  }
  return out;
}

// Shared corrector flags.
struct CorrectorOptions {
  std::string rules;
  std::string dict;
  std::string backend = "rules";
  std::string external_url;
  int timeout_ms = 10000;
  bool no_fallback = false;
  std::size_t max_distance = 1;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--rules", rules, "Rule file (JSON)");
    cmd->add_option("--dict", dict, "Dictionary (word<TAB>frequency)");
    cmd->add_option("--backend", backend, "rules or external")->check(CLI::IsMember({"rules", "external"}));
    cmd->add_option("--external-url", external_url, "Base URL of the external correction service");
    cmd->add_option("--timeout-ms", timeout_ms, "External request timeout");
    cmd->add_flag("--no-fallback", no_fallback, "Fail instead of falling back to rules");
    cmd->add_option("--max-distance", max_distance, "Speller edit-distance bound");
  }

  corrector::Corrector build() const {
    corrector::RuleSet rs;
    if (!rules.empty()) rs.rules = in_file(rules, [&] { return corrector::RuleSet::rules_from_json(read_file(rules)); });
    rs.dictionary = load_dictionary(dict);
    corrector::CorrectorConfig cfg;
    cfg.backend = corrector::backend_from_string(backend);
    if (!external_url.empty()) cfg.external.base_url = external_url;
    cfg.external.timeout_ms = timeout_ms;
    cfg.fallback = !no_fallback;
    cfg.speller.max_distance = max_distance;
    return corrector::Corrector(std::move(rs), cfg);
  }
};

struct FeaturizeOptions {
  CorrectorOptions corr;
  std::string trees_dir;
  std::string lm_path;
  std::string save_lm;
  std::string name_pool;
  std::uint64_t seed = 0;
  int lm_order = 3;

  void add_to(CLI::App* cmd) {
    corr.add_to(cmd);
    cmd->add_option("--trees", trees_dir, "Directory of <essay_id>.trees files, one bracketed tree per sentence");
    cmd->add_option("--lm", lm_path, "N-gram model checkpoint; trained on the input essays when absent");
    cmd->add_option("--save-lm", save_lm, "Write the language model used");
    cmd->add_option("--name-pool", name_pool, "Entity name pool (JSON)");
    cmd->add_option("--seed", seed, "Entity substitution seed");
    cmd->add_option("--lm-order", lm_order, "Order of a freshly trained language model");
  }
};

struct FeatureRecord {
  std::string essay_id;
  int prompt_id = 0;
  std::map<std::string, double> gold;
  features::FeatureVector features;
};

std::vector<std::optional<corpus::ParseTree>> load_trees(const std::string& dir, const std::string& essay_id,
                                                         std::size_t sentences) {
  if (dir.empty()) return std::vector<std::optional<corpus::ParseTree>>(sentences);
  const auto path = (fs::path(dir) / (essay_id + ".trees")).string();
  if (!fs::exists(path)) return std::vector<std::optional<corpus::ParseTree>>(sentences);
  return in_file(path, [&] {
    auto trees = corpus::read_tree_file(read_file(path));
    while (trees.size() > sentences && !trees.back()) trees.pop_back();
    if (trees.size() != sentences)
      throw Error(ErrorCode::LengthMismatch, std::to_string(trees.size()) + " trees for " + std::to_string(sentences) +
                                                 " sentences");
    return trees;
  });
}

std::vector<FeatureRecord> featurize_essays(const std::vector<corpus::EssayRecord>& essays,
                                            const FeaturizeOptions& opt) {
  const auto corrector = opt.corr.build();
  const auto pool = load_name_pool(opt.name_pool);

  std::vector<features::EssayInput> inputs;
  for (const auto& e : essays) {
    const auto sentences = essay_sentences(e.text);
    if (sentences.empty()) throw Error(ErrorCode::EmptyEssay, "essay " + e.essay_id + " has no tokens");
    features::EssayInput in;
    corpus::EntitySubstituter sub(pool, opt.seed);
    for (const auto& s : sentences) in.sentences.push_back(sub.apply(s));
    in.trees = load_trees(opt.trees_dir, e.essay_id, sentences.size());
    in.corrections = corrector.correct(sentences);
    inputs.push_back(std::move(in));
  }

  features::NgramModel lm(opt.lm_order);
  if (!opt.lm_path.empty()) {
    lm = in_file(opt.lm_path, [&] { return features::NgramModel::from_json(read_file(opt.lm_path)); });
  } else {
    std::vector<std::vector<std::string>> corpus_tokens;
    for (const auto& in : inputs)
      for (const auto& s : in.sentences) corpus_tokens.push_back(s.tokens);
    lm.train(corpus_tokens);
  }
  if (!opt.save_lm.empty()) write_file(opt.save_lm, lm.to_json());

  std::vector<FeatureRecord> out;
  for (std::size_t i = 0; i < essays.size(); ++i)
    out.push_back({essays[i].essay_id, essays[i].prompt_id, essays[i].gold_scores, features::featurize(inputs[i], lm)});
  return out;
}

std::string feature_line(const FeatureRecord& r) {
  nlohmann::ordered_json feats = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.features.values) feats[k] = v;
  nlohmann::ordered_json j;
  j["essay_id"] = r.essay_id;
  j["prompt_id"] = r.prompt_id;
  j["gold"] = r.gold;
  j["schema_version"] = r.features.schema_version;
  j["features"] = feats;
  return j.dump();
}

std::vector<FeatureRecord> load_feature_records(const std::string& path) {
  std::vector<FeatureRecord> out;
  for (const auto& j : read_jsonl(path)) {
    in_file(path, [&] {
      FeatureRecord r;
      r.essay_id = j.at("essay_id").get<std::string>();
      r.prompt_id = j.at("prompt_id").get<int>();
      if (j.contains("gold")) r.gold = j.at("gold").get<std::map<std::string, double>>();
      r.features.schema_version = j.value("schema_version", std::string(features::kSchemaVersion));
      if (r.features.schema_version != features::kSchemaVersion)
        throw Error(ErrorCode::SchemaMismatch, "feature schema " + r.features.schema_version + " in " + r.essay_id);
      for (const auto& name : features::feature_schema())
        if (j.at("features").contains(name)) r.features.set(name, j.at("features").at(name).get<double>());
      out.push_back(std::move(r));
      return 0;
    });
  }
  return out;
}

std::vector<scorer::TrainingExample> training_examples(const std::vector<FeatureRecord>& records) {
  std::vector<scorer::TrainingExample> out;
  for (const auto& r : records)
    out.push_back({r.essay_id, r.prompt_id, r.features.ordered(features::feature_schema()), r.gold});
  return out;
}

std::vector<int> read_ratings(const std::string& path) {
  const auto lines = lines_of(read_file(path));
  std::vector<int> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto t = text::trim(lines[i]);
    if (t.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::logic_error&) {
      throw FileError(path, Error(ErrorCode::MalformedLine, "expected an integer rating", static_cast<std::int64_t>(i + 1)));
    }
  }
  return out;
}

std::string fixed4(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << v;
  return os.str();
}

// ---- subcommands ----

int run_ingest(const std::string& data, const std::string& config, const std::string& out) {
  const auto essays = load_essays_tsv(data, load_ingest_config(config));
  std::map<int, std::size_t> per_prompt;
  std::string body;
  for (const auto& e : essays) {
    ++per_prompt[e.prompt_id];
    body += json{{"essay_id", e.essay_id}, {"prompt_id", e.prompt_id}, {"text", e.text}, {"gold", e.gold_scores}}.dump() +
            "\n";
  }
  if (!out.empty()) write_file(out, body);
  std::cout << "essays: " << essays.size() << "\n";
  for (const auto& [p, n] : per_prompt) std::cout << "prompt " << p << ": " << n << "\n";
  return 0;
}

int run_denoise(const std::string& in, const std::string& out, const std::string& report_path,
                const std::string& pool_path, std::uint64_t seed) {
  const auto lines = lines_of(read_file(in));
  const auto pool = load_name_pool(pool_path);
  std::string text_out, json_out;
  std::size_t noisy = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    corpus::EntitySubstituter sub(pool, seed);
    std::vector<std::string> rendered;
    json placeholders = json::array(), flags = json::array();
    bool is_noisy = false;
    std::size_t offset = 0;
    for (const auto& s : essay_sentences(lines[i])) {
      const auto rep = corpus::detect_noise(s);
      for (const auto& [idx, tok] : rep.entity_placeholders) placeholders.push_back({{"token", offset + idx}, {"text", tok}});
      for (auto idx : rep.encoding_flags) flags.push_back(offset + idx);
      is_noisy = is_noisy || rep.is_noisy;
      offset += s.size();
      rendered.push_back(sub.apply(s).joined());
    }
    noisy += is_noisy;
    text_out += join(rendered) + "\n";
    json_out += json{{"line", i + 1},
                     {"placeholders", placeholders},
                     {"encoding_flags", flags},
                     {"noisy", is_noisy},
                     {"assignments", sub.assignments()}}
                    .dump() +
                "\n";
  }
  if (!out.empty()) write_file(out, text_out);
  if (!report_path.empty()) write_file(report_path, json_out);
  std::cout << "lines: " << lines.size() << "\nnoisy: " << noisy << "\n";
  return 0;
}

int run_extract_edits(const std::string& src_path, const std::string& tgt_path, const std::string& out,
                      const std::string& dict_path, bool pretokenized) {
  const auto src = lines_of(read_file(src_path));
  const auto tgt = lines_of(read_file(tgt_path));
  if (src.size() != tgt.size())
    throw FileError(tgt_path, Error(ErrorCode::LengthMismatch, std::to_string(tgt.size()) + " lines against " +
                                                                   std::to_string(src.size()) + " source lines"));
  const auto dict = load_dictionary(dict_path);
  std::vector<corpus::AnnotatedSentence> entries;
  std::size_t edits = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const auto s = tokenize_line(src[i], pretokenized);
    const auto t = tokenize_line(tgt[i], pretokenized);
    auto e = align::diff(s, t, dict);
    edits += e.size();
    entries.push_back({s, {{0, std::move(e)}}});
  }
  const auto m2 = corpus::write_m2(entries);
  if (out.empty())
    std::cout << m2;
  else {
    write_file(out, m2);
    std::cout << "sentences: " << entries.size() << "\nedits: " << edits << "\n";
  }
  return 0;
}

int run_evaluate_gec(const std::string& hyp, const std::string& gold, double beta, const std::string& json_path) {
  const auto h = in_file(hyp, [&] { return corpus::read_m2(read_file(hyp)); });
  const auto g = in_file(gold, [&] { return corpus::read_m2(read_file(gold)); });
  const auto pairs = in_file(gold, [&] { return geceval::pair_m2(h, g); });
  const auto rep = in_file(gold, [&] { return geceval::score_corpus(pairs, beta); });
  report(geceval::render_text(rep), geceval::render_json(rep), json_path);
  return 0;
}

int run_correct(const std::string& in, const std::string& out, const std::string& m2_out, bool split,
                bool pretokenized, const CorrectorOptions& copt) {
  const auto corrector = copt.build();
  std::vector<TokenizedSentence> sentences;
  std::vector<std::size_t> line_of;
  const auto lines = lines_of(read_file(in));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (split) {
      for (auto& s : essay_sentences(lines[i])) sentences.push_back(std::move(s)), line_of.push_back(i);
    } else {
      sentences.push_back(tokenize_line(lines[i], pretokenized));
      line_of.push_back(i);
    }
  }
  const auto results = corrector.correct(sentences);
  std::vector<std::vector<std::string>> corrected(lines.size());
  std::vector<corpus::AnnotatedSentence> entries;
  std::map<std::string, std::size_t> backends;
  std::size_t edits = 0;
  for (std::size_t k = 0; k < results.size(); ++k) {
    corrected[line_of[k]].push_back(results[k].corrected.joined());
    entries.push_back({results[k].source, {{0, results[k].edits}}});
    ++backends[results[k].backend];
    edits += results[k].edits.size();
  }
  std::string text_out;
  for (const auto& c : corrected) text_out += join(c) + "\n";
  if (out.empty())
    std::cout << text_out;
  else
    write_file(out, text_out);
  if (!m2_out.empty()) write_file(m2_out, corpus::write_m2(entries));
  std::cerr << "sentences: " << results.size() << ", edits: " << edits;
  for (const auto& [b, n] : backends) std::cerr << ", " << b << ": " << n;
  std::cerr << "\n";
  return 0;
}

std::vector<corpus::EssayRecord> load_essay_inputs(const std::string& data, const std::string& essays,
                                                   const std::string& config) {
  if (!data.empty()) return load_essays_tsv(data, load_ingest_config(config));
  return load_essays_jsonl(essays);
}

int run_featurize(const std::string& data, const std::string& essays, const std::string& config,
                  const std::string& out, const FeaturizeOptions& fopt) {
  const auto records = featurize_essays(load_essay_inputs(data, essays, config), fopt);
  std::string body;
  for (const auto& r : records) body += feature_line(r) + "\n";
  if (out.empty())
    std::cout << body;
  else {
    write_file(out, body);
    std::cout << "essays: " << records.size() << "\nfeatures: " << features::feature_schema().size() << "\n";
  }
  return 0;
}

scorer::RangeTable ranges_from(const std::string& config) {
  return load_ingest_config(config).score_ranges;
}

int run_train(const std::string& feats, const std::string& out, double lambda, const std::string& rubric,
              const std::string& config) {
  scorer::TrainOptions opt;
  opt.lambda = lambda;
  if (!rubric.empty()) opt.only_rubric = rubric;
  opt.ranges = ranges_from(config);
  const auto examples = training_examples(load_feature_records(feats));
  const auto model = in_file(feats, [&] { return scorer::train(examples, features::feature_schema(), opt); });
  write_file(out, model.to_json());
  std::cout << std::left << std::setw(18) << "rubric" << std::setw(8) << "essays" << "flags\n";
  for (const auto& [name, rm] : model.rubrics) {
    std::string flags = rm.borrowed ? "borrowed" : "";
    if (rm.jittered) flags += flags.empty() ? "jittered" : ",jittered";
    std::cout << std::setw(18) << name << std::setw(8) << rm.trained_on << flags << "\n";
  }
  return 0;
}

int run_score(const std::string& model_path, const std::string& feats, const std::string& out) {
  const auto model = in_file(model_path, [&] { return scorer::ScoreModel::from_json(read_file(model_path)); });
  std::string body;
  for (const auto& r : load_feature_records(feats)) {
    const auto s = in_file(feats, [&] { return scorer::predict(model, r.features); });
    nlohmann::ordered_json scores;
    scores["overall"] = s.overall;
    for (const auto& name : corpus::rubric_names())
      if (name != "overall") scores[name] = s.rubrics.at(name);
    nlohmann::ordered_json j;
    j["essay_id"] = r.essay_id;
    j["prompt_id"] = r.prompt_id;
    j["scores"] = scores;
    body += j.dump() + "\n";
  }
  if (out.empty())
    std::cout << body;
  else
    write_file(out, body);
  return 0;
}

int run_eval_qwk(const std::string& gold, const std::string& pred, int lo, int hi, const std::string& json_path) {
  const auto g = read_ratings(gold);
  const auto p = read_ratings(pred);
  const double k = in_file(pred, [&] { return scorer::qwk(g, p, lo, hi); });
  report("QWK: " + fixed4(k) + "\n", json{{"qwk", k}, {"n", g.size()}, {"min", lo}, {"max", hi}}.dump(2) + "\n",
         json_path);
  return 0;
}

int run_cross_prompt(const std::string& data, const std::string& feats, const std::string& config,
                     const std::vector<double>& lambdas, const std::string& rubric, const std::string& scale,
                     const std::string& json_path, const FeaturizeOptions& fopt) {
  std::vector<FeatureRecord> records;
  if (!feats.empty())
    records = load_feature_records(feats);
  else
    records = featurize_essays(load_essays_tsv(data, load_ingest_config(config)), fopt);
  scorer::CrossPromptConfig cfg;
  if (!lambdas.empty()) cfg.lambdas = lambdas;
  cfg.rubric = rubric;
  cfg.scale = scale == "hundred" ? scorer::QwkScale::Hundred : scorer::QwkScale::Native;
  cfg.ranges = ranges_from(config);
  const auto examples = training_examples(records);
  const auto rep = scorer::cross_prompt_eval(examples, features::feature_schema(), cfg);
  report(rep.render_table(), rep.to_json(), json_path);
  return 0;
}

int run_serve(const std::string& config_path, int port_override) {
  const json cfg = in_file(config_path, [&] { return json::parse(read_file(config_path)); });
  const fs::path base = fs::absolute(config_path).parent_path();
  auto resolve = [&](const std::string& p) { return p.empty() ? p : (base / p).lexically_normal().string(); };

  return in_file(config_path, [&] {
    const json models = cfg.value("models", json::object());
    CorrectorOptions copt;
    copt.rules = resolve(models.value("rules", std::string{}));
    copt.dict = resolve(models.value("dictionary", std::string{}));
    copt.backend = cfg.value("backend", std::string("rules"));
    copt.no_fallback = !cfg.value("fallback", true);
    auto corrector = copt.build();
    if (cfg.contains("external")) {
      const auto& ex = cfg.at("external");
      auto c = corrector.config();
      c.external.base_url = ex.value("base_url", c.external.base_url);
      c.external.path = ex.value("path", c.external.path);
      c.external.auth_header = ex.value("auth_header", c.external.auth_header);
      c.external.auth_token = ex.value("auth_token", c.external.auth_token);
      c.external.timeout_ms = ex.value("timeout_ms", c.external.timeout_ms);
      c.external.batch_size = ex.value("batch_size", c.external.batch_size);
      c.external.max_in_flight = ex.value("max_in_flight", c.external.max_in_flight);
      corrector = corrector::Corrector(corrector.rules(), c);
    }
    const auto model_path = resolve(models.at("score").get<std::string>());
    auto model = in_file(model_path, [&] { return scorer::ScoreModel::from_json(read_file(model_path)); });
    features::NgramModel lm;
    if (models.contains("lm")) {
      const auto lm_path = resolve(models.at("lm").get<std::string>());
      lm = in_file(lm_path, [&] { return features::NgramModel::from_json(read_file(lm_path)); });
    }
    corpus::NamePool pool = corpus::NamePool::defaults();
    if (cfg.contains("name_pool")) {
      const auto& np = cfg.at("name_pool");
      pool = np.is_string() ? load_name_pool(resolve(np.get<std::string>())) : name_pool_from_json(np);
    }

    service::ServiceConfig sc;
    sc.store_dir = resolve(cfg.value("store_dir", std::string("awegec-store")));
    sc.review_mode = cfg.value("review_mode", false);
    if (cfg.contains("prompts")) sc.prompts = cfg.at("prompts").get<std::set<int>>();
    const std::string host = cfg.value("host", std::string("127.0.0.1"));
    const int port = port_override >= 0 ? port_override : cfg.value("port", 8080);

    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    auto pipeline = std::make_shared<const service::Pipeline>(std::move(corrector), std::move(lm), std::move(model),
                                                              std::move(pool));
    service::Service svc(sc, pipeline);
    service::HttpApi api(svc);
    const int bound = port == 0 ? api.bind_any(host) : port;
    if (bound < 0) throw Error(ErrorCode::Io, "cannot bind " + host + ":0");
    std::thread waiter([&] {
      int sig = 0;
      sigwait(&signals, &sig);
      api.stop();
    });
    waiter.detach();
    std::cerr << "listening on " << host << ":" << bound << " (review mode " << (sc.review_mode ? "on" : "off")
              << ")\n";
    const bool ok = port == 0 ? api.listen_after_bind() : api.listen(host, port);
    if (!ok) throw Error(ErrorCode::Io, "cannot serve on " + host + ":" + std::to_string(bound));
    return 0;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grammatical error correction and automated essay scoring toolkit"};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string data, essays, config, out, in, json_path, dict, pool, hyp, gold, src, tgt, m2_out, model, feats, rubric;
  std::string scale = "native";
  std::uint64_t seed = 0;
  double beta = 0.5, lambda = 1.0;
  bool pretokenized = false, split = false;
  int lo = 0, hi = 0, port = -1;
  std::vector<double> lambdas;
  CorrectorOptions copt;
  FeaturizeOptions fopt;

  auto* ingest = app.add_subcommand("ingest", "Read an essay TSV into JSON lines");
  ingest->add_option("--data", data, "Essay TSV")->required();
  ingest->add_option("--config", config, "Ingest config (JSON)");
  ingest->add_option("--out", out, "Output JSONL");
  ingest->callback([&] { action = [&] { return run_ingest(data, config, out); }; });

  auto* denoise = app.add_subcommand("denoise", "Report noise and substitute entity placeholders, one essay per line");
  denoise->add_option("--in", in, "Input text")->required();
  denoise->add_option("--out", out, "Substituted text");
  denoise->add_option("--json", json_path, "Per-line noise report (JSONL)");
  denoise->add_option("--name-pool", pool, "Entity name pool (JSON)");
  denoise->add_option("--seed", seed, "Substitution seed");
  denoise->callback([&] { action = [&] { return run_denoise(in, out, json_path, pool, seed); }; });

  auto* extract = app.add_subcommand("extract-edits", "Align parallel sentence files into M2");
  extract->add_option("--src", src, "Source sentences, one per line")->required();
  extract->add_option("--tgt", tgt, "Corrected sentences, one per line")->required();
  extract->add_option("--out", out, "Output M2 (stdout when absent)");
  extract->add_option("--dict", dict, "Dictionary for SPELL typing");
  extract->add_flag("--pretokenized", pretokenized, "Split lines on whitespace only");
  extract->callback([&] { action = [&] { return run_extract_edits(src, tgt, out, dict, pretokenized); }; });

  auto* evaluate = app.add_subcommand("evaluate-gec", "Score hypothesis M2 against gold M2");
  evaluate->add_option("--hyp", hyp, "Hypothesis M2")->required();
  evaluate->add_option("--gold", gold, "Gold M2")->required();
  evaluate->add_option("--beta", beta, "F-measure beta")->check(CLI::PositiveNumber);
  evaluate->add_option("--json", json_path, "Write the report as JSON");
  evaluate->callback([&] { action = [&] { return run_evaluate_gec(hyp, gold, beta, json_path); }; });

  auto* correct = app.add_subcommand("correct", "Correct sentences, one per line");
  correct->add_option("--in", in, "Input text")->required();
  correct->add_option("--out", out, "Corrected text (stdout when absent)");
  correct->add_option("--m2", m2_out, "Write the edits as M2");
  correct->add_flag("--split", split, "Sentence-split each line first");
  correct->add_flag("--pretokenized", pretokenized, "Split lines on whitespace only");
  copt.add_to(correct);
  correct->callback([&] { action = [&] { return run_correct(in, out, m2_out, split, pretokenized, copt); }; });

  auto* featurize = app.add_subcommand("featurize", "Compute essay feature vectors");
  auto* fdata = featurize->add_option("--data", data, "Essay TSV");
  featurize->add_option("--essays", essays, "Essay JSONL from ingest")->excludes(fdata);
  featurize->add_option("--config", config, "Ingest config (JSON)");
  featurize->add_option("--out", out, "Output JSONL (stdout when absent)");
  fopt.add_to(featurize);
  featurize->callback([&] {
    if (data.empty() && essays.empty()) throw CLI::RequiredError("--data or --essays");
    action = [&] { return run_featurize(data, essays, config, out, fopt); };
  });

  auto* train = app.add_subcommand("train-awe", "Train the ridge scoring model");
  train->add_option("--features", feats, "Feature JSONL")->required();
  train->add_option("--out", model, "Model output (JSON)")->required();
  train->add_option("--lambda", lambda, "Ridge penalty")->check(CLI::NonNegativeNumber);
  train->add_option("--rubric", rubric, "Train only this rubric");
  train->add_option("--config", config, "Ingest config holding fixed score ranges");
  train->callback([&] { action = [&] { return run_train(feats, model, lambda, rubric, config); }; });

  auto* score = app.add_subcommand("score", "Predict rubric scores on a 0-100 scale");
  score->add_option("--model", model, "Model (JSON)")->required();
  score->add_option("--features", feats, "Feature JSONL")->required();
  score->add_option("--out", out, "Output JSONL (stdout when absent)");
  score->callback([&] { action = [&] { return run_score(model, feats, out); }; });

  auto* eval_qwk = app.add_subcommand("eval-qwk", "Quadratic weighted kappa of two rating files");
  eval_qwk->add_option("--gold", gold, "Gold ratings, one integer per line")->required();
  eval_qwk->add_option("--pred", hyp, "Predicted ratings, one integer per line")->required();
  eval_qwk->add_option("--min", lo, "Lowest rating")->required();
  eval_qwk->add_option("--max", hi, "Highest rating")->required();
  eval_qwk->add_option("--json", json_path, "Write the result as JSON");
  eval_qwk->callback([&] { action = [&] { return run_eval_qwk(gold, hyp, lo, hi, json_path); }; });

  auto* cross = app.add_subcommand("cross-prompt", "Leave-one-prompt-out QWK table");
  auto* cdata = cross->add_option("--data", data, "Essay TSV");
  cross->add_option("--features", feats, "Feature JSONL")->excludes(cdata);
  cross->add_option("--config", config, "Ingest config (JSON)");
  cross->add_option("--lambdas", lambdas, "Ridge penalties to select from")->delimiter(',');
  cross->add_option("--rubric", rubric, "Rubric to evaluate")->default_val("overall");
  cross->add_option("--scale", scale, "native or hundred")->check(CLI::IsMember({"native", "hundred"}));
  cross->add_option("--json", json_path, "Write the report as JSON");
  fopt.add_to(cross);
  cross->callback([&] {
    if (data.empty() && feats.empty()) throw CLI::RequiredError("--data or --features");
    action = [&] { return run_cross_prompt(data, feats, config, lambdas, rubric, scale, json_path, fopt); };
  });

  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--config", config, "Service config (JSON)")->required();
  serve->add_option("--port", port, "Override the configured port; 0 picks a free one");
  serve->callback([&] { action = [&] { return run_serve(config, port); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action();
  } catch (const FileError& e) {
    std::cerr << "awegec: " << e.path;
    if (e.position >= 0) std::cerr << ":" << e.position;
    std::cerr << ": " << e.what() << "\n";
  } catch (const Error& e) {
    std::cerr << "awegec: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "awegec: " << e.what() << "\n";
  }
  return 1;
}
