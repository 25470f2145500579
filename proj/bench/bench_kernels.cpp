#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

#include "awegec/kernels.hpp"

using namespace awegec;
using namespace awegec::kernels;

namespace {

const std::vector<std::string> kVocab = {"I", "gess", "almost", "people", "cannot", "speaking", "English", "the",
                                         "a", ",", ".", "teh", "could", "of"};

std::vector<std::string> tokens(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::string> out(n);
  for (auto& t : out) t = kVocab[rng() % kVocab.size()];
  return out;
}

std::vector<TokenPair> pairs(std::size_t count) {
  std::mt19937_64 rng(1);
  std::vector<TokenPair> out;
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(tokens(rng, 20), tokens(rng, 20));
  return out;
}

std::vector<geceval::ScoredPair> scored(std::size_t count) {
  std::mt19937_64 rng(2);
  std::vector<geceval::ScoredPair> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto src = tokens(rng, 20);
    std::map<int, std::vector<Edit>> ann;
    for (int a = 0; a < 3; ++a) {
      const auto tgt = tokens(rng, 20);
      ann[a] = align::extract_edits(align::align(src, tgt), src, tgt);
    }
    const auto hyp = tokens(rng, 20);
    out.push_back({align::extract_edits(align::align(src, hyp), src, hyp), {TokenizedSentence::from_tokens(src), ann}});
  }
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

corrector::RuleSet demo_rules() {
  corrector::RuleSet rs;
  rs.rules = corrector::RuleSet::rules_from_json(slurp(AWEGEC_DEMO_DATA "/demo.rules.json"));
  rs.dictionary = Dictionary::from_tsv(slurp(AWEGEC_DEMO_DATA "/demo.dict.tsv"));
  return rs;
}

template <auto Fn>
void BM_extract(benchmark::State& state) {
  const auto in = pairs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(in));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void BM_counts(benchmark::State& state) {
  const auto in = scored(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(in));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void BM_correct(benchmark::State& state) {
  const auto rs = demo_rules();
  std::mt19937_64 rng(3);
  std::vector<TokenizedSentence> in;
  for (int i = 0; i < state.range(0); ++i) in.push_back(TokenizedSentence::from_tokens(tokens(rng, 20)));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(in, rs, {}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void BM_normal(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0)), p = 32;
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  std::vector<double> x(n * p), y(n);
  for (auto& v : x) v = g(rng);
  for (auto& v : y) v = g(rng);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(x, p, y));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void BM_moments(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::vector<int> a(static_cast<std::size_t>(state.range(0))), b(a.size());
  for (auto& v : a) v = static_cast<int>(rng() % 60);
  for (auto& v : b) v = static_cast<int>(rng() % 60);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(a, b, 0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_extract<extract_edits_batch_serial>)->Name("extract_edits/serial")->Arg(2000);
BENCHMARK(BM_extract<extract_edits_batch>)->Name("extract_edits/omp")->Arg(2000)->UseRealTime();
BENCHMARK(BM_counts<corpus_counts_serial>)->Name("corpus_counts/serial")->Arg(2000);
BENCHMARK(BM_counts<corpus_counts>)->Name("corpus_counts/omp")->Arg(2000)->UseRealTime();
BENCHMARK(BM_correct<correct_rules_batch_serial>)->Name("correct_rules/serial")->Arg(1000);
BENCHMARK(BM_correct<correct_rules_batch>)->Name("correct_rules/omp")->Arg(1000)->UseRealTime();
BENCHMARK(BM_normal<normal_equations_serial>)->Name("normal_equations/serial")->Arg(20000);
BENCHMARK(BM_normal<normal_equations>)->Name("normal_equations/omp")->Arg(20000)->UseRealTime();
BENCHMARK(BM_moments<rating_moments_serial>)->Name("rating_moments/serial")->Arg(1000000);
BENCHMARK(BM_moments<rating_moments>)->Name("rating_moments/omp")->Arg(1000000)->UseRealTime();

BENCHMARK_MAIN();
