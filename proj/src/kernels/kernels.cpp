#include "awegec/kernels.hpp"

#include <omp.h>

#include <exception>

namespace awegec::kernels {

namespace {

// Exceptions must not leave an OpenMP region; the first one is kept and
// rethrown after the loop.
class FirstError {
 public:
  template <typename Fn>
  void run(Fn&& fn) noexcept {
    try {
      fn();
    } catch (...) {
#pragma omp critical(awegec_kernel_error)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

}  // namespace

std::vector<std::vector<Edit>> extract_edits_batch(std::span<const TokenPair> pairs) {
  std::vector<std::vector<Edit>> out(pairs.size());
  const auto n = static_cast<std::int64_t>(pairs.size());
  FirstError error;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i)
    error.run([&] {
      const auto& [src, tgt] = pairs[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(i)] = align::extract_edits(align::align(src, tgt), src, tgt);
    });
  error.rethrow();
  return out;
}

std::vector<std::vector<Edit>> extract_edits_batch_serial(std::span<const TokenPair> pairs) {
  std::vector<std::vector<Edit>> out;
  out.reserve(pairs.size());
  for (const auto& [src, tgt] : pairs) out.push_back(align::extract_edits(align::align(src, tgt), src, tgt));
  return out;
}

geceval::Counts corpus_counts(std::span<const geceval::ScoredPair> pairs) {
  std::int64_t tp = 0, fp = 0, fn = 0;
  const auto n = static_cast<std::int64_t>(pairs.size());
  FirstError error;
#pragma omp parallel for schedule(dynamic, 32) reduction(+ : tp, fp, fn)
  for (std::int64_t i = 0; i < n; ++i)
    error.run([&] {
      const auto& [hyp, gold] = pairs[static_cast<std::size_t>(i)];
      const auto c = geceval::best_annotator(hyp, gold).second;
      tp += c.tp;
      fp += c.fp;
      fn += c.fn;
    });
  error.rethrow();
  return {tp, fp, fn};
}

geceval::Counts corpus_counts_serial(std::span<const geceval::ScoredPair> pairs) {
  geceval::Counts total;
  for (const auto& [hyp, gold] : pairs) total += geceval::best_annotator(hyp, gold).second;
  return total;
}

std::vector<corrector::CorrectionResult> correct_rules_batch(std::span<const TokenizedSentence> sentences,
                                                             const corrector::RuleSet& rules,
                                                             const corrector::SpellerConfig& speller) {
  std::vector<corrector::CorrectionResult> out(sentences.size());
  const auto n = static_cast<std::int64_t>(sentences.size());
  FirstError error;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < n; ++i)
    error.run([&] {
      out[static_cast<std::size_t>(i)] =
          corrector::correct_rules(sentences[static_cast<std::size_t>(i)], rules, speller);
    });
  error.rethrow();
  return out;
}

std::vector<corrector::CorrectionResult> correct_rules_batch_serial(std::span<const TokenizedSentence> sentences,
                                                                    const corrector::RuleSet& rules,
                                                                    const corrector::SpellerConfig& speller) {
  std::vector<corrector::CorrectionResult> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(corrector::correct_rules(s, rules, speller));
  return out;
}

std::pair<std::vector<double>, std::vector<double>> normal_equations(std::span<const double> x, std::size_t p,
                                                                     std::span<const double> y) {
  const std::size_t n = y.size();
  std::vector<double> xtx(p * p, 0.0), xty(p, 0.0);
  const auto cells = static_cast<std::int64_t>(p * (p + 1));
#pragma omp parallel for schedule(static)
  for (std::int64_t cell = 0; cell < cells; ++cell) {
    const std::size_t a = static_cast<std::size_t>(cell) / (p + 1);
    const std::size_t b = static_cast<std::size_t>(cell) % (p + 1);
    if (b == p) {
      double s = 0.0;
      for (std::size_t r = 0; r < n; ++r) s += x[r * p + a] * y[r];
      xty[a] = s;
    } else if (b >= a) {
      double s = 0.0;
      for (std::size_t r = 0; r < n; ++r) s += x[r * p + a] * x[r * p + b];
      xtx[a * p + b] = s;
      xtx[b * p + a] = s;
    }
  }
  return {std::move(xtx), std::move(xty)};
}

std::pair<std::vector<double>, std::vector<double>> normal_equations_serial(std::span<const double> x,
                                                                            std::size_t p,
                                                                            std::span<const double> y) {
  const std::size_t n = y.size();
  std::vector<double> xtx(p * p, 0.0), xty(p, 0.0);
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = a; b < p; ++b) {
      double s = 0.0;
      for (std::size_t r = 0; r < n; ++r) s += x[r * p + a] * x[r * p + b];
      xtx[a * p + b] = xtx[b * p + a] = s;
    }
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r) s += x[r * p + a] * y[r];
    xty[a] = s;
  }
  return {std::move(xtx), std::move(xty)};
}

RatingMoments rating_moments(std::span<const int> gold, std::span<const int> pred, int offset) {
  std::int64_t sg = 0, sp = 0, sg2 = 0, sp2 = 0, sd2 = 0;
  const auto n = static_cast<std::int64_t>(gold.size());
#pragma omp parallel for schedule(static) reduction(+ : sg, sp, sg2, sp2, sd2)
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t g = gold[static_cast<std::size_t>(i)] - offset;
    const std::int64_t p = pred[static_cast<std::size_t>(i)] - offset;
    sg += g;
    sp += p;
    sg2 += g * g;
    sp2 += p * p;
    sd2 += (g - p) * (g - p);
  }
  return {n, sg, sp, sg2, sp2, sd2};
}

RatingMoments rating_moments_serial(std::span<const int> gold, std::span<const int> pred, int offset) {
  RatingMoments m;
  m.n = static_cast<std::int64_t>(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const std::int64_t g = gold[i] - offset;
    const std::int64_t p = pred[i] - offset;
    m.sum_g += g;
    m.sum_p += p;
    m.sum_g2 += g * g;
    m.sum_p2 += p * p;
    m.sum_d2 += (g - p) * (g - p);
  }
  return m;
}

}  // namespace awegec::kernels
