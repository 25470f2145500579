#pragma once

// Data-parallel batch kernels. Each OpenMP kernel has a `_serial` twin that
// is the reference implementation; tests require identical results and the
// benchmark target compares their throughput.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "awegec/align.hpp"
#include "awegec/corrector.hpp"
#include "awegec/geceval.hpp"

namespace awegec::kernels {

using TokenPair = std::pair<std::vector<std::string>, std::vector<std::string>>;

// align + extract_edits for every pair.
std::vector<std::vector<Edit>> extract_edits_batch(std::span<const TokenPair> pairs);
std::vector<std::vector<Edit>> extract_edits_batch_serial(std::span<const TokenPair> pairs);

// Sum of best-annotator counts. Callers must reject entries without annotators.
geceval::Counts corpus_counts(std::span<const geceval::ScoredPair> pairs);
geceval::Counts corpus_counts_serial(std::span<const geceval::ScoredPair> pairs);

std::vector<corrector::CorrectionResult> correct_rules_batch(std::span<const TokenizedSentence> sentences,
                                                             const corrector::RuleSet& rules,
                                                             const corrector::SpellerConfig& speller);
std::vector<corrector::CorrectionResult> correct_rules_batch_serial(std::span<const TokenizedSentence> sentences,
                                                                    const corrector::RuleSet& rules,
                                                                    const corrector::SpellerConfig& speller);

// Normal equations of a row-major n x p design: returns (X^T X, X^T y) with
// X^T X row-major p x p. Each entry is summed over rows in order, so both
// variants agree bit for bit.
std::pair<std::vector<double>, std::vector<double>> normal_equations(std::span<const double> x, std::size_t p,
                                                                     std::span<const double> y);
std::pair<std::vector<double>, std::vector<double>> normal_equations_serial(std::span<const double> x,
                                                                            std::size_t p,
                                                                            std::span<const double> y);

// Integer moments used by QWK: sum g, sum p, sum g^2, sum p^2, sum (g-p)^2.
struct RatingMoments {
  std::int64_t n = 0, sum_g = 0, sum_p = 0, sum_g2 = 0, sum_p2 = 0, sum_d2 = 0;
  friend bool operator==(const RatingMoments&, const RatingMoments&) = default;
};
RatingMoments rating_moments(std::span<const int> gold, std::span<const int> pred, int offset);
RatingMoments rating_moments_serial(std::span<const int> gold, std::span<const int> pred, int offset);

}  // namespace awegec::kernels
