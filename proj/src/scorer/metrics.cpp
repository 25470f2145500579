#include <algorithm>
#include <cmath>

#include "awegec/error.hpp"
#include "awegec/kernels.hpp"
#include "awegec/scorer.hpp"

namespace awegec::scorer {

Normalized minmax(double value, double lo, double hi) {
  if (lo > hi) throw Error(ErrorCode::InvalidArgument, "minmax range has min > max");
  if (lo == hi) return {0.5, true, value != lo};
  Normalized out;
  out.clipped = value < lo || value > hi;
  out.value = (std::clamp(value, lo, hi) - lo) / (hi - lo);
  return out;
}

double denorm(double unit, double lo, double hi) { return lo + std::clamp(unit, 0.0, 1.0) * (hi - lo); }

int round_half_up(double v) { return static_cast<int>(std::floor(v + 0.5)); }

double qwk(std::span<const int> gold, std::span<const int> pred, int min_rating, int max_rating) {
  if (gold.size() != pred.size())
    throw Error(ErrorCode::LengthMismatch, "gold has " + std::to_string(gold.size()) + " ratings, prediction " +
                                               std::to_string(pred.size()));
  if (gold.empty()) throw Error(ErrorCode::InvalidArgument, "qwk needs at least one rating");
  if (min_rating > max_rating) throw Error(ErrorCode::InvalidArgument, "rating range has min > max");
  for (std::size_t i = 0; i < gold.size(); ++i)
    if (gold[i] < min_rating || gold[i] > max_rating || pred[i] < min_rating || pred[i] > max_rating)
      throw Error(ErrorCode::InvalidArgument, "rating outside [" + std::to_string(min_rating) + ", " +
                                                  std::to_string(max_rating) + "] at index " + std::to_string(i));

  // With W_ij = (i-j)^2, sum(W.O) = sum (g-p)^2 and
  // n * sum(W.E) = n sum g^2 + n sum p^2 - 2 sum g sum p.
  const auto m = kernels::rating_moments(gold, pred, min_rating);
  const std::int64_t observed = m.n * m.sum_d2;
  const std::int64_t expected = m.n * m.sum_g2 + m.n * m.sum_p2 - 2 * m.sum_g * m.sum_p;
  if (expected == 0) return 1.0;
  return 1.0 - static_cast<double>(observed) / static_cast<double>(expected);
}

}  // namespace awegec::scorer
