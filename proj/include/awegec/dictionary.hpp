#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace awegec {

// Lowercase word forms with corpus frequencies.
class Dictionary {
 public:
  Dictionary() = default;

  void add(std::string_view word, std::uint64_t frequency);
  bool contains(std::string_view word) const;
  std::uint64_t frequency(std::string_view word) const;
  std::size_t size() const noexcept { return freq_.size(); }

  // Words whose code-point length is within [lo, hi].
  template <typename Fn>
  void for_each_with_length(std::size_t lo, std::size_t hi, Fn&& fn) const {
    for (std::size_t n = lo; n <= hi && n < by_length_.size(); ++n)
      for (const auto& w : by_length_[n]) fn(w, freq_.at(w));
  }

  // "word<TAB>frequency" per line; a missing frequency counts as 1.
  static Dictionary from_tsv(std::string_view contents);
  std::string to_tsv() const;

 private:
  std::unordered_map<std::string, std::uint64_t> freq_;
  std::vector<std::vector<std::string>> by_length_;
};

}  // namespace awegec
