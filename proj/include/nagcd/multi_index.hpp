#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "nagcd/error.hpp"

namespace nagcd {

/// Exponent vector gamma = (gamma_1, ..., gamma_m).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t m) : e_(m, 0) {}
  MultiIndex(std::initializer_list<int> e) : e_(e) {}
  explicit MultiIndex(std::vector<int> e) : e_(std::move(e)) {}

  static MultiIndex unit(std::size_t m, std::size_t i, int power = 1) {
    MultiIndex g(m);
    g.e_[i] = power;
    return g;
  }

  std::size_t size() const { return e_.size(); }
  int operator[](std::size_t i) const { return e_[i]; }
  int& operator[](std::size_t i) { return e_[i]; }
  const std::vector<int>& exponents() const { return e_; }

  /// |gamma|
  int total() const { return std::accumulate(e_.begin(), e_.end(), 0); }
  bool is_zero() const { return total() == 0; }

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r = a;
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
    return r;
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(e_[i]);
    }
    return s + ")";
  }

 private:
  std::vector<int> e_;
};

/// Graded lexicographic order: total degree first, then the first differing
/// entry, larger entry wins.
inline std::strong_ordering graded_lex_cmp(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDomain, "multi-index length mismatch");
  }
  if (auto c = a.total() <=> b.total(); c != 0) return c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] <=> b[i];
  }
  return std::strong_ordering::equal;
}

struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return graded_lex_cmp(a, b) < 0;
  }
};

}  // namespace nagcd
