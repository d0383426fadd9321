#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

namespace nagcd {

/// Additive valuation: an integer, or +infinity for zero.
/// |x| = 2^(-value) is used only for display.
class Valuation {
 public:
  constexpr Valuation() = default;  // +infinity
  constexpr Valuation(std::int64_t v) : value_(v), finite_(true) {}  // NOLINT

  static constexpr Valuation infinity() { return Valuation(); }

  constexpr bool is_finite() const { return finite_; }
  constexpr bool is_infinite() const { return !finite_; }
  constexpr std::int64_t value() const {
    assert(finite_);
    return value_;
  }

  friend constexpr bool operator==(const Valuation& a, const Valuation& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }
  friend constexpr std::strong_ordering operator<=>(const Valuation& a,
                                                    const Valuation& b) {
    if (!a.finite_ || !b.finite_) {
      return static_cast<int>(!a.finite_) <=> static_cast<int>(!b.finite_);
    }
    return a.value_ <=> b.value_;
  }

  friend constexpr Valuation operator+(const Valuation& a, const Valuation& b) {
    if (!a.finite_ || !b.finite_) return infinity();
    return Valuation(a.value_ + b.value_);
  }
  friend constexpr Valuation operator-(const Valuation& a, std::int64_t b) {
    if (!a.finite_) return infinity();
    return Valuation(a.value_ - b);
  }

  std::string to_string() const {
    return finite_ ? std::to_string(value_) : std::string("inf");
  }

 private:
  std::int64_t value_ = 0;
  bool finite_ = false;
};

inline Valuation min(const Valuation& a, const Valuation& b) {
  return b < a ? b : a;
}

inline std::ostream& operator<<(std::ostream& os, const Valuation& v) {
  return os << v.to_string();
}

}  // namespace nagcd
