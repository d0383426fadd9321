#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>

#include "nagcd/error.hpp"
#include "nagcd/laurent_scalar.hpp"
#include "nagcd/rational.hpp"
#include "nagcd/valuation.hpp"

namespace nagcd {

/// Q with the p-adic valuation. Always exact.
///
/// Only meant for arithmetic cross-checks: the residue field is F_p, which is
/// finite, so residue-generic sampling over it carries no genericity
/// guarantee.
template <unsigned long P>
class PadicRational {
  static_assert(P >= 2, "prime expected");

 public:
  PadicRational() = default;
  PadicRational(const Rational& q, std::int64_t /*prec*/ = kUnboundedPrec)  // NOLINT
      : q_(q) {}
  PadicRational(long v) : q_(v) {}  // NOLINT
  PadicRational(int v) : q_(v) {}   // NOLINT

  static PadicRational uniformizer_power(std::int64_t k) {
    Integer pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), P, static_cast<unsigned long>(k < 0 ? -k : k));
    return k >= 0 ? PadicRational(Rational(pk)) : PadicRational(Rational(1, 1) / Rational(pk));
  }
  static PadicRational monomial(const Rational& c, std::int64_t k,
                                std::int64_t = kUnboundedPrec) {
    return PadicRational(c) * uniformizer_power(k);
  }

  static constexpr unsigned long prime() { return P; }

  bool is_zero() const { return q_ == 0; }
  bool truncated() const { return false; }
  std::int64_t prec() const { return kUnboundedPrec; }
  const Rational& value() const { return q_; }

  Valuation val() const {
    if (q_ == 0) return Valuation::infinity();
    return Valuation(count(q_.get_num()) - count(q_.get_den()));
  }

  PadicRational leading_term() const { return *this; }

  /// Reduction into F_p, returned as an integer in [0, p).
  Rational residue() const {
    Valuation v = val();
    if (v.is_infinite() || v.value() > 0) return 0;
    if (v.value() < 0) throw Error(ErrorCode::kDomain, "residue of non-integral p-adic");
    Integer p(P), num = q_.get_num(), den = q_.get_den(), inv, r;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    r = num * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
    return Rational(r);
  }

  PadicRational with_prec(std::int64_t) const { return *this; }
  PadicRational retained() const { return *this; }
  std::optional<PadicRational> exact_quotient(const PadicRational& b) const {
    if (b.q_ == 0) return std::nullopt;
    return *this / b;
  }
  /// Q is a field: the gcd of values not both zero is 1.
  static PadicRational ring_gcd(const PadicRational& a, const PadicRational& b) {
    return a.q_ == 0 && b.q_ == 0 ? PadicRational() : PadicRational(1);
  }
  std::int64_t known_end() const { return std::numeric_limits<std::int64_t>::max(); }
  /// Exact values cannot carry an error bound.
  PadicRational known_to(std::int64_t end) const {
    if (val() >= Valuation(end)) return PadicRational();
    throw Error(ErrorCode::kIndeterminate, "p-adic scalars are exact; cannot drop digits below p^" + std::to_string(end));
  }

  PadicRational operator-() const { return PadicRational(Rational(-q_)); }
  friend PadicRational operator+(const PadicRational& a, const PadicRational& b) {
    return PadicRational(Rational(a.q_ + b.q_));
  }
  friend PadicRational operator-(const PadicRational& a, const PadicRational& b) {
    return PadicRational(Rational(a.q_ - b.q_));
  }
  friend PadicRational operator*(const PadicRational& a, const PadicRational& b) {
    return PadicRational(Rational(a.q_ * b.q_));
  }
  friend PadicRational operator/(const PadicRational& a, const PadicRational& b) {
    if (b.q_ == 0) throw Error(ErrorCode::kDivisionByZero, "p-adic division by zero");
    return PadicRational(Rational(a.q_ / b.q_));
  }
  PadicRational& operator+=(const PadicRational& o) { return *this = *this + o; }
  PadicRational& operator-=(const PadicRational& o) { return *this = *this - o; }
  PadicRational& operator*=(const PadicRational& o) { return *this = *this * o; }
  PadicRational& operator/=(const PadicRational& o) { return *this = *this / o; }
  friend bool operator==(const PadicRational& a, const PadicRational& b) { return a.q_ == b.q_; }

  std::string to_string() const { return q_.get_str(); }

 private:
  static std::int64_t count(Integer n) {
    std::int64_t k = 0;
    if (n == 0) return 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), P)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), P);
      ++k;
    }
    return k;
  }

  Rational q_;
};

template <unsigned long P>
std::ostream& operator<<(std::ostream& os, const PadicRational<P>& s) {
  return os << s.to_string();
}

}  // namespace nagcd
