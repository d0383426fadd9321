#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nagcd/error.hpp"
#include "nagcd/rational.hpp"
#include "nagcd/valuation.hpp"

namespace nagcd {

inline constexpr std::int64_t kDefaultPrecT = 8;
/// Precision of constants created by the library itself; never the binding
/// operand in a min().
inline constexpr std::int64_t kUnboundedPrec = std::int64_t{1} << 40;

/// Truncated formal Laurent series in t over exact rationals: an element of
/// Q((t)) with the t-adic valuation.
///
/// Nonzero values store a dense coefficient run starting at `lead_val()`;
/// coefficients are kept inside the relative window
/// [lead_val, lead_val + prec). A value is `truncated()` once any nonzero
/// coefficient has been discarded, either here or in an operand. Truncated
/// values know their coefficients only below `lead_val + prec`; arithmetic
/// never reports digits past that bound.
class LaurentScalar {
 public:
  LaurentScalar() = default;

  LaurentScalar(const Rational& q, std::int64_t prec = kUnboundedPrec)  // NOLINT
      : prec_(prec) {
    check_prec(prec);
    if (q != 0) coeffs_.push_back(q);
  }
  LaurentScalar(long v) : LaurentScalar(Rational(v)) {}  // NOLINT
  LaurentScalar(int v) : LaurentScalar(Rational(v)) {}   // NOLINT

  static LaurentScalar monomial(const Rational& c, std::int64_t k,
                                std::int64_t prec = kUnboundedPrec) {
    LaurentScalar s(c, prec);
    if (!s.coeffs_.empty()) s.lead_ = k;
    return s;
  }

  /// t^k, the uniformizer power of valuation k.
  static LaurentScalar uniformizer_power(std::int64_t k) {
    return monomial(Rational(1), k);
  }

  /// Builds from sparse terms, applying the precision window.
  static LaurentScalar from_terms(const std::map<std::int64_t, Rational>& terms,
                                  std::int64_t prec = kDefaultPrecT) {
    check_prec(prec);
    LaurentScalar s;
    s.prec_ = prec;
    auto it = std::find_if(terms.begin(), terms.end(),
                           [](const auto& kv) { return kv.second != 0; });
    if (it == terms.end()) return s;
    s.lead_ = it->first;
    for (; it != terms.end(); ++it) {
      if (it->second == 0) continue;
      std::int64_t off = it->first - s.lead_;
      if (off >= prec) {
        s.truncated_ = true;
        continue;
      }
      if (static_cast<std::int64_t>(s.coeffs_.size()) <= off) {
        s.coeffs_.resize(static_cast<std::size_t>(off + 1));
      }
      s.coeffs_[static_cast<std::size_t>(off)] = it->second;
    }
    return s;
  }

  bool is_zero() const { return coeffs_.empty(); }
  bool truncated() const { return truncated_; }
  std::int64_t prec() const { return prec_; }

  /// Lowest exponent; for a truncated zero, the order below which the value
  /// is known to vanish.
  std::int64_t lead_val() const { return lead_; }

  Valuation val() const {
    return is_zero() ? Valuation::infinity() : Valuation(lead_);
  }

  /// Coefficient of t^k (zero outside the stored run).
  Rational coeff(std::int64_t k) const {
    if (is_zero() || k < lead_) return 0;
    auto off = static_cast<std::size_t>(k - lead_);
    return off < coeffs_.size() ? coeffs_[off] : Rational(0);
  }

  std::map<std::int64_t, Rational> terms() const {
    std::map<std::int64_t, Rational> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] != 0) out[lead_ + static_cast<std::int64_t>(i)] = coeffs_[i];
    }
    return out;
  }

  /// Lowest stored term c*t^v.
  LaurentScalar leading_term() const {
    if (is_zero()) return {};
    return monomial(coeffs_.front(), lead_);
  }

  /// Image in the residue field Q. Requires val >= 0.
  Rational residue() const {
    if (is_zero() || lead_ > 0) return 0;
    if (lead_ < 0) {
      throw Error(ErrorCode::kDomain, "residue of non-integral scalar " + to_string());
    }
    return coeffs_.front();
  }

  LaurentScalar with_prec(std::int64_t prec) const {
    check_prec(prec);
    LaurentScalar s = *this;
    s.prec_ = prec;
    if (static_cast<std::int64_t>(s.coeffs_.size()) > prec) {
      s.coeffs_.resize(static_cast<std::size_t>(prec));
      s.truncated_ = true;
      s.trim();
    }
    return s;
  }

  /// The stored digits taken as an exact value.
  LaurentScalar retained() const {
    LaurentScalar s = *this;
    s.truncated_ = false;
    if (s.is_zero()) s.lead_ = 0;
    return s;
  }

  /// a / b when the quotient is a Laurent polynomial; exact operands only.
  std::optional<LaurentScalar> exact_quotient(const LaurentScalar& b) const {
    if (truncated_ || b.truncated_ || b.is_zero()) return std::nullopt;
    if (is_zero()) return LaurentScalar();
    std::vector<Rational> rem = coeffs_;
    std::vector<Rational> q;
    if (!divide_poly(rem, b.coeffs_, q)) return std::nullopt;
    LaurentScalar s;
    s.coeffs_ = std::move(q);
    s.lead_ = lead_ - b.lead_;
    s.trim();
    return s;
  }

  /// gcd in Q[t, 1/t] of exact values, normalized to lead_val 0 and leading
  /// coefficient 1 (powers of t are units there).
  static LaurentScalar ring_gcd(const LaurentScalar& a, const LaurentScalar& b) {
    if (a.truncated_ || b.truncated_) throw Error(ErrorCode::kDomain, "ring_gcd of truncated values");
    std::vector<Rational> x = a.coeffs_, y = b.coeffs_;
    while (!y.empty()) {
      std::vector<Rational> q;
      divide_poly(x, y, q);
      while (!x.empty() && x.back() == 0) x.pop_back();
      std::swap(x, y);
    }
    LaurentScalar g;
    if (x.empty()) return g;
    std::size_t z = 0;
    while (x[z] == 0) ++z;
    const Rational lead = x[z];
    for (std::size_t i = z; i < x.size(); ++i) g.coeffs_.push_back(x[i] / lead);
    return g;
  }

  /// Exponent bound below which the value is known (+inf encoded as max).
  std::int64_t known_end() const {
    if (!truncated_) return std::numeric_limits<std::int64_t>::max();
    return is_zero() ? lead_ : lead_ + prec_;
  }

  /// Declares the value known only below t^end: digits from `end` on are
  /// discarded and the result is flagged truncated.
  LaurentScalar known_to(std::int64_t end) const {
    if (end >= known_end()) return *this;
    LaurentScalar s = *this;
    s.truncated_ = true;
    if (is_zero() || lead_ >= end) {
      s.coeffs_.clear();
      s.lead_ = end;
      s.prec_ = 1;
      return s;
    }
    s.prec_ = std::min(prec_, end - lead_);
    if (static_cast<std::int64_t>(s.coeffs_.size()) > s.prec_) s.coeffs_.resize(static_cast<std::size_t>(s.prec_));
    s.trim();
    if (s.is_zero()) s.lead_ = end;
    return s;
  }

  LaurentScalar operator-() const {
    LaurentScalar s = *this;
    for (auto& c : s.coeffs_) c = -c;
    return s;
  }

  friend LaurentScalar operator+(const LaurentScalar& a, const LaurentScalar& b) {
    return add(a, b, false);
  }
  friend LaurentScalar operator-(const LaurentScalar& a, const LaurentScalar& b) {
    return add(a, b, true);
  }

  friend LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b) {
    LaurentScalar r;
    r.prec_ = std::min(a.prec_, b.prec_);
    r.truncated_ = a.truncated_ || b.truncated_;
    if (a.is_zero() || b.is_zero()) {
      const LaurentScalar& z = a.is_zero() ? a : b;
      const LaurentScalar& o = a.is_zero() ? b : a;
      r.truncated_ = z.truncated_;
      r.lead_ = z.truncated_ ? z.lead_ + (o.is_zero() ? 0 : o.lead_) : 0;
      return r;
    }
    r.lead_ = a.lead_ + b.lead_;
    const std::size_t len = std::min<std::size_t>(
        a.coeffs_.size() + b.coeffs_.size() - 1, static_cast<std::size_t>(std::min<std::int64_t>(r.prec_, 1 << 20)));
    r.coeffs_.assign(len, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        if (i + j >= len) {
          if (b.coeffs_[j] != 0) r.truncated_ = true;
          continue;
        }
        r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    r.trim();
    return r;
  }

  friend LaurentScalar operator/(const LaurentScalar& a, const LaurentScalar& b) {
    if (b.is_zero()) throw Error(ErrorCode::kDivisionByZero, "scalar division by zero");
    LaurentScalar r;
    r.prec_ = std::min(a.prec_, b.prec_);
    r.truncated_ = a.truncated_ || b.truncated_;
    if (a.is_zero()) {
      r.lead_ = a.truncated_ ? a.lead_ - b.lead_ : 0;
      return r;
    }
    std::int64_t window = r.prec_ >= kUnboundedPrec ? kDefaultPrecT : r.prec_;
    if (r.prec_ >= kUnboundedPrec) {
      window = std::max<std::int64_t>(
          b.coeffs_.size() == 1 ? 1 : kDefaultPrecT, static_cast<std::int64_t>(a.coeffs_.size()));
    }
    r.lead_ = a.lead_ - b.lead_;
    std::vector<Rational> rem = a.coeffs_;
    const std::size_t w = static_cast<std::size_t>(window);
    if (rem.size() < w + b.coeffs_.size()) rem.resize(w + b.coeffs_.size(), Rational(0));
    r.coeffs_.assign(w, Rational(0));
    const Rational inv_b0 = 1 / b.coeffs_.front();
    for (std::size_t k = 0; k < w; ++k) {
      if (rem[k] == 0) continue;
      Rational q = rem[k] * inv_b0;
      r.coeffs_[k] = q;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) rem[k + j] -= q * b.coeffs_[j];
    }
    if (std::any_of(rem.begin() + static_cast<std::ptrdiff_t>(w), rem.end(),
                    [](const Rational& x) { return x != 0; })) {
      r.truncated_ = true;
    }
    if (r.prec_ >= kUnboundedPrec && r.truncated_ && !(a.truncated_ || b.truncated_)) {
      r.prec_ = kDefaultPrecT;
    }
    r.trim();
    return r;
  }

  LaurentScalar& operator+=(const LaurentScalar& o) { return *this = *this + o; }
  LaurentScalar& operator-=(const LaurentScalar& o) { return *this = *this - o; }
  LaurentScalar& operator*=(const LaurentScalar& o) { return *this = *this * o; }
  LaurentScalar& operator/=(const LaurentScalar& o) { return *this = *this / o; }

  /// Value equality on stored coefficients; precision bookkeeping is ignored.
  friend bool operator==(const LaurentScalar& a, const LaurentScalar& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.lead_ == b.lead_ && a.coeffs_ == b.coeffs_;
  }

  /// Canonical literal, e.g. `1/2 - 3*t^2 + t^-1` sorted by exponent.
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const Rational& c = coeffs_[i];
      if (c == 0) continue;
      const std::int64_t k = lead_ + static_cast<std::int64_t>(i);
      Rational mag = abs(c);
      if (first) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      first = false;
      if (k == 0) {
        out += mag.get_str();
      } else {
        if (mag != 1) out += mag.get_str() + "*";
        out += k == 1 ? std::string("t") : "t^" + std::to_string(k);
      }
    }
    return out;
  }

 private:
  static void check_prec(std::int64_t prec) {
    if (prec <= 0) throw Error(ErrorCode::kDomain, "prec_t must be positive");
  }

  /// Dense division in Q[t]: rem <- rem mod d, q <- rem div d. True when the
  /// remainder vanishes.
  static bool divide_poly(std::vector<Rational>& rem, const std::vector<Rational>& d, std::vector<Rational>& q) {
    q.clear();
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    if (rem.size() < d.size()) return rem.empty();
    const std::size_t nd = d.size();
    q.assign(rem.size() - nd + 1, Rational(0));
    for (std::size_t i = rem.size(); i-- >= nd;) {
      const Rational c = rem[i] / d[nd - 1];
      if (c == 0) continue;
      q[i - (nd - 1)] = c;
      for (std::size_t j = 0; j < nd; ++j) rem[i - (nd - 1) + j] -= c * d[j];
    }
    rem.resize(nd - 1);
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    return rem.empty();
  }

  /// Strips leading/trailing zero coefficients.
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    std::size_t z = 0;
    while (z < coeffs_.size() && coeffs_[z] == 0) ++z;
    if (z > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(z));
      lead_ += static_cast<std::int64_t>(z);
    }
  }


  static LaurentScalar add(const LaurentScalar& a, const LaurentScalar& b, bool negate_b) {
    LaurentScalar r;
    // Exact operands cap the relative window; truncated ones are limited by
    // their absolute known bound instead, which does not move with the
    // result's lead.
    r.prec_ = kUnboundedPrec;
    for (const LaurentScalar* s : {&a, &b}) {
      if (!s->truncated_) r.prec_ = std::min(r.prec_, s->prec_);
    }
    r.truncated_ = a.truncated_ || b.truncated_;
    const std::int64_t end = std::min(a.known_end(), b.known_end());
    if (a.is_zero() && b.is_zero()) {
      r.lead_ = r.truncated_ ? end : 0;
      return r;
    }
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi = std::numeric_limits<std::int64_t>::min();
    for (const LaurentScalar* s : {&a, &b}) {
      if (s->is_zero()) continue;
      lo = std::min(lo, s->lead_);
      hi = std::max(hi, s->lead_ + static_cast<std::int64_t>(s->coeffs_.size()));
    }
    hi = std::min(hi, end);
    std::vector<Rational> sum(hi > lo ? static_cast<std::size_t>(hi - lo) : 0, Rational(0));
    auto accumulate = [&](const LaurentScalar& s, bool neg) {
      for (std::size_t i = 0; i < s.coeffs_.size(); ++i) {
        std::int64_t k = s.lead_ + static_cast<std::int64_t>(i);
        if (k >= hi) {
          if (s.coeffs_[i] != 0) r.truncated_ = true;
          continue;
        }
        if (neg) {
          sum[static_cast<std::size_t>(k - lo)] -= s.coeffs_[i];
        } else {
          sum[static_cast<std::size_t>(k - lo)] += s.coeffs_[i];
        }
      }
    };
    if (!a.is_zero()) accumulate(a, false);
    if (!b.is_zero()) accumulate(b, negate_b);
    r.lead_ = lo;
    r.coeffs_ = std::move(sum);
    r.trim();
    if (r.is_zero()) {
      // Known to vanish below the operands' common known bound.
      r.lead_ = !r.truncated_ ? 0 : end != std::numeric_limits<std::int64_t>::max() ? end : hi;
      return r;
    }
    // Cancellation of a truncated operand shrinks the honest window.
    std::int64_t window = r.prec_;
    if (end != std::numeric_limits<std::int64_t>::max()) window = std::min(window, end - r.lead_);
    if (static_cast<std::int64_t>(r.coeffs_.size()) > window) {
      r.coeffs_.resize(static_cast<std::size_t>(window));
      r.truncated_ = true;
      r.trim();
    }
    if (r.truncated_ && end != std::numeric_limits<std::int64_t>::max()) {
      r.prec_ = std::max<std::int64_t>(1, std::min(r.prec_, end - r.lead_));
    }
    return r;
  }

  std::int64_t lead_ = 0;
  std::vector<Rational> coeffs_;
  std::int64_t prec_ = kUnboundedPrec;
  bool truncated_ = false;
};

inline std::ostream& operator<<(std::ostream& os, const LaurentScalar& s) {
  return os << s.to_string();
}

}  // namespace nagcd
