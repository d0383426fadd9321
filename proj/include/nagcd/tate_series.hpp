#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nagcd/error.hpp"
#include "nagcd/generic_sampling.hpp"
#include "nagcd/laurent_scalar.hpp"
#include "nagcd/multi_index.hpp"
#include "nagcd/scalar_concepts.hpp"
#include "nagcd/valuation.hpp"

namespace nagcd {

inline constexpr int kDefaultDegCap = 8;

/// r = 2^(-rho). Larger rho means a smaller ball.
struct LogRadius {
  std::int64_t rho = 0;

  constexpr LogRadius() = default;
  constexpr explicit LogRadius(std::int64_t r) : rho(r) {}
  friend constexpr auto operator<=>(const LogRadius&, const LogRadius&) = default;
};

/// Total-degree-capped power series sum a_gamma z^gamma in m variables.
///
/// Terms of total degree above the cap are dropped on construction and on
/// multiplication; dropping a nonzero term, or storing a truncated
/// coefficient, sets the truncation flag, which then sticks to everything
/// computed from this value. m = 0 is allowed and models the scalars.
///
/// Coefficients that are zero only up to their t-precision ("holes", O(t^k))
/// are kept apart from the terms: they are not part of the value but still
/// bound the precision of everything computed from it.
template <ValuedScalar S>
class TateSeries {
 public:
  using Scalar = S;
  using TermMap = std::map<MultiIndex, S, GradedLexLess>;

  TateSeries() = default;
  TateSeries(std::size_t m, int deg_cap) : m_(m), deg_cap_(deg_cap) {
    if (deg_cap < 0) throw Error(ErrorCode::kDomain, "degree cap must be non-negative");
  }

  static TateSeries constant(std::size_t m, int deg_cap, const S& c) {
    TateSeries f(m, deg_cap);
    f.add_term(MultiIndex(m), c);
    return f;
  }
  static TateSeries one(std::size_t m, int deg_cap) { return constant(m, deg_cap, S(Rational(1))); }

  /// z_{i+1} (0-based variable index).
  static TateSeries variable(std::size_t m, int deg_cap, std::size_t i) {
    return monomial(m, deg_cap, MultiIndex::unit(m, i), S(Rational(1)));
  }
  static TateSeries monomial(std::size_t m, int deg_cap, const MultiIndex& g, const S& c) {
    TateSeries f(m, deg_cap);
    f.add_term(g, c);
    return f;
  }

  std::size_t nvars() const { return m_; }
  int deg_cap() const { return deg_cap_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  const TermMap& holes() const { return holes_; }

  /// Terms and holes together, for transformations that must carry
  /// precision information along.
  std::vector<std::pair<MultiIndex, S>> entries() const {
    std::vector<std::pair<MultiIndex, S>> out(terms_.begin(), terms_.end());
    out.insert(out.end(), holes_.begin(), holes_.end());
    return out;
  }

  bool truncated() const { return truncated_; }
  void mark_truncated() { truncated_ = true; }
  /// Terms above the cap were discarded: the value is only known modulo
  /// total degree > deg_cap(), not as a polynomial.
  bool deg_truncated() const { return deg_truncated_; }
  void mark_deg_truncated() { truncated_ = deg_truncated_ = true; }
  /// The retained terms are taken as an exact polynomial (a chosen
  /// approximant rather than a truncated value).
  void adopt_as_polynomial() { deg_truncated_ = false; }
  /// The retained terms with their stored digits, as an exact polynomial.
  TateSeries retained() const {
    TateSeries r(m_, deg_cap_);
    for (const auto& [g, c] : terms_) r.add_term(g, c.retained());
    return r;
  }
  /// Inherits the truncation flags of o.
  void copy_flags_from(const TateSeries& o) {
    truncated_ = truncated_ || o.truncated_;
    deg_truncated_ = deg_truncated_ || o.deg_truncated_;
  }

  /// Working t-precision: the smallest coefficient precision.
  std::int64_t prec() const {
    std::int64_t p = kUnboundedPrec;
    for (const auto& [g, c] : terms_) p = std::min<std::int64_t>(p, c.prec());
    return p;
  }

  S coeff(const MultiIndex& g) const {
    if (auto it = terms_.find(g); it != terms_.end()) return it->second;
    if (auto it = holes_.find(g); it != holes_.end()) return it->second;
    return S();
  }
  S constant_term() const { return coeff(MultiIndex(m_)); }

  /// Largest total degree present (-1 for zero).
  int total_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.total(); }
  /// Smallest total degree present (-1 for zero).
  int order() const { return terms_.empty() ? -1 : terms_.begin()->first.total(); }

  /// Degree in variable i (0-based).
  int degree_in(std::size_t i) const {
    int d = -1;
    for (const auto& [g, c] : terms_) d = std::max(d, g[i]);
    return d;
  }

  /// Accumulates c*z^g. Terms above the cap are dropped and flagged.
  void add_term(const MultiIndex& g, const S& c) {
    if (g.size() != m_) throw Error(ErrorCode::kDomain, "multi-index length does not match m");
    if (c.truncated()) truncated_ = true;
    if (c.is_zero() && !c.truncated()) return;
    if (g.total() > deg_cap_) {
      if (!c.is_zero()) truncated_ = deg_truncated_ = true;
      return;
    }
    S sum = c;
    if (auto it = terms_.find(g); it != terms_.end()) {
      sum = it->second + c;
      terms_.erase(it);
    } else if (auto h = holes_.find(g); h != holes_.end()) {
      sum = h->second + c;
      holes_.erase(h);
    }
    if (sum.truncated()) truncated_ = true;
    if (!sum.is_zero()) {
      terms_.emplace(g, sum);
    } else if (sum.truncated()) {
      holes_.emplace(g, sum);
    }
  }

  /// Same value under a different cap.
  TateSeries with_deg_cap(int cap) const {
    TateSeries r(m_, cap);
    r.truncated_ = truncated_;
    r.deg_truncated_ = deg_truncated_;
    for (const auto& [g, c] : terms_) r.add_term(g, c);
    for (const auto& [g, c] : holes_) r.add_term(g, c);
    return r;
  }

  TateSeries operator-() const {
    TateSeries r = *this;
    for (auto& [g, c] : r.terms_) c = -c;
    for (auto& [g, c] : r.holes_) c = -c;
    return r;
  }

  friend TateSeries operator+(const TateSeries& a, const TateSeries& b) {
    check_compatible(a, b);
    TateSeries r(a.m_, std::min(a.deg_cap_, b.deg_cap_));
    r.truncated_ = a.truncated_ || b.truncated_;
    r.deg_truncated_ = a.deg_truncated_ || b.deg_truncated_;
    for (const auto* x : {&a, &b}) {
      for (const auto& [g, c] : x->terms_) r.add_term(g, c);
      for (const auto& [g, c] : x->holes_) r.add_term(g, c);
    }
    return r;
  }
  friend TateSeries operator-(const TateSeries& a, const TateSeries& b) { return a + (-b); }

  friend TateSeries operator*(const TateSeries& a, const TateSeries& b) {
    check_compatible(a, b);
    TateSeries r(a.m_, std::min(a.deg_cap_, b.deg_cap_));
    r.truncated_ = a.truncated_ || b.truncated_;
    r.deg_truncated_ = a.deg_truncated_ || b.deg_truncated_;
    const TateSeries& small = a.terms_.size() <= b.terms_.size() ? a : b;
    const TateSeries& large = &small == &a ? b : a;
    auto multiply = [&r](const TermMap& xs, const TermMap& ys) {
      for (const auto& [gs, cs] : xs) {
        const int ds = gs.total();
        for (const auto& [gl, cl] : ys) {
          if (ds + gl.total() > r.deg_cap_) {
            r.truncated_ = true;
            if (!cs.is_zero() && !cl.is_zero()) r.deg_truncated_ = true;
            break;  // graded order: every later term is at least as large
          }
          r.add_term(gs + gl, cs * cl);
        }
      }
    };
    multiply(small.terms_, large.terms_);
    multiply(small.holes_, large.terms_);
    multiply(small.terms_, large.holes_);
    return r;
  }

  friend TateSeries operator*(const S& s, const TateSeries& f) {
    TateSeries r(f.m_, f.deg_cap_);
    r.truncated_ = f.truncated_;
    r.deg_truncated_ = f.deg_truncated_;
    for (const auto& [g, c] : f.terms_) r.add_term(g, s * c);
    for (const auto& [g, c] : f.holes_) r.add_term(g, s * c);
    return r;
  }

  TateSeries& operator+=(const TateSeries& o) { return *this = *this + o; }
  TateSeries& operator-=(const TateSeries& o) { return *this = *this - o; }
  TateSeries& operator*=(const TateSeries& o) { return *this = *this * o; }

  /// Value equality on retained terms; caps and flags are ignored.
  friend bool operator==(const TateSeries& a, const TateSeries& b) {
    return a.m_ == b.m_ && a.terms_ == b.terms_;
  }


 private:
  static void check_compatible(const TateSeries& a, const TateSeries& b) {
    if (a.m_ != b.m_) throw Error(ErrorCode::kDomain, "variable-count mismatch");
  }

  std::size_t m_ = 0;
  int deg_cap_ = kDefaultDegCap;
  TermMap terms_;
  TermMap holes_;
  bool truncated_ = false;
  bool deg_truncated_ = false;
};

template <ValuedScalar S>
TateSeries<S> pow(const TateSeries<S>& f, int e) {
  TateSeries<S> r = TateSeries<S>::one(f.nvars(), f.deg_cap());
  for (int i = 0; i < e; ++i) r = r * f;
  return r;
}

// ---------------------------------------------------------------------------
// Gauss valuation and the maximum modulus principle

/// Weight of one term: val(a_gamma) + rho*|gamma|.
template <ValuedScalar S>
Valuation term_weight(const MultiIndex& g, const S& c, LogRadius r) {
  return c.val() + Valuation(r.rho * g.total());
}

/// Additive Gauss norm: min over terms of val(a_gamma) + rho*|gamma|.
template <ValuedScalar S>
Valuation gauss_val(const TateSeries<S>& f, LogRadius r) {
  Valuation best = Valuation::infinity();
  for (const auto& [g, c] : f.terms()) best = min(best, term_weight(g, c, r));
  return best;
}

struct GaussValReport {
  Valuation value;
  bool certain = false;  // false when the input carries truncation
};

template <ValuedScalar S>
GaussValReport gauss_val_report(const TateSeries<S>& f, LogRadius r) {
  return {gauss_val(f, r), !f.truncated()};
}

template <ValuedScalar S>
S eval_at(const TateSeries<S>& f, const std::vector<S>& point, LogRadius r) {
  if (point.size() != f.nvars()) throw Error(ErrorCode::kDomain, "point dimension mismatch");
  for (const auto& z : point) {
    if (z.val() < Valuation(r.rho)) {
      throw Error(ErrorCode::kDomain, "evaluation point outside the ball");
    }
  }
  // powers[i][k] = z_i^k
  std::vector<std::vector<S>> powers(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    powers[i].push_back(S(Rational(1)));
    int need = std::max(0, f.degree_in(i));
    for (int k = 1; k <= need; ++k) powers[i].push_back(powers[i].back() * point[i]);
  }
  S acc;
  for (const auto& [g, c] : f.entries()) {
    S term = c;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i] > 0) term = term * powers[i][static_cast<std::size_t>(g[i])];
    }
    acc = acc + term;
  }
  return acc;
}

/// The graded-lex largest multi-index attaining the Gauss valuation.
template <ValuedScalar S>
MultiIndex leading_index(const TateSeries<S>& f, LogRadius r) {
  if (f.is_zero()) throw Error(ErrorCode::kDomain, "leading_index of the zero series");
  const Valuation v = gauss_val(f, r);
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    if (term_weight(it->first, it->second, r) == v) return it->first;
  }
  throw Error(ErrorCode::kDomain, "unreachable: no attaining term");
}

// ---------------------------------------------------------------------------
// Units

/// a*b, also lowering `dropped` to the smallest weight at radius r of a
/// product term discarded by the degree cap.
template <ValuedScalar S>
TateSeries<S> multiply_tracked(const TateSeries<S>& a, const TateSeries<S>& b, LogRadius r, Valuation& dropped) {
  TateSeries<S> p = a * b;
  if (a.is_zero() || b.is_zero() || a.total_degree() + b.total_degree() <= p.deg_cap()) return p;
  for (const auto& [ga, ca] : a.terms()) {
    const Valuation wa = term_weight(ga, ca, r);
    for (auto it = b.terms().rbegin(); it != b.terms().rend(); ++it) {
      if (ga.total() + it->first.total() <= p.deg_cap()) break;
      dropped = min(dropped, wa + term_weight(it->first, it->second, r));
    }
  }
  return p;
}

/// Unit criterion: a_0 != 0 and val(a_gamma / a_0) + rho*|gamma| > 0 for
/// every non-constant term.
template <ValuedScalar S>
bool is_unit(const TateSeries<S>& f, LogRadius r) {
  const S a0 = f.constant_term();
  if (a0.is_zero()) return false;
  const std::int64_t v0 = a0.val().value();
  for (const auto& [g, c] : f.terms()) {
    if (g.is_zero()) continue;
    if (!(c.val() - v0 + Valuation(r.rho * g.total()) > Valuation(0))) return false;
  }
  return true;
}

/// Geometric-series inverse; the series stops at the degree cap.
template <ValuedScalar S>
TateSeries<S> invert_unit(const TateSeries<S>& f, LogRadius r, Valuation* tail = nullptr) {
  if (!is_unit(f, r)) throw Error(ErrorCode::kNotUnit, "invert_unit: series is not a unit on the ball");
  const S a0 = f.constant_term();
  const S a0_inv = S(Rational(1)) / a0;
  // f = a0 (1 - h) with h free of constant term.
  TateSeries<S> h(f.nvars(), f.deg_cap());
  h.copy_flags_from(f);
  for (const auto& [g, c] : f.entries()) {
    if (!g.is_zero()) h.add_term(g, -(c * a0_inv));
  }
  TateSeries<S> sum = TateSeries<S>::one(f.nvars(), f.deg_cap());
  TateSeries<S> power = sum;
  Valuation dropped = Valuation::infinity();
  // h has no constant term, so the powers leave the cap after D steps.
  for (int k = 1; k <= f.deg_cap() + 1; ++k) {
    power = multiply_tracked(power, h, r, dropped);
    if (power.is_zero() && power.holes().empty()) break;
    sum += power;
  }
  TateSeries<S> out = a0_inv * sum;
  out.copy_flags_from(f);
  if (tail) *tail = dropped.is_finite() ? dropped + a0_inv.val() : dropped;
  return out;
}

/// Principal square root of a series with constant term exactly 1.
template <ValuedScalar S>
TateSeries<S> series_sqrt(const TateSeries<S>& f) {
  if (!(f.constant_term() == S(Rational(1)))) {
    throw Error(ErrorCode::kDomain, "series_sqrt: constant term must be 1");
  }
  const TateSeries<S> h = f - TateSeries<S>::one(f.nvars(), f.deg_cap());
  TateSeries<S> sum = TateSeries<S>::one(f.nvars(), f.deg_cap());
  TateSeries<S> power = sum;
  Rational binom = 1;  // binom(1/2, k)
  for (int k = 1; k <= f.deg_cap(); ++k) {
    binom = binom * (Rational(1, 2) - (k - 1)) / k;
    power = power * h;
    if (power.is_zero() && power.holes().empty()) break;
    sum += S(binom) * power;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Structural helpers

/// d/dz_i (0-based).
template <ValuedScalar S>
TateSeries<S> derivative(const TateSeries<S>& f, std::size_t i) {
  // Known modulo degree > D only, f loses one degree of its cap.
  TateSeries<S> r(f.nvars(), f.deg_truncated() ? std::max(0, f.deg_cap() - 1) : f.deg_cap());
  r.copy_flags_from(f);
  for (const auto& [g, c] : f.entries()) {
    if (g[i] == 0) continue;
    MultiIndex h = g;
    h[i] -= 1;
    r.add_term(h, S(Rational(g[i])) * c);
  }
  return r;
}

/// f = sum_j A_j(z_1..z_{m-1}) z_m^j; returns A_0, ..., A_d. When f is
/// only known modulo degree > D, A_j is only known modulo degree > D - j
/// and carries that smaller cap.
template <ValuedScalar S>
std::vector<TateSeries<S>> split_last(const TateSeries<S>& f) {
  if (f.nvars() == 0) throw Error(ErrorCode::kDomain, "split_last needs m >= 1");
  const std::size_t m = f.nvars();
  const int D = f.deg_cap();
  auto part_cap = [&](std::size_t j) { return f.deg_truncated() ? D - static_cast<int>(j) : D; };
  std::vector<TateSeries<S>> out;
  for (const auto& [g, c] : f.entries()) {
    const auto j = static_cast<std::size_t>(g[m - 1]);
    while (out.size() <= j) out.emplace_back(m - 1, part_cap(out.size()));
    std::vector<int> rest(g.exponents().begin(), g.exponents().end() - 1);
    out[j].add_term(MultiIndex(rest), c);
  }
  for (auto& a : out) {
    a.copy_flags_from(f);
  }
  return out;
}

/// Inverse of split_last: sum_j A_j z_m^j in m = A_j.nvars() + 1 variables.
/// A part known modulo degree > c limits the result to cap c + j.
template <ValuedScalar S>
TateSeries<S> join_last(const std::vector<TateSeries<S>>& parts, std::size_t m, int deg_cap) {
  int cap = deg_cap;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (parts[j].deg_truncated()) cap = std::min(cap, parts[j].deg_cap() + static_cast<int>(j));
  }
  TateSeries<S> f(m, cap);
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (parts[j].truncated()) f.mark_truncated();
    if (parts[j].deg_truncated()) f.mark_deg_truncated();
    for (const auto& [g, c] : parts[j].entries()) {
      std::vector<int> e = g.exponents();
      e.push_back(static_cast<int>(j));
      f.add_term(MultiIndex(e), c);
    }
  }
  return f;
}

/// Embeds a series in m-1 variables into m variables (independent of z_m).
template <ValuedScalar S>
TateSeries<S> lift_to(const TateSeries<S>& a, std::size_t m, int deg_cap) {
  return join_last<S>({a}, m, deg_cap);
}

/// Degree in the last variable, -1 for zero.
template <ValuedScalar S>
int last_degree(const TateSeries<S>& f) {
  return f.nvars() == 0 ? (f.is_zero() ? -1 : 0) : f.degree_in(f.nvars() - 1);
}

// ---------------------------------------------------------------------------
// Exact polynomial arithmetic

/// f with every coefficient given an unbounded t-window, so products of
/// exact values stay exact. Truncated series are returned unchanged.
template <ValuedScalar S>
TateSeries<S> widened(const TateSeries<S>& f, int deg_cap) {
  if (f.truncated()) return f.with_deg_cap(deg_cap);
  TateSeries<S> out(f.nvars(), deg_cap);
  for (const auto& [g, c] : f.terms()) out.add_term(g, c.with_prec(kUnboundedPrec));
  return out;
}

/// Exact quotient a/c of polynomials with exact coefficients, when c divides
/// a over the Laurent polynomials in t; nullopt otherwise or when either
/// operand is truncated.
template <ValuedScalar S>
std::optional<TateSeries<S>> exact_poly_divide(const TateSeries<S>& a, const TateSeries<S>& c) {
  if (a.truncated() || c.truncated() || c.is_zero() || a.nvars() != c.nvars()) return std::nullopt;
  const std::size_t m = a.nvars();
  const int work = std::max(a.total_degree(), 0) + std::max(c.total_degree(), 0);
  TateSeries<S> rem = widened(a, work);
  const TateSeries<S> d = widened(c, work);
  const auto& [lg, lc] = *d.terms().rbegin();
  TateSeries<S> q(m, std::max(a.deg_cap(), 0));
  while (!rem.is_zero()) {
    const auto& [g, x] = *rem.terms().rbegin();
    std::vector<int> e(m);
    for (std::size_t i = 0; i < m; ++i) {
      e[i] = g[i] - lg[i];
      if (e[i] < 0) return std::nullopt;
    }
    const std::optional<S> k = x.exact_quotient(lc);
    if (!k) return std::nullopt;
    const MultiIndex h(e);
    if (h.total() > q.deg_cap()) return std::nullopt;
    q.add_term(h, *k);
    rem -= TateSeries<S>::monomial(m, work, h, *k) * d;
    if (rem.truncated()) return std::nullopt;
  }
  return q;
}

/// Divides out the gcd of the coefficients in the Laurent polynomial ring
/// (the identity over fields of constants). Truncated series are returned
/// unchanged.
template <ValuedScalar S>
TateSeries<S> ring_primitive(const TateSeries<S>& f) {
  if (f.truncated() || f.is_zero()) return f;
  S g;
  for (const auto& [e, c] : f.terms()) g = S::ring_gcd(g, c);
  TateSeries<S> out(f.nvars(), f.deg_cap());
  for (const auto& [e, c] : f.terms()) {
    const std::optional<S> k = c.exact_quotient(g);
    if (!k) return f;
    out.add_term(e, *k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Precision horizon

/// Weight from which on f carries no information: the smallest
/// known-digit bound of a truncated coefficient, shifted by the radius.
/// Series with exact coefficients have an infinite horizon.
template <ValuedScalar S>
Valuation weight_horizon(const TateSeries<S>& f, LogRadius r) {
  if (!f.truncated()) return Valuation::infinity();
  Valuation h = Valuation::infinity();
  for (const auto& [g, c] : f.entries()) {
    if (!c.truncated()) continue;
    const std::int64_t end = c.known_end();
    if (end == std::numeric_limits<std::int64_t>::max()) continue;
    h = min(h, Valuation(end + r.rho * g.total()));
  }
  return h;
}

/// Declares f known only below weight w at radius r: every coefficient
/// keeps the digits of weight < w, the rest is discarded.
template <ValuedScalar S>
TateSeries<S> cap_weight(const TateSeries<S>& f, const Valuation& w, LogRadius r) {
  if (w.is_infinite()) return f;
  TateSeries<S> out(f.nvars(), f.deg_cap());
  out.copy_flags_from(f);
  out.mark_truncated();
  for (const auto& [g, c] : f.entries()) out.add_term(g, c.known_to(w.value() - r.rho * g.total()));
  return out;
}

/// a and b agree at truncation: their difference vanishes on retained terms
/// or sits above both precision horizons.
template <ValuedScalar S>
bool agree(const TateSeries<S>& a, const TateSeries<S>& b, LogRadius r) {
  const TateSeries<S> d = a - b;
  if (d.is_zero()) return true;
  const Valuation h = min(weight_horizon(a, r), weight_horizon(b, r));
  return h.is_finite() && gauss_val(d, r) >= h;
}

/// x is negligible against a reference scale: zero, or above the scale's
/// horizon.
template <ValuedScalar S>
bool negligible(const TateSeries<S>& x, const Valuation& scale, std::int64_t prec, LogRadius r) {
  if (x.is_zero()) return true;
  if (prec >= kUnboundedPrec || scale.is_infinite()) return false;
  return gauss_val(x, r) >= scale + Valuation(prec);
}

// ---------------------------------------------------------------------------
// Max-modulus probe

struct ProbeStats {
  int trials = 0;
  int equalities = 0;  // trials with val f(c u) == gauss_val
  int violations = 0;  // trials with val f(c u) < gauss_val; must stay 0
};

/// Evaluates f at (c u_1, ..., c u_m) with c = t^rho and sampled integral u.
template <ValuedScalar S>
ProbeStats generic_max_modulus_probe(const TateSeries<S>& f, LogRadius r, Rng& rng, int trials,
                                     const SamplingOptions& opts = {}) {
  if (f.is_zero()) throw Error(ErrorCode::kDomain, "probe of the zero series");
  const S c = S::uniformizer_power(r.rho);
  const Valuation gv = gauss_val(f, r);
  ProbeStats st;
  for (int i = 0; i < trials; ++i) {
    std::vector<S> u = sample_generic_tuple<S>(rng, f.nvars(), std::nullopt, opts);
    for (auto& x : u) x = c * x;
    const Valuation v = eval_at(f, u, r).val();
    ++st.trials;
    if (v == gv) ++st.equalities;
    if (v < gv) ++st.violations;
  }
  return st;
}

}  // namespace nagcd
