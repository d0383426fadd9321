#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nagcd/error.hpp"
#include "nagcd/generic_sampling.hpp"
#include "nagcd/tate_series.hpp"

namespace nagcd {

/// u = (u_1, ..., u_{m-1}) defining z_j -> z_j + u_j z_m, z_m fixed.
template <ValuedScalar S>
struct Shear {
  std::vector<S> u;

  bool is_identity() const {
    for (const auto& x : u) {
      if (!x.is_zero()) return false;
    }
    return true;
  }
  Shear inverse() const {
    Shear s;
    for (const auto& x : u) s.u.push_back(-x);
    return s;
  }
  friend bool operator==(const Shear&, const Shear&) = default;
};

template <ValuedScalar S>
Shear<S> identity_shear(std::size_t m) {
  return Shear<S>{std::vector<S>(m == 0 ? 0 : m - 1)};
}

/// f o sigma_u. Total degree is preserved, so the cap loses nothing.
template <ValuedScalar S>
TateSeries<S> apply_shear(const TateSeries<S>& f, const Shear<S>& s) {
  const std::size_t m = f.nvars();
  if (m == 0 ? !s.u.empty() : s.u.size() != m - 1) {
    throw Error(ErrorCode::kDomain, "shear length must be m-1");
  }
  for (const auto& x : s.u) {
    if (x.val() < Valuation(0)) throw Error(ErrorCode::kDomain, "shear entries must be integral");
  }
  if (s.is_identity()) return f;

  const int cap = f.deg_cap();
  std::map<std::pair<std::size_t, int>, TateSeries<S>> cache;
  auto linear_pow = [&](std::size_t j, int e) -> const TateSeries<S>& {
    auto key = std::make_pair(j, e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    TateSeries<S> lin = TateSeries<S>::variable(m, cap, j);
    lin.add_term(MultiIndex::unit(m, m - 1), s.u[j]);
    return cache.emplace(key, pow(lin, e)).first->second;
  };

  TateSeries<S> out(m, cap);
  out.copy_flags_from(f);
  for (const auto& [g, c] : f.entries()) {
    TateSeries<S> term = TateSeries<S>::monomial(m, cap, MultiIndex::unit(m, m - 1, g[m - 1]), c);
    for (std::size_t j = 0; j + 1 < m; ++j) {
      if (g[j] > 0) term = term * linear_pow(j, g[j]);
    }
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Distinguishedness

struct Distinguished {
  std::optional<int> degree;
  bool certified = false;  // every z_m-coefficient was inspectable
};

/// The n with A_n a unit, |f| = |A_n| r^n and |A_j| r^j < |A_n| r^n for
/// j > n, writing f = sum_j A_j z_m^j.
template <ValuedScalar S>
Distinguished distinguished_degree(const TateSeries<S>& f, LogRadius r) {
  if (f.is_zero()) throw Error(ErrorCode::kDomain, "distinguished_degree of the zero series");
  if (f.nvars() == 0) throw Error(ErrorCode::kDomain, "distinguished_degree needs m >= 1");
  const Valuation gv = gauss_val(f, r);
  const auto parts = split_last(f);
  int n = -1;
  for (int j = static_cast<int>(parts.size()) - 1; j >= 0; --j) {
    if (parts[j].is_zero()) continue;
    if (gauss_val(parts[j], r) + Valuation(r.rho * j) == gv) {
      n = j;
      break;
    }
  }
  Distinguished d;
  d.certified = !f.truncated();
  if (n >= 0 && is_unit(parts[n], r)) d.degree = n;
  return d;
}

// ---------------------------------------------------------------------------
// Shear sampling

namespace detail {

/// Residue polynomial in (u_1..u_{m-1}) whose vanishing cancels the top
/// attaining degree of f after shearing: the residues of a_g / a_mu over
/// attaining terms of total degree |mu|.
template <ValuedScalar S>
ResiduePoly shear_obstruction(const TateSeries<S>& f, LogRadius r) {
  const std::size_t m = f.nvars();
  const MultiIndex mu = leading_index(f, r);
  const S a_mu = f.coeff(mu);
  ResiduePoly p(m - 1);
  for (const auto& [g, c] : f.terms()) {
    if (g.total() != mu.total() || c.val() != a_mu.val()) continue;
    std::vector<int> e(g.exponents().begin(), g.exponents().end() - 1);
    p.add_term(e, (c / a_mu).residue());
  }
  return p;
}

template <ValuedScalar S>
bool shear_ok(const std::vector<TateSeries<S>>& fs, const std::vector<LogRadius>& rhos, const Shear<S>& s) {
  for (const auto& f : fs) {
    const TateSeries<S> h = apply_shear(f, s);
    for (LogRadius r : rhos) {
      if (gauss_val(h, r) != gauss_val(f, r)) return false;
      if (!distinguished_degree(h, r).degree) return false;
    }
  }
  return true;
}

}  // namespace detail

/// A shear making every f simultaneously z_m-distinguished at every radius,
/// preserving Gauss valuations. The identity is tried first.
template <ValuedScalar S>
Shear<S> generic_shear(const std::vector<TateSeries<S>>& fs, const std::vector<LogRadius>& rhos, Rng& rng,
                       const SamplingOptions& opts = {}) {
  if (fs.empty()) throw Error(ErrorCode::kDomain, "generic_shear needs at least one series");
  const std::size_t m = fs.front().nvars();
  for (const auto& f : fs) {
    if (f.is_zero()) throw Error(ErrorCode::kDomain, "generic_shear of the zero series");
    if (f.nvars() != m) throw Error(ErrorCode::kDomain, "variable-count mismatch");
  }
  Shear<S> id = identity_shear<S>(m);
  if (detail::shear_ok(fs, rhos, id)) return id;
  if (m <= 1) throw Error(ErrorCode::kNotDistinguished, "one-variable series not distinguished");

  ResiduePoly bad = ResiduePoly::constant(m - 1, 1);
  for (const auto& f : fs) {
    for (LogRadius r : rhos) bad = bad * detail::shear_obstruction(f, r);
  }
  for (int attempt = 0; attempt < opts.retry_cap; ++attempt) {
    Shear<S> s{sample_generic_tuple<S>(rng, m - 1, bad, opts)};
    if (detail::shear_ok(fs, rhos, s)) return s;
  }
  throw Error(ErrorCode::kRetryExceeded, "generic_shear: retry cap exceeded; precision too small to certify");
}

// ---------------------------------------------------------------------------
// Division

namespace detail {

/// (x mod z_m^n, x div z_m^n)
template <ValuedScalar S>
std::pair<TateSeries<S>, TateSeries<S>> split_at(const TateSeries<S>& x, int n) {
  const std::size_t m = x.nvars();
  TateSeries<S> low(m, x.deg_cap());
  TateSeries<S> high(m, x.deg_truncated() ? x.deg_cap() - n : x.deg_cap());
  low.copy_flags_from(x);
  high.copy_flags_from(x);
  for (const auto& [g, c] : x.entries()) {
    if (g[m - 1] < n) {
      low.add_term(g, c);
    } else {
      MultiIndex h = g;
      h[m - 1] -= n;
      high.add_term(h, c);
    }
  }
  return {low, high};
}

template <ValuedScalar S>
TateSeries<S> shift_up(const TateSeries<S>& x, int n) {
  TateSeries<S> out(x.nvars(), x.deg_cap());
  out.copy_flags_from(x);
  for (const auto& [g, c] : x.entries()) {
    MultiIndex h = g;
    h[x.nvars() - 1] += n;
    out.add_term(h, c);
  }
  return out;
}

}  // namespace detail

/// How much of the defect each approximation step removes.
enum class DivisionSchedule {
  kFull,      // the whole part of z_m-degree >= n
  kMonomial,  // a single lightest term per step
};

template <ValuedScalar S>
struct DivisionResult {
  TateSeries<S> quotient;
  TateSeries<S> remainder;  // z_m-degree < n
  int degree = 0;           // the distinguished degree n
  bool exact = true;        // false when the approximation was stopped
  int steps = 0;
};

/// Working t-precision for a computation on the given inputs.
template <ValuedScalar S>
std::int64_t working_prec(std::initializer_list<const TateSeries<S>*> xs) {
  std::int64_t p = kUnboundedPrec;
  for (const auto* x : xs) p = std::min(p, x->prec());
  return p >= kUnboundedPrec ? kDefaultPrecT : p;
}

/// g = q f + rem with deg_{z_m} rem < n, by successive approximation.
template <ValuedScalar S>
DivisionResult<S> weierstrass_divide(const TateSeries<S>& g, const TateSeries<S>& f, LogRadius r,
                                     DivisionSchedule schedule = DivisionSchedule::kFull) {
  if (f.is_zero()) throw Error(ErrorCode::kDivisionByZero, "Weierstrass division by zero");
  if (g.nvars() != f.nvars()) throw Error(ErrorCode::kDomain, "variable-count mismatch");
  const Distinguished dist = distinguished_degree(f, r);
  if (!dist.degree) throw Error(ErrorCode::kNotDistinguished, "divisor is not z_m-distinguished at this radius");
  const int n = *dist.degree;
  const std::size_t m = f.nvars();
  const int cap = std::min(g.deg_cap(), f.deg_cap());

  auto [f_low, f_high] = detail::split_at(f.with_deg_cap(cap), n);
  const TateSeries<S> f_high_inv = invert_unit(f_high, r);
  const Valuation gv_f = gauss_val(f, r);

  DivisionResult<S> res{TateSeries<S>(m, cap), TateSeries<S>(m, cap), n, true, 0};
  if (g.is_zero()) return res;
  const Valuation stop = gauss_val(g, r) + Valuation(working_prec<S>({&g, &f}));

  TateSeries<S> d = g.with_deg_cap(cap);  // d = g - q f throughout
  // Smallest weight of a product term lost to the degree cap: past it the
  // computed d no longer equals g - q f.
  Valuation dropped = Valuation::infinity();
  constexpr int kMaxSteps = 1 << 16;
  for (;;) {
    auto [d_low, d_high] = detail::split_at(d, n);
    // What is still owed: the terms of d_high, plus whatever its
    // coefficients' precision leaves open.
    const Valuation shift(r.rho * n);
    const Valuation owed = d_high.is_zero() ? Valuation::infinity() : gauss_val(d_high, r) + shift;
    const Valuation noise = min(weight_horizon(d_high, r) + shift, dropped);
    if (owed >= min(stop, noise)) {
      const Valuation w = min(owed, noise);
      res.remainder = d_low;
      if (w.is_finite()) {
        res.exact = false;
        res.quotient = cap_weight(res.quotient, w - gv_f.value(), r);
        res.remainder = cap_weight(d_low, w, r);
      }
      break;
    }
    if (++res.steps > kMaxSteps) throw Error(ErrorCode::kIndeterminate, "Weierstrass division did not settle");
    TateSeries<S> step(m, cap);
    if (schedule == DivisionSchedule::kFull) {
      step = d_high;
    } else {
      // Lightest term, graded-lex largest among ties.
      auto best = d_high.terms().rbegin();
      for (auto it = d_high.terms().rbegin(); it != d_high.terms().rend(); ++it) {
        if (term_weight(it->first, it->second, r) < term_weight(best->first, best->second, r)) best = it;
      }
      step.add_term(best->first, best->second);
    }
    TateSeries<S> h = step * f_high_inv;
    h.adopt_as_polynomial();  // our choice of correction, so d below stays exact mod degree > D
    res.quotient += h;
    d -= multiply_tracked(h, f, r, dropped);
    d.adopt_as_polynomial();  // the loss is accounted for in `dropped`
  }
  for (const auto* x : {&g, &f}) {
    res.quotient.copy_flags_from(*x);
    res.remainder.copy_flags_from(*x);
  }
  // The true quotient is a series; ours is its image modulo degree > D.
  if (f_high_inv.deg_truncated()) res.quotient.mark_deg_truncated();
  return res;
}

// ---------------------------------------------------------------------------
// Weierstrass polynomials

/// Monic in z_m with |W|_r = r^n.
template <ValuedScalar S>
bool is_weierstrass_poly(const TateSeries<S>& w, LogRadius r) {
  if (w.is_zero() || w.nvars() == 0) return false;
  const auto parts = split_last(w);
  const int n = last_degree(w);
  const TateSeries<S>& lead = parts[static_cast<std::size_t>(n)];
  if (!(lead == TateSeries<S>::one(lead.nvars(), lead.deg_cap()))) return false;
  return gauss_val(w, r) == Valuation(r.rho * n);
}

template <ValuedScalar S>
struct Preparation {
  TateSeries<S> unit;   // u
  TateSeries<S> poly;   // W, monic in z_m
  int degree = 0;
  bool exact = true;

  /// A_0, ..., A_{n-1} in the first m-1 variables.
  std::vector<TateSeries<S>> coefficients() const {
    auto parts = split_last(poly);
    parts.resize(static_cast<std::size_t>(degree));
    return parts;
  }
};

/// f = u W with u a unit and W a Weierstrass polynomial, via z_m^n = q f + rem.
template <ValuedScalar S>
Preparation<S> weierstrass_prep(const TateSeries<S>& f, LogRadius r,
                                DivisionSchedule schedule = DivisionSchedule::kFull) {
  if (f.is_zero()) throw Error(ErrorCode::kDomain, "weierstrass_prep of the zero series");
  const Distinguished dist = distinguished_degree(f, r);
  if (!dist.degree) throw Error(ErrorCode::kNotDistinguished, "series is not z_m-distinguished at this radius");
  const int n = *dist.degree;
  const std::size_t m = f.nvars();
  const auto zn = TateSeries<S>::monomial(m, f.deg_cap(), MultiIndex::unit(m, m - 1, n), S(Rational(1)));
  DivisionResult<S> div = weierstrass_divide(zn, f, r, schedule);
  Preparation<S> p{invert_unit(div.quotient, r), zn - div.remainder, n, div.exact && !f.truncated()};
  if (!p.exact) p.poly.mark_truncated();
  return p;
}

// ---------------------------------------------------------------------------
// Factor normalization

/// Leading z_m-coefficient of f as a series in the first m-1 variables.
template <ValuedScalar S>
TateSeries<S> leading_z_coefficient(const TateSeries<S>& f) {
  if (f.is_zero()) throw Error(ErrorCode::kDomain, "leading coefficient of zero");
  return split_last(f)[static_cast<std::size_t>(last_degree(f))];
}

template <ValuedScalar S>
struct NormalizedFactors {
  TateSeries<S> w1, w2;
  TateSeries<S> u1, u2;  // in m-1 variables; f_j = u_j W_j
};

/// Divides f_j by its leading z_m-coefficient, which has to be a unit.
template <ValuedScalar S>
TateSeries<S> make_monic(const TateSeries<S>& f, LogRadius r, TateSeries<S>* lead_out = nullptr) {
  const TateSeries<S> lead = leading_z_coefficient(f);
  if (!is_unit(lead, r)) throw Error(ErrorCode::kNotUnit, "leading z_m-coefficient is not a unit");
  const int n = last_degree(f);
  TateSeries<S> w = f * lift_to(invert_unit(lead, r), f.nvars(), f.deg_cap());
  // The product of a unit with its inverse is 1 exactly at truncation.
  auto parts = split_last(w);
  parts.resize(static_cast<std::size_t>(n) + 1, TateSeries<S>(f.nvars() - 1, f.deg_cap()));
  parts[static_cast<std::size_t>(n)] = TateSeries<S>::one(f.nvars() - 1, f.deg_cap());
  TateSeries<S> out = join_last(parts, f.nvars(), f.deg_cap());
  out.copy_flags_from(w);
  if (lead_out) *lead_out = lead;
  return out;
}

template <ValuedScalar S>
NormalizedFactors<S> normalize_wp_factors(const TateSeries<S>& w, const TateSeries<S>& f1, const TateSeries<S>& f2,
                                          LogRadius r) {
  if (!agree(f1 * f2, w, r)) throw Error(ErrorCode::kDomain, "normalize_wp_factors: f1*f2 differs from W");
  if (!is_weierstrass_poly(w, r)) throw Error(ErrorCode::kDomain, "normalize_wp_factors: W is not Weierstrass");
  NormalizedFactors<S> out;
  out.w1 = make_monic(f1, r, &out.u1);
  out.w2 = make_monic(f2, r, &out.u2);
  if (!is_weierstrass_poly(out.w1, r) || !is_weierstrass_poly(out.w2, r)) {
    throw Error(ErrorCode::kDomain, "normalized factor is not a Weierstrass polynomial");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact division

enum class DivStatus { kExact, kNotDivisible, kIndeterminate };

inline const char* div_status_name(DivStatus s) {
  switch (s) {
    case DivStatus::kExact: return "exact";
    case DivStatus::kNotDivisible: return "not_divisible";
    case DivStatus::kIndeterminate: return "indeterminate";
  }
  return "?";
}

namespace detail {

/// For exact a and c, the retained part of a truncated quotient q is the
/// exact quotient when it multiplies back to a.
template <ValuedScalar S>
TateSeries<S> exact_if_checks(TateSeries<S> q, const TateSeries<S>& a, const TateSeries<S>& c) {
  if (!q.truncated() || a.truncated() || c.truncated()) return q;
  TateSeries<S> q0 = q.retained();
  const TateSeries<S> back = q0 * c;
  return !back.truncated() && back == a ? q0 : q;
}

}  // namespace detail

template <ValuedScalar S>
struct ExactDivision {
  DivStatus status = DivStatus::kIndeterminate;
  TateSeries<S> quotient;
};

/// a / c in A^m(r), decided by the remainder of a Weierstrass division
/// after a generic shear.
template <ValuedScalar S>
ExactDivision<S> exact_divide(const TateSeries<S>& a, const TateSeries<S>& c, LogRadius r, Rng& rng) {
  if (c.is_zero()) throw Error(ErrorCode::kDivisionByZero, "exact_divide by zero");
  const std::size_t m = c.nvars();
  const int cap = std::min(a.deg_cap(), c.deg_cap());
  if (a.is_zero()) return {DivStatus::kExact, TateSeries<S>(m, cap)};
  if (auto q = exact_poly_divide(a, c)) return {DivStatus::kExact, q->with_deg_cap(cap)};
  if (is_unit(c, r)) return {DivStatus::kExact, detail::exact_if_checks(a * invert_unit(c, r), a, c)};
  if (m == 0) throw Error(ErrorCode::kDomain, "zero scalar divisor");

  Shear<S> s;
  try {
    s = generic_shear<S>({c}, {r}, rng);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kRetryExceeded) throw;
    return {DivStatus::kIndeterminate, TateSeries<S>(m, cap)};
  }
  const TateSeries<S> as = apply_shear(a, s), cs = apply_shear(c, s);
  DivisionResult<S> div = weierstrass_divide(as, cs, r);
  if (!div.remainder.is_zero()) return {DivStatus::kNotDivisible, TateSeries<S>(m, cap)};
  return {DivStatus::kExact, detail::exact_if_checks(apply_shear(div.quotient, s.inverse()), a, c)};
}

}  // namespace nagcd
