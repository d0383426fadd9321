#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "nagcd/error.hpp"
#include "nagcd/generic_sampling.hpp"
#include "nagcd/scalar_concepts.hpp"
#include "nagcd/tate_series.hpp"
#include "nagcd/weierstrass.hpp"

namespace nagcd {

/// Polynomial in z_m with coefficients in the first m-1 variables; entry j
/// is the coefficient of z_m^j.
template <ValuedScalar S>
using ZPoly = std::vector<TateSeries<S>>;

namespace detail {

template <ValuedScalar S>
void trim(ZPoly<S>& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

template <ValuedScalar S>
int zdeg(const ZPoly<S>& p) {
  return static_cast<int>(p.size()) - 1;
}

template <ValuedScalar S>
ZPoly<S> to_zpoly(const TateSeries<S>& f) {
  ZPoly<S> p = split_last(f);
  trim(p);
  return p;
}

template <ValuedScalar S>
TateSeries<S> from_zpoly(const ZPoly<S>& p, std::size_t m, int cap) {
  if (p.empty()) return TateSeries<S>(m, cap);
  return join_last(p, m, cap);
}

template <ValuedScalar S>
ZPoly<S> scale(const ZPoly<S>& p, const TateSeries<S>& c) {
  ZPoly<S> out;
  out.reserve(p.size());
  for (const auto& a : p) out.push_back(a * c);
  return out;
}

template <ValuedScalar S>
ZPoly<S> sub(const ZPoly<S>& a, const ZPoly<S>& b, const TateSeries<S>& zero) {
  ZPoly<S> out(std::max(a.size(), b.size()), zero);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = out[i] - b[i];
  trim(out);
  return out;
}

template <ValuedScalar S>
ZPoly<S> mul(const ZPoly<S>& a, const ZPoly<S>& b, const TateSeries<S>& zero) {
  if (a.empty() || b.empty()) return {};
  ZPoly<S> out(a.size() + b.size() - 1, zero);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  }
  trim(out);
  return out;
}

/// lc(b)^(deg a - deg b + 1) a = q b + r with deg r < deg b.
template <ValuedScalar S>
std::pair<ZPoly<S>, ZPoly<S>> pseudo_divide(const ZPoly<S>& a, const ZPoly<S>& b, const TateSeries<S>& zero) {
  const int db = zdeg(b);
  const TateSeries<S>& lb = b.back();
  ZPoly<S> rem = a;
  ZPoly<S> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, zero);
  int e = zdeg(a) - db + 1;
  while (!rem.empty() && zdeg(rem) >= db) {
    const int k = zdeg(rem) - db;
    const TateSeries<S> lr = rem.back();
    for (auto& c : q) c = c * lb;
    q[static_cast<std::size_t>(k)] = q[static_cast<std::size_t>(k)] + lr;
    ZPoly<S> shifted(static_cast<std::size_t>(k), zero);
    for (const auto& c : b) shifted.push_back(c * lr);
    rem = sub(scale(rem, lb), shifted, zero);
    --e;
  }
  for (; e > 0; --e) {
    rem = scale(rem, lb);
    q = scale(q, lb);
  }
  trim(q);
  return {q, rem};
}

/// a / d for coefficients known to be divisible; failure means the
/// retained precision cannot confirm it.
template <ValuedScalar S>
TateSeries<S> divide_known(const TateSeries<S>& a, const TateSeries<S>& d, LogRadius r, Rng& rng) {
  ExactDivision<S> q = exact_divide(a, d, r, rng);
  if (q.status != DivStatus::kExact) {
    throw Error(ErrorCode::kIndeterminate, "expected exact division failed at the retained precision");
  }
  return q.quotient;
}

template <ValuedScalar S>
ZPoly<S> divide_known(const ZPoly<S>& p, const TateSeries<S>& d, LogRadius r, Rng& rng) {
  ZPoly<S> out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(divide_known(c, d, r, rng));
  trim(out);
  return out;
}

template <ValuedScalar S>
struct Prs {
  ZPoly<S> last;    // last nonzero remainder
  ZPoly<S> s, t;    // last = s a + t b
};

/// Subresultant pseudo-remainder sequence of a, b (deg a >= deg b), with
/// cofactors when `track` is set.
template <ValuedScalar S>
Prs<S> subresultant_prs(ZPoly<S> a, ZPoly<S> b, LogRadius r, Rng& rng, bool track) {
  const TateSeries<S> zero(a.front().nvars(), a.front().deg_cap());
  const TateSeries<S> one = TateSeries<S>::one(zero.nvars(), zero.deg_cap());
  ZPoly<S> sa{one}, ta, sb, tb{one};
  TateSeries<S> g = one, h = one;
  for (;;) {
    const int delta = zdeg(a) - zdeg(b);
    auto [q, rem] = pseudo_divide(a, b, zero);
    if (rem.empty()) return {b, sb, tb};
    ZPoly<S> sr, tr;
    if (track) {
      const TateSeries<S> lpow = pow(b.back(), delta + 1);
      sr = sub(scale(sa, lpow), mul(q, sb, zero), zero);
      tr = sub(scale(ta, lpow), mul(q, tb, zero), zero);
    }
    const TateSeries<S> beta = g * pow(h, delta);
    a = std::move(b);
    b = divide_known(rem, beta, r, rng);
    if (b.empty()) throw Error(ErrorCode::kIndeterminate, "remainder vanished after normalization");
    if (track) {
      sa = std::move(sb);
      ta = std::move(tb);
      sb = divide_known(sr, beta, r, rng);
      tb = divide_known(tr, beta, r, rng);
    }
    if (zdeg(b) == 0) return {b, sb, tb};
    g = a.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = divide_known(pow(g, delta), pow(h, delta - 1), r, rng);
    }
  }
}

/// Scales f by a monomial scalar so its leading coefficient at radius r
/// has valuation 0 and leading rational coefficient 1.
template <ValuedScalar S>
std::pair<TateSeries<S>, S> canonical_scaling(const TateSeries<S>& f, LogRadius r) {
  const S lead = f.coeff(leading_index(f, r)).leading_term();
  TateSeries<S> out = (S(Rational(1)) / lead) * f;
  return {out, lead};
}

}  // namespace detail

/// gcd representative scaled so its dominant coefficient has valuation 0
/// and leading rational coefficient 1.
template <ValuedScalar S>
TateSeries<S> canonicalize(const TateSeries<S>& f, LogRadius r) {
  if (f.is_zero()) return f;
  return detail::canonical_scaling(f, r).first;
}

// ---------------------------------------------------------------------------
// Contents

template <ValuedScalar S>
struct ContentSplit {
  TateSeries<S> content;   // in m-1 variables
  ZPoly<S> primitive;
};

template <ValuedScalar S>
struct GcdResult;

template <ValuedScalar S>
GcdResult<S> gcd_at_radius(const TateSeries<S>& f1, const TateSeries<S>& f2, LogRadius r, Rng& rng);

/// Content (gcd of the z_m-coefficients) and primitive part of F.
template <ValuedScalar S>
ContentSplit<S> content_and_primitive(const ZPoly<S>& F, LogRadius r, Rng& rng) {
  ZPoly<S> f = F;
  detail::trim(f);
  if (f.empty()) throw Error(ErrorCode::kDomain, "content of the zero polynomial");
  const std::size_t k = f.front().nvars();
  const int cap = f.front().deg_cap();
  TateSeries<S> c = TateSeries<S>::one(k, cap);
  const bool has_unit =
      k == 0 || std::any_of(f.begin(), f.end(), [&](const TateSeries<S>& a) { return is_unit(a, r); });
  if (!has_unit) {
    std::vector<const TateSeries<S>*> nz;
    for (const auto& a : f) {
      if (!a.is_zero()) nz.push_back(&a);
    }
    std::sort(nz.begin(), nz.end(),
              [](const auto* x, const auto* y) { return x->total_degree() < y->total_degree(); });
    c = canonicalize(ring_primitive(*nz.front()), r);
    for (std::size_t i = 1; i < nz.size() && !is_unit(c, r); ++i) c = gcd_at_radius(c, *nz[i], r, rng).gcd;
  }
  if (is_unit(c, r)) return {TateSeries<S>::one(k, cap), f};
  return {c, detail::divide_known(f, c, r, rng)};
}

// ---------------------------------------------------------------------------
// Greatest common divisors

template <ValuedScalar S>
struct GcdResult {
  TateSeries<S> gcd;
  Shear<S> shear_used;
  TateSeries<S> cofactor1, cofactor2;
  bool certified = true;
};

namespace detail {

/// z_m-polynomial with the same gcd's in A^m(r) as f: f itself when its
/// coefficients are exact, otherwise its Weierstrass polynomial.
template <ValuedScalar S>
std::pair<ZPoly<S>, bool> prs_input(const TateSeries<S>& f, LogRadius r) {
  if (!f.truncated()) return {to_zpoly(f), true};
  const Preparation<S> p = weierstrass_prep(f, r);
  return {to_zpoly(p.poly), p.exact};
}

template <ValuedScalar S>
GcdResult<S> gcd_with_zero(const TateSeries<S>& f, std::size_t which, LogRadius r) {
  const std::size_t m = f.nvars();
  auto [g, lead] = canonical_scaling(f, r);
  GcdResult<S> out{g, identity_shear<S>(m), {}, {}, !f.truncated()};
  TateSeries<S> cof = TateSeries<S>::constant(m, f.deg_cap(), lead);
  TateSeries<S> zero(m, f.deg_cap());
  out.cofactor1 = which == 0 ? cof : zero;
  out.cofactor2 = which == 0 ? zero : cof;
  return out;
}

}  // namespace detail

/// gcd in A^m(r): shear, prepare truncated inputs, then gcd in
/// A^{m-1}(r)[z_m] as gcd of contents times the primitive part of the last
/// subresultant, un-shear.
template <ValuedScalar S>
GcdResult<S> gcd_at_radius(const TateSeries<S>& f1, const TateSeries<S>& f2, LogRadius r, Rng& rng) {
  if (f1.nvars() != f2.nvars()) throw Error(ErrorCode::kDomain, "variable-count mismatch");
  if (f1.is_zero() && f2.is_zero()) throw Error(ErrorCode::kDomain, "gcd of two zero series");
  if (f2.is_zero()) return detail::gcd_with_zero(f1, 0, r);
  if (f1.is_zero()) return detail::gcd_with_zero(f2, 1, r);

  const std::size_t m = f1.nvars();
  const int cap = std::min(f1.deg_cap(), f2.deg_cap());
  GcdResult<S> out{TateSeries<S>::one(m, cap), identity_shear<S>(m), f1, f2,
                   !f1.truncated() && !f2.truncated()};
  if (m == 0 || is_unit(f1, r) || is_unit(f2, r)) return out;

  // Exact inputs run at a cap that holds every subresultant coefficient.
  int work_cap = cap;
  if (out.certified) {
    const int n = std::max(f1.total_degree(), f2.total_degree());
    work_cap = std::max(cap, 2 * n * n);
  }
  out.shear_used = generic_shear<S>({f1, f2}, {r}, rng);
  auto [w1, exact1] = detail::prs_input(apply_shear(widened(f1, work_cap), out.shear_used), r);
  auto [w2, exact2] = detail::prs_input(apply_shear(widened(f2, work_cap), out.shear_used), r);
  out.certified = out.certified && exact1 && exact2;

  const ContentSplit<S> c1 = content_and_primitive(w1, r, rng), c2 = content_and_primitive(w2, r, rng);
  TateSeries<S> content = TateSeries<S>::one(m - 1, work_cap);
  if (!is_unit(c1.content, r) && !is_unit(c2.content, r)) {
    const GcdResult<S> cg = gcd_at_radius(c1.content, c2.content, r, rng);
    content = cg.gcd;
    out.certified = out.certified && cg.certified;
  }
  ZPoly<S> p1 = c1.primitive, p2 = c2.primitive;
  ZPoly<S> prim{TateSeries<S>::one(m - 1, work_cap)};
  if (detail::zdeg(p1) > 0 && detail::zdeg(p2) > 0) {
    if (p1.size() < p2.size()) std::swap(p1, p2);
    const detail::Prs<S> prs = detail::subresultant_prs(p1, p2, r, rng, false);
    if (detail::zdeg(prs.last) > 0) prim = content_and_primitive(prs.last, r, rng).primitive;
  }
  if (detail::zdeg(prim) == 0 && is_unit(content, r)) return out;

  const TateSeries<S> g =
      canonicalize(ring_primitive(apply_shear(lift_to(content, m, work_cap) * detail::from_zpoly(prim, m, work_cap),
                                              out.shear_used.inverse())),
                   r)
          .with_deg_cap(cap);
  out.gcd = g;
  out.certified = out.certified && !g.truncated();
  out.cofactor1 = detail::divide_known(f1, g, r, rng);
  out.cofactor2 = detail::divide_known(f2, g, r, rng);
  return out;
}

// ---------------------------------------------------------------------------
// Coprimality certificates

/// h = g1 f1' + g2 f2' with h free of z_m, where f_j' = f_j after `shear`.
template <ValuedScalar S>
struct CoprimeCert {
  TateSeries<S> h;
  TateSeries<S> g1, g2;
  Shear<S> shear;
};

enum class CoprimeStatus { kCoprime, kCommonFactor, kIndeterminate };

inline const char* coprime_status_name(CoprimeStatus s) {
  switch (s) {
    case CoprimeStatus::kCoprime: return "coprime";
    case CoprimeStatus::kCommonFactor: return "common_factor";
    case CoprimeStatus::kIndeterminate: return "indeterminate";
  }
  return "?";
}

template <ValuedScalar S>
struct CoprimeResult {
  CoprimeStatus status = CoprimeStatus::kIndeterminate;
  std::optional<CoprimeCert<S>> cert;
};

/// Fraction-free extended subresultant sequence of the prepared inputs;
/// its degree-0 member is the certificate.
template <ValuedScalar S>
CoprimeResult<S> coprime_certificate(const TateSeries<S>& f1, const TateSeries<S>& f2, LogRadius r, Rng& rng) {
  if (f1.is_zero() || f2.is_zero()) throw Error(ErrorCode::kDomain, "coprime_certificate needs nonzero inputs");
  if (f1.nvars() != f2.nvars()) throw Error(ErrorCode::kDomain, "variable-count mismatch");
  const std::size_t m = f1.nvars();
  const int cap = std::min(f1.deg_cap(), f2.deg_cap());
  const TateSeries<S> zero(m, cap);
  const TateSeries<S> one = TateSeries<S>::one(m, cap);
  if (m == 0 || is_unit(f2, r)) {
    return {CoprimeStatus::kCoprime, CoprimeCert<S>{one, zero, invert_unit(f2, r), identity_shear<S>(m)}};
  }
  if (is_unit(f1, r)) return {CoprimeStatus::kCoprime, CoprimeCert<S>{one, invert_unit(f1, r), zero, identity_shear<S>(m)}};

  Shear<S> s;
  try {
    s = generic_shear<S>({f1, f2}, {r}, rng);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kRetryExceeded) throw;
    return {};
  }
  const Preparation<S> p1 = weierstrass_prep(apply_shear(f1, s), r);
  const Preparation<S> p2 = weierstrass_prep(apply_shear(f2, s), r);
  const bool exact = p1.exact && p2.exact && !f1.truncated() && !f2.truncated();
  // f_j' = u_j W_j, so W_j = u_j^-1 f_j'; on equal degrees f2 leads.
  ZPoly<S> a = detail::to_zpoly(p1.poly), b = detail::to_zpoly(p2.poly);
  TateSeries<S> ia = invert_unit(p1.unit, r), ib = invert_unit(p2.unit, r);
  bool swapped = a.size() <= b.size();
  if (swapped) {
    std::swap(a, b);
    std::swap(ia, ib);
  }

  detail::Prs<S> prs;
  try {
    prs = detail::subresultant_prs(a, b, r, rng, true);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kIndeterminate) throw;
    return {};
  }
  if (detail::zdeg(prs.last) > 0) {
    return {exact ? CoprimeStatus::kCommonFactor : CoprimeStatus::kIndeterminate, std::nullopt};
  }
  CoprimeCert<S> cert{detail::from_zpoly(prs.last, m, cap), detail::from_zpoly(prs.s, m, cap) * ia,
                      detail::from_zpoly(prs.t, m, cap) * ib, s};
  if (swapped) std::swap(cert.g1, cert.g2);
  return {CoprimeStatus::kCoprime, cert};
}

// ---------------------------------------------------------------------------
// Multiplicities and radius comparison

struct Multiplicity {
  int count = 0;
  bool determinate = true;
};

/// Largest e with p^e | f, by repeated exact division.
template <ValuedScalar S>
Multiplicity multiplicity_of_factor(const TateSeries<S>& f, const TateSeries<S>& p, LogRadius r, Rng& rng) {
  if (f.is_zero() || p.is_zero()) throw Error(ErrorCode::kDomain, "multiplicity needs nonzero inputs");
  if (is_unit(p, r)) throw Error(ErrorCode::kDomain, "multiplicity of a unit is undefined");
  Multiplicity out;
  TateSeries<S> cur = f;
  for (;;) {
    ExactDivision<S> q = exact_divide(cur, p, r, rng);
    if (q.status == DivStatus::kNotDivisible) return out;
    if (q.status == DivStatus::kIndeterminate || q.quotient.is_zero()) {
      out.determinate = false;
      return out;
    }
    ++out.count;
    cur = q.quotient;
  }
}

/// Whether the gcd on the larger ball (rho_big) and the one on the smaller
/// ball (rho_small) differ by a unit on the smaller ball; nullopt when
/// either gcd is uncertified or a division is inconclusive.
template <ValuedScalar S>
std::optional<bool> radius_stability_check(const TateSeries<S>& f1, const TateSeries<S>& f2, LogRadius rho_small,
                                           LogRadius rho_big, Rng& rng) {
  if (!(rho_big < rho_small)) throw Error(ErrorCode::kDomain, "rho_big_ball must be smaller than rho_small_ball");
  const GcdResult<S> big = gcd_at_radius(f1, f2, rho_big, rng);
  const GcdResult<S> small = gcd_at_radius(f1, f2, rho_small, rng);
  if (!big.certified || !small.certified) return std::nullopt;
  const ExactDivision<S> q = exact_divide(big.gcd, small.gcd, rho_small, rng);
  const ExactDivision<S> q_inv = exact_divide(small.gcd, big.gcd, rho_small, rng);
  if (q.status == DivStatus::kIndeterminate || q_inv.status == DivStatus::kIndeterminate) return std::nullopt;
  if (q.status != DivStatus::kExact || q_inv.status != DivStatus::kExact) return false;
  return is_unit(q.quotient, rho_small);
}

}  // namespace nagcd
