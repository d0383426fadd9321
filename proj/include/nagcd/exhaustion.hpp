#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "nagcd/error.hpp"
#include "nagcd/gcd.hpp"
#include "nagcd/generic_sampling.hpp"
#include "nagcd/scalar_concepts.hpp"
#include "nagcd/tate_series.hpp"
#include "nagcd/weierstrass.hpp"

namespace nagcd {

// ---------------------------------------------------------------------------
// Towers and unit chains

/// rho_1 > rho_2 > ... > rho_K: balls r_1 < r_2 < ... < r_K.
struct BallTower {
  std::vector<std::int64_t> rhos;

  std::size_t depth() const { return rhos.size(); }
  LogRadius level(std::size_t i) const { return LogRadius(rhos.at(i)); }

  void validate() const {
    if (rhos.size() < 2) throw Error(ErrorCode::kDomain, "ball tower needs at least two levels");
    for (std::size_t i = 1; i < rhos.size(); ++i) {
      if (rhos[i] >= rhos[i - 1]) throw Error(ErrorCode::kDomain, "tower radii must be strictly decreasing in rho");
    }
  }
};

/// Per-level g_i with transitions g_i = u_i g_{i+1} on level i, all
/// normalized to g_i(z0) = 1.
template <ValuedScalar S>
struct UnitChain {
  BallTower tower;
  std::vector<TateSeries<S>> g;  // K entries
  std::vector<TateSeries<S>> u;  // K-1 entries, u[i] = u_{i,i+1}
  std::vector<S> z0;
};

/// |u - 1|_{r_i} < r_i / r_j in additive form.
template <ValuedScalar S>
bool glue_pair_ok(const TateSeries<S>& u, LogRadius rho_i, LogRadius rho_j) {
  const TateSeries<S> d = u - TateSeries<S>::one(u.nvars(), u.deg_cap());
  return gauss_val(d, rho_i) > Valuation(rho_i.rho - rho_j.rho);
}

/// The Cauchy bound on every transition beyond level i, for all i < j.
/// The Gauss norm of a ball does not depend on the chosen centre inside
/// it, so no re-expansion about z0 is needed.
template <ValuedScalar S>
bool check_glue_bound(const UnitChain<S>& chain) {
  const auto& t = chain.tower;
  for (std::size_t j = 1; j < chain.u.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (!glue_pair_ok(chain.u[j], t.level(i), t.level(j))) return false;
    }
  }
  return true;
}

template <ValuedScalar S>
struct GluedFamily {
  std::vector<TateSeries<S>> G;       // G_i = g_i v_i^-1 on level i
  std::vector<TateSeries<S>> v;       // v_i = u_i u_{i+1} ... u_{K-1}
  std::vector<std::int64_t> tail;     // rho_i - rho_K, the accuracy certificate
  bool compatible = true;             // G_i = G_j on level i for all i <= j
};

template <ValuedScalar S>
GluedFamily<S> glue_units(const UnitChain<S>& chain) {
  chain.tower.validate();
  const std::size_t K = chain.tower.depth();
  if (chain.g.size() != K || chain.u.size() + 1 != K) throw Error(ErrorCode::kDomain, "unit chain shape mismatch");
  if (!check_glue_bound(chain)) throw Error(ErrorCode::kDomain, "unit chain violates the gluing bound");
  const TateSeries<S>& last = chain.g.back();
  GluedFamily<S> out;
  out.v.assign(K, TateSeries<S>::one(last.nvars(), last.deg_cap()));
  for (std::size_t i = K - 1; i-- > 0;) out.v[i] = chain.u[i] * out.v[i + 1];
  for (std::size_t i = 0; i < K; ++i) {
    const LogRadius r = chain.tower.level(i);
    out.G.push_back(chain.g[i] * invert_unit(out.v[i], r));
    out.tail.push_back(chain.tower.rhos[i] - chain.tower.rhos.back());
  }
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = i + 1; j < K; ++j) {
      if (!agree(out.G[i], out.G[j], chain.tower.level(i))) out.compatible = false;
    }
  }
  return out;
}

/// A point of the smallest ball where g does not vanish: the origin when
/// possible, else generic integral multiples of t^max(rho_1, 0).
template <ValuedScalar S>
std::vector<S> find_basepoint(const TateSeries<S>& g, LogRadius smallest, Rng& rng, const SamplingOptions& opts = {}) {
  std::vector<S> z0(g.nvars());
  if (!eval_at(g, z0, smallest).is_zero()) return z0;
  const S scale = S::uniformizer_power(std::max<std::int64_t>(smallest.rho, 0));
  for (int attempt = 0; attempt < opts.retry_cap; ++attempt) {
    z0 = sample_generic_tuple<S>(rng, g.nvars(), std::nullopt, opts);
    for (auto& x : z0) x = x * scale;
    if (!eval_at(g, z0, smallest).is_zero()) return z0;
  }
  throw Error(ErrorCode::kRetryExceeded, "no basepoint with g(z0) != 0 found");
}

/// Normalizes g_i(z0) = 1 and derives the transitions by exact division.
template <ValuedScalar S>
UnitChain<S> build_unit_chain(const BallTower& tower, std::vector<TateSeries<S>> g, Rng& rng) {
  tower.validate();
  if (g.size() != tower.depth()) throw Error(ErrorCode::kDomain, "one series per level expected");
  UnitChain<S> chain{tower, {}, {}, find_basepoint(g.front(), tower.level(0), rng)};
  for (std::size_t i = 0; i < g.size(); ++i) {
    const S at = eval_at(g[i], chain.z0, tower.level(0));
    if (at.is_zero()) throw Error(ErrorCode::kIndeterminate, "level series vanishes at the basepoint");
    chain.g.push_back((S(Rational(1)) / at) * g[i]);
  }
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const LogRadius r = tower.level(i);
    ExactDivision<S> q = exact_divide(chain.g[i], chain.g[i + 1], r, rng);
    if (q.status != DivStatus::kExact || !is_unit(q.quotient, r)) {
      throw Error(ErrorCode::kIndeterminate, "levels do not differ by a unit at the retained precision");
    }
    chain.u.push_back(q.quotient);
  }
  return chain;
}

template <ValuedScalar S>
struct TowerGcd {
  UnitChain<S> chain;
  GluedFamily<S> glued;
  TateSeries<S> G;          // G_K, valid on every level
  TateSeries<S> canonical;  // G in canonical scaling on the largest ball
  bool consistent = true;   // G is a gcd on every level
};

/// Entire-function gcd at finite depth: per-level gcd's glued by units.
template <ValuedScalar S>
TowerGcd<S> tower_gcd(const TateSeries<S>& f1, const TateSeries<S>& f2, const BallTower& tower, Rng& rng) {
  tower.validate();
  if (f1.is_zero() && f2.is_zero()) throw Error(ErrorCode::kDomain, "gcd of two zero series");
  const std::size_t K = tower.depth();
  TowerGcd<S> out;
  if (f1.is_zero() || f2.is_zero()) {
    const TateSeries<S>& f = f1.is_zero() ? f2 : f1;
    const TateSeries<S> one = TateSeries<S>::one(f.nvars(), f.deg_cap());
    out.chain = UnitChain<S>{tower, std::vector<TateSeries<S>>(K, f), std::vector<TateSeries<S>>(K - 1, one),
                             std::vector<S>(f.nvars())};
    out.glued = GluedFamily<S>{std::vector<TateSeries<S>>(K, f), std::vector<TateSeries<S>>(K, one),
                               std::vector<std::int64_t>(K), true};
    for (std::size_t i = 0; i < K; ++i) out.glued.tail[i] = tower.rhos[i] - tower.rhos.back();
    out.G = f;
    out.canonical = canonicalize(f, tower.level(K - 1));
    return out;
  }
  std::vector<TateSeries<S>> g;
  for (std::size_t i = 0; i < K; ++i) {
    GcdResult<S> gi = gcd_at_radius(f1, f2, tower.level(i), rng);
    if (!gi.certified) throw Error(ErrorCode::kIndeterminate, "per-level gcd is not certified");
    g.push_back(gi.gcd);
  }
  out.chain = build_unit_chain(tower, g, rng);
  out.glued = glue_units(out.chain);
  out.G = out.glued.G.back();
  out.canonical = canonicalize(out.G, tower.level(K - 1));
  auto divides = [&](const TateSeries<S>& a, const TateSeries<S>& b, LogRadius r) {
    return exact_divide(b, a, r, rng).status == DivStatus::kExact;
  };
  for (std::size_t i = 0; i < K && out.consistent; ++i) {
    const LogRadius r = tower.level(i);
    out.consistent = out.glued.compatible && divides(out.G, f1, r) && divides(out.G, f2, r) &&
                     divides(g[i], out.G, r) && divides(out.G, g[i], r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// One variable

struct PolygonSegment {
  Rational slope;
  int length = 0;
};

/// Lower convex hull of (j, val a_j); slopes strictly increase.
template <ValuedScalar S>
std::vector<PolygonSegment> newton_polygon(const TateSeries<S>& f) {
  if (f.nvars() != 1) throw Error(ErrorCode::kDomain, "newton_polygon needs one variable");
  if (f.is_zero()) throw Error(ErrorCode::kDomain, "newton_polygon of zero");
  std::vector<std::pair<std::int64_t, std::int64_t>> hull;
  for (const auto& [g, c] : f.terms()) {
    const std::pair<std::int64_t, std::int64_t> p{g[0], c.val().value()};
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // Drop b unless it lies strictly below the chord a -> p.
      if ((b.second - a.second) * (p.first - a.first) >= (p.second - a.second) * (b.first - a.first)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  std::vector<PolygonSegment> out;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const auto len = hull[i].first - hull[i - 1].first;
    Rational slope(static_cast<long>(hull[i].second - hull[i - 1].second), static_cast<long>(len));
    slope.canonicalize();
    out.push_back({slope, static_cast<int>(len)});
  }
  return out;
}

template <ValuedScalar S>
struct FactorList {
  S c;
  int e = 0;
  struct Root {
    S a;
    int mult = 1;
  };
  std::vector<Root> roots;
  TateSeries<S> unit;     // residual unit, constant term 1
  bool complete = true;   // every root in the ball was found
};

namespace detail {

/// Rational roots with multiplicities of an integer-coefficient polynomial
/// (coefficients low to high, nonzero constant term); nullopt when the
/// divisor search would be too large.
inline std::optional<std::vector<std::pair<Rational, int>>> rational_roots(std::vector<Rational> p) {
  Integer den = 1;
  for (const auto& q : p) den = den * q.get_den() / gcd(den, q.get_den());
  std::vector<Integer> a;
  for (const auto& q : p) a.push_back(Integer(q * Rational(den)));
  constexpr long kBound = 1000000;
  if (abs(a.front()) > kBound || abs(a.back()) > kBound) return std::nullopt;
  auto divisors = [](long n) {
    std::vector<long> d;
    for (long k = 1; k * k <= n; ++k) {
      if (n % k) continue;
      d.push_back(k);
      if (k != n / k) d.push_back(n / k);
    }
    return d;
  };
  auto eval = [&](const std::vector<Rational>& poly, const Rational& x) {
    Rational acc = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  // Synthetic division by (w - x).
  auto deflate = [](const std::vector<Rational>& poly, const Rational& x) {
    std::vector<Rational> out(poly.size() - 1);
    Rational carry = 0;
    for (std::size_t i = poly.size(); i-- > 1;) {
      carry = carry * x + poly[i];
      out[i - 1] = carry;
    }
    return out;
  };
  std::vector<std::pair<Rational, int>> roots;
  for (long num : divisors(Integer(abs(a.front())).get_si())) {
    for (long dd : divisors(Integer(abs(a.back())).get_si())) {
      for (long sign : {1L, -1L}) {
        Rational x(sign * num, dd);
        x.canonicalize();
        if (std::any_of(roots.begin(), roots.end(), [&](const auto& r) { return r.first == x; })) continue;
        int mult = 0;
        while (p.size() > 1 && eval(p, x) == 0) {
          p = deflate(p, x);
          ++mult;
        }
        if (mult > 0) roots.emplace_back(x, mult);
      }
    }
  }
  return roots;
}

/// Newton iteration a <- a - f(a)/f'(a) on a simple root.
template <ValuedScalar S>
S newton_lift(const TateSeries<S>& f, S a, LogRadius r) {
  const TateSeries<S> df = derivative(f, 0);
  const std::int64_t p = f.prec() >= kUnboundedPrec ? kDefaultPrecT : f.prec();
  // Each step doubles the number of correct digits.
  const int steps = static_cast<int>(std::bit_width(static_cast<std::uint64_t>(p))) + 3;
  for (int k = 0; k < steps; ++k) {
    const S fa = eval_at(f, {a}, r);
    if (fa.is_zero()) break;
    a = a - fa / eval_at(df, {a}, r);
  }
  return a;
}

/// f(a) = f'(a) = ... = f^(mult-1)(a) = 0 exactly.
template <ValuedScalar S>
bool exact_root(const TateSeries<S>& f, const S& a, int mult, LogRadius r) {
  if (f.truncated()) return false;
  TateSeries<S> d = f;
  for (int k = 0; k < mult; ++k) {
    const S v = eval_at(d, {a}, r);
    if (!v.is_zero() || v.truncated()) return false;
    d = derivative(d, 0);
  }
  return true;
}

}  // namespace detail

/// c z^e prod (1 - z/a_i)^{e_i} times a unit, for the roots with
/// val(a_i) >= rho.
template <ValuedScalar S>
FactorList<S> factor_one_variable(const TateSeries<S>& f, LogRadius r) {
  if (f.nvars() != 1) throw Error(ErrorCode::kDomain, "factor_one_variable needs one variable");
  if (f.is_zero()) throw Error(ErrorCode::kDomain, "factor_one_variable of zero");
  const int D = f.deg_cap();
  FactorList<S> out;
  out.e = f.terms().begin()->first[0];
  TateSeries<S> f0(1, D);
  f0.copy_flags_from(f);
  for (const auto& [g, c] : f.entries()) {
    if (g[0] >= out.e) f0.add_term(MultiIndex{g[0] - out.e}, c);
  }

  int j0 = 0;
  for (const PolygonSegment& seg : newton_polygon(f0)) {
    const int j1 = j0 + seg.length;
    const Rational s = -seg.slope;
    if (s < Rational(static_cast<long>(r.rho))) {
      j0 = j1;
      continue;
    }
    if (s.get_den() != 1) {
      out.complete = false;
      j0 = j1;
      continue;
    }
    const std::int64_t sv = s.get_num().get_si();
    const S a_j0 = f0.coeff(MultiIndex{j0});
    const std::int64_t c0 = a_j0.val().value() + sv * j0;
    std::vector<Rational> residue;
    for (int j = j0; j <= j1; ++j) {
      const S a = f0.coeff(MultiIndex{j});
      const bool on = !a.is_zero() && a.val().value() + sv * j == c0;
      residue.push_back(on ? (a * S::uniformizer_power(sv * j - c0)).residue() : Rational(0));
    }
    int found = 0;
    if (auto roots = detail::rational_roots(residue)) {
      for (const auto& [w, mult] : *roots) {
        const S a0 = S(w) * S::uniformizer_power(sv);
        if (mult == 1) {
          out.roots.push_back({detail::newton_lift(f0, a0, r), 1});
        } else if (detail::exact_root(f0, a0, mult, r)) {
          out.roots.push_back({a0, mult});
        } else {
          continue;
        }
        found += mult;
      }
    }
    if (found < seg.length) out.complete = false;
    j0 = j1;
  }

  // W = z^e prod (z - a)^mult is a Weierstrass polynomial on the ball.
  const auto z = TateSeries<S>::variable(1, D, 0);
  TateSeries<S> w = pow(z, out.e);
  S scale(Rational(1));
  for (const auto& root : out.roots) {
    w = w * pow(z - TateSeries<S>::constant(1, D, root.a), root.mult);
    for (int k = 0; k < root.mult; ++k) scale = scale * -root.a;
  }
  TateSeries<S> q = f;
  if (w.total_degree() > 0) {
    DivisionResult<S> div = weierstrass_divide(f, w, r);
    q = div.quotient;
    if (!agree(q * w, f, r)) out.complete = false;
  }
  const TateSeries<S> u = scale * q;
  out.c = u.constant_term();
  if (out.c.is_zero()) {
    // An unresolved factor through the origin survives in the residual.
    out.complete = false;
    out.c = S(Rational(1));
    out.unit = u;
    return out;
  }
  out.unit = (S(Rational(1)) / out.c) * u;
  if (!is_unit(out.unit, r)) out.complete = false;
  return out;
}

/// c z^e prod (1 - z/a_i)^{e_i} * unit.
template <ValuedScalar S>
TateSeries<S> factor_product(const FactorList<S>& fl) {
  const int D = fl.unit.deg_cap();
  const auto z = TateSeries<S>::variable(1, D, 0);
  TateSeries<S> p = fl.c * pow(z, fl.e);
  const auto one = TateSeries<S>::one(1, D);
  for (const auto& root : fl.roots) p = p * pow(one - (S(Rational(1)) / root.a) * z, root.mult);
  return p * fl.unit;
}

}  // namespace nagcd
