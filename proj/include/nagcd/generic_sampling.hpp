#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "nagcd/error.hpp"
#include "nagcd/rational.hpp"
#include "nagcd/scalar_concepts.hpp"

namespace nagcd {

using Rng = std::mt19937_64;

/// Sparse polynomial over the residue field, used to describe the zero locus
/// a generic residue tuple has to avoid.
class ResiduePoly {
 public:
  using Exponents = std::vector<int>;

  ResiduePoly() = default;
  explicit ResiduePoly(std::size_t nvars) : nvars_(nvars) {}

  static ResiduePoly constant(std::size_t nvars, const Rational& c) {
    ResiduePoly p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
  }
  /// X_i - c
  static ResiduePoly linear(std::size_t nvars, std::size_t i, const Rational& c) {
    ResiduePoly p(nvars);
    Exponents e(nvars, 0);
    e[i] = 1;
    p.add_term(e, 1);
    p.add_term(Exponents(nvars, 0), -c);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  void add_term(const Exponents& e, const Rational& c) {
    if (e.size() != nvars_) throw Error(ErrorCode::kDomain, "residue polynomial arity mismatch");
    Rational& slot = terms_[e];
    slot += c;
    if (slot == 0) terms_.erase(e);
  }

  Rational eval(const std::vector<Rational>& x) const {
    if (x.size() != nvars_) throw Error(ErrorCode::kDomain, "residue polynomial arity mismatch");
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
      Rational term = c;
      for (std::size_t i = 0; i < nvars_; ++i) {
        for (int k = 0; k < e[i]; ++k) term *= x[i];
      }
      acc += term;
    }
    return acc;
  }

  friend ResiduePoly operator*(const ResiduePoly& a, const ResiduePoly& b) {
    if (a.nvars_ != b.nvars_) throw Error(ErrorCode::kDomain, "residue polynomial arity mismatch");
    ResiduePoly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(a.nvars_);
        for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

 private:
  std::size_t nvars_ = 0;
  std::map<Exponents, Rational> terms_;
};

struct SamplingOptions {
  std::int64_t bound = 1000000;  // residues drawn from [-bound, bound]
  int retry_cap = 64;
};

/// Uniform integer residues in [-bound, bound], as exact rationals.
inline std::vector<Rational> sample_residues(Rng& rng, std::size_t m, std::int64_t bound) {
  std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
  std::vector<Rational> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.emplace_back(static_cast<long>(dist(rng)));
  return out;
}

/// m integral scalars whose residues avoid the zero locus of `bad`.
template <ValuedScalar S>
std::vector<S> sample_generic_tuple(Rng& rng, std::size_t m,
                                   const std::optional<ResiduePoly>& bad = std::nullopt,
                                   const SamplingOptions& opts = {}) {
  if (bad) {
    if (bad->is_zero()) throw Error(ErrorCode::kDomain, "bad locus polynomial is zero");
    if (bad->nvars() != m) throw Error(ErrorCode::kDomain, "bad locus arity mismatch");
  }
  for (int attempt = 0; attempt < opts.retry_cap; ++attempt) {
    std::vector<Rational> res = sample_residues(rng, m, opts.bound);
    if (bad && bad->eval(res) == 0) continue;
    std::vector<S> out;
    out.reserve(m);
    for (const auto& r : res) out.emplace_back(r);
    return out;
  }
  throw Error(ErrorCode::kRetryExceeded,
              "generic sampling exceeded retry cap; bad locus is ill-conditioned");
}

}  // namespace nagcd
