#pragma once

#include <map>
#include <random>

#include "nagcd/laurent_scalar.hpp"
#include "nagcd/tate_series.hpp"

namespace nagcd::testing {

/// Random Laurent scalar with small rational coefficients and valuation in
/// [vmin, vmin + spread].
inline LaurentScalar random_scalar(std::mt19937_64& rng, std::int64_t prec, int vmin = -2, int spread = 4,
                                   int max_terms = 3) {
  std::uniform_int_distribution<int> val(vmin, vmin + spread);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::map<std::int64_t, Rational> terms;
  const int lead = val(rng);
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    terms[lead + i] += q;
  }
  return LaurentScalar::from_terms(terms, prec);
}

/// Random polynomial with at most `max_terms` terms of total degree <= deg.
inline TateSeries<LaurentScalar> random_poly(std::mt19937_64& rng, std::size_t m, int deg, int cap,
                                             std::int64_t prec, int max_terms = 6, int vmin = -2,
                                             int spread = 4) {
  TateSeries<LaurentScalar> f(m, cap);
  std::uniform_int_distribution<int> nterms(1, max_terms);
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    MultiIndex g(m);
    std::uniform_int_distribution<int> total(0, deg);
    const int d = total(rng);
    std::uniform_int_distribution<std::size_t> var(0, m - 1);
    for (int k = 0; k < d && m > 0; ++k) g[var(rng)] += 1;
    f.add_term(g, random_scalar(rng, prec, vmin, spread));
  }
  return f;
}

}  // namespace nagcd::testing
