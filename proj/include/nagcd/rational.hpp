#pragma once

#include <gmpxx.h>

#include <string>

#include "nagcd/error.hpp"

namespace nagcd {

using Rational = mpq_class;
using Integer = mpz_class;

/// Lowest-terms text form: `p/q`, or `p` when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw Error(ErrorCode::kParse, "invalid rational literal '" + text + "'");
  }
  q.canonicalize();
  return q;
}

}  // namespace nagcd
