#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>

#include "nagcd/rational.hpp"
#include "nagcd/valuation.hpp"

namespace nagcd {

/// A computable non-Archimedean valued field with residue field embedded in Q.
template <typename S>
concept ValuedScalar = std::regular<S> && requires(const S& a, const S& b, std::int64_t k) {
  { S(Rational{}) };
  { S::uniformizer_power(k) } -> std::same_as<S>;
  { a.val() } -> std::same_as<Valuation>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.truncated() } -> std::convertible_to<bool>;
  { a.prec() } -> std::convertible_to<std::int64_t>;
  { a.residue() } -> std::same_as<Rational>;
  { a.leading_term() } -> std::same_as<S>;
  { a.with_prec(k) } -> std::same_as<S>;
  { a.known_end() } -> std::convertible_to<std::int64_t>;
  { a.known_to(k) } -> std::same_as<S>;
  { a.retained() } -> std::same_as<S>;
  { a.exact_quotient(b) } -> std::same_as<std::optional<S>>;
  { S::ring_gcd(a, b) } -> std::same_as<S>;
  { a + b } -> std::same_as<S>;
  { a - b } -> std::same_as<S>;
  { a * b } -> std::same_as<S>;
  { a / b } -> std::same_as<S>;
  { -a } -> std::same_as<S>;
  { a.to_string() } -> std::convertible_to<std::string>;
};

}  // namespace nagcd
