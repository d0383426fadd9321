#pragma once

#include <nlohmann/json.hpp>

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nagcd/error.hpp"
#include "nagcd/laurent_scalar.hpp"
#include "nagcd/tate_series.hpp"

namespace nagcd {

using Series = TateSeries<LaurentScalar>;

namespace detail {

/// Recursive-descent parser for the series grammar
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := integer ['/' integer] | 't' ['^' int] | 'z'k ['^' nat] | '(' expr ')'
/// Every value is built in a scratch ring with a generous degree cap; the
/// caller rejects results above the requested cap.
class SeriesParser {
 public:
  SeriesParser(const std::string& text, std::size_t m, std::int64_t prec)
      : text_(text), m_(m), prec_(prec) {}

  Series parse() {
    Series f = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  static constexpr int kScratchCap = 1 << 12;

  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::kParse,
                "syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return text_.substr(start, pos_ - start);
  }

  std::int64_t signed_int() {
    bool neg = false;
    bool paren = accept('(');
    if (accept('-')) neg = true;
    else accept('+');
    std::string d = digits();
    if (paren && !accept(')')) fail("expected ')'");
    std::int64_t v = std::stoll(d);
    return neg ? -v : v;
  }

  Series constant(const LaurentScalar& c) const { return Series::constant(m_, kScratchCap, c); }

  Series expr() {
    bool neg = false;
    if (accept('-')) neg = true;
    else accept('+');
    Series acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Series term() {
    Series acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Series factor() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Series inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational q{Integer(digits())};
      if (accept('/')) {
        Integer den(digits());
        if (den == 0) fail("zero denominator");
        q /= Rational(den);
      }
      q.canonicalize();
      return constant(LaurentScalar(q, prec_));
    }
    if (c == 't') {
      ++pos_;
      std::int64_t k = 1;
      if (accept('^')) k = signed_int();
      return constant(LaurentScalar::monomial(Rational(1), k, prec_));
    }
    if (c == 'z') {
      ++pos_;
      std::string idx = digits();
      std::size_t i = std::stoul(idx);
      if (i == 0 || i > m_) fail("variable z" + idx + " out of range for m=" + std::to_string(m_));
      int e = 1;
      if (accept('^')) {
        std::int64_t k = signed_int();
        if (k < 0) fail("negative exponent on z" + idx);
        e = static_cast<int>(k);
      }
      return Series::monomial(m_, kScratchCap, MultiIndex::unit(m_, i - 1, e), LaurentScalar(Rational(1), prec_));
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected character '" + std::string(1, c) + "'");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t m_;
  std::int64_t prec_;
};

inline std::size_t infer_nvars(const std::string& text) {
  std::size_t m = 0;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    if (text[i] != 'z' || !std::isdigit(static_cast<unsigned char>(text[i + 1]))) continue;
    std::size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    m = std::max<std::size_t>(m, std::stoul(text.substr(i + 1, j - i - 1)));
  }
  return m;
}

inline std::string monomial_string(const MultiIndex& g) {
  std::string s;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "z" + std::to_string(i + 1);
    if (g[i] > 1) s += "^" + std::to_string(g[i]);
  }
  return s;
}

}  // namespace detail

/// Parses a series in m variables (m = 0 infers the largest z index).
/// Monomials above the degree cap are rejected, not truncated.
inline Series parse_series(const std::string& text, std::size_t m = 0, int deg_cap = kDefaultDegCap,
                           std::int64_t prec = kDefaultPrecT) {
  if (m == 0) m = detail::infer_nvars(text);
  Series f = detail::SeriesParser(text, m, prec).parse();
  if (f.total_degree() > deg_cap) {
    throw Error(ErrorCode::kParse, "monomial of total degree " + std::to_string(f.total_degree()) +
                                       " exceeds degree cap " + std::to_string(deg_cap));
  }
  return f.with_deg_cap(deg_cap);
}

/// Scalar literal: rationals and Laurent terms `p/q*t^k` joined by +/-.
inline LaurentScalar parse_scalar(const std::string& text, std::int64_t prec = kDefaultPrecT) {
  Series f = detail::SeriesParser(text, 0, prec).parse();
  return f.constant_term();
}

/// Canonical text form, leading (graded-lex largest) term first.
inline std::string to_string(const Series& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [g, c] = *it;
    const std::string mono = detail::monomial_string(g);
    const bool single = c.terms().size() == 1;
    bool negative = false;
    std::string coeff;
    if (single) {
      negative = c.coeff(c.lead_val()) < 0;
      coeff = (negative ? -c : c).to_string();
    } else {
      coeff = "(" + c.to_string() + ")";
    }
    std::string body;
    if (mono.empty()) {
      body = coeff;
    } else if (coeff == "1") {
      body = mono;
    } else {
      body = coeff + "*" + mono;
    }
    if (first) {
      out += negative ? "-" + body : body;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
    first = false;
  }
  return out;
}

inline nlohmann::json to_json(const LaurentScalar& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [k, q] : s.terms()) arr.push_back({k, q.get_str()});
  return arr;
}

inline LaurentScalar scalar_from_json(const nlohmann::json& j, std::int64_t prec = kDefaultPrecT) {
  std::map<std::int64_t, Rational> terms;
  for (const auto& kv : j) {
    if (!kv.is_array() || kv.size() != 2) throw Error(ErrorCode::kParse, "coefficient entry must be [k, \"p/q\"]");
    terms[kv[0].get<std::int64_t>()] += parse_rational(kv[1].get<std::string>());
  }
  return LaurentScalar::from_terms(terms, prec);
}

/// {"m":2,"D":8,"terms":[{"exp":[2,1],"coeff":[[0,"1/2"],[2,"3"]]}]}
inline nlohmann::json to_json(const Series& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    terms.push_back({{"exp", it->first.exponents()}, {"coeff", to_json(it->second)}});
  }
  return {{"m", f.nvars()}, {"D", f.deg_cap()}, {"terms", terms}};
}

inline Series series_from_json(const nlohmann::json& j, std::int64_t prec = kDefaultPrecT) {
  try {
    const auto m = j.at("m").get<std::size_t>();
    const int cap = j.value("D", kDefaultDegCap);
    Series f(m, cap);
    for (const auto& t : j.at("terms")) {
      auto e = t.at("exp").get<std::vector<int>>();
      if (e.size() != m) throw Error(ErrorCode::kParse, "exponent vector length differs from m");
      MultiIndex g(e);
      if (g.total() > cap) throw Error(ErrorCode::kParse, "term exceeds degree cap");
      f.add_term(g, scalar_from_json(t.at("coeff"), prec));
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed series JSON: ") + e.what());
  }
}

}  // namespace nagcd
