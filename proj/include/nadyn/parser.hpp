#pragma once

#include <map>
#include <string>

#include "nadyn/ratmap.hpp"

namespace nadyn {

/// Field and parameter bindings for parsing. Identifiers other than z, t, s
/// must be bound here (p is bound to the characteristic by default).
struct ParseContext {
  GroundField field;
  PrecisionContext precision;
  std::map<std::string, long> params;

  ParseContext() = default;
  explicit ParseContext(GroundField f, PrecisionContext pc = {}) : field(f), precision(pc) {
    if (f.p != 0) params["p"] = f.p;
  }
};

/// Parsed value: a quotient of polynomials in z with series coefficients.
struct ParsedFraction {
  SeriesPoly num;
  SeriesPoly den;
};

/// Grammar:
///   expr     := term (('+' | '-') term)*
///   term     := unary (('*' | '/') unary)*
///   unary    := '-' unary | factor
///   factor   := base ('^' exponent)?
///   base     := 'z' | 't' | 's' | integer | identifier | '(' expr ')' | 'O' '(' expr ')'
///   exponent := ['-'] integer | identifier | '(' arithmetic in integers and identifiers ')'
/// Throws SyntaxError (1-based column), UnknownVariable, ExponentDenominatorOverflow.
ParsedFraction parse_fraction(const std::string& src, const ParseContext& ctx);

SeriesMap parse_map(const std::string& src, const ParseContext& ctx);
/// A map whose coefficients are free of t.
ResidueMap parse_residue_map(const std::string& src, const ParseContext& ctx);
Series parse_series(const std::string& src, const ParseContext& ctx);
/// "inf" or a series.
SeriesPoint parse_point(const std::string& src, const ParseContext& ctx);
/// "inf" or a t-free expression.
ResiduePoint parse_residue_point(const std::string& src, const ParseContext& ctx);
/// A rational number "a" or "a/b" (also used for radii).
Q parse_rational(const std::string& src);

}  // namespace nadyn
