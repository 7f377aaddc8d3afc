#pragma once

#include <string>
#include <vector>

#include "ristl/formula.hpp"

namespace ristl {

/// Parses a specification string into a formula tree.
///
/// Grammar (precedence ! > U > & > |; F/G/! are prefix unary):
///   formula  := or
///   or       := and ('|' and)*
///   and      := until ('&' until)*
///   until    := unary ('U' window unary)?
///   unary    := '!' unary | 'F' window unary | 'G' window unary | primary
///   primary  := 'true' | identifier | '(' formula ')'
///   window   := '[' number (',' number)? ']'    -- F[b] means F[b,b]
///
/// Throws ParseError with a character position on malformed input.
FormulaPtr parse_formula(const std::string& text);

/// Checks that every predicate leaf resolves to a known id.
void validate_predicate_ids(const Formula& f, const std::vector<std::string>& known);

}  // namespace ristl
