#pragma once

// Polynomial expression grammar (whitespace is insignificant):
//
//   expr    = term { ("+" | "-") term } ;
//   term    = factor { ("*" | "/") factor } ;
//   factor  = ("+" | "-") factor | power ;
//   power   = primary [ "^" integer ] ;
//   primary = integer | identifier | "(" expr ")" ;
//
// Implicit multiplication is not accepted ("XY" is an identifier, "3X" is
// a syntax error). The right operand of "/" must be a nonzero constant, so
// rational literals are written "3/2". Exponents are nonnegative integer
// literals.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "arithdyn/polynomial.hpp"

namespace arithdyn {

// `offset` is added to every reported error position, so callers parsing a
// substring can report positions in the enclosing text.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> var_names,
                            std::size_t offset = 0);

// Parses and checks homogeneity.
HomogeneousForm parse_form(std::string_view text, std::span<const std::string> var_names,
                           std::size_t offset = 0);

// A constant expression such as "-3/2" or "2^10".
BigRat parse_rational(std::string_view text, std::size_t offset = 0);

} // namespace arithdyn
