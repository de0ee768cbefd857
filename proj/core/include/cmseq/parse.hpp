#pragma once

#include <string_view>
#include <vector>

#include "cmseq/rational.hpp"

namespace cmseq {

/// Parses a product of linear factors `(x+<rat>)` / `(x-<rat>)` with optional
/// whitespace and returns the shifts a_i of ∏ (x + a_i); `(x-2)` yields -2.
/// Throws ParseError with the byte offset of the first unexpected character.
std::vector<Rational> parse_factored_poly(std::string_view text);

/// Comma-separated rationals, e.g. "1, 3/2, -0.25". Throws ParseError.
std::vector<Rational> parse_rational_list(std::string_view text);

}  // namespace cmseq
