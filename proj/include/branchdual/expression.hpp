// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "branchdual/inverse_system.hpp"
#include "branchdual/series.hpp"
#include "branchdual/subalgebra.hpp"

namespace branchdual {

// Grammar (whitespace-insensitive):
//   expr  := ['+'|'-'] term (('+'|'-') term)* [('+') 'O(' var '^' int ')']
//   term  := coeff ['*'] [var ['^' int]] | var ['^' int]
//   coeff := int | int '/' int
// The variable t gives a Series, u a DiffOp. A polynomial in t without an O()
// term is taken as exact up to max(trunc_ceiling, degree).
using Expression = std::variant<Series, DiffOp>;

Expression parse_expression(std::string_view text, int trunc_ceiling = kDefaultTruncCeiling);
Series parse_series(std::string_view text, int trunc_ceiling = kDefaultTruncCeiling);
DiffOp parse_diffop(std::string_view text);

// Splits on sep at top level and parses each piece. Parse errors report the
// position within the whole list.
std::vector<Series> parse_series_list(std::string_view text, char sep = ',',
                                      int trunc_ceiling = kDefaultTruncCeiling);
std::vector<DiffOp> parse_diffop_list(std::string_view text, char sep = ';');

// Inverse of parse_expression. with_order appends O(t^(trunc+1)).
std::string to_expression(const Series& f, bool with_order = false);
std::string to_expression(const DiffOp& g);
// sum_i coeffs[i] t^(-i-1).
std::string to_expression(const LaurentTail& alpha);

}  // namespace branchdual
