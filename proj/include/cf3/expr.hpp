#pragma once

#include "cf3/gauge.hpp"
#include "cf3/numtypes.hpp"
#include "cf3/quadratic.hpp"

#include <string>

namespace cf3 {

// Exact threshold expressions, e.g. "3", "3-6^-9", "2*sqrt(2)", "(1+sqrt(5))/2".
// Grammar (whitespace ignored):
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | atom ('^' ['-'] integer)?
//   atom   := integer | 'sqrt' '(' expr ')' | '(' expr ')'
// sqrt arguments must be nonnegative integers after evaluation.  All values
// stay in a single quadratic field Q(sqrt(D)); mixing distinct radicals in
// one expression is rejected.
quad parse_threshold(const std::string& text);

// Rational literals: "p/q", plain integers, or decimals ("0.25", "-3.5e-2").
// Extends the plain parse_rat from numtypes with decimal/scientific forms.
Rat parse_rat_lit(const std::string& text);

// Gauge DSL: "pow:1/2", "loginv:4", "logloginv", "factorial" (alias
// "paper:factorial"), "square:(<dsl>)", "table:<path.csv>".
gauge parse_gauge(const std::string& text);

// CSV rows "epsilon,value" (one per line, '#' comments and blank lines
// skipped), epsilon strictly descending, both entries rational literals.
gauge load_table_csv(const std::string& path);

} // namespace cf3
