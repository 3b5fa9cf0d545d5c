#pragma once

#include "cf3/numtypes.hpp"

#include <string>
#include <vector>

namespace cf3 {

// Finite word of partial quotients a_1..a_n, all >= 1.
using Word = std::vector<long>;

// Text grammar: comma-separated quotients with a run-length macro,
// e.g. "1,1,2" or "1^4,2,2".  validate_word rejects entries < 1.
Word parse_word(const std::string& text);
std::string format_word(const Word& w);
void validate_word(const Word& w);

struct rational_interval {
    Rat lo, hi; // lo <= hi
};

// Convergents of [0; a_1, ..., a_n]:
//   p_0 = 0, q_0 = 1, p_1 = 1, q_1 = a_1,
//   p_{k+1} = a_{k+1} p_k + p_{k-1},  q_{k+1} = a_{k+1} q_k + q_{k-1}.
// The determinant alternates: p_k q_{k-1} - p_{k-1} q_k = (-1)^{k+1}.
struct convergent_table {
    std::vector<Int> p, q; // index k in [0, n]

    static convergent_table of(const Word& w);
    size_t order() const { return p.size() - 1; } // n
    Rat value() const;                            // p_n / q_n
    Int det(size_t k) const;                      // p_k q_{k-1} - p_{k-1} q_k, k >= 1
};

// Closed cylinder interval I(w) = { [0; a_1..a_n, tail] : any tail } whose
// endpoints are [0; a_1..a_n] and [0; a_1..a_{n-1}, a_n + 1]; orientation
// depends on the parity of n.
rational_interval cylinder(const Word& w);

// diam I(w) = 1 / (q_n (q_n + q_{n-1}))
Rat cylinder_diameter(const Word& w);

// Final-denominator pair (q_n, q_{n-1}) without storing the whole table;
// used by bulk enumerations.
std::pair<Int, Int> tail_denominators(const Word& w);

} // namespace cf3
