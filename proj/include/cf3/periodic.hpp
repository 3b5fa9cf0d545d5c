#pragma once

#include "cf3/quadratic.hpp"
#include "cf3/word.hpp"

namespace cf3 {

// An eventually periodic continued fraction [0; pre, (period)^inf].
// period must be nonempty; pre may be empty.
struct ep_seq {
    Word pre;
    Word period;
};

// Exact value of [0; (period)^inf] as a quadratic irrational in (0,1).
// The value x satisfies x = (P_m x + P_{m-1}) / (Q_m x + Q_{m-1}) where
// [[P_m, P_{m-1}], [Q_m, Q_{m-1}]] is the product of the matrices
// (a_i 1; 1 0) over the period, i.e. the positive root of
//   P_{m-1} x^2 + (P_m - Q_{m-1}) x - Q_m = 0.
quad eval_periodic(const Word& period);

// Exact value of [0; pre, (period)^inf]: apply the preperiod convergents
// as a Moebius map to the purely periodic tail.
quad eval_ep(const ep_seq& s);

// Value of the "tail as number >= 1", i.e. [a_1; a_2, a_3, ...] for the
// eventually periodic sequence (pre, period).  Equals 1 / eval_ep.
quad tail_value(const ep_seq& s);

} // namespace cf3
