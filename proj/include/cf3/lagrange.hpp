#pragma once

#include "cf3/periodic.hpp"
#include "cf3/quadratic.hpp"
#include "cf3/word.hpp"

#include <string>
#include <vector>

namespace cf3 {

// Bi-infinite eventually periodic sequence  ... a_{-2} a_{-1} . a_0 a_1 ...
// left holds (a_{-1}, a_{-2}, ...) read outward from the center: pre first,
// then period repeating forever.  right holds (a_0, a_1, ...) the same way.
struct half_word {
    Word pre;    // may be empty
    Word period; // must be non-empty
};

struct bi_word {
    half_word left;
    half_word right;

    void validate() const;
    long at(long i) const; // quotient a_i, any integer i
};

// lambda_i = [a_i; a_{i+1}, ...] + [0; a_{i-1}, a_{i-2}, ...].  Both tails are
// eventually periodic, hence exact quadratics; the sum is returned as an
// exact radical sum (a single quadratic when the two fields coincide).
radsum lambda_at(const bi_word& b, long i);

// lambda at position r (0-based within the period) of the bi-infinite
// periodic word ...PPP.PPP... with period P.
radsum periodic_lambda(const Word& period, size_t r);

// sup_i lambda_i(b), exact: the maximum over a finite window covering both
// preperiods plus two full period copies on each side, together with the
// purely periodic limit values of both ends.  docs/markov-sufficiency.md
// proves this finite set realizes the supremum.
radsum markov_value(const bi_word& b);

// k([0; pre, (period)^inf]) = limsup_i lambda_i: the max of the periodic
// limit values; any finite prefix is irrelevant to the limsup.
radsum lagrange_value(const Word& pre, const Word& period);

// Shift the marked center k steps to the right (k may be negative).
bi_word shift_center(const bi_word& b, long k);

// The genuinely periodic bi-infinite word ...PPP.PPP... as a bi_word.
// Since the left half is read outward from the center, its period is the
// reversal of P.
bi_word periodic_biword(const Word& period);

// Exact verification of [2;2,z] + [0;1,1,z] = 3 for z > 0.
bool check_identity(const quad& z);
bool check_identity(const Rat& z);

// ---- attainable streams: quotient streams 1^{e_1} 2 2 1^{e_2} 2 2 ... ----

enum class stream_kind { linear, constant, translation };

// Exponent rules are closed-form: e_i = a*i + b (linear), e_i = b (constant),
// or e_i = 6*ceil(i/12) (translation).  Emitted quotients are cached.
struct attainable_stream {
    stream_kind kind = stream_kind::linear;
    long a = 1;
    long b = 0;
    mutable std::vector<long> cache; // quotients a_1, a_2, ... (cache[j-1])
    mutable long emitted_blocks = 0; // cache holds exactly this many whole blocks

    long exponent(long i) const;   // e_i, i >= 1
    long quotient(long j) const;   // a_j, j >= 1, materializing up to j
    long block_end(long i) const;  // position of the second 2 of block i
    std::string dsl() const;
};

// DSL: "linear:a=1,b=0" | "const:k" | "paper-translation"
attainable_stream parse_stream(const std::string& dsl);

// Rigorous rational interval around lambda_i of every real whose expansion
// agrees with the stream up to position i + depth.  Both rays are truncated
// after `depth` quotients and bounded by closed cylinder intervals (the left
// ray is exact when the stream start is reached first).
struct lambda_enclosure_result {
    long position = 0;
    long depth = 0;
    rational_interval bound;
};
lambda_enclosure_result lambda_enclosure(const attainable_stream& s, long i, long depth);

// ---- bad cuts ----

// Preconditions under which the displayed cut value exceeds 3:
//   variant 1 (cut before the first 2):  e_{i+1} even and e_i odd, or both
//     odd with e_i < e_{i+1} + 2.
//   variant 2 (cut between the two 2s):  e_{i+1} odd and e_i even, or both
//     even with e_{i+1} > e_i + 2, or both odd with e_{i+1} < e_i + 2.
bool bad_cut_applicable(long e_i, long e_next, int variant);

// Exact cut value with both tails periodicized to all 2s:
//   variant 1: 3 + [0;1^{e_i},(2)] - [0;1^{e_{i+1}+2},(2)]
//   variant 2: 3 + [0;1^{e_{i+1}},(2)] - [0;1^{e_i+2},(2)]
quad bad_cut_lambda(long e_i, long e_next, int variant);

// Exact sign of (cut value - 3); fails with a precondition error when the
// chosen variant's parity/size condition does not hold.
int bad_cut_sign(long e_i, long e_next, int variant);

// Variants applicable at the cut between block i and block i+1 of s.
std::vector<int> applicable_variants(const attainable_stream& s, long i);

// Position at which the cut value is evaluated: the first 2 of block i's
// trailing 22 for variant 1, the second for variant 2.
long cut_position(const attainable_stream& s, long i, int variant);

// ---- translation example ----

// For e_m = 6*ceil(m/12) and n = block_end(6m) + 2 (two quotients past the
// end of block 6m, i.e. n = 2 + sum_{j<=6m} (e_j + 2)), computes the
// convergent p_n/q_n of [0; 1^{e_1},2,2,1^{e_2},2,2,...] and reports the
// residues mod 4; passes iff (q_n, p_n) = (2, 1) mod 4.
struct translation_report {
    long m = 0;
    long n = 0;
    long q_mod4 = 0;
    long p_mod4 = 0;
    bool pass = false;
};
translation_report translation_congruence_check(long m);

} // namespace cf3
