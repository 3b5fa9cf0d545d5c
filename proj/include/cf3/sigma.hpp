#pragma once

#include "cf3/lagrange.hpp"
#include "cf3/quadratic.hpp"
#include "cf3/word.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace cf3 {

// ============================================================================
// Sigma(t, n): length-n factors of two-sided {1,2}-sequences whose Markov
// value (sup_i lambda_i) is at most t.  Two independent routes are provided:
// an enumeration through balanced words (exact at t = 3) and a certified
// per-word membership decision procedure valid for any t in [11/4, 13/4].
// ============================================================================

// ---- balanced words --------------------------------------------------------

// All balanced words over the two-letter alphabet {a, b} of length m, sorted
// lexicographically.  Balanced: any two factors of equal length have counts
// of 'a' differing by at most 1.
std::vector<std::string> balanced_words(size_t m);

// Closed-form count of balanced words: 1 + sum_{i=1..m} (m - i + 1) phi(i).
unsigned long long balanced_count_formula(size_t m);

// Letter substitution a -> 2,2 and b -> 1,1 applied letterwise.
Word substitution_image(const std::string& u);

// ---- enumeration route -----------------------------------------------------

// Sigma(3, n) as the set of all length-n factors of substitution images of
// balanced words of length n/2 + 1 (integer division), sorted.  A length-n
// factor of an image word meets at most n/2 + 1 substituted letters, so this
// block budget is exhaustive.
std::vector<Word> sigma3_words(size_t n);

// |Sigma(3, n)| without materializing the word list (factors are deduplicated
// in a compact string set, so large n stays affordable).
size_t count_sigma3(size_t n);

// Two-sided-count heuristic |L_{n/2}| + |L_{n/2+1}| (even n) respectively
// 2 |L_{(n+1)/2}| (odd n), where |L_m| counts balanced words of length m.
// Diagnostic only: it overcounts for small n (e.g. 8 instead of 6 at n = 3);
// callers should compare it against count_sigma3 and flag the discrepancy.
unsigned long long sigma3_count_formula(size_t n);

// ---- exact local lower bounds ----------------------------------------------

// Attained infimum of lambda_pos(x) over all two-sided {1,2}-sequences x that
// agree with w on positions 0..|w|-1 (pos is a 0-based index into w).  Beyond
// w both tails range over the closed interval of {1,2}-continued-fraction
// tail values [(1+sqrt 3)/2, 1+sqrt 3]; each side's extremum is attained at
// an interval endpoint because the truncated expansion acts on the tail value
// as a monotone Moebius map.  The result is an exact element of Q(sqrt 3).
quad center_min_bound(const Word& w, size_t pos);

// ---- transfer graph --------------------------------------------------------

// Length-L block graph: nodes are the {1,2}-blocks whose center lower bound
// does not exceed t, edges join blocks overlapping in L - 1 letters, and the
// core keeps the nodes that survive iterated removal of nodes without both a
// predecessor and a successor (so every core node extends two-sidedly within
// the graph).
struct prune_graph {
    long L = 0;
    quad t;
    std::vector<Word> nodes;                      // surviving blocks, sorted
    std::vector<std::vector<size_t>> out_edges;   // successor indices
    std::vector<std::vector<size_t>> in_edges;    // predecessor indices
    std::vector<char> in_core;                    // per-node core flag
    size_t excluded_count = 0;                    // blocks with bound > t
};

// t must lie in [11/4, 13/4] (unsupported-threshold otherwise); L must be odd
// and in [3, 19].
prune_graph build_prune_graph(const quad& t, long L);

// ---- membership ------------------------------------------------------------

enum class verdict_kind { included, excluded, undecided };

// A verified periodic completion: w occurs at `offset` in the two-sided
// periodic word with this period, whose exact Markov value is `value` <= t.
struct inclusion_certificate {
    Word period;
    size_t offset = 0;
    radsum value;
};

// Certificate that every two-sided completion of w has some lambda above t.
// The claim is established for `base`, a subword of w (base = w unless the
// verdict was inherited from a trimmed subword; completions of w complete
// base, so the bound transfers verbatim).  The extension tree rooted at base
// died at `depth`; `witness` is the dead extension realizing the smallest
// kill bound: every sequence through `witness` has lambda at `kill_pos` at
// least `bound` > t.  base sits at offset `base_in_witness` in witness and at
// offset `base_offset` in w; `position` maps kill_pos to w's indexing
// (position = base_offset + kill_pos - base_in_witness, may be negative).
struct exclusion_certificate {
    Word base;
    long base_offset = 0;
    Word witness;
    size_t base_in_witness = 0;
    size_t kill_pos = 0;
    long position = 0;
    quad bound;
    long depth = 0; // rounds expanded until the base tree died
};

struct membership_result {
    verdict_kind verdict = verdict_kind::undecided;
    long depth_used = 0;
    std::optional<inclusion_certificate> inclusion;
    std::optional<exclusion_certificate> exclusion;
};

// Decides whether w (nonempty, letters in {1,2}) is a factor of some
// two-sided sequence with Markov value <= t, for t in [11/4, 13/4].
// Alternates exclusion rounds (extension tree of depth r, a node dying when
// some position's center_min_bound exceeds t) with inclusion rounds (periodic
// certificates drawn from cycles of the length-(2r+3) transfer graph core and
// verified by exact Markov evaluation).  max_depth < 0 selects the default
// 3|w| + 9; exhausting it yields an undecided verdict, never a guess.
membership_result prune_membership(const Word& w, const quad& t, long max_depth = -1);

// Exact re-verification of a result: inclusion certificates are re-checked by
// occurrence search plus Markov re-evaluation, exclusion certificates by
// re-deriving the witness bound and re-running the extension tree.
bool verify_membership(const Word& w, const quad& t, const membership_result& r);

// Forgets all verified-period caches (test isolation).
void clear_sigma_caches();

// ---- exhaustive scans ------------------------------------------------------

struct pruning_enumeration {
    std::vector<Word> included;  // sorted
    std::vector<Word> undecided; // sorted; empty when the scan is decisive
};

// Runs prune_membership(w, t) over every w in {1,2}^n.
pruning_enumeration sigma_by_pruning(size_t n, const quad& t, long max_depth = -1);
pruning_enumeration sigma3_by_pruning(size_t n, long max_depth = -1);

// Three-way scan of {1,2}^n at thresholds 3 - 6^{-3n}, 3, 3 + 6^{-3n}
// (exact rationals).  Every verdict is re-verified; diff_words collects the
// words whose membership differs across the three thresholds.
struct stability_report {
    size_t n = 0;
    Rat t_minus, t_plus;
    size_t count_minus = 0, count_mid = 0, count_plus = 0;
    size_t undecided_minus = 0, undecided_mid = 0, undecided_plus = 0;
    size_t verify_failures = 0;
    bool equal = false;
    std::vector<Word> diff_words;
    long max_depth = 0; // cap actually used
};
stability_report stability_scan(size_t n, long max_depth = -1);

} // namespace cf3
