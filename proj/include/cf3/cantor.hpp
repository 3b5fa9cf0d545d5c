#pragma once

#include "cf3/gauge.hpp"
#include "cf3/interval.hpp"
#include "cf3/numtypes.hpp"
#include "cf3/word.hpp"

#include <optional>
#include <vector>

namespace cf3 {

// ---- Cantor schedule ---------------------------------------------------------
//
// Finite-level data for the lower-bound construction: a nested family of
// continued-fraction cylinders on words 1^{r_1} 2 2 ... 1^{r_k} 2 2 with
// f_i <= r_i < 2 f_i, driven by a slow gauge h.  The contraction constant is
// c = log(3 + 2 sqrt 2), the per-level ratio sup delta_k feeds
// f_k = max(1, floor(1/(2 c delta_k))), and eps_k encloses e^{-c F_k} with
// F_k = f_1 + ... + f_k.

struct schedule_level {
    long k = 0;
    // Enclosure of the ratio sup; its upper end is the certified delta_k.
    // Level 1 reports the gauge's ratio sup over its whole domain: f_1 is
    // pinned to 3 by the construction, not derived from delta_1.
    riv delta;
    long f = 0; // f_1 = 3; k >= 2: max(1, floor(1/(2 c delta_k))) from upper delta
    Int F;      // f_1 + ... + f_k
    riv eps;    // enclosure of e^{-c F_k}
};

struct cantor_schedule {
    gauge h;
    riv c; // log(3 + 2 sqrt 2)
    std::vector<schedule_level> levels;
};

// Builds K levels.  Requires classify_k13(h) in the not-sigma-finite regime
// (the construction only makes sense for gauges with log h / log eps -> 0);
// other regimes raise a regime error.
cantor_schedule build_schedule(const gauge& h, long K);

// ---- level geometry ----------------------------------------------------------

struct cantor_level {
    long k = 0;
    Int N; // product of f_i, i <= k
    Word shortest; // all r_i = f_i
    Word longest;  // all r_i = 2 f_i - 1
    Rat min_diam;  // cylinder diameter of the longest word (exact)
    Rat max_diam;  // cylinder diameter of the shortest word (exact)
    // Full enumeration happens only when N <= cap; the checks below are then
    // performed against the exact cylinder intervals.
    bool enumerated = false;
    std::vector<Word> words;
    bool disjoint = true;         // cylinders pairwise disjoint (strict)
    bool diam_extremal_ok = true; // every diameter in [min_diam, max_diam],
                                  // both ends attained
};

cantor_level level_geometry(const cantor_schedule& s, long n, size_t cap = 100000);

// N_n * h(minimum level-(n+1) diameter), the finite-level divergence
// certificate.  Uses the actual minimum diameter from the longest extremal
// word, not the schedule's eps_n (see README on the source bound).
// Requires n + 1 <= K.
riv divergence_certificate(const cantor_schedule& s, long n);

// ---- nested interval systems and the mass-distribution bound ------------------

struct nested_interval {
    Rat lo, hi;        // exact endpoints, lo < hi
    size_t parent = 0; // index into the previous level (unused at level 0)
};

struct nested_system {
    gauge h;
    // levels[0] are the roots; every deeper interval nests strictly inside
    // its parent, and siblings are pairwise disjoint.
    std::vector<std::vector<nested_interval>> levels;
};

struct mass_oracle_report {
    riv brute_min; // exact DP minimum of sum h(|I|) over covers by system intervals
    riv bound;     // (1/2) min_r N_r h(eps_{r+1})
    bool pass = false;
};

// Exhaustive covering check: every cover of the leaf set by unions of system
// intervals costs at least the closed-form bound.  The DP is exact on the
// tree (each node either pays h(its diameter) or delegates to its children).
// Total leaf count must be <= 1000.
mass_oracle_report mass_bound_oracle(const nested_system& sys);

// Deterministic pseudo-random system for oracle trials: <= 4 levels, uniform
// per-level branching 2..4, exact rational endpoints, gauge drawn from all
// families (table rows derived from the system's own scales).
nested_system random_nested_system(unsigned long long seed);

// ---- covering estimator for the level sets near 3 ------------------------------

struct covering_report {
    size_t n = 0;
    size_t count = 0; // |Sigma(3, n)|
    riv sum;          // sum over words of h(exact cylinder diameter), fixed order
    Rat min_diam, max_diam;
    riv count_bound;               // 9 n^3 * h(max_diam)
    bool sum_le_count_h_max = false; // sum <= count * h(max_diam), certified
};

covering_report cover_k3(const gauge& h, size_t n);

// ---- dyadic covering budget -----------------------------------------------------

struct zero_budget_report {
    long m = 0;      // smallest m with 9 m^3 < 2^{d m - 1}
    Int r_k;         // m * ceil(|log2 eps_k| / m)
    Int block_bound; // 9 r_k^3
    riv budget_log2; // (m d - 1) - |log2 eps_k| / m
    std::optional<Rat> budget_log2_exact; // exact when eps_k is a dyadic power
    riv budget;      // 2^{budget_log2}
};

// Requires 0 < d <= 1 and 0 < eps_k < 1.
zero_budget_report zero_cover_budget(const Rat& d, const Rat& eps_k);

} // namespace cf3
