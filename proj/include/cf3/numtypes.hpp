#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cf3 {

using Int = mpz_class;
using Rat = mpq_class;

// Canonical rational: denominator > 0, gcd(num, den) = 1.  mpq_class keeps
// this form only after an explicit canonicalize(), so construction goes
// through here.
Rat make_rat(const Int& num, const Int& den);
inline Rat make_rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

int sign(const Rat& x);
int sign(const Int& x);

// 2^e for e >= 0.
Int pow2(unsigned long e);
// n^e by binary exponentiation, e >= 0.
Int ipow(const Int& n, unsigned long e);
Int factorial(unsigned long n);

bool is_perfect_square(const Int& n);
Int isqrt(const Int& n); // floor square root, n >= 0

// n = s * f^2 with s squarefree; returns {s, f}.  Requires n >= 1.  Uses
// trial division then Brent-cycle rho with Miller-Rabin, which is comfortable
// for the discriminant sizes produced by periodic continued fractions here
// (a few hundred bits at most).
std::pair<Int, Int> squarefree_part(const Int& n);

// Exact decimal strings; rationals print "p/q" or "p" when q = 1.
std::string to_string(const Int& n);
std::string to_string(const Rat& x);

Int parse_int(const std::string& s);
Rat parse_rat(const std::string& s); // "p", "p/q", sign allowed

} // namespace cf3
