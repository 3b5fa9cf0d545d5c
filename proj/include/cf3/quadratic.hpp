#pragma once

#include "cf3/interval.hpp"
#include "cf3/numtypes.hpp"

#include <string>
#include <vector>

namespace cf3 {

// Exact quadratic number (a + b*sqrt(D)) / c in canonical form:
//   c > 0, gcd(a, b, c) = 1, D squarefree, and D = 0 iff b = 0 (rationals).
// Canonical form makes equality structural; make() normalizes any input.
class quad {
public:
    quad() : a_(0), b_(0), c_(1), D_(0) {}
    static quad make(Int a, Int b, Int c, Int D);
    static quad of_rat(const Rat& r);
    static quad sqrt_of_int(const Int& n); // sqrt(n), n >= 0

    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& c() const { return c_; }
    const Int& D() const { return D_; }

    bool is_rational() const { return b_ == 0; }
    Rat rat_value() const; // requires is_rational()

    quad operator+(const quad& o) const;
    quad operator-(const quad& o) const;
    quad operator*(const quad& o) const;
    quad operator/(const quad& o) const;
    quad operator-() const;
    quad recip() const;
    quad pow(unsigned long e) const;

    quad add_rat(const Rat& r) const;
    quad mul_rat(const Rat& r) const;

    bool operator==(const quad& o) const {
        return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && D_ == o.D_;
    }

    int sign() const;                 // exact
    int cmp(const quad& o) const;     // exact, fields may differ
    int cmp_rat(const Rat& r) const;  // exact

    riv enclosure() const;
    // canonical rendering: "p/q" for rationals, else "(a+b*sqrt(D))/c"
    // (the "/c" suffix is omitted when c = 1)
    std::string str() const;

private:
    Int a_, b_, c_, D_;
    void require_same_field(const quad& o) const;
};

// Exact finite sum of rational multiples of square roots of distinct
// squarefree integers (d = 1 carries the rational part).  This is the closure
// of quadratics under addition, which is exactly what two-sided lambda values
// need.  Sign determination is exact: a nonempty reduced sum is nonzero
// because square roots of distinct squarefree integers are linearly
// independent over Q, so interval refinement at growing precision always
// terminates.
class radsum {
public:
    radsum() = default;
    explicit radsum(const Rat& r);
    explicit radsum(const quad& q);

    radsum operator+(const radsum& o) const;
    radsum operator-(const radsum& o) const;
    radsum operator-() const;
    radsum mul_rat(const Rat& r) const;
    radsum add_rat(const Rat& r) const;

    bool operator==(const radsum& o) const { return terms_ == o.terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    Rat rat_value() const;
    // single-radical sums convert back to a quadratic
    bool is_quadratic() const;
    quad quad_value() const;

    int sign() const;
    int cmp(const radsum& o) const { return (*this - o).sign(); }
    int cmp_rat(const Rat& r) const;
    int cmp_quad(const quad& q) const;

    riv enclosure() const;
    std::string str() const;

    const std::vector<std::pair<Int, Rat>>& terms() const { return terms_; }

private:
    // sorted by radicand d (1 = rational part), coefficients nonzero
    std::vector<std::pair<Int, Rat>> terms_;
    void add_term(const Int& d, const Rat& coeff);
};

int quad_compare(const quad& x, const quad& y);

} // namespace cf3
