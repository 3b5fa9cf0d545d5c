#pragma once

#include "cf3/numtypes.hpp"

#include <mpfr.h>

#include <string>
#include <utility>

namespace cf3 {

// Directed-rounding interval on MPFR.  Every arithmetic result is rounded
// outward, so an riv always encloses the exact real it stands for.  The
// working precision is taken from config().precision_bits at operation time;
// sign determinations that need more bits temporarily raise it (see
// precision_guard).
class riv {
public:
    riv();                // empty-state zero
    riv(const riv& o);
    riv(riv&& o) noexcept;
    riv& operator=(const riv& o);
    riv& operator=(riv&& o) noexcept;
    ~riv();

    static riv exact(long v);
    static riv exact(const Int& v);
    static riv of_rat(const Rat& v);           // outward-rounded enclosure
    static riv hull(const riv& a, const riv& b);
    static riv pi();
    // log(3 + 2*sqrt(2)), the cylinder contraction rate on {1,2}-words
    static riv log_silver();

    riv operator+(const riv& b) const;
    riv operator-(const riv& b) const;
    riv operator*(const riv& b) const;
    riv operator/(const riv& b) const; // divisor must not straddle 0
    riv operator-() const;

    riv add_rat(const Rat& b) const { return *this + of_rat(b); }
    riv mul_rat(const Rat& b) const { return *this * of_rat(b); }

    riv log() const;  // requires lo > 0
    riv exp() const;
    riv sqrt() const; // requires lo >= 0
    riv abs() const;
    riv pow_int(long e) const;        // integer exponent; base must be sign-definite for e<0
    riv pow_rat(const Rat& e) const;  // requires lo > 0
    riv recip() const;

    bool contains_zero() const;
    bool is_positive() const; // lo > 0
    bool is_negative() const; // hi < 0
    // certainly less-than: hi < b.lo
    bool surely_lt(const riv& b) const;
    bool surely_le_rat(const Rat& b) const; // hi <= b
    bool surely_ge_rat(const Rat& b) const; // lo >= b
    bool surely_gt_rat(const Rat& b) const; // lo > b
    bool surely_lt_rat(const Rat& b) const; // hi < b
    bool contains_rat(const Rat& v) const;

    Int floor_lo() const;
    Int floor_hi() const;

    // exact rational value of an endpoint (every finite binary float is rational)
    Rat lo_rat() const;
    Rat hi_rat() const;

    double lo_d() const;
    double hi_d() const;

    // deterministic decimal rendering, outward rounded; digits of mantissa
    std::string lo_str(int digits = 20) const;
    std::string hi_str(int digits = 20) const;

    double width_d() const;

private:
    mpfr_t lo_, hi_;
    void init();
    friend riv exp_of_rat(const Rat& t);
};

// e^t for exact rational t, outward rounded.
riv exp_of_rat(const Rat& t);

// Temporarily raise the working precision (used by sign refinement).
class precision_guard {
public:
    explicit precision_guard(long bits);
    ~precision_guard();

private:
    long saved_;
};

} // namespace cf3
