#include "cf3/interval.hpp"

#include "cf3/config.hpp"
#include "cf3/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace cf3 {

namespace {
mpfr_prec_t prec() { return (mpfr_prec_t)std::max(64L, config().precision_bits); }
} // namespace

void riv::init() {
    mpfr_init2(lo_, prec());
    mpfr_init2(hi_, prec());
}

riv::riv() {
    init();
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

riv::riv(const riv& o) {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

riv::riv(riv&& o) noexcept {
    mpfr_init2(lo_, 64);
    mpfr_init2(hi_, 64);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

riv& riv::operator=(const riv& o) {
    if (this != &o) {
        mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
        mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

riv& riv::operator=(riv&& o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

riv::~riv() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

riv riv::exact(long v) {
    riv r;
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

riv riv::exact(const Int& v) {
    riv r;
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    return r;
}

riv riv::of_rat(const Rat& v) {
    riv r;
    mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
    return r;
}

riv riv::hull(const riv& a, const riv& b) {
    riv r;
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

riv riv::pi() {
    riv r;
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

riv riv::log_silver() {
    riv s = riv::exact(8).sqrt() + riv::exact(3);
    return s.log();
}

riv riv::operator+(const riv& b) const {
    riv r;
    mpfr_add(r.lo_, lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, b.hi_, MPFR_RNDU);
    return r;
}

riv riv::operator-(const riv& b) const {
    riv r;
    mpfr_sub(r.lo_, lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, b.lo_, MPFR_RNDU);
    return r;
}

riv riv::operator-() const {
    riv r;
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

riv riv::operator*(const riv& b) const {
    // brute-force corner evaluation with outward rounding; clear over clever
    riv r;
    mpfr_t t;
    mpfr_init2(t, prec());
    const mpfr_srcptr xs[2] = {lo_, hi_};
    const mpfr_srcptr ys[2] = {b.lo_, b.hi_};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(t, xs[i], ys[j], MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, xs[i], ys[j], MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

riv riv::operator/(const riv& b) const {
    if (b.contains_zero()) fail(errkind::internal, "interval division through zero");
    riv r;
    mpfr_t t;
    mpfr_init2(t, prec());
    const mpfr_srcptr xs[2] = {lo_, hi_};
    const mpfr_srcptr ys[2] = {b.lo_, b.hi_};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_div(t, xs[i], ys[j], MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_div(t, xs[i], ys[j], MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

riv riv::recip() const { return riv::exact(1) / *this; }

riv riv::log() const {
    if (mpfr_sgn(lo_) <= 0) fail(errkind::precondition, "log of non-positive interval");
    riv r;
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

riv riv::exp() const {
    riv r;
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

riv riv::sqrt() const {
    if (mpfr_sgn(lo_) < 0) fail(errkind::precondition, "sqrt of negative interval");
    riv r;
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

riv riv::abs() const {
    if (!contains_zero()) return is_negative() ? -*this : *this;
    riv r = *this;
    mpfr_set_zero(r.lo_, 1);
    mpfr_t a, b2;
    mpfr_init2(a, prec());
    mpfr_init2(b2, prec());
    mpfr_abs(a, lo_, MPFR_RNDU);
    mpfr_abs(b2, hi_, MPFR_RNDU);
    mpfr_max(r.hi_, a, b2, MPFR_RNDU);
    mpfr_clear(a);
    mpfr_clear(b2);
    return r;
}

riv riv::pow_int(long e) const {
    if (e == 0) return riv::exact(1);
    bool invert = e < 0;
    unsigned long ue = invert ? (unsigned long)(-e) : (unsigned long)e;
    riv acc = riv::exact(1);
    riv base = *this;
    while (ue) {
        if (ue & 1u) acc = acc * base;
        base = base * base;
        ue >>= 1;
    }
    return invert ? acc.recip() : acc;
}

riv riv::pow_rat(const Rat& e) const {
    if (e.get_den() == 1 && mpfr_sgn(lo_) > 0) {
        if (mpz_fits_slong_p(e.get_num().get_mpz_t()))
            return pow_int(e.get_num().get_si());
    }
    return (log().mul_rat(e)).exp();
}

bool riv::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool riv::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool riv::is_negative() const { return mpfr_sgn(hi_) < 0; }
bool riv::surely_lt(const riv& b) const { return mpfr_cmp(hi_, b.lo_) < 0; }
bool riv::surely_le_rat(const Rat& b) const { return mpfr_cmp_q(hi_, b.get_mpq_t()) <= 0; }
bool riv::surely_ge_rat(const Rat& b) const { return mpfr_cmp_q(lo_, b.get_mpq_t()) >= 0; }
bool riv::surely_gt_rat(const Rat& b) const { return mpfr_cmp_q(lo_, b.get_mpq_t()) > 0; }
bool riv::surely_lt_rat(const Rat& b) const { return mpfr_cmp_q(hi_, b.get_mpq_t()) < 0; }

bool riv::contains_rat(const Rat& v) const {
    return mpfr_cmp_q(lo_, v.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, v.get_mpq_t()) >= 0;
}

Int riv::floor_lo() const {
    mpfr_t t;
    mpfr_init2(t, mpfr_get_prec(lo_));
    mpfr_floor(t, lo_);
    Int z;
    mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDD);
    mpfr_clear(t);
    return z;
}

Int riv::floor_hi() const {
    mpfr_t t;
    mpfr_init2(t, mpfr_get_prec(hi_));
    mpfr_floor(t, hi_);
    Int z;
    mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDD);
    mpfr_clear(t);
    return z;
}

Rat riv::lo_rat() const {
    if (!mpfr_number_p(lo_)) fail(errkind::internal, "interval endpoint is not finite");
    Rat q;
    mpfr_get_q(q.get_mpq_t(), lo_);
    return q;
}

Rat riv::hi_rat() const {
    if (!mpfr_number_p(hi_)) fail(errkind::internal, "interval endpoint is not finite");
    Rat q;
    mpfr_get_q(q.get_mpq_t(), hi_);
    return q;
}

double riv::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double riv::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
double riv::width_d() const {
    mpfr_t t;
    mpfr_init2(t, prec());
    mpfr_sub(t, hi_, lo_, MPFR_RNDU);
    double w = mpfr_get_d(t, MPFR_RNDU);
    mpfr_clear(t);
    return w;
}

namespace {
std::string fmt(mpfr_srcptr v, int digits, mpfr_rnd_t rnd) {
    char buf[256];
    mpfr_snprintf(buf, sizeof buf, "%.*R*e", digits, rnd, v);
    return buf;
}
} // namespace

std::string riv::lo_str(int digits) const { return fmt(lo_, digits, MPFR_RNDD); }
std::string riv::hi_str(int digits) const { return fmt(hi_, digits, MPFR_RNDU); }

riv exp_of_rat(const Rat& t) { return riv::of_rat(t).exp(); }

precision_guard::precision_guard(long bits) : saved_(config().precision_bits) {
    config().precision_bits = bits;
}

precision_guard::~precision_guard() { config().precision_bits = saved_; }

} // namespace cf3
