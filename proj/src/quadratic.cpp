#include "cf3/quadratic.hpp"

#include "cf3/config.hpp"
#include "cf3/errors.hpp"

#include <algorithm>

namespace cf3 {

quad quad::make(Int a, Int b, Int c, Int D) {
    if (sgn(c) == 0) fail(errkind::invalid_input, "quadratic with zero denominator");
    if (sgn(D) < 0) fail(errkind::invalid_input, "negative radicand");
    if (sgn(D) == 0) b = 0;
    if (sgn(b) == 0) D = 0;
    if (sgn(D) > 0) {
        auto [s, f] = squarefree_part(D);
        b *= f;
        D = s;
        if (D == 1) { // the radical collapsed to an integer
            a += b;
            b = 0;
            D = 0;
        }
    }
    if (sgn(c) < 0) {
        a = -a;
        b = -b;
        c = -c;
    }
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1) {
        a /= g;
        b /= g;
        c /= g;
    }
    quad q;
    q.a_ = a;
    q.b_ = b;
    q.c_ = c;
    q.D_ = D;
    return q;
}

quad quad::of_rat(const Rat& r) { return make(r.get_num(), 0, r.get_den(), 0); }

quad quad::sqrt_of_int(const Int& n) { return make(0, 1, 1, n); }

Rat quad::rat_value() const {
    if (!is_rational()) fail(errkind::internal, "rat_value of irrational quadratic");
    return make_rat(a_, c_);
}

void quad::require_same_field(const quad& o) const {
    if (!is_rational() && !o.is_rational() && D_ != o.D_)
        fail(errkind::internal, "field arithmetic across different radicands");
}

quad quad::operator+(const quad& o) const {
    require_same_field(o);
    Int D = is_rational() ? o.D_ : D_;
    return make(a_ * o.c_ + o.a_ * c_, b_ * o.c_ + o.b_ * c_, c_ * o.c_, D);
}

quad quad::operator-(const quad& o) const { return *this + (-o); }

quad quad::operator-() const {
    quad q = *this;
    q.a_ = -q.a_;
    q.b_ = -q.b_;
    return q;
}

quad quad::operator*(const quad& o) const {
    require_same_field(o);
    Int D = is_rational() ? o.D_ : D_;
    return make(a_ * o.a_ + b_ * o.b_ * D, a_ * o.b_ + b_ * o.a_, c_ * o.c_, D);
}

quad quad::recip() const {
    // c / (a + b sqrt(D)) rationalized by the conjugate
    Int norm = a_ * a_ - b_ * b_ * D_;
    if (sgn(norm) == 0) fail(errkind::internal, "reciprocal of zero quadratic");
    return make(a_ * c_, -b_ * c_, norm, D_);
}

quad quad::operator/(const quad& o) const { return *this * o.recip(); }

quad quad::pow(unsigned long e) const {
    quad acc = of_rat(Rat(1));
    quad base = *this;
    while (e) {
        if (e & 1ul) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

quad quad::add_rat(const Rat& r) const { return *this + of_rat(r); }
quad quad::mul_rat(const Rat& r) const {
    return make(a_ * r.get_num(), b_ * r.get_num(), c_ * r.get_den(), D_);
}

int quad::sign() const {
    // c > 0, so the sign is that of a + b*sqrt(D)
    int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with b^2 D; sign follows the larger side
    Int lhs = a_ * a_, rhs = b_ * b_ * D_;
    if (lhs == rhs) return 0; // cannot happen for squarefree D >= 2, kept for safety
    return lhs > rhs ? sa : sb;
}

int quad::cmp(const quad& o) const {
    if (D_ == o.D_) { // same field: difference stays in the field
        quad d = *this - o;
        return d.sign();
    }
    return radsum(*this).cmp(radsum(o));
}

int quad::cmp_rat(const Rat& r) const { return (*this - of_rat(r)).sign(); }

static riv riv_sqrt_int(const Int& D) { return riv::exact(D).sqrt(); }

riv quad::enclosure() const {
    riv num = riv::exact(a_);
    if (sgn(b_) != 0) num = num + riv::exact(b_) * riv_sqrt_int(D_);
    return num / riv::exact(c_);
}

std::string quad::str() const {
    if (is_rational()) return to_string(rat_value());
    std::string s = "(" + a_.get_str();
    if (sgn(b_) >= 0) s += "+";
    s += b_.get_str() + "*sqrt(" + D_.get_str() + "))";
    if (c_ != 1) s += "/" + c_.get_str();
    return s;
}

int quad_compare(const quad& x, const quad& y) { return x.cmp(y); }

// ---------------------------------------------------------------------------
// radsum

radsum::radsum(const Rat& r) { add_term(1, r); }

radsum::radsum(const quad& q) {
    add_term(1, make_rat(q.a(), q.c()));
    if (sgn(q.b()) != 0) add_term(q.D(), make_rat(q.b(), q.c()));
}

void radsum::add_term(const Int& d, const Rat& coeff) {
    if (cf3::sign(coeff) == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), d,
                               [](const auto& t, const Int& v) { return t.first < v; });
    if (it != terms_.end() && it->first == d) {
        it->second += coeff;
        if (cf3::sign(it->second) == 0) terms_.erase(it);
    } else {
        terms_.insert(it, {d, coeff});
    }
}

radsum radsum::operator+(const radsum& o) const {
    radsum r = *this;
    for (const auto& [d, c] : o.terms_) r.add_term(d, c);
    return r;
}

radsum radsum::operator-() const {
    radsum r = *this;
    for (auto& [d, c] : r.terms_) c = -c;
    return r;
}

radsum radsum::operator-(const radsum& o) const { return *this + (-o); }

radsum radsum::mul_rat(const Rat& r) const {
    if (cf3::sign(r) == 0) return radsum();
    radsum out = *this;
    for (auto& [d, c] : out.terms_) c *= r;
    return out;
}

radsum radsum::add_rat(const Rat& r) const {
    radsum out = *this;
    out.add_term(1, r);
    return out;
}

bool radsum::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 1);
}

Rat radsum::rat_value() const {
    if (!is_rational()) fail(errkind::internal, "rat_value of irrational sum");
    return terms_.empty() ? Rat(0) : terms_[0].second;
}

bool radsum::is_quadratic() const {
    size_t radicals = 0;
    for (const auto& [d, c] : terms_)
        if (d != 1) ++radicals;
    return radicals <= 1;
}

quad radsum::quad_value() const {
    if (!is_quadratic()) fail(errkind::internal, "quad_value of multi-radical sum");
    Rat rat(0), irr(0);
    Int D(0);
    for (const auto& [d, c] : terms_) {
        if (d == 1)
            rat = c;
        else {
            irr = c;
            D = d;
        }
    }
    // common denominator
    Int den = rat.get_den() * irr.get_den() /
              Int(gcd(rat.get_den(), irr.get_den()));
    Int a = rat.get_num() * (den / rat.get_den());
    Int b = irr.get_num() * (den / irr.get_den());
    return quad::make(a, b, den, D);
}

riv radsum::enclosure() const {
    riv acc = riv::exact(0);
    for (const auto& [d, c] : terms_) {
        riv term = riv::of_rat(c);
        if (d != 1) term = term * riv_sqrt_int(d);
        acc = acc + term;
    }
    return acc;
}

int radsum::sign() const {
    if (terms_.empty()) return 0;
    if (terms_.size() == 1) return cf3::sign(terms_[0].second);
    int s = cf3::sign(terms_[0].second);
    bool uniform = true;
    for (const auto& [d, c] : terms_)
        if (cf3::sign(c) != s) {
            uniform = false;
            break;
        }
    if (uniform) return s;
    // Mixed signs: the reduced sum is provably nonzero (linear independence of
    // sqrt d over Q for distinct squarefree d), so refinement terminates.
    long bits = std::max(128L, config().precision_bits);
    for (int round = 0; round < 16; ++round) {
        precision_guard g(bits);
        riv e = enclosure();
        if (e.is_positive()) return 1;
        if (e.is_negative()) return -1;
        bits *= 2;
    }
    fail(errkind::internal, "sign refinement exhausted precision");
}

int radsum::cmp_rat(const Rat& r) const {
    radsum d = *this;
    d.add_term(1, -r);
    return d.sign();
}

int radsum::cmp_quad(const quad& q) const { return (*this - radsum(q)).sign(); }

std::string radsum::str() const {
    if (terms_.empty()) return "0";
    if (is_quadratic()) return quad_value().str();
    std::string s;
    for (size_t i = 0; i < terms_.size(); ++i) {
        const auto& [d, c] = terms_[i];
        std::string piece;
        if (d == 1)
            piece = to_string(c);
        else if (c == 1)
            piece = "sqrt(" + d.get_str() + ")";
        else
            piece = "(" + to_string(c) + ")*sqrt(" + d.get_str() + ")";
        if (i == 0)
            s = piece;
        else
            s += (piece[0] == '-' ? " - " + piece.substr(1) : " + " + piece);
    }
    return s;
}

} // namespace cf3
