#include "cf3/numtypes.hpp"

#include "cf3/config.hpp"
#include "cf3/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace cf3 {

run_config& config() {
    static run_config cfg;
    return cfg;
}

Rat make_rat(const Int& num, const Int& den) {
    if (sgn(den) == 0) fail(errkind::invalid_input, "rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

int sign(const Rat& x) { return sgn(x); }
int sign(const Int& x) { return sgn(x); }

Int pow2(unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

Int ipow(const Int& n, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), n.get_mpz_t(), e);
    return r;
}

Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

bool is_perfect_square(const Int& n) {
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Int isqrt(const Int& n) {
    if (sgn(n) < 0) fail(errkind::precondition, "isqrt of negative");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

namespace {

// Deterministic Miller-Rabin via GMP; 40 rounds is far beyond need.
bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

// Brent's variant of Pollard rho.  Returns a nontrivial factor of composite
// odd n.  Deterministic seed sequence keeps runs reproducible.
Int rho_factor(const Int& n) {
    if (mpz_even_p(n.get_mpz_t())) return Int(2);
    for (unsigned long c = 1;; ++c) {
        Int x(2), y(2), d(1);
        Int ys, q(1);
        unsigned long r = 1, m = 128;
        while (d == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            unsigned long k = 0;
            while (k < r && d == 1) {
                ys = y;
                unsigned long lim = std::min(m, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    Int t = x - y;
                    mpz_abs(t.get_mpz_t(), t.get_mpz_t());
                    q = q * t % n;
                }
                mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += lim;
            }
            r *= 2;
        }
        if (d == n) {
            // backtrack one step at a time
            d = 1;
            while (d == 1) {
                ys = (ys * ys + c) % n;
                Int t = x - ys;
                mpz_abs(t.get_mpz_t(), t.get_mpz_t());
                mpz_gcd(d.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (d != n) return d;
        // rare cycle degeneracy: retry with next polynomial constant
    }
}

void factor_into(const Int& n, std::vector<Int>& primes) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        primes.push_back(n);
        return;
    }
    Int d = rho_factor(n);
    factor_into(d, primes);
    factor_into(Int(n / d), primes);
}

} // namespace

std::pair<Int, Int> squarefree_part(const Int& n) {
    if (sgn(n) < 1) fail(errkind::precondition, "squarefree_part needs n >= 1");
    Int s(1), f(1), m(n);
    // strip small primes first; the residual is what rho sees
    static const unsigned long small_cut = 100000;
    for (unsigned long p = 2; p <= small_cut && m > 1; p += (p == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
                m /= p;
                ++e;
            }
            if (e & 1u) s *= p;
            for (unsigned i = 0; i < e / 2; ++i) f *= p;
        }
        // stop early once m has no factor <= small_cut possible
        if (Int(p) * p > m) break;
    }
    if (m > 1) {
        if (is_perfect_square(m)) {
            f *= isqrt(m);
        } else if (is_probable_prime(m)) {
            s *= m;
        } else {
            std::vector<Int> primes;
            factor_into(m, primes);
            std::sort(primes.begin(), primes.end());
            for (size_t i = 0; i < primes.size();) {
                size_t j = i;
                while (j < primes.size() && primes[j] == primes[i]) ++j;
                size_t e = j - i;
                if (e & 1u) s *= primes[i];
                for (size_t k = 0; k < e / 2; ++k) f *= primes[i];
                i = j;
            }
        }
    }
    return {s, f};
}

std::string to_string(const Int& n) { return n.get_str(); }

std::string to_string(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Int parse_int(const std::string& s) {
    Int r;
    if (s.empty() || mpz_set_str(r.get_mpz_t(), s.c_str(), 10) != 0)
        fail(errkind::invalid_input, "bad integer: '" + s + "'");
    return r;
}

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return make_rat(parse_int(s), Int(1));
    return make_rat(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

} // namespace cf3
