#include "cf3/gauge.hpp"

#include "cf3/errors.hpp"

#include <algorithm>
#include <sstream>

namespace cf3 {

namespace {

Int factorial(long n) {
    Int r(1);
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

// Exponent of the constant factor (e^{(2k)!})^{1-1/k} of the factorial
// example's region k: (2k)! * (k-1)/k, exact.
Rat slope_log(long k) {
    Rat r(factorial(2 * k), Int(1));
    r *= Rat(k - 1, k);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& q) {
    std::ostringstream os;
    os << q.get_num();
    if (q.get_den() != 1) os << '/' << q.get_den();
    return os.str();
}

// Which piece of the factorial example a (negative, exact) log eps lies in:
// region k covers log eps in [-(2k+2)!, -(2k)!), split at -(2k+1)! into the
// flat piece (left; closed at the joint, where the two pieces agree) and the
// linear piece (right).
struct factorial_piece {
    long k = 0;
    bool flat = false;
};

factorial_piece factorial_locate(const Rat& l) {
    if (l >= Rat(-2)) fail(errkind::range, "factorial gauge needs log eps < -2");
    for (long k = 1; k <= 48; ++k) {
        Rat lower(-factorial(2 * k + 2));
        if (l >= lower) {
            Rat mid(-factorial(2 * k + 1));
            return {k, l <= mid};
        }
    }
    fail(errkind::range, "log eps below -98! is outside the supported factorial range");
}

// Exact log h for the factorial example.
Rat factorial_log_eval(const Rat& l) {
    factorial_piece p = factorial_locate(l);
    Rat out = p.flat ? Rat(-factorial(2 * p.k + 1)) : l;
    out += slope_log(p.k);
    out.canonicalize();
    return out;
}

// The maximizer of loglog(L)/L on L > e solves u*log(u) = 1 with L = e^u;
// returns a narrow rational bracket [lo, hi] around u* (~1.7632).
std::pair<Rat, Rat> loglog_peak_u() {
    Rat lo(17, 10), hi(9, 5);
    for (int i = 0; i < 120; ++i) {
        Rat mid = (lo + hi) / 2;
        mid.canonicalize();
        riv f = riv::of_rat(mid) * riv::of_rat(mid).log() - riv::exact(1);
        if (f.is_negative())
            lo = mid;
        else if (f.is_positive())
            hi = mid;
        else
            break;
    }
    return {lo, hi};
}

} // namespace

// ---- construction ------------------------------------------------------------

gauge gauge::power(const Rat& s) {
    if (!(s > 0)) fail(errkind::invalid_input, "power gauge needs exponent s > 0");
    gauge g;
    g.fam_ = gauge_family::power;
    g.param_ = s;
    g.param_.canonicalize();
    return g;
}

gauge gauge::loginv(const Rat& c) {
    if (!(c > 0)) fail(errkind::invalid_input, "loginv gauge needs exponent c > 0");
    gauge g;
    g.fam_ = gauge_family::loginv;
    g.param_ = c;
    g.param_.canonicalize();
    return g;
}

gauge gauge::logloginv() {
    gauge g;
    g.fam_ = gauge_family::logloginv;
    return g;
}

gauge gauge::factorial_example() {
    gauge g;
    g.fam_ = gauge_family::factorial_example;
    return g;
}

gauge gauge::square_of(const gauge& inner) {
    switch (inner.fam_) {
    case gauge_family::power: return power(inner.param_ * 2);
    case gauge_family::loginv: return loginv(inner.param_ * 2);
    case gauge_family::table: {
        auto rows = inner.rows_;
        for (auto& row : rows) {
            row.second *= row.second;
            row.second.canonicalize();
        }
        return table(std::move(rows));
    }
    // squares of power/loginv/table already normalized at construction, so a
    // square_of inner can only wrap logloginv or the factorial example: nest.
    default: break;
    }
    gauge g;
    g.fam_ = gauge_family::square_of;
    g.inner_ = std::make_shared<gauge>(inner);
    return g;
}

gauge gauge::table(std::vector<std::pair<Rat, Rat>> rows) {
    if (rows.empty()) fail(errkind::invalid_input, "table gauge needs at least one row");
    for (size_t i = 0; i < rows.size(); ++i) {
        rows[i].first.canonicalize();
        rows[i].second.canonicalize();
        if (!(rows[i].first > 0) || !(rows[i].second > 0))
            fail(errkind::invalid_input, "table gauge rows must be positive");
        if (i > 0) {
            if (!(rows[i].first < rows[i - 1].first))
                fail(errkind::invalid_input, "table gauge breakpoints must be strictly descending");
            if (rows[i].second > rows[i - 1].second)
                fail(errkind::invalid_input, "table gauge values must be nondecreasing with eps");
        }
    }
    gauge g;
    g.fam_ = gauge_family::table;
    g.rows_ = std::move(rows);
    return g;
}

std::string gauge::str() const {
    switch (fam_) {
    case gauge_family::power: return "pow:" + rat_str(param_);
    case gauge_family::loginv: return "loginv:" + rat_str(param_);
    case gauge_family::logloginv: return "logloginv";
    case gauge_family::factorial_example: return "paper:factorial";
    case gauge_family::square_of: return "square:(" + inner_->str() + ")";
    case gauge_family::table: {
        std::ostringstream os;
        os << "table:<" << rows_.size() << " rows>";
        return os.str();
    }
    }
    fail(errkind::internal, "unreachable gauge family");
}

Rat gauge::domain_sup() const {
    switch (fam_) {
    case gauge_family::power: return Rat(1);
    case gauge_family::loginv: return Rat(1, 3);             // |log eps| > 1 with margin
    case gauge_family::logloginv: return Rat(1, 21);         // log|log eps| > 1 with margin
    case gauge_family::factorial_example: return Rat(1, 8);  // eps < e^{-2}
    case gauge_family::square_of: return inner_->domain_sup();
    case gauge_family::table: return rows_.front().first;
    }
    fail(errkind::internal, "unreachable gauge family");
}

// ---- evaluation ----------------------------------------------------------------

riv gauge::eval(const Rat& eps) const {
    if (!(eps > 0)) fail(errkind::invalid_input, "gauge argument must be positive");
    switch (fam_) {
    case gauge_family::table: {
        if (eps > rows_.front().first)
            fail(errkind::range, "gauge argument above the largest table breakpoint");
        for (const auto& row : rows_)
            if (row.first <= eps) return riv::of_rat(row.second);
        fail(errkind::range, "gauge argument below the smallest table breakpoint");
    }
    default: break;
    }
    if (!(eps < domain_sup())) fail(errkind::range, "gauge argument outside the family's domain");
    switch (fam_) {
    case gauge_family::power: return riv::of_rat(eps).pow_rat(param_);
    case gauge_family::loginv: {
        riv L = -riv::of_rat(eps).log(); // |log eps| > 1
        return L.pow_rat(param_).recip();
    }
    case gauge_family::logloginv: {
        riv L = -riv::of_rat(eps).log();
        return L.log().recip();
    }
    case gauge_family::factorial_example: return eval_at_log(riv::of_rat(eps).log());
    case gauge_family::square_of: {
        riv v = inner_->eval(eps);
        return v * v;
    }
    default: break;
    }
    fail(errkind::internal, "unreachable gauge family");
}

riv gauge::log_eval(const Rat& log_eps) const {
    if (!(log_eps < 0)) fail(errkind::invalid_input, "log eps must be negative");
    switch (fam_) {
    case gauge_family::power: {
        Rat r = log_eps * param_;
        r.canonicalize();
        return riv::of_rat(r);
    }
    case gauge_family::loginv: {
        riv L = riv::of_rat(-log_eps);
        if (!L.surely_gt_rat(Rat(1))) fail(errkind::range, "loginv gauge needs |log eps| > 1");
        return -(L.log() * riv::of_rat(param_));
    }
    case gauge_family::logloginv: {
        riv ll = riv::of_rat(-log_eps).log();
        if (!ll.surely_gt_rat(Rat(1)))
            fail(errkind::range, "logloginv gauge needs log|log eps| > 1");
        return -ll.log();
    }
    case gauge_family::factorial_example:
        return riv::of_rat(factorial_log_eval(log_eps));
    case gauge_family::square_of: {
        riv v = inner_->log_eval(log_eps);
        return v + v;
    }
    case gauge_family::table: {
        // locate the row by comparing log eps with each breakpoint's log
        for (const auto& row : rows_) {
            riv lrow = riv::of_rat(row.first).log();
            if (lrow.surely_le_rat(log_eps)) return riv::of_rat(row.second).log();
            if (lrow.contains_rat(log_eps))
                fail(errkind::insufficient_depth,
                     "log eps indistinguishable from a table breakpoint at this precision");
        }
        fail(errkind::range, "gauge argument below the smallest table breakpoint");
    }
    }
    fail(errkind::internal, "unreachable gauge family");
}

riv gauge::log_eval_iv(const riv& log_eps) const {
    // log h is nondecreasing in log eps, so the endpoint evaluations bracket
    // the image; endpoints are exact rationals of the MPFR enclosure.
    Rat lo = log_eps.lo_rat();
    Rat hi = log_eps.hi_rat();
    if (lo == hi) return log_eval(lo);
    return riv::hull(log_eval(lo), log_eval(hi));
}

riv gauge::eval_at_log(const riv& log_eps) const { return log_eval_iv(log_eps).exp(); }

std::optional<Rat> gauge::log_eval_exact(const Rat& log_eps) const {
    if (!(log_eps < 0)) fail(errkind::invalid_input, "log eps must be negative");
    switch (fam_) {
    case gauge_family::power: {
        Rat r = log_eps * param_;
        r.canonicalize();
        return r;
    }
    case gauge_family::factorial_example: return factorial_log_eval(log_eps);
    case gauge_family::square_of: {
        auto v = inner_->log_eval_exact(log_eps);
        if (!v) return std::nullopt;
        Rat r = *v * 2;
        r.canonicalize();
        return r;
    }
    default: return std::nullopt;
    }
}

// ---- ratio sup -------------------------------------------------------------------

riv gauge::ratio_sup_from_L(const riv& L0) const {
    if (!L0.is_positive()) fail(errkind::invalid_input, "ratio_sup needs |log eps0| > 0");
    switch (fam_) {
    case gauge_family::power:
        // |log h|/|log eps| = s everywhere
        return riv::of_rat(param_);
    case gauge_family::loginv: {
        // ratio(L) = c log(L)/L for L = |log eps| >= L0: decreasing for
        // L >= e with global max c/e at L = e
        if (!L0.surely_gt_rat(Rat(1))) fail(errkind::range, "loginv ratio needs |log eps0| > 1");
        riv at_end = riv::of_rat(param_) * L0.log() / L0;
        if (L0.surely_ge_rat(Rat(3))) return at_end; // 3 > e: decreasing from L0 on
        riv at_peak = riv::of_rat(param_) / riv::exact(1).exp();
        return riv::hull(at_end, at_peak);
    }
    case gauge_family::logloginv: {
        // ratio(L) = loglog(L)/L on L > e: increases up to L* = e^{u*} with
        // u* log(u*) = 1 (u* ~ 1.7632, L* ~ 5.83), then decreases; peak value
        // 1/(u* e^{u*}).  Over L >= L0 the sup is the peak when L0 <= L*, and
        // the left endpoint value when L0 >= L*.
        if (!L0.log().surely_gt_rat(Rat(1)))
            fail(errkind::range, "logloginv ratio needs log|log eps0| > 1");
        riv at_end = L0.log().log() / L0;
        auto [ulo, uhi] = loglog_peak_u();
        riv ustar = riv::hull(riv::of_rat(ulo), riv::of_rat(uhi));
        riv Lstar = ustar.exp();
        riv at_peak = (ustar * Lstar).recip();
        if (Lstar.surely_lt(L0)) return at_end;
        if (L0.surely_lt(Lstar)) return at_peak;
        return riv::hull(at_end, at_peak);
    }
    case gauge_family::factorial_example: {
        // Within region k the ratio's maximum is 1 - (1-1/k)/(2k+1) < 1,
        // increasing to 1 as k grows; every eps0 in the domain has all deeper
        // regions below it, so the sup over (0, eps0] is exactly 1 (never
        // attained).
        if (!L0.surely_gt_rat(Rat(2))) fail(errkind::range, "factorial ratio needs |log eps0| > 2");
        return riv::exact(1);
    }
    case gauge_family::square_of: {
        riv v = inner_->ratio_sup_from_L(L0);
        return v + v;
    }
    case gauge_family::table:
        fail(errkind::invalid_input,
             "table ratio_sup needs the breakpoint list; use ratio_sup(eps0)");
    }
    fail(errkind::internal, "unreachable gauge family");
}

riv gauge::ratio_sup(const Rat& eps0) const {
    if (!(eps0 > 0) || !(eps0 < domain_sup()))
        fail(errkind::range, "ratio_sup needs eps0 inside the gauge domain");
    if (fam_ == gauge_family::table) {
        // step function: on a segment [eps_j, upper), |log h| is constant and
        // |log s| smallest at the open right end, so the segment sup of the
        // ratio is |log value_j|/|log upper|; scan the segments below eps0.
        if (!(eps0 < 1)) fail(errkind::range, "table ratio_sup needs eps0 < 1");
        riv best;
        bool have = false;
        Rat upper = eps0;
        for (const auto& row : rows_) {
            if (row.first > eps0) continue;
            riv cand = riv::of_rat(row.second).log().abs() / riv::of_rat(upper).log().abs();
            best = have ? riv::hull(best, cand) : cand;
            have = true;
            upper = row.first;
        }
        if (!have) fail(errkind::range, "eps0 below the smallest table breakpoint");
        return best;
    }
    if (fam_ == gauge_family::square_of && inner_->fam_ == gauge_family::table) {
        riv v = inner_->ratio_sup(eps0);
        return v + v;
    }
    return ratio_sup_from_L(-riv::of_rat(eps0).log());
}

// ---- classifiers ----------------------------------------------------------------

std::string regime_name(regime_kind r) {
    switch (r) {
    case regime_kind::not_sigma_finite: return "not-sigma-finite";
    case regime_kind::zero: return "zero";
    case regime_kind::inconclusive: return "inconclusive";
    }
    fail(errkind::internal, "unreachable regime kind");
}

namespace {

struct limsup_value {
    bool known = false;
    bool infinite = false;
    Rat value;
};

// limsup of log h(eps)/log eps as eps -> 0+ (both logs negative, ratio >= 0).
limsup_value k13_limsup(const gauge& h) {
    switch (h.family()) {
    case gauge_family::power: return {true, false, h.param()};
    case gauge_family::loginv:
    case gauge_family::logloginv:
        return {true, false, Rat(0)}; // log-scale gauges vanish slower than any power
    case gauge_family::factorial_example:
        return {true, false, Rat(1)}; // linear pieces approach slope 1 from below
    case gauge_family::square_of: {
        limsup_value v = k13_limsup(h.inner());
        if (v.known && !v.infinite) v.value *= 2;
        return v;
    }
    case gauge_family::table: return {};
    }
    fail(errkind::internal, "unreachable gauge family");
}

// limsup of |log h(eps)| / log|log eps| as eps -> 0+.
limsup_value k3set_limsup(const gauge& h) {
    switch (h.family()) {
    case gauge_family::power: return {true, true, Rat(0)};   // s|log eps| >> log|log eps|
    case gauge_family::loginv: return {true, false, h.param()}; // c log L over log L
    case gauge_family::logloginv: return {true, false, Rat(0)}; // logloglog << loglog
    case gauge_family::factorial_example: return {true, true, Rat(0)};
    case gauge_family::square_of: {
        limsup_value v = k3set_limsup(h.inner());
        if (v.known && !v.infinite) v.value *= 2;
        return v;
    }
    case gauge_family::table: return {};
    }
    fail(errkind::internal, "unreachable gauge family");
}

std::string limsup_str(const limsup_value& v) {
    if (!v.known) return "n/a";
    if (v.infinite) return "inf";
    return rat_str(v.value);
}

} // namespace

regime_verdict classify_k13(const gauge& h) {
    regime_verdict out;
    out.target = "k13";
    limsup_value v = k13_limsup(h);
    out.limsup = limsup_str(v);
    if (!v.known) {
        out.regime = regime_kind::inconclusive;
        out.evidence = "finite table data cannot pin the asymptotic ratio log h/log eps";
        return out;
    }
    if (!v.infinite && v.value == 0) {
        out.regime = regime_kind::not_sigma_finite;
        out.evidence = "log h(eps)/log eps -> 0 (the ratio is nonnegative, so limsup 0 "
                       "is a limit): h shrinks slower than every power, the measure is "
                       "infinite on every interval and not sigma-finite";
        out.limit_caveat = false;
        return out;
    }
    out.regime = regime_kind::zero;
    out.evidence = "limsup log h(eps)/log eps = " + out.limsup +
                   " > 0: h dips below a positive power along a sequence, giving measure zero";
    return out;
}

regime_verdict classify_k3set(const gauge& h) {
    regime_verdict out;
    out.target = "k3set";
    limsup_value v = k3set_limsup(h);
    out.limsup = limsup_str(v);
    if (!v.known) {
        out.regime = regime_kind::inconclusive;
        out.evidence = "finite table data cannot pin the asymptotic ratio |log h|/log|log eps|";
        return out;
    }
    if (v.infinite || v.value > 3) {
        out.regime = regime_kind::zero;
        out.evidence = "limsup |log h(eps)|/log|log eps| = " + out.limsup +
                       " > 3: h outpaces the cube-of-log threshold, giving measure zero";
        return out;
    }
    out.regime = regime_kind::inconclusive;
    out.evidence = "limsup |log h(eps)|/log|log eps| = " + out.limsup +
                   " <= 3: below the proven threshold, no verdict either way";
    return out;
}

regime_verdict classify_liouville(const gauge& h) {
    regime_verdict out;
    out.target = "liouville";
    switch (h.family()) {
    case gauge_family::power: {
        // Gamma_h(r) = r^min(s,1) (or 0 for s > 1); witness t = min(s,1)/2
        // gives Gamma_h(r)/r^t -> 0.
        Rat s = h.param();
        Rat m = std::min(s, Rat(1));
        Rat t = m / 2;
        t.canonicalize();
        out.regime = regime_kind::zero;
        out.limsup = "0";
        out.evidence = "Gamma_h(r) <= r^" + rat_str(m) + ", so Gamma_h(r)/r^" + rat_str(t) +
                       " -> 0: measure zero";
        return out;
    }
    case gauge_family::loginv:
    case gauge_family::logloginv: {
        // h(s)/s is decreasing, so Gamma_h(r) = h(r), which decays slower
        // than every positive power of r.
        out.regime = regime_kind::not_sigma_finite;
        out.limsup = "inf";
        out.evidence = "Gamma_h(r) = h(r) for small r, which decays slower than every "
                       "power, so Gamma_h(r)/r^t -> inf for all t > 0: not sigma-finite";
        return out;
    }
    case gauge_family::factorial_example: {
        out.regime = regime_kind::not_sigma_finite;
        out.limsup = "inf";
        out.evidence = "along r_k = e^{-(2k)!-1}, log(Gamma_h(r_k)/r_k^t) = "
                       "t((2k)!+1) - (2k)!/k - 1 -> inf for every t > 0: not sigma-finite";
        return out;
    }
    case gauge_family::square_of: {
        if (h.inner().family() == gauge_family::logloginv) {
            out.regime = regime_kind::not_sigma_finite;
            out.limsup = "inf";
            out.evidence = "Gamma_h(r) = 1/(log|log r|)^2 decays slower than every power: "
                           "not sigma-finite";
            return out;
        }
        out.regime = regime_kind::inconclusive;
        out.limsup = "n/a";
        out.evidence = "no closed Gamma asymptotics recorded for this squared family";
        return out;
    }
    case gauge_family::table: {
        out.regime = regime_kind::inconclusive;
        out.limsup = "n/a";
        out.evidence = "finite table data cannot pin the Gamma transform's asymptotics";
        return out;
    }
    }
    fail(errkind::internal, "unreachable gauge family");
}

// ---- Gamma transform ---------------------------------------------------------------

Rat gamma_log_exact(const gauge& h, const Rat& log_r) {
    switch (h.family()) {
    case gauge_family::power: {
        if (!(log_r < 0)) fail(errkind::invalid_input, "gamma_log_exact needs log r < 0");
        const Rat& s = h.param();
        if (s > 1) fail(errkind::regime, "Gamma vanishes identically for power(s > 1)");
        Rat out = log_r * s; // s <= 1: inf of h(x)/x on (0, r] sits at x = r
        out.canonicalize();
        return out;
    }
    case gauge_family::factorial_example: {
        // Region k of r: on the linear piece h(x)/x is the constant
        // C_k = e^{(2k)!(1-1/k)}, smaller than every deeper region's
        // constant, so Gamma = r*C_k.  On the flat piece the competitors are
        // h(r)/r (at x = r) and the next region's constant C_{k+1}, so
        // Gamma = min(h(r), r*C_{k+1}).  Both branches are exact in the log
        // domain, and they agree at the piece joints (Gamma is continuous
        // and nondecreasing).
        factorial_piece p = factorial_locate(log_r);
        Rat out;
        if (!p.flat) {
            out = log_r + slope_log(p.k);
        } else {
            Rat hflat = Rat(-factorial(2 * p.k + 1)) + slope_log(p.k);
            Rat deeper = log_r + slope_log(p.k + 1);
            out = std::min(hflat, deeper);
        }
        out.canonicalize();
        return out;
    }
    default: fail(errkind::invalid_input, "no exact Gamma log form for this family");
    }
}

riv gamma_transform(const gauge& h, const Rat& r) {
    if (!(r > 0)) fail(errkind::invalid_input, "Gamma transform needs r > 0");
    switch (h.family()) {
    case gauge_family::power: {
        // h(x)/x = x^{s-1}: decreasing for s < 1 (inf at x = r), constant
        // for s = 1, increasing for s > 1 (inf 0 as x -> 0+).
        if (!(r < h.domain_sup())) fail(errkind::range, "Gamma argument outside the gauge domain");
        const Rat& s = h.param();
        if (s < 1) return riv::of_rat(r).pow_rat(s);
        if (s == 1) return riv::of_rat(r);
        return riv::exact(0);
    }
    case gauge_family::loginv: {
        // h(x)/x = 1/(x L^c) with L = |log x|: d(x L^c)/dx = L^{c-1}(L - c),
        // so the product increases (ratio decreases) only where L > c.  The
        // infimum over (0, r] sits at x = min(r, e^{-c}); the two branches
        // agree at the joint (both give 1/c^c there).
        if (!(r < h.domain_sup())) fail(errkind::range, "Gamma argument outside the gauge domain");
        const Rat& c = h.param();
        riv L = -riv::of_rat(r).log();
        if (L.surely_ge_rat(c)) return h.eval(r);
        riv unit = exp_of_rat(c) / riv::of_rat(c).pow_rat(c); // h(e^{-c})/e^{-c}
        riv shallow = riv::of_rat(r) * unit;
        if (L.surely_le_rat(c)) return shallow;
        return riv::hull(h.eval(r), shallow);
    }
    case gauge_family::logloginv: {
        // h(x)/x = 1/(x log L): d(x log L)/dx = log L - 1/L > 0 throughout
        // the domain (L > log 21 puts L log L well above 1), so the ratio is
        // decreasing and the infimum sits at x = r: Gamma = h(r).
        if (!(r < h.domain_sup())) fail(errkind::range, "Gamma argument outside the gauge domain");
        return h.eval(r);
    }
    case gauge_family::factorial_example: {
        // Gamma is continuous and nondecreasing: evaluate the exact log-form
        // at the rational endpoints of the log enclosure and hull.
        if (!(r < h.domain_sup())) fail(errkind::range, "Gamma argument outside the gauge domain");
        riv L = riv::of_rat(r).log();
        riv lo = exp_of_rat(gamma_log_exact(h, L.lo_rat()));
        riv hi = exp_of_rat(gamma_log_exact(h, L.hi_rat()));
        return riv::hull(lo, hi);
    }
    case gauge_family::square_of: {
        if (h.inner().family() == gauge_family::logloginv) {
            // h(x)/x still decreasing: Gamma = h(r) = (1/log|log r|)^2
            if (!(r < h.domain_sup()))
                fail(errkind::range, "Gamma argument outside the gauge domain");
            riv v = h.inner().eval(r);
            return v * v;
        }
        fail(errkind::invalid_input, "no closed Gamma form for this squared family");
    }
    case gauge_family::table: {
        // exact: h is a step function.  On each full segment [eps_j, upper)
        // below r the ratio h/x has infimum value_j/upper (open right end);
        // the segment containing r contributes value/r at x = r.
        const auto& rows = h.rows();
        if (r > rows.front().first)
            fail(errkind::range, "Gamma argument above the largest table breakpoint");
        Rat best;
        bool have = false;
        Rat upper = r;
        for (const auto& row : rows) {
            if (row.first > r) continue;
            Rat cand = row.second / upper;
            cand.canonicalize();
            if (!have || cand < best) best = cand;
            have = true;
            upper = row.first;
        }
        if (!have) fail(errkind::range, "Gamma argument below the smallest table breakpoint");
        Rat g = r * best;
        g.canonicalize();
        return riv::of_rat(g);
    }
    }
    fail(errkind::internal, "unreachable gauge family");
}

// ---- named operations ---------------------------------------------------------------

gauge square_gauge(const gauge& h) { return gauge::square_of(h); }

Rat factorial_gauge_ratio(long k) {
    if (k < 2) fail(errkind::invalid_input, "factorial_gauge_ratio needs k >= 2");
    // |log h(eps_k)|/|log eps_k| at eps_k = e^{-(2k+1)!}:
    //   ((2k+1)! - (2k)!(1-1/k)) / (2k+1)!
    Rat f21(factorial(2 * k + 1), Int(1));
    Rat out = (f21 - slope_log(k)) / f21;
    out.canonicalize();
    return out;
}

// ---- audits ------------------------------------------------------------------------

audit_report audit_gauge(const gauge& h, size_t points) {
    audit_report rep;
    if (points < 2) fail(errkind::invalid_input, "audit needs at least two grid points");
    Rat top = h.domain_sup() * Rat(9, 10);
    top.canonicalize();
    Rat lowest;
    if (h.family() == gauge_family::table)
        lowest = h.rows().back().first;
    else if (h.family() == gauge_family::square_of && h.inner().family() == gauge_family::table)
        lowest = h.inner().rows().back().first;
    else
        lowest = Rat(Int(1), ipow(Int(10), 40));
    std::vector<Rat> grid;
    Rat cur = top;
    for (size_t i = 0; i < points && cur >= lowest; ++i) {
        grid.push_back(cur);
        cur *= Rat(93, 100);
        cur.canonicalize();
    }
    if (grid.size() < 2) {
        Rat second = grid.empty() ? lowest : grid.front() * Rat(1, 2);
        grid.assign({top, second});
    }
    rep.points = grid.size();
    riv prev = h.eval(grid.front());
    for (size_t i = 1; i < grid.size(); ++i) {
        riv cv = h.eval(grid[i]);
        // monotone: h at the smaller eps must not provably exceed h at the larger
        if ((prev - cv).is_negative()) ++rep.violations;
        prev = cv;
    }
    rep.pass = rep.violations == 0;
    return rep;
}

} // namespace cf3
