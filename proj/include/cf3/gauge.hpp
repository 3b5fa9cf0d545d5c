#pragma once

#include "cf3/interval.hpp"
#include "cf3/numtypes.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cf3 {

// ---- dimension functions (gauges) -------------------------------------------
//
// A gauge h is a nondecreasing, right-continuous function with h(eps) -> 0 as
// eps -> 0+, drawn from a closed family so that the asymptotic classifiers
// below can be exact symbolic computations instead of numeric limits.

enum class gauge_family {
    power,             // h(eps) = eps^s,              s > 0 rational
    loginv,            // h(eps) = 1/|log eps|^c,      c > 0 rational
    logloginv,         // h(eps) = 1/log|log eps|
    factorial_example, // explicit piecewise gauge built from factorials:
                       //   h(eps) = e^{-(2k+1)!} * (e^{(2k)!})^{1-1/k}
                       //                  for e^{-(2k+2)!} <= eps <= e^{-(2k+1)!}
                       //   h(eps) = eps * (e^{(2k)!})^{1-1/k}
                       //                  for e^{-(2k+1)!} <= eps <  e^{-(2k)!}
    square_of,         // h = g^2 (normalized: square of power/loginv folds
                       //          into the base family)
    table              // finite breakpoint list, right-continuous step
};

class gauge {
public:
    static gauge power(const Rat& s);
    static gauge loginv(const Rat& c);
    static gauge logloginv();
    static gauge factorial_example();
    // Squares normalize: square(power(s)) = power(2s), square(loginv(c)) =
    // loginv(2c), square(table) squares the values; logloginv and the
    // factorial example keep an explicit square_of wrapper.
    static gauge square_of(const gauge& g);
    // rows (eps, value), eps strictly descending, values > 0 and nondecreasing
    // with eps; h(eps) = value of the row with the largest eps_row <= eps.
    static gauge table(std::vector<std::pair<Rat, Rat>> rows);

    gauge_family family() const { return fam_; }
    const Rat& param() const { return param_; }
    const gauge& inner() const { return *inner_; }
    const std::vector<std::pair<Rat, Rat>>& rows() const { return rows_; }

    // DSL rendering: "pow:1/2", "loginv:4", "logloginv", "paper:factorial",
    // "square:(loginv:4)", "table:<n rows>".
    std::string str() const;

    // Exclusive upper end of the sampling domain used by evaluation and
    // audits (a safe rational inside each family's region of definition).
    Rat domain_sup() const;

    // Enclosure of h(eps); eps must lie in (0, domain_sup()).
    riv eval(const Rat& eps) const;
    // Enclosure of log h(eps) given log eps (log_eps < 0, arbitrarily deep).
    riv log_eval(const Rat& log_eps) const;
    // Monotone interval extensions working in the log domain, so eps far
    // below the floating-point range stays representable.  log h is
    // nondecreasing in log eps, so the hull of the endpoint evaluations is an
    // enclosure.
    riv log_eval_iv(const riv& log_eps) const;
    riv eval_at_log(const riv& log_eps) const; // enclosure of h = e^{log h}
    // Exact log h for families whose log is rational at rational log eps
    // (power, the factorial example, squares of those); nullopt otherwise.
    std::optional<Rat> log_eval_exact(const Rat& log_eps) const;

    // sup over eps in (0, eps0] of |log h(eps)| / |log eps|, as an enclosure
    // whose upper end is a certified upper bound for the sup.  Closed form
    // per family; L0 = |log eps0|.  The table family reports its breakpoint
    // maximum over [smallest breakpoint, eps0] (the family cannot witness
    // behaviour below its smallest breakpoint), flagged in
    // ratio_sup_is_exact(), and is rejected by the from_L entry point (it
    // needs eps0 itself, not just an enclosure of |log eps0|).
    riv ratio_sup(const Rat& eps0) const;
    riv ratio_sup_from_L(const riv& L0) const;
    bool ratio_sup_is_exact() const { return fam_ != gauge_family::table; }

private:
    gauge() = default;
    gauge_family fam_ = gauge_family::power;
    Rat param_;
    std::shared_ptr<gauge> inner_;
    std::vector<std::pair<Rat, Rat>> rows_;
};

// ---- regime classifiers ------------------------------------------------------

enum class regime_kind { not_sigma_finite, zero, inconclusive };

std::string regime_name(regime_kind r);

struct regime_verdict {
    std::string target;  // "k13" | "k3set" | "liouville"
    regime_kind regime = regime_kind::inconclusive;
    std::string limsup;   // exact value as text: "0", "1/2", "inf", "n/a"
    std::string evidence; // one-line closed-form trace
    // Set when the verdict rests on a limsup that provably exists but is not
    // known to be a full limit (the divergence construction as stated needs
    // the limit).  Never fires for the closed families here: a nonnegative
    // ratio with limsup 0 has limit 0.
    bool limit_caveat = false;
};

// limsup of log h(eps)/log eps as eps -> 0+.  Verdict: not_sigma_finite when
// the limsup is 0 (the measure of the cut-point set is infinite on every
// interval and not sigma-finite), zero when it is positive.
regime_verdict classify_k13(const gauge& h);

// limsup of |log h(eps)| / log|log eps| as eps -> 0+.  Verdict: zero when
// > 3; inconclusive otherwise (no converse is available).
regime_verdict classify_k3set(const gauge& h);

// Liouville-set dichotomy through the Gamma transform: zero iff
// Gamma_h(r)/r^t -> 0 for some rational t > 0, not_sigma_finite iff the
// limsup is positive for every t > 0.
regime_verdict classify_liouville(const gauge& h);

// ---- Gamma transform ----------------------------------------------------------

// Gamma_h(r) = r * inf over s in (0, r] of h(s)/s, in closed form per family
// (enclosure).  r must be positive and inside the family's Gamma domain.
riv gamma_transform(const gauge& h, const Rat& r);

// Exact log-domain Gamma for families with rational log values: power with
// rational log r, the factorial example (log r < -2), squares of those.
// Errors with invalid-input for other families.
Rat gamma_log_exact(const gauge& h, const Rat& log_r);

// ---- named operations ----------------------------------------------------------

gauge square_gauge(const gauge& h);

// Exact value of log h(eps_k)/log eps_k for the factorial example at
// eps_k = e^{-(2k+1)!}; equals 1 - (1 - 1/k)/(2k+1).  Computed from raw
// big-integer factorials (the simplified form is asserted against it in
// tests).  Requires k >= 2.
Rat factorial_gauge_ratio(long k);

// ---- audits ---------------------------------------------------------------------

// Monotonicity / right-continuity audit on a logarithmic grid: counts
// provable violations of h(eps) <= h(eps') for eps < eps' (interval
// comparisons; overlapping enclosures never count as violations).
struct audit_report {
    size_t points = 0;
    size_t violations = 0;
    bool pass = false;
};
audit_report audit_gauge(const gauge& h, size_t points = 1000);

} // namespace cf3
