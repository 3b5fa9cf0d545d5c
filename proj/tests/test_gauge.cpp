// Dimension functions: construction, exact/log-domain evaluation, regime
// classifiers, the Gamma transform closed forms, ratio suprema, and the
// factorial-gauge ratio identity.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cf3/errors.hpp"
#include "cf3/gauge.hpp"

using namespace cf3;

namespace {
const gauge p12 = gauge::power(Rat(1, 2));
const gauge p1 = gauge::power(Rat(1));
const gauge li4 = gauge::loginv(Rat(4));
const gauge li2 = gauge::loginv(Rat(2));
const gauge li1 = gauge::loginv(Rat(1));
const gauge lli = gauge::logloginv();
const gauge fac = gauge::factorial_example();
gauge test_table() {
    return gauge::table({{Rat(1, 4), Rat(1, 2)}, {Rat(1, 8), Rat(1, 3)}});
}
} // namespace

TEST_CASE("DSL strings") {
    CHECK(p12.str() == "pow:1/2");
    CHECK(li4.str() == "loginv:4");
    CHECK(lli.str() == "logloginv");
    CHECK(fac.str() == "paper:factorial");
    CHECK(gauge::square_of(lli).str() == "square:(logloginv)");
    CHECK(test_table().str() == "table:<2 rows>");
}

TEST_CASE("square normalization") {
    CHECK(gauge::square_of(p12).family() == gauge_family::power);
    CHECK(gauge::square_of(p12).param() == Rat(1));
    CHECK(gauge::square_of(li4).family() == gauge_family::loginv);
    CHECK(gauge::square_of(li4).param() == Rat(8));
    CHECK(gauge::square_of(gauge::square_of(lli)).str() ==
          "square:(square:(logloginv))");
    gauge tab2 = gauge::square_of(test_table());
    CHECK(tab2.family() == gauge_family::table);
    CHECK(tab2.rows()[0].second == Rat(1, 4));
    CHECK(tab2.rows()[1].second == Rat(1, 9));
    CHECK(square_gauge(p1).param() == Rat(2));
}

TEST_CASE("evaluation") {
    CHECK(p12.eval(Rat(1, 16)).contains_rat(Rat(1, 4)));
    gauge tab = test_table();
    CHECK(tab.eval(Rat(1, 4)).contains_rat(Rat(1, 2)));  // at a breakpoint
    CHECK(tab.eval(Rat(1, 5)).contains_rat(Rat(1, 3)));  // between rows
    CHECK(tab.eval(Rat(1, 8)).contains_rat(Rat(1, 3)));  // at the last row
    // factorial example around the k = 1 joints: flat piece at log eps = -7
    riv h = fac.eval_at_log(riv::exact(-7));
    CHECK(riv::hull(h, exp_of_rat(Rat(-6))).width_d() < 1e-20);
    // linear piece at log eps = -4: h = eps
    riv h2 = fac.eval_at_log(riv::exact(-4));
    CHECK(riv::hull(h2, exp_of_rat(Rat(-4))).width_d() < 1e-20);
    // k = 2 linear piece: log h(-30) = -30 + 12
    auto le = fac.log_eval_exact(Rat(-30));
    REQUIRE(le.has_value());
    CHECK(*le == Rat(-18));
    // k = 2 flat piece: log h(-200) = -120 + 12
    auto le2 = fac.log_eval_exact(Rat(-200));
    REQUIRE(le2.has_value());
    CHECK(*le2 == Rat(-108));
    // log-domain interval evaluation normalizes monotonically
    riv wide = fac.log_eval_iv(riv::hull(riv::exact(-31), riv::exact(-29)));
    CHECK(wide.contains_rat(Rat(-18)));
    // exact log values for power and squared factorial
    auto v = p12.log_eval_exact(Rat(-9));
    REQUIRE(v.has_value());
    CHECK(*v == Rat(-9, 2));
    auto w = gauge::square_of(fac).log_eval_exact(Rat(-30));
    REQUIRE(w.has_value());
    CHECK(*w == Rat(-36));
    CHECK(!li4.log_eval_exact(Rat(-9)).has_value());
}

TEST_CASE("cut-point regime classifier") {
    auto v = classify_k13(p12);
    CHECK(v.regime == regime_kind::zero);
    CHECK(v.limsup == "1/2");
    CHECK(v.target == "k13");
    auto v2 = classify_k13(li4);
    CHECK(v2.regime == regime_kind::not_sigma_finite);
    CHECK(v2.limsup == "0");
    CHECK(!v2.limit_caveat);
    auto v3 = classify_k13(fac);
    CHECK(v3.regime == regime_kind::zero);
    CHECK(v3.limsup == "1");
    auto v4 = classify_k13(lli);
    CHECK(v4.regime == regime_kind::not_sigma_finite);
    CHECK(v4.limsup == "0");
    auto v5 = classify_k13(gauge::square_of(fac));
    CHECK(v5.regime == regime_kind::zero);
    CHECK(v5.limsup == "2");
    auto v6 = classify_k13(gauge::square_of(lli));
    CHECK(v6.regime == regime_kind::not_sigma_finite);
    auto v7 = classify_k13(test_table());
    CHECK(v7.regime == regime_kind::inconclusive);
    CHECK(v7.limsup == "n/a");
}

TEST_CASE("loglog-scale classifier") {
    auto v = classify_k3set(li4);
    CHECK(v.regime == regime_kind::zero);
    CHECK(v.limsup == "4");
    auto v2 = classify_k3set(li2);
    CHECK(v2.regime == regime_kind::inconclusive);
    CHECK(v2.limsup == "2");
    auto v3 = classify_k3set(p12);
    CHECK(v3.regime == regime_kind::zero);
    CHECK(v3.limsup == "inf");
    auto v4 = classify_k3set(fac);
    CHECK(v4.regime == regime_kind::zero);
    auto v5 = classify_k3set(lli);
    CHECK(v5.regime == regime_kind::inconclusive);
    CHECK(v5.limsup == "0");
    auto v6 = classify_k3set(gauge::square_of(li2));
    CHECK(v6.regime == regime_kind::zero);
    CHECK(v6.limsup == "4");
}

TEST_CASE("Liouville classifier") {
    CHECK(classify_liouville(p12).regime == regime_kind::zero);
    CHECK(classify_liouville(li4).regime == regime_kind::not_sigma_finite);
    CHECK(classify_liouville(fac).regime == regime_kind::not_sigma_finite);
    CHECK(classify_liouville(lli).regime == regime_kind::not_sigma_finite);
    CHECK(classify_liouville(gauge::square_of(lli)).regime ==
          regime_kind::not_sigma_finite);
    CHECK(classify_liouville(gauge::square_of(fac)).regime ==
          regime_kind::inconclusive);
    CHECK(classify_liouville(test_table()).regime == regime_kind::inconclusive);
    CHECK(regime_name(regime_kind::zero) == "zero");
    CHECK(regime_name(regime_kind::not_sigma_finite) == "not-sigma-finite");
    CHECK(regime_name(regime_kind::inconclusive) == "inconclusive");
}

TEST_CASE("Gamma transform closed forms") {
    riv g = gamma_transform(p12, Rat(1, 4));
    CHECK(g.contains_rat(Rat(1, 2)));
    CHECK(g.width_d() < 1e-25);
    riv g1 = gamma_transform(p1, Rat(1, 7));
    CHECK(g1.contains_rat(Rat(1, 7)));
    riv g2 = gamma_transform(gauge::power(Rat(2)), Rat(1, 7));
    CHECK(g2.contains_rat(Rat(0)));
    CHECK(g2.width_d() == 0.0);
    // loginv deep in its domain: Gamma = h(r)
    riv g3 = gamma_transform(li4, Rat(1, 100));
    riv h3 = li4.eval(Rat(1, 100));
    CHECK(riv::hull(g3, h3).width_d() <= g3.width_d() + h3.width_d() + 1e-30);
    // factorial closed form: log Gamma(-25) = -13, plus the piecewise joints
    CHECK(gamma_log_exact(fac, Rat(-25)) == Rat(-13));
    CHECK(gamma_log_exact(fac, Rat(-4)) == Rat(-4));
    CHECK(gamma_log_exact(fac, Rat(-10)) == Rat(-6));
    CHECK(gamma_log_exact(fac, Rat(-20)) == Rat(-8));
    riv gf = gamma_transform(fac, Rat(1, 1024));
    CHECK(riv::hull(gf, exp_of_rat(Rat(-6))).width_d() < 1e-20);
    // square wrappers square the transform
    riv g5 = gamma_transform(gauge::square_of(lli), Rat(1, 1000));
    riv i5 = lli.eval(Rat(1, 1000));
    riv w5 = i5 * i5;
    CHECK(riv::hull(g5, w5).width_d() <= g5.width_d() + w5.width_d() + 1e-30);
    // table: exact rational grid minimum
    riv g6 = gamma_transform(test_table(), Rat(1, 5));
    CHECK(g6.contains_rat(Rat(1, 3)));
    CHECK(g6.width_d() < 1e-25);
    CHECK_THROWS_AS(gamma_log_exact(li4, Rat(-5)), error);
}

TEST_CASE("Gamma is dominated by h and Gamma/r is monotone") {
    const gauge* gs[] = {&p12, &p1, &li4, &li1, &lli, &fac};
    for (const gauge* g : gs) {
        CAPTURE(g->str());
        Rat r = g->domain_sup() * Rat(4, 5);
        riv prev_ratio;
        bool first = true;
        for (int i = 0; i < 12; ++i) {
            r.canonicalize();
            riv gam = gamma_transform(*g, r);
            riv h = g->eval(r);
            CHECK(!(gam - h).is_positive());
            // Gamma(r)/r is an inf over (0, r]: it cannot decrease as r shrinks
            riv ratio = gam / riv::of_rat(r);
            if (!first) CHECK(!(prev_ratio - ratio).is_positive());
            prev_ratio = ratio;
            first = false;
            r *= Rat(1, 3);
        }
    }
}

TEST_CASE("ratio suprema closed forms") {
    riv rs = p12.ratio_sup(Rat(1, 10));
    CHECK(rs.contains_rat(Rat(1, 2)));
    CHECK(rs.width_d() < 1e-30);
    // loginv(4) at eps0 = 1/100: c log L0 / L0 at L0 = log 100
    riv rl = li4.ratio_sup(Rat(1, 100));
    CHECK(rl.lo_d() > 1.32648);
    CHECK(rl.hi_d() < 1.32650);
    // logloginv: interior peak 1/(u* e^{u*}) with u* log u* = 1
    riv L0 = riv::log_silver() * riv::exact(3);
    riv rll = lli.ratio_sup_from_L(L0);
    CHECK(rll.lo_d() > 0.097259);
    CHECK(rll.hi_d() < 0.097261);
    // decreasing branch past the peak
    riv rll2 = lli.ratio_sup_from_L(riv::exact(20));
    CHECK(rll2.lo_d() > 0.0548);
    CHECK(rll2.hi_d() < 0.0549);
    // factorial: exactly 1
    riv rf = fac.ratio_sup(Rat(1, 100));
    CHECK(rf.contains_rat(Rat(1)));
    CHECK(rf.width_d() == 0.0);
    CHECK(fac.ratio_sup_is_exact());
    // squaring doubles the ratio
    riv rq = gauge::square_of(lli).ratio_sup_from_L(riv::exact(20));
    CHECK(rq.lo_d() > 2 * 0.0548);
    CHECK(rq.hi_d() < 2 * 0.0549);
    // table: grid maximum, flagged inexact, rejected by the from_L entry
    gauge tab = test_table();
    CHECK(!tab.ratio_sup_is_exact());
    riv rt = tab.ratio_sup(Rat(1, 5));
    CHECK(rt.hi_d() > 0.68);
    CHECK(rt.hi_d() < 0.69);
    CHECK_THROWS_AS(tab.ratio_sup_from_L(riv::exact(5)), error);
}

TEST_CASE("factorial gauge ratio identity") {
    CHECK(factorial_gauge_ratio(2) == Rat(9, 10));
    CHECK(factorial_gauge_ratio(3) == Rat(19, 21));
    for (long k = 2; k <= 8; ++k) {
        Rat simple(2 * k * k + 1, 2 * k * k + k);
        simple.canonicalize();
        CHECK(factorial_gauge_ratio(k) == simple);
    }
    CHECK_THROWS_AS(factorial_gauge_ratio(1), error);
}

TEST_CASE("monotonicity audits") {
    const gauge* gs[] = {&p12, &p1, &li4, &lli, &fac};
    for (const gauge* g : gs) {
        CAPTURE(g->str());
        audit_report rep = audit_gauge(*g, 400);
        CHECK(rep.pass);
        CHECK(rep.points >= 2);
        CHECK(rep.violations == 0);
    }
    CHECK(audit_gauge(test_table(), 400).pass);
    CHECK(audit_gauge(gauge::square_of(fac), 400).pass);
}

TEST_CASE("construction rejects bad parameters") {
    CHECK_THROWS_AS(gauge::power(Rat(0)), error);
    CHECK_THROWS_AS(gauge::power(Rat(-1)), error);
    CHECK_THROWS_AS(gauge::loginv(Rat(0)), error);
    CHECK_THROWS_AS(gauge::table({{Rat(1, 4), Rat(1, 2)}, {Rat(1, 2), Rat(1, 3)}}),
                    error);
    CHECK_THROWS_AS(gauge::table({}), error);
    CHECK_THROWS_AS(fac.eval(Rat(1, 2)), error);
    CHECK_THROWS_AS(lli.eval(Rat(1, 2)), error);
    CHECK(p12.domain_sup() == Rat(1));
    CHECK(li4.domain_sup() == Rat(1, 3));
    CHECK(lli.domain_sup() == Rat(1, 21));
    CHECK(fac.domain_sup() == Rat(1, 8));
    CHECK(test_table().domain_sup() == Rat(1, 4));
}
