#include "cf3/cantor.hpp"

#include "cf3/errors.hpp"
#include "cf3/sigma.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

namespace cf3 {

namespace {

// pointwise interval minimum: encloses min(x, y) for x in a, y in b
riv min_iv(const riv& a, const riv& b) {
    Rat lo = std::min(a.lo_rat(), b.lo_rat());
    Rat hi = std::min(a.hi_rat(), b.hi_rat());
    return riv::hull(riv::of_rat(lo), riv::of_rat(hi));
}

Word blocks_word(const std::vector<long>& runs) {
    Word w;
    for (long r : runs) {
        for (long i = 0; i < r; ++i) w.push_back(1);
        w.push_back(2);
        w.push_back(2);
    }
    return w;
}

std::vector<long> extremal_runs(const cantor_schedule& s, long n, bool longest) {
    std::vector<long> runs;
    runs.reserve(size_t(n));
    for (long i = 0; i < n; ++i) {
        long f = s.levels[size_t(i)].f;
        runs.push_back(longest ? 2 * f - 1 : f);
    }
    return runs;
}

} // namespace

// ---- schedule ------------------------------------------------------------------

cantor_schedule build_schedule(const gauge& h, long K) {
    if (K < 1) fail(errkind::invalid_input, "schedule needs K >= 1");
    regime_verdict reg = classify_k13(h);
    if (reg.regime != regime_kind::not_sigma_finite)
        fail(errkind::regime,
             "schedule needs a gauge whose cut-point regime is not-sigma-finite "
             "(log h/log eps -> 0); got " +
                 regime_name(reg.regime));
    cantor_schedule s{h, riv::log_silver(), {}};
    Int F(0);
    for (long k = 1; k <= K; ++k) {
        schedule_level lv;
        lv.k = k;
        if (k == 1) {
            // reported for completeness: the ratio sup over the whole domain;
            // f_1 itself is pinned by the construction
            lv.delta = h.ratio_sup_from_L(-riv::of_rat(h.domain_sup()).log());
            lv.f = 3;
        } else {
            riv Lprev = s.c * riv::exact(F); // |log eps_{k-1}|
            lv.delta = h.ratio_sup_from_L(Lprev);
            // upper delta -> lower f: floor of the lower end of 1/(2 c delta)
            riv inv = (riv::exact(2) * s.c * riv::of_rat(lv.delta.hi_rat())).recip();
            Int fl = inv.floor_lo();
            if (fl < 1)
                lv.f = 1;
            else {
                if (!fl.fits_slong_p()) fail(errkind::size, "schedule f_k overflows");
                lv.f = fl.get_si();
            }
        }
        F += lv.f;
        lv.F = F;
        lv.eps = (-(s.c * riv::exact(F))).exp();
        s.levels.push_back(lv);
    }
    return s;
}

// ---- level geometry --------------------------------------------------------------

cantor_level level_geometry(const cantor_schedule& s, long n, size_t cap) {
    if (n < 1 || size_t(n) > s.levels.size())
        fail(errkind::range, "level beyond the built schedule");
    cantor_level out;
    out.k = n;
    out.N = 1;
    for (long i = 0; i < n; ++i) out.N *= s.levels[size_t(i)].f;
    out.shortest = blocks_word(extremal_runs(s, n, false));
    out.longest = blocks_word(extremal_runs(s, n, true));
    out.min_diam = cylinder_diameter(out.longest);
    out.max_diam = cylinder_diameter(out.shortest);
    if (mpz_cmp_ui(out.N.get_mpz_t(), cap) > 0) return out;

    out.enumerated = true;
    std::vector<long> runs = extremal_runs(s, n, false); // odometer start: all f_i
    std::vector<rational_interval> cyls;
    bool min_seen = false, max_seen = false;
    while (true) {
        Word w = blocks_word(runs);
        Rat d = cylinder_diameter(w);
        if (d < out.min_diam || d > out.max_diam) out.diam_extremal_ok = false;
        if (d == out.min_diam) min_seen = true;
        if (d == out.max_diam) max_seen = true;
        cyls.push_back(cylinder(w));
        out.words.push_back(std::move(w));
        // odometer over r_i in [f_i, 2 f_i - 1]
        long i = n - 1;
        for (; i >= 0; --i) {
            long f = s.levels[size_t(i)].f;
            if (runs[size_t(i)] + 1 < 2 * f) {
                ++runs[size_t(i)];
                break;
            }
            runs[size_t(i)] = f;
        }
        if (i < 0) break;
    }
    if (!min_seen || !max_seen) out.diam_extremal_ok = false;
    if (Int(long(out.words.size())) != out.N) out.diam_extremal_ok = false;

    std::sort(cyls.begin(), cyls.end(),
              [](const rational_interval& a, const rational_interval& b) { return a.lo < b.lo; });
    for (size_t i = 1; i < cyls.size(); ++i)
        if (!(cyls[i - 1].hi < cyls[i].lo)) {
            out.disjoint = false;
            break;
        }
    return out;
}

riv divergence_certificate(const cantor_schedule& s, long n) {
    if (n < 1 || size_t(n) + 1 > s.levels.size())
        fail(errkind::range, "certificate needs level n with n + 1 in the schedule");
    Int N(1);
    for (long i = 0; i < n; ++i) N *= s.levels[size_t(i)].f;
    Word deepest = blocks_word(extremal_runs(s, n + 1, true));
    Rat min_diam = cylinder_diameter(deepest);
    return riv::exact(N) * s.h.eval(min_diam);
}

// ---- nested systems ---------------------------------------------------------------

mass_oracle_report mass_bound_oracle(const nested_system& sys) {
    const auto& lv = sys.levels;
    if (lv.empty() || lv.front().empty())
        fail(errkind::invalid_input, "nested system needs at least one interval");
    if (lv.back().size() > 1000) fail(errkind::size, "leaf count exceeds the exhaustive cap");
    // validate shape: positive lengths, children inside parents, level-wise disjoint
    for (size_t r = 0; r < lv.size(); ++r) {
        for (size_t i = 0; i < lv[r].size(); ++i) {
            const nested_interval& nd = lv[r][i];
            if (!(nd.lo < nd.hi)) fail(errkind::invalid_input, "degenerate interval");
            if (r > 0) {
                if (nd.parent >= lv[r - 1].size())
                    fail(errkind::invalid_input, "dangling parent index");
                const nested_interval& pa = lv[r - 1][nd.parent];
                if (!(pa.lo <= nd.lo && nd.hi <= pa.hi))
                    fail(errkind::invalid_input, "child escapes its parent");
            }
        }
        std::vector<size_t> order(lv[r].size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return lv[r][a].lo < lv[r][b].lo;
        });
        for (size_t i = 1; i < order.size(); ++i)
            if (!(lv[r][order[i - 1]].hi < lv[r][order[i]].lo))
                fail(errkind::invalid_input, "intervals overlap within a level");
    }
    // children index
    std::vector<std::vector<std::vector<size_t>>> kids(lv.size());
    for (size_t r = 0; r + 1 < lv.size(); ++r) {
        kids[r].assign(lv[r].size(), {});
        for (size_t i = 0; i < lv[r + 1].size(); ++i) kids[r][lv[r + 1][i].parent].push_back(i);
        for (size_t i = 0; i < lv[r].size(); ++i)
            if (kids[r][i].empty())
                fail(errkind::invalid_input, "internal interval without children");
    }
    // bottom-up DP: cover the node itself or delegate to children
    std::vector<riv> below(lv.back().size());
    for (size_t i = 0; i < lv.back().size(); ++i) {
        Rat d = lv.back()[i].hi - lv.back()[i].lo;
        d.canonicalize();
        below[i] = sys.h.eval(d);
    }
    for (size_t r = lv.size() - 1; r-- > 0;) {
        std::vector<riv> cur(lv[r].size());
        for (size_t i = 0; i < lv[r].size(); ++i) {
            Rat d = lv[r][i].hi - lv[r][i].lo;
            d.canonicalize();
            riv self = sys.h.eval(d);
            riv deleg = riv::exact(0);
            for (size_t c : kids[r][i]) deleg = deleg + below[c];
            cur[i] = min_iv(self, deleg);
        }
        below = std::move(cur);
    }
    mass_oracle_report rep;
    rep.brute_min = riv::exact(0);
    for (const riv& v : below) rep.brute_min = rep.brute_min + v;
    // closed-form bound: (1/2) min over levels of N_r h(eps_{r+1}), with the
    // final level standing in for its own successor
    bool have = false;
    riv m;
    for (size_t r = 0; r < lv.size(); ++r) {
        size_t succ = std::min(r + 1, lv.size() - 1);
        Rat eps = lv[succ].front().hi - lv[succ].front().lo;
        for (const nested_interval& nd : lv[succ]) {
            Rat d = nd.hi - nd.lo;
            if (d < eps) eps = d;
        }
        eps.canonicalize();
        riv term = riv::exact(long(lv[r].size())) * sys.h.eval(eps);
        m = have ? min_iv(m, term) : term;
        have = true;
    }
    rep.bound = m * riv::of_rat(Rat(1, 2));
    rep.pass = (rep.brute_min - rep.bound).surely_ge_rat(Rat(0));
    return rep;
}

nested_system random_nested_system(unsigned long long seed) {
    std::mt19937_64 rng(seed);
    auto draw = [&](unsigned long span) { return (unsigned long)(rng() % span); };

    size_t depth = 2 + size_t(draw(3)); // total levels in [2, 4]
    std::vector<size_t> branch(depth);
    branch[0] = 1 + size_t(draw(2)); // roots: 1..2
    for (size_t r = 1; r < depth; ++r) branch[r] = 2 + size_t(draw(3)); // 2..4

    nested_system sys{gauge::power(Rat(1)), {}};
    sys.levels.resize(depth);
    // roots inside [0, 1/64] so every family's domain covers all lengths
    {
        Rat a(0), b(1, 64);
        size_t nroots = branch[0];
        for (size_t j = 0; j < nroots; ++j) {
            unsigned long off = 5 + draw(31);  // slot offset percent
            unsigned long wid = 20 + draw(31); // slot width percent (<= 85 end)
            Rat W = b - a;
            Rat lo = a + W * Rat(Int(100 * j + off), Int(100 * nroots));
            Rat hi = lo + W * Rat(Int(wid), Int(100 * nroots));
            lo.canonicalize();
            hi.canonicalize();
            sys.levels[0].push_back({lo, hi, 0});
        }
    }
    for (size_t r = 1; r < depth; ++r) {
        size_t b = branch[r];
        for (size_t p = 0; p < sys.levels[r - 1].size(); ++p) {
            const nested_interval& pa = sys.levels[r - 1][p];
            Rat W = pa.hi - pa.lo;
            for (size_t j = 0; j < b; ++j) {
                unsigned long off = 5 + draw(31);
                unsigned long wid = 20 + draw(31);
                Rat lo = pa.lo + W * Rat(Int(100 * j + off), Int(100 * b));
                Rat hi = lo + W * Rat(Int(wid), Int(100 * b));
                lo.canonicalize();
                hi.canonicalize();
                sys.levels[r].push_back({lo, hi, p});
            }
        }
    }
    // pick the gauge; the table variant derives its rows from the system
    unsigned long pick = draw(10);
    switch (pick) {
    case 0: sys.h = gauge::power(Rat(1, 2)); break;
    case 1: sys.h = gauge::power(Rat(1)); break;
    case 2: sys.h = gauge::power(Rat(2)); break;
    case 3: sys.h = gauge::loginv(Rat(1)); break;
    case 4: sys.h = gauge::loginv(Rat(4)); break;
    case 5: sys.h = gauge::logloginv(); break;
    case 6: sys.h = gauge::factorial_example(); break;
    case 7: sys.h = gauge::square_of(gauge::logloginv()); break;
    case 8: sys.h = gauge::square_of(gauge::factorial_example()); break;
    default: {
        Rat maxlen(0), minlen(1);
        for (const auto& level : sys.levels)
            for (const nested_interval& nd : level) {
                Rat d = nd.hi - nd.lo;
                if (d > maxlen) maxlen = d;
                if (d < minlen) minlen = d;
            }
        std::vector<std::pair<Rat, Rat>> rows;
        Rat e = maxlen, v(1, 2);
        while (true) {
            Rat ce = e, cv = v;
            ce.canonicalize();
            cv.canonicalize();
            rows.emplace_back(ce, cv);
            if (e * 2 <= minlen) break;
            e /= 16;
            v /= 2;
        }
        sys.h = gauge::table(std::move(rows));
        break;
    }
    }
    return sys;
}

// ---- covering estimator --------------------------------------------------------------

covering_report cover_k3(const gauge& h, size_t n) {
    if (n == 0) fail(errkind::invalid_input, "factor length must be >= 1");
    if (n > 400) fail(errkind::size, "covering depth beyond the supported range");
    size_t m = n / 2 + 1;
    std::set<std::string> factors; // ordered: fixed summation order
    std::string buf;
    for (const std::string& u : balanced_words(m)) {
        buf.clear();
        for (char c : u) {
            char d = (c == 'a') ? '2' : '1';
            buf.push_back(d);
            buf.push_back(d);
        }
        for (size_t off = 0; off + n <= buf.size(); ++off) factors.insert(buf.substr(off, n));
    }
    covering_report rep;
    rep.n = n;
    rep.count = factors.size();
    rep.sum = riv::exact(0);
    bool first = true;
    for (const std::string& w : factors) {
        // q_{j} recursion; diam = 1/(q_n (q_n + q_{n-1}))
        Int qprev(1), qcur(w[0] == '2' ? 2 : 1);
        for (size_t j = 1; j < w.size(); ++j) {
            Int nxt = (w[j] == '2' ? 2 : 1) * qcur + qprev;
            qprev = qcur;
            qcur = nxt;
        }
        Rat d(Int(1), qcur * (qcur + qprev));
        d.canonicalize();
        if (first || d < rep.min_diam) rep.min_diam = d;
        if (first || d > rep.max_diam) rep.max_diam = d;
        first = false;
        rep.sum = rep.sum + h.eval(d);
    }
    riv hmax = h.eval(rep.max_diam);
    rep.count_bound = riv::exact(Int(9) * Int(long(n)) * Int(long(n)) * Int(long(n))) * hmax;
    rep.sum_le_count_h_max =
        (riv::exact(long(rep.count)) * hmax - rep.sum).surely_ge_rat(Rat(0));
    return rep;
}

// ---- dyadic covering budget ------------------------------------------------------------

zero_budget_report zero_cover_budget(const Rat& d, const Rat& eps_k) {
    if (!(d > 0) || d > 1) fail(errkind::invalid_input, "dimension parameter d must be in (0, 1]");
    if (!(eps_k > 0) || !(eps_k < 1)) fail(errkind::invalid_input, "eps_k must be in (0, 1)");
    zero_budget_report rep;
    // smallest m with 9 m^3 < 2^{d m - 1}, exact: with d m - 1 = a/b > 0 the
    // test is (9 m^3)^b < 2^a, decided by bit length (x < 2^a iff a >= bitlen(x))
    for (long m = 1; m <= 2000000; ++m) {
        Rat e = d * Rat(m) - 1;
        e.canonicalize();
        if (e <= 0) continue;
        unsigned long a = e.get_num().get_ui();
        unsigned long b = e.get_den().get_ui();
        Int lhs = ipow(Int(9) * ipow(Int(m), 3), b);
        if (a >= mpz_sizeinbase(lhs.get_mpz_t(), 2)) {
            rep.m = m;
            break;
        }
    }
    if (rep.m == 0) fail(errkind::range, "no block length found below the scan cap");

    // r_k = m * ceil(|log2 eps_k| / m): smallest t >= 0 with eps_k >= 2^{-t m}
    const Int& num = eps_k.get_num();
    const Int& den = eps_k.get_den();
    size_t bits = mpz_sizeinbase(den.get_mpz_t(), 2);
    if (bits > 100000000) fail(errkind::size, "eps_k too deep for the budget computation");
    long t = long((bits + size_t(rep.m)) / size_t(rep.m)) + 1;
    auto holds = [&](long tt) {
        // num * 2^{tt*m} >= den
        Int shifted = num << (unsigned long)(tt * rep.m);
        return shifted >= den;
    };
    while (t > 0 && holds(t - 1)) --t;
    rep.r_k = Int(t) * rep.m;
    rep.block_bound = Int(9) * rep.r_k * rep.r_k * rep.r_k;

    Rat head = d * Rat(rep.m) - 1;
    head.canonicalize();
    riv log2eps = riv::of_rat(eps_k).log() / riv::exact(2).log(); // negative
    rep.budget_log2 = riv::of_rat(head) + log2eps / riv::exact(rep.m);
    if (num == 1 && mpz_popcount(den.get_mpz_t()) == 1) {
        long j = long(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1; // den = 2^j
        Rat exact = head - Rat(j, rep.m);
        exact.canonicalize();
        rep.budget_log2_exact = exact;
    }
    rep.budget = (rep.budget_log2 * riv::exact(2).log()).exp();
    return rep;
}

} // namespace cf3
