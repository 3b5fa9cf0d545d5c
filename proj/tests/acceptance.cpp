// Acceptance gate: twelve finite certificates over the whole library, each
// printed as exactly one PASS/FAIL line.  Every tolerance, seed, and runtime
// budget is pinned here in code; the exit status is the number of failures.
#include "cf3/cantor.hpp"
#include "cf3/config.hpp"
#include "cf3/errors.hpp"
#include "cf3/gauge.hpp"
#include "cf3/lagrange.hpp"
#include "cf3/periodic.hpp"
#include "cf3/quadratic.hpp"
#include "cf3/sigma.hpp"
#include "cf3/word.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace cf3;

namespace {

int g_failures = 0;
std::vector<std::string> g_infos; // non-failing remarks for the current criterion

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// One criterion: run body(), collect its violation notes, enforce the budget.
void criterion(int id, const char* title, double budget_s,
               const std::function<void(std::vector<std::string>&)>& body) {
    std::vector<std::string> notes;
    g_infos.clear();
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(notes);
    } catch (const error& e) {
        notes.push_back(std::string("unexpected error: ") + e.what());
    } catch (const std::exception& e) {
        notes.push_back(std::string("unexpected exception: ") + e.what());
    }
    double dt = seconds_since(t0);
    if (dt >= budget_s)
        notes.push_back("runtime " + std::to_string(dt) + "s exceeds budget");
    bool pass = notes.empty();
    if (!pass) ++g_failures;
    std::printf("%s %2d  %s  (%.2fs < %.0fs)\n", pass ? "PASS" : "FAIL", id, title, dt,
                budget_s);
    for (const std::string& n : notes) std::printf("        - %s\n", n.c_str());
    for (const std::string& n : g_infos) std::printf("        info: %s\n", n.c_str());
    std::fflush(stdout);
}

void note(std::vector<std::string>& notes, bool ok, const std::string& msg) {
    if (!ok) notes.push_back(msg);
}

} // namespace

int main() {
    // 1. [2;2,z] + [0;1,1,z] = 3 exactly: 10^4 random positive rationals with
    //    numerator and denominator below 10^6, plus three quadratic points.
    criterion(1, "identity [2;2,z]+[0;1,1,z]=3: 1e4 rationals + 3 quadratics", 5.0,
              [](std::vector<std::string>& notes) {
                  std::mt19937_64 rng(20260814u);
                  std::uniform_int_distribution<long> d(1, 999999);
                  size_t bad = 0;
                  for (int i = 0; i < 10000; ++i) {
                      Rat z = make_rat(d(rng), d(rng));
                      if (!check_identity(z)) ++bad;
                  }
                  note(notes, bad == 0, std::to_string(bad) + " rational failures");
                  note(notes, check_identity(quad::sqrt_of_int(Int(2))), "z = sqrt(2)");
                  note(notes, check_identity(quad::make(-1, 1, 1, 3)), "z = sqrt(3)-1");
                  note(notes, check_identity(quad::make(-1, 1, 2, 5)),
                       "z = (-1+sqrt(5))/2");
              });

    // 2. Bottom of the spectrum, exact equality of quadratic numbers.
    criterion(2, "spectrum bottom: value((1)) = sqrt(5), value((2)) = 2*sqrt(2)", 5.0,
              [](std::vector<std::string>& notes) {
                  radsum v1 = lagrange_value({}, {1});
                  note(notes,
                       v1.is_quadratic() && v1.quad_value() == quad::make(0, 1, 1, 5),
                       "value((1)) != sqrt(5)");
                  radsum v2 = lagrange_value({}, {2});
                  note(notes,
                       v2.is_quadratic() && v2.quad_value() == quad::make(0, 2, 1, 2),
                       "value((2)) != 2*sqrt(2)");
              });

    // 3. Determinant alternation and exact diameters on 10^4 random words;
    //    two-sided diameter bounds exhaustively on {1,2}-words to length 16.
    criterion(3, "determinant/diameter invariants + exhaustive {1,2} bounds to n=16",
              30.0, [](std::vector<std::string>& notes) {
                  std::mt19937_64 rng(31415926u);
                  std::uniform_int_distribution<size_t> dlen(1, 60);
                  std::uniform_int_distribution<long> dq(1, 10);
                  size_t det_bad = 0, diam_bad = 0;
                  for (int i = 0; i < 10000; ++i) {
                      Word w(dlen(rng));
                      for (long& a : w) a = dq(rng);
                      convergent_table t = convergent_table::of(w);
                      for (size_t k = 1; k <= t.order(); ++k)
                          if (t.det(k) != ((k % 2) ? 1 : -1)) ++det_bad;
                      rational_interval iv = cylinder(w);
                      Rat d = cylinder_diameter(w);
                      if (d != iv.hi - iv.lo) ++diam_bad;
                      Int qn = t.q[t.order()], qp = t.q[t.order() - 1];
                      if (d != make_rat(Int(1), qn * (qn + qp))) ++diam_bad;
                  }
                  note(notes, det_bad == 0,
                       std::to_string(det_bad) + " determinant violations");
                  note(notes, diam_bad == 0,
                       std::to_string(diam_bad) + " diameter violations");
                  // (3+2*sqrt(2))^{-n-1} < diam I(w) < ((3+sqrt(5))/2)^{-n+1}
                  quad s8 = quad::make(3, 2, 1, 2);
                  quad gold = quad::make(3, 1, 2, 5);
                  size_t bound_bad = 0;
                  for (unsigned long n = 1; n <= 16; ++n) {
                      quad lo_pow = s8.pow(n + 1);
                      quad hi_pow = gold.pow(n - 1);
                      for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
                          Word w;
                          for (unsigned long i = 0; i < n; ++i)
                              w.push_back((mask >> i) & 1 ? 2 : 1);
                          Rat d = cylinder_diameter(w);
                          if (lo_pow.mul_rat(d).cmp_rat(Rat(1)) != 1) ++bound_bad;
                          if (hi_pow.mul_rat(d).cmp_rat(Rat(1)) != -1) ++bound_bad;
                      }
                  }
                  note(notes, bound_bad == 0,
                       std::to_string(bound_bad) + " diameter bound violations");
              });

    // 4. Factor sets by the balanced-word correspondence equal the factor sets
    //    by certified pruning for n <= 12; counts 2, 4, 6 at n = 1, 2, 3; the
    //    9n^3 bound everywhere; the n^3/(4 pi^2) trend tightens by n = 120.
    criterion(4, "factor routes agree to n=12; counts, 9n^3 bound, growth trend",
              60.0, [](std::vector<std::string>& notes) {
                  clear_sigma_caches();
                  for (size_t n = 1; n <= 12; ++n) {
                      std::vector<Word> corr = sigma3_words(n);
                      pruning_enumeration pr = sigma3_by_pruning(n);
                      note(notes, pr.undecided.empty(),
                           "undecided words at n = " + std::to_string(n));
                      note(notes, corr == pr.included,
                           "route mismatch at n = " + std::to_string(n));
                      note(notes, corr.size() <= 9 * n * n * n,
                           "count bound violated at n = " + std::to_string(n));
                  }
                  note(notes, count_sigma3(1) == 2, "count(1) != 2");
                  note(notes, count_sigma3(2) == 4, "count(2) != 4");
                  note(notes, count_sigma3(3) == 6, "count(3) != 6");
                  size_t c24 = count_sigma3(24), c120 = count_sigma3(120);
                  note(notes, c24 <= 9ul * 24 * 24 * 24,
                       "count bound violated at n = 24");
                  note(notes, c120 <= 9ul * 120 * 120 * 120,
                       "count bound violated at n = 120");
                  riv pi2 = riv::pi() * riv::pi();
                  auto dev = [&pi2](long n, long c) {
                      return (riv::exact(c) * riv::exact(4) * pi2 /
                                  riv::exact(n * n * n) -
                              riv::exact(1))
                          .abs();
                  };
                  note(notes, dev(120, (long)c120).surely_lt(dev(24, (long)c24)),
                       "trend deviation did not shrink from n=24 to n=120");
              });

    // 5. Three-way stability scan at thresholds 3 and 3 +/- 6^{-3n} for
    //    n = 4..12 with the depth cap pinned at 3n: no undecided verdicts and
    //    every certificate re-verifies.  Set equality is reported either way.
    criterion(5, "stability scans n=4..12 at depth <= 3n: decisive + re-verified",
              120.0, [](std::vector<std::string>& notes) {
                  clear_sigma_caches();
                  std::string unequal;
                  for (size_t n = 4; n <= 12; ++n) {
                      stability_report r = stability_scan(n, 3 * (long)n);
                      size_t undec =
                          r.undecided_minus + r.undecided_mid + r.undecided_plus;
                      note(notes, undec == 0,
                           std::to_string(undec) + " undecided at n = " +
                               std::to_string(n));
                      note(notes, r.verify_failures == 0,
                           std::to_string(r.verify_failures) +
                               " certificate re-verification failures at n = " +
                               std::to_string(n));
                      if (!r.equal) unequal += " " + std::to_string(n);
                  }
                  // reported, not failed: the set-equality guarantee lives far
                  // above this range, so a difference is information, not a bug
                  g_infos.push_back(unequal.empty()
                                        ? "sets equal across thresholds at every n"
                                        : "sets differ across thresholds at n =" +
                                              unequal);
              });

    // 6. Exact exclusion/inclusion certificates at t = 3, independent of the
    //    configured worker count.
    criterion(6, "membership exactness: (1,2,1) bound (6+2*sqrt(3))/3, (2,1) included",
              1.0, [](std::vector<std::string>& notes) {
                  quad three = quad::of_rat(Rat(3));
                  long saved = config().workers;
                  std::vector<membership_result> r121s, r21s;
                  for (long wk : {1L, 4L}) {
                      clear_sigma_caches();
                      config().workers = wk;
                      r121s.push_back(prune_membership({1, 2, 1}, three));
                      r21s.push_back(prune_membership({2, 1}, three));
                  }
                  config().workers = saved;
                  for (const membership_result& r : r121s) {
                      note(notes, r.verdict == verdict_kind::excluded,
                           "(1,2,1) not excluded");
                      note(notes,
                           r.exclusion && r.exclusion->bound == quad::make(6, 2, 3, 3),
                           "(1,2,1) bound != (6+2*sqrt(3))/3");
                  }
                  for (const membership_result& r : r21s) {
                      note(notes, r.verdict == verdict_kind::included,
                           "(2,1) not included");
                      bool lt3 = r.inclusion && r.inclusion->value.is_quadratic() &&
                                 quad_compare(r.inclusion->value.quad_value(),
                                              quad::of_rat(Rat(3))) < 0;
                      note(notes, lt3, "(2,1) certificate value not exactly < 3");
                  }
                  bool stable = r121s[0].exclusion && r121s[1].exclusion &&
                                r121s[0].exclusion->bound == r121s[1].exclusion->bound &&
                                r21s[0].inclusion && r21s[1].inclusion &&
                                r21s[0].inclusion->period == r21s[1].inclusion->period;
                  note(notes, stable, "certificates vary with worker count");
              });

    // 7. Mass-distribution oracle: exhaustive DP covering minimum is at least
    //    (1/2) min_r N_r h(eps_{r+1}) on 200 seeded random nested systems.
    criterion(7, "mass-distribution bound holds on 200 seeded nested systems", 30.0,
              [](std::vector<std::string>& notes) {
                  int passes = 0;
                  for (unsigned long long seed = 0; seed < 200; ++seed)
                      if (mass_bound_oracle(random_nested_system(seed)).pass) ++passes;
                  note(notes, passes == 200,
                       std::to_string(passes) + "/200 systems passed");
              });

    // 8. Divergence schedule for the loglog gauge, 25 levels: monotone deltas,
    //    strictly shrinking scales, branching nondecreasing from level 2 with
    //    f_25 >= 10, certificates strictly increasing for n >= 3 ending above
    //    10^3, and disjoint interval lists at levels 1 and 2.
    criterion(8, "25-level schedule: monotone, f_25 >= 10, certificates diverge", 30.0,
              [](std::vector<std::string>& notes) {
                  cantor_schedule s = build_schedule(gauge::logloginv(), 25);
                  note(notes, s.levels.size() == 25, "schedule depth != 25");
                  for (size_t k = 1; k < s.levels.size(); ++k) {
                      note(notes,
                           s.levels[k].delta.hi_rat() <= s.levels[k - 1].delta.hi_rat(),
                           "certified delta increased at level " + std::to_string(k + 1));
                      note(notes, s.levels[k].eps.hi_rat() < s.levels[k - 1].eps.lo_rat(),
                           "eps did not strictly decrease at level " +
                               std::to_string(k + 1));
                      if (k >= 2)
                          note(notes, s.levels[k].f >= s.levels[k - 1].f,
                               "f decreased at level " + std::to_string(k + 1));
                  }
                  note(notes, s.levels[24].f >= 10, "f_25 < 10");
                  riv prev;
                  for (long n = 1; n <= 24; ++n) {
                      riv cert = divergence_certificate(s, n);
                      if (n >= 4)
                          note(notes, (cert - prev).is_positive(),
                               "certificate not increasing at n = " + std::to_string(n));
                      prev = cert;
                  }
                  note(notes, prev.surely_gt_rat(Rat(1000)),
                       "final certificate not above 10^3");
                  note(notes, level_geometry(s, 1).disjoint, "level 1 intervals overlap");
                  note(notes, level_geometry(s, 2).disjoint, "level 2 intervals overlap");
              });

    // 9. Covering sums for the fourth-power log gauge decay along
    //    n = 25, 50, 100, 200, and are at least halved over the range.
    criterion(9, "covering sums S(25) > S(50) > S(100) > S(200), S(200) < S(25)/2",
              60.0, [](std::vector<std::string>& notes) {
                  gauge h = gauge::loginv(Rat(4));
                  riv s25 = cover_k3(h, 25).sum;
                  riv s50 = cover_k3(h, 50).sum;
                  riv s100 = cover_k3(h, 100).sum;
                  riv s200 = cover_k3(h, 200).sum;
                  note(notes, (s25 - s50).is_positive(), "S(25) <= S(50)");
                  note(notes, (s50 - s100).is_positive(), "S(50) <= S(100)");
                  note(notes, (s100 - s200).is_positive(), "S(100) <= S(200)");
                  note(notes, (s25.mul_rat(Rat(1, 2)) - s200).is_positive(),
                       "S(200) >= S(25)/2");
              });

    // 10. Gauge classification table and the exact factorial-gauge ratios.
    criterion(10, "gauge regimes (power, loginv, factorial) + exact ratio identity",
              5.0, [](std::vector<std::string>& notes) {
                  note(notes,
                       classify_k13(gauge::power(Rat(1, 2))).regime == regime_kind::zero,
                       "power(1/2) not zero for the cut-point set");
                  gauge li4 = gauge::loginv(Rat(4));
                  note(notes,
                       classify_k13(li4).regime == regime_kind::not_sigma_finite,
                       "loginv(4) not not-sigma-finite for the cut-point set");
                  note(notes, classify_k3set(li4).regime == regime_kind::zero,
                       "loginv(4) not zero for the two-symbol set");
                  gauge fac = gauge::factorial_example();
                  note(notes, classify_k13(fac).regime == regime_kind::zero,
                       "factorial gauge not zero for the cut-point set");
                  note(notes,
                       classify_liouville(fac).regime == regime_kind::not_sigma_finite,
                       "factorial gauge not not-sigma-finite for the Liouville set");
                  for (long k = 2; k <= 8; ++k) {
                      // 1 - (1 - 1/k)/(2k + 1) = (2k^2 + 1)/(2k^2 + k)
                      Rat want = Rat(1) - make_rat(k - 1, k * (2 * k + 1));
                      note(notes, factorial_gauge_ratio(k) == want,
                           "ratio mismatch at k = " + std::to_string(k));
                      note(notes,
                           factorial_gauge_ratio(k) ==
                               make_rat(2 * k * k + 1, 2 * k * k + k),
                           "simplified ratio form mismatch at k = " + std::to_string(k));
                  }
                  note(notes, factorial_gauge_ratio(2) == Rat(9, 10),
                       "ratio at k = 2 is not 9/10");
              });

    // 11. Translation congruences: (q_n, p_n) = (2, 1) mod 4 for m = 1..4 with
    //    exact big-integer convergents.
    criterion(11, "translation congruence (q,p) = (2,1) mod 4 for m = 1..4", 5.0,
              [](std::vector<std::string>& notes) {
                  for (long m = 1; m <= 4; ++m) {
                      translation_report tr = translation_congruence_check(m);
                      note(notes, tr.q_mod4 == 2 && tr.p_mod4 == 1 && tr.pass,
                           "report (" + std::to_string(tr.q_mod4) + "," +
                               std::to_string(tr.p_mod4) + ") at m = " +
                               std::to_string(m));
                  }
              });

    // 12. Attainable stream e_i = i: every applicable cut with i <= 20 has a
    //    rigorous lambda enclosure bounded below by 3; at both cut positions
    //    of blocks 21..30 the enclosures sit inside (3 - 1/20, 3 + 1/20).
    criterion(12, "stream e_i=i: 20 certified bad cuts; later cuts within 0.05 of 3",
              30.0, [](std::vector<std::string>& notes) {
                  attainable_stream s = parse_stream("linear:a=1,b=0");
                  size_t cuts = 0;
                  for (long i = 1; i <= 20; ++i) {
                      for (int v : applicable_variants(s, i)) {
                          ++cuts;
                          long pos = cut_position(s, i, v);
                          lambda_enclosure_result enc = lambda_enclosure(s, pos, 60);
                          note(notes, enc.bound.lo > Rat(3),
                               "cut at block " + std::to_string(i) + " variant " +
                                   std::to_string(v) + " not certified above 3");
                      }
                  }
                  note(notes, cuts >= 20, "fewer than 20 applicable cuts");
                  for (long i = 21; i <= 30; ++i) {
                      for (int v = 1; v <= 2; ++v) {
                          long pos = cut_position(s, i, v);
                          lambda_enclosure_result enc = lambda_enclosure(s, pos, 60);
                          note(notes,
                               enc.bound.lo > Rat(59, 20) && enc.bound.hi < Rat(61, 20),
                               "window enclosure at block " + std::to_string(i) +
                                   " variant " + std::to_string(v) +
                                   " escapes (59/20, 61/20)");
                      }
                  }
              });

    std::printf("%d of 12 criteria failed\n", g_failures);
    return g_failures;
}
