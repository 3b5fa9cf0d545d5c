// cf3: exact continued-fraction arithmetic, Markov/Lagrange values, the
// Sigma(t, n) subshift, gauge classification, and Cantor-construction
// certificates, with machine-readable (JSON/CSV) output.
#include "cf3/cantor.hpp"
#include "cf3/config.hpp"
#include "cf3/errors.hpp"
#include "cf3/expr.hpp"
#include "cf3/gauge.hpp"
#include "cf3/lagrange.hpp"
#include "cf3/sigma.hpp"
#include "cf3/word.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace cf3;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kDecimalDigits = 20;

struct cli_state {
    long precision = 128;
    long depth = -1;
    long cap = 100000;
    long workers = 1;
    std::string format = "json";
    std::optional<unsigned long long> seed;
    std::string out;

    int exit_code = 0; // set to 3 by subcommands with undecided verdicts
};

void apply_config(const cli_state& st) {
    if (st.precision < 64) fail(errkind::invalid_input, "--precision must be at least 64");
    if (st.cap < 1) fail(errkind::invalid_input, "--cap must be positive");
    if (st.workers < 1) fail(errkind::invalid_input, "--workers must be positive");
    if (st.format != "json" && st.format != "csv")
        fail(errkind::invalid_input, "--format must be json or csv");
    config().precision_bits = st.precision;
    config().depth = st.depth;
    config().cap = st.cap;
    config().workers = st.workers;
    if (st.seed) {
        config().seed = *st.seed;
        config().seed_set = true;
    }
}

void emit_text(const cli_state& st, const std::string& text) {
    if (st.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(st.out, std::ios::binary);
    if (!f) fail(errkind::invalid_input, "cannot open --out file \"" + st.out + "\"");
    f << text;
}

void emit(const cli_state& st, const ojson& j) { emit_text(st, j.dump(2) + "\n"); }

void need_json(const cli_state& st, const std::string& cmd) {
    if (st.format != "json")
        fail(errkind::invalid_input, cmd + " supports only --format json");
}

ojson riv_json(const riv& v) {
    return ojson{{"lo", v.lo_str(kDecimalDigits)}, {"hi", v.hi_str(kDecimalDigits)}};
}

std::string rat_str(const Rat& r) { return to_string(r); }
std::string decimal_lo(const riv& v) { return v.lo_str(kDecimalDigits); }

Word parse_word_flag(const std::string& text, bool allow_empty) {
    if (text.empty()) {
        if (allow_empty) return {};
        fail(errkind::invalid_word, "word must be nonempty");
    }
    return parse_word(text);
}

ojson words_json(const std::vector<Word>& ws) {
    ojson a = ojson::array();
    for (const Word& w : ws) a.push_back(format_word(w));
    return a;
}

// periodic completion as a two-sided word JSON: right reads a_0 a_1 ... and
// left reads a_{-1} a_{-2} ... outward from the center
ojson biword_json(const Word& period, size_t offset) {
    size_t m = period.size();
    Word right, left;
    for (size_t i = 0; i < m; ++i) right.push_back(period[(offset + i) % m]);
    for (size_t i = 0; i < m; ++i) left.push_back(period[(offset + m - 1 - i) % m]);
    return ojson{{"left", {{"pre", ojson::array()}, {"period", left}}},
                 {"right", {{"pre", ojson::array()}, {"period", right}}}};
}

// ---- cf ---------------------------------------------------------------------

int cmd_cf_convergents(const cli_state& st, const std::string& word_text) {
    Word w = parse_word_flag(word_text, false);
    convergent_table tb = convergent_table::of(w);
    need_json(st, "cf convergents");
    ojson p = ojson::array(), q = ojson::array(), dets = ojson::array();
    for (size_t k = 0; k < tb.p.size(); ++k) {
        p.push_back(to_string(tb.p[k]));
        q.push_back(to_string(tb.q[k]));
        if (k >= 1) dets.push_back(to_string(tb.det(k)));
    }
    ojson j{{"word", format_word(w)}, {"n", tb.order()}, {"p", p}, {"q", q},
            {"dets", dets},           {"value", rat_str(tb.value())}};
    j["precision"] = st.precision;
    emit(st, j);
    return 0;
}

int cmd_cf_cylinder(const cli_state& st, const std::string& word_text) {
    Word w = parse_word_flag(word_text, false);
    rational_interval iv = cylinder(w);
    need_json(st, "cf cylinder");
    ojson j{{"word", format_word(w)},
            {"lo", rat_str(iv.lo)},
            {"hi", rat_str(iv.hi)},
            {"diam", rat_str(cylinder_diameter(w))}};
    j["precision"] = st.precision;
    emit(st, j);
    return 0;
}

int cmd_cf_diam(const cli_state& st, const std::string& word_text) {
    Word w = parse_word_flag(word_text, false);
    Rat d = cylinder_diameter(w);
    need_json(st, "cf diam");
    ojson j{{"word", format_word(w)},
            {"diam", rat_str(d)},
            {"decimal", decimal_lo(riv::of_rat(d))}};
    j["precision"] = st.precision;
    emit(st, j);
    return 0;
}

// ---- lagrange ----------------------------------------------------------------

int cmd_lagrange_value(const cli_state& st, const std::string& pre_text,
                       const std::string& period_text) {
    Word pre = parse_word_flag(pre_text, true);
    Word period = parse_word_flag(period_text, false);
    radsum v = lagrange_value(pre, period);
    need_json(st, "lagrange value");
    ojson j{{"pre", format_word(pre)},
            {"period", format_word(period)},
            {"value", v.str()},
            {"decimal", decimal_lo(v.enclosure())}};
    j["precision"] = st.precision;
    emit(st, j);
    return 0;
}

int cmd_lagrange_markov(const cli_state& st, const std::string& lp, const std::string& lq,
                        const std::string& rp, const std::string& rq) {
    bi_word b;
    b.left.pre = parse_word_flag(lp, true);
    b.left.period = parse_word_flag(lq, false);
    b.right.pre = parse_word_flag(rp, true);
    b.right.period = parse_word_flag(rq, false);
    b.validate();
    radsum v = markov_value(b);
    need_json(st, "lagrange markov");
    ojson j{{"left_pre", format_word(b.left.pre)},
            {"left_period", format_word(b.left.period)},
            {"right_pre", format_word(b.right.pre)},
            {"right_period", format_word(b.right.period)},
            {"value", v.str()},
            {"decimal", decimal_lo(v.enclosure())}};
    j["precision"] = st.precision;
    emit(st, j);
    return 0;
}

int cmd_lagrange_identity(const cli_state& st, const std::string& z_text) {
    quad z = parse_threshold(z_text);
    if (z.sign() <= 0) fail(errkind::precondition, "identity requires z > 0");
    bool holds = check_identity(z);
    need_json(st, "lagrange identity");
    ojson j{{"z", z.str()}, {"holds", holds}};
    j["precision"] = st.precision;
    emit(st, j);
    return 0;
}

int cmd_lagrange_enclosure(const cli_state& st, const std::string& stream_dsl, long i,
                           long depth) {
    attainable_stream s = parse_stream(stream_dsl);
    long d = depth >= 0 ? depth : (st.depth >= 0 ? st.depth : 40);
    lambda_enclosure_result r = lambda_enclosure(s, i, d);
    need_json(st, "lagrange enclosure");
    ojson j{{"stream", s.dsl()},
            {"position", r.position},
            {"depth", r.depth},
            {"lo", rat_str(r.bound.lo)},
            {"hi", rat_str(r.bound.hi)},
            {"lo_decimal", decimal_lo(riv::of_rat(r.bound.lo))},
            {"hi_decimal", riv::of_rat(r.bound.hi).hi_str(kDecimalDigits)}};
    j["precision"] = st.precision;
    emit(st, j);
    return 0;
}

int cmd_lagrange_translate(const cli_state& st, long m) {
    translation_report r = translation_congruence_check(m);
    need_json(st, "lagrange translate");
    ojson j{{"m", r.m},
            {"n", r.n},
            {"q_mod4", r.q_mod4},
            {"p_mod4", r.p_mod4},
            {"pass", r.pass}};
    j["precision"] = st.precision;
    emit(st, j);
    return 0;
}

// ---- sigma -------------------------------------------------------------------

int cmd_sigma_enumerate(cli_state& st, long n, const std::string& t_text,
                        const std::string& route) {
    if (n < 1) fail(errkind::invalid_input, "n must be >= 1");
    quad t = parse_threshold(t_text);
    bool corr = route == "correspondence";
    if (route != "correspondence" && route != "pruning")
        fail(errkind::invalid_input, "--route must be correspondence or pruning");
    if (corr && !(t == quad::of_rat(Rat(3))))
        fail(errkind::unsupported_threshold,
             "the correspondence route is exact only at t = 3; use --route pruning");
    std::vector<Word> words;
    size_t undecided = 0;
    if (corr) {
        words = sigma3_words(size_t(n));
    } else {
        pruning_enumeration en = sigma_by_pruning(size_t(n), t, st.depth);
        words = std::move(en.included);
        undecided = en.undecided.size();
    }
    if (st.format == "csv") {
        std::ostringstream os;
        os << "word\n";
        for (const Word& w : words) os << "\"" << format_word(w) << "\"\n";
        emit_text(st, os.str());
    } else {
        ojson j{{"n", n},
                {"t", t.str()},
                {"route", route},
                {"count", words.size()},
                {"undecided", undecided},
                {"words", words_json(words)}};
        j["precision"] = st.precision;
        emit(st, j);
    }
    if (undecided > 0) st.exit_code = 3;
    return st.exit_code;
}

int cmd_sigma_count(const cli_state& st, long n) {
    if (n < 1) fail(errkind::invalid_input, "n must be >= 1");
    size_t c = count_sigma3(size_t(n));
    unsigned long long formula = sigma3_count_formula(size_t(n));
    Int bound = Int(9) * ipow(Int(n), 3);
    need_json(st, "sigma count");
    ojson j{{"n", n},
            {"count", c},
            {"bound_9n3", to_string(bound)},
            {"within_bound", Int(long(c)) <= bound},
            {"formula_estimate", formula},
            {"formula_matches", formula == c}};
    j["precision"] = st.precision;
    emit(st, j);
    return 0;
}

int cmd_sigma_member(cli_state& st, const std::string& word_text, const std::string& t_text,
                     bool verify) {
    Word w = parse_word_flag(word_text, false);
    quad t = parse_threshold(t_text);
    membership_result r = prune_membership(w, t, st.depth);
    need_json(st, "sigma member");
    ojson j{{"word", format_word(w)}, {"t", t.str()}};
    switch (r.verdict) {
    case verdict_kind::excluded:
        j["status"] = "excluded";
        j["bound"] = r.exclusion->bound.str();
        j["position"] = r.exclusion->position;
        j["depth"] = r.exclusion->depth;
        break;
    case verdict_kind::included:
        j["status"] = "included";
        j["period"] = format_word(r.inclusion->period);
        j["offset"] = r.inclusion->offset;
        j["value"] = r.inclusion->value.str();
        j["decimal"] = decimal_lo(r.inclusion->value.enclosure());
        j["biword"] = biword_json(r.inclusion->period, r.inclusion->offset);
        break;
    case verdict_kind::undecided:
        j["status"] = "undecided";
        j["depth"] = r.depth_used;
        st.exit_code = 3;
        break;
    }
    if (verify) j["verified"] = verify_membership(w, t, r);
    j["precision"] = st.precision;
    emit(st, j);
    return st.exit_code;
}

int cmd_sigma_stability(cli_state& st, long n) {
    if (n < 1) fail(errkind::invalid_input, "n must be >= 1");
    stability_report r = stability_scan(size_t(n), st.depth);
    need_json(st, "sigma stability");
    ojson j{{"n", r.n},
            {"t_minus", rat_str(r.t_minus)},
            {"t_plus", rat_str(r.t_plus)},
            {"max_depth", r.max_depth},
            {"count_minus", r.count_minus},
            {"count_mid", r.count_mid},
            {"count_plus", r.count_plus},
            {"undecided_minus", r.undecided_minus},
            {"undecided_mid", r.undecided_mid},
            {"undecided_plus", r.undecided_plus},
            {"verify_failures", r.verify_failures},
            {"equal", r.equal},
            {"diff_words", words_json(r.diff_words)}};
    j["precision"] = st.precision;
    emit(st, j);
    if (r.undecided_minus + r.undecided_mid + r.undecided_plus > 0) st.exit_code = 3;
    return st.exit_code;
}

// ---- gauge -------------------------------------------------------------------

ojson verdict_json(const regime_verdict& v) {
    return ojson{{"target", v.target},
                 {"regime", regime_name(v.regime)},
                 {"limsup", v.limsup},
                 {"evidence", v.evidence},
                 {"limit_caveat", v.limit_caveat}};
}

int cmd_gauge_classify(cli_state& st, const std::string& h_dsl, const std::string& target) {
    gauge h = parse_gauge(h_dsl);
    need_json(st, "gauge classify");
    std::vector<regime_verdict> vs;
    if (target == "k13" || target == "all") vs.push_back(classify_k13(h));
    if (target == "k3set" || target == "all") vs.push_back(classify_k3set(h));
    if (target == "liouville" || target == "all") vs.push_back(classify_liouville(h));
    if (vs.empty())
        fail(errkind::invalid_input, "--target must be k13, k3set, liouville, or all");
    ojson j{{"h", h.str()}};
    if (vs.size() == 1) {
        ojson v0 = verdict_json(vs[0]);
        for (auto& [k, val] : v0.items()) j[k] = val;
    } else {
        ojson arr = ojson::array();
        for (const auto& v : vs) arr.push_back(verdict_json(v));
        j["verdicts"] = arr;
    }
    j["precision"] = st.precision;
    emit(st, j);
    for (const auto& v : vs)
        if (v.regime == regime_kind::inconclusive) st.exit_code = 3;
    return st.exit_code;
}

int cmd_gauge_gamma(const cli_state& st, const std::string& h_dsl, const std::string& r_text) {
    gauge h = parse_gauge(h_dsl);
    Rat r = parse_rat_lit(r_text);
    riv g = gamma_transform(h, r);
    need_json(st, "gauge gamma");
    ojson j{{"h", h.str()}, {"r", rat_str(r)}, {"gamma", riv_json(g)}};
    j["precision"] = st.precision;
    emit(st, j);
    return 0;
}

int cmd_gauge_factorial_ratio(const cli_state& st, long k) {
    Rat v = factorial_gauge_ratio(k);
    need_json(st, "gauge factorial-ratio");
    ojson j{{"k", k}, {"ratio", rat_str(v)}, {"decimal", decimal_lo(riv::of_rat(v))}};
    j["precision"] = st.precision;
    emit(st, j);
    return 0;
}

int cmd_gauge_square(const cli_state& st, const std::string& h_dsl) {
    gauge h = parse_gauge(h_dsl);
    gauge sq = square_gauge(h);
    need_json(st, "gauge square");
    ojson j{{"h", h.str()}, {"square", sq.str()}};
    j["precision"] = st.precision;
    emit(st, j);
    return 0;
}

// ---- cantor ------------------------------------------------------------------

ojson schedule_level_json(const cantor_schedule& s, const schedule_level& lv, long K) {
    cantor_level geo = level_geometry(s, lv.k, 0); // extremal diameters only
    ojson j{{"k", lv.k},
            {"delta", lv.delta.hi_str(kDecimalDigits)},
            {"f", lv.f},
            {"epsilon", riv_json(lv.eps)},
            {"N", to_string(geo.N)},
            {"minDiam", rat_str(geo.min_diam)},
            {"maxDiam", rat_str(geo.max_diam)}};
    if (lv.k + 1 <= K)
        j["certificate"] = riv_json(divergence_certificate(s, lv.k));
    else
        j["certificate"] = nullptr;
    return j;
}

int cmd_cantor_schedule(const cli_state& st, const std::string& h_dsl, long K) {
    gauge h = parse_gauge(h_dsl);
    cantor_schedule s = build_schedule(h, K);
    if (st.format == "csv") {
        std::ostringstream os;
        os << "k,delta,f,epsilon_lo,epsilon_hi,N,minDiam,maxDiam,certificate_lo,certificate_hi\n";
        for (const auto& lv : s.levels) {
            cantor_level geo = level_geometry(s, lv.k, 0);
            os << lv.k << "," << lv.delta.hi_str(kDecimalDigits) << "," << lv.f << ","
               << lv.eps.lo_str(kDecimalDigits) << "," << lv.eps.hi_str(kDecimalDigits) << ","
               << to_string(geo.N) << "," << rat_str(geo.min_diam) << ","
               << rat_str(geo.max_diam) << ",";
            if (lv.k + 1 <= K) {
                riv c = divergence_certificate(s, lv.k);
                os << c.lo_str(kDecimalDigits) << "," << c.hi_str(kDecimalDigits);
            } else {
                os << ",";
            }
            os << "\n";
        }
        emit_text(st, os.str());
        return 0;
    }
    ojson levels = ojson::array();
    for (const auto& lv : s.levels) levels.push_back(schedule_level_json(s, lv, K));
    ojson j{{"h", h.str()}, {"K", K}, {"c", riv_json(s.c)}, {"levels", levels}};
    j["precision"] = st.precision;
    emit(st, j);
    return 0;
}

int cmd_cantor_level(const cli_state& st, const std::string& h_dsl, long K, long n) {
    gauge h = parse_gauge(h_dsl);
    cantor_schedule s = build_schedule(h, K);
    cantor_level geo = level_geometry(s, n, size_t(st.cap));
    need_json(st, "cantor level");
    ojson j{{"h", h.str()},
            {"K", K},
            {"n", n},
            {"N", to_string(geo.N)},
            {"cap", st.cap},
            {"enumerated", geo.enumerated},
            {"shortest", format_word(geo.shortest)},
            {"longest", format_word(geo.longest)},
            {"minDiam", rat_str(geo.min_diam)},
            {"maxDiam", rat_str(geo.max_diam)}};
    if (geo.enumerated) {
        j["disjoint"] = geo.disjoint;
        j["diam_extremal_ok"] = geo.diam_extremal_ok;
        j["words"] = words_json(geo.words);
    }
    j["precision"] = st.precision;
    emit(st, j);
    return 0;
}

int cmd_cantor_certificate(const cli_state& st, const std::string& h_dsl, long K, long n) {
    gauge h = parse_gauge(h_dsl);
    cantor_schedule s = build_schedule(h, K);
    riv c = divergence_certificate(s, n);
    need_json(st, "cantor certificate");
    ojson j{{"h", h.str()}, {"K", K}, {"n", n}, {"certificate", riv_json(c)}};
    j["precision"] = st.precision;
    emit(st, j);
    return 0;
}

int cmd_cantor_cover(const cli_state& st, const std::string& h_dsl, std::vector<long> ns) {
    gauge h = parse_gauge(h_dsl);
    if (ns.empty()) fail(errkind::invalid_input, "give at least one --n");
    std::vector<covering_report> reps;
    for (long n : ns) {
        if (n < 1) fail(errkind::invalid_input, "n must be >= 1");
        reps.push_back(cover_k3(h, size_t(n)));
    }
    if (st.format == "csv") {
        std::ostringstream os;
        os << "n,count,sumLower,sumUpper\n";
        for (const auto& r : reps)
            os << r.n << "," << r.count << "," << r.sum.lo_str(kDecimalDigits) << ","
               << r.sum.hi_str(kDecimalDigits) << "\n";
        emit_text(st, os.str());
        return 0;
    }
    ojson arr = ojson::array();
    for (const auto& r : reps) {
        arr.push_back(ojson{{"n", r.n},
                            {"count", r.count},
                            {"sumLower", r.sum.lo_str(kDecimalDigits)},
                            {"sumUpper", r.sum.hi_str(kDecimalDigits)},
                            {"minDiam", rat_str(r.min_diam)},
                            {"maxDiam", rat_str(r.max_diam)},
                            {"countBound", riv_json(r.count_bound)},
                            {"sumWithinCountBound", r.sum_le_count_h_max}});
    }
    ojson j{{"h", h.str()}, {"results", arr}};
    j["precision"] = st.precision;
    emit(st, j);
    return 0;
}

int cmd_cantor_zero_budget(const cli_state& st, const std::string& d_text,
                           const std::string& eps_text) {
    Rat d = parse_rat_lit(d_text);
    Rat eps = parse_rat_lit(eps_text);
    zero_budget_report r = zero_cover_budget(d, eps);
    need_json(st, "cantor zero-budget");
    ojson j{{"d", rat_str(d)},
            {"epsK", rat_str(eps)},
            {"m", r.m},
            {"rK", to_string(r.r_k)},
            {"blockBound", to_string(r.block_bound)},
            {"budgetLog2", riv_json(r.budget_log2)}};
    if (r.budget_log2_exact)
        j["budgetLog2Exact"] = rat_str(*r.budget_log2_exact);
    else
        j["budgetLog2Exact"] = nullptr;
    j["budget"] = riv_json(r.budget);
    j["precision"] = st.precision;
    emit(st, j);
    return 0;
}

int cmd_cantor_mass_oracle(const cli_state& st, long count) {
    if (!st.seed) fail(errkind::invalid_input, "mass-oracle requires an explicit --seed");
    if (count < 1) fail(errkind::invalid_input, "--count must be positive");
    need_json(st, "cantor mass-oracle");
    ojson systems = ojson::array();
    long passes = 0;
    for (long i = 0; i < count; ++i) {
        unsigned long long seed = *st.seed + (unsigned long long)i;
        nested_system sys = random_nested_system(seed);
        mass_oracle_report rep = mass_bound_oracle(sys);
        if (rep.pass) ++passes;
        systems.push_back(ojson{{"seed", seed},
                                {"levels", sys.levels.size()},
                                {"leaves", sys.levels.back().size()},
                                {"gauge", sys.h.str()},
                                {"bruteMin", riv_json(rep.brute_min)},
                                {"bound", riv_json(rep.bound)},
                                {"pass", rep.pass}});
    }
    ojson j{{"seed", *st.seed},
            {"count", count},
            {"passes", passes},
            {"failures", count - passes},
            {"systems", systems}};
    j["precision"] = st.precision;
    emit(st, j);
    return 0;
}

int real_main(int argc, char** argv) {
    cli_state st;
    CLI::App app{
        "Exact continued fractions, Markov/Lagrange values, the Sigma(t,n) subshift,\n"
        "gauge-measure classification, and Cantor-construction certificates.\n"
        "Grammars:\n"
        "  word       comma-separated quotients >= 1 with run-length macros: \"1,2,1\", \"1^4,2,2\"\n"
        "  threshold  exact expression: integers, rationals, sqrt(n), + - * / ^ : \"3\", \"3-6^-9\", \"2*sqrt(2)\"\n"
        "  gauge      pow:<s> | loginv:<c> | logloginv | factorial | square:(<gauge>) | table:<path.csv>\n"
        "  stream     linear:a=<a>,b=<b> | const:<k> | paper-translation"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may appear after the subcommand
    app.add_option("--precision", st.precision, "working precision in bits (>= 64)")
        ->capture_default_str();
    app.add_option("--depth", st.depth, "search/enclosure depth cap (-1 = per-op default)")
        ->capture_default_str();
    app.add_option("--cap", st.cap, "enumeration cap")->capture_default_str();
    app.add_option("--workers", st.workers,
                   "reserved; results are independent of the worker count")
        ->capture_default_str();
    app.add_option("--format", st.format, "output format: json | csv")->capture_default_str();
    unsigned long long seed_flag = 0;
    auto* seed_opt = app.add_option("--seed", seed_flag, "seed for randomized oracles");
    app.add_option("--out", st.out, "write output to a file instead of stdout");

    int rc = 0;
    // callbacks fire inside app.parse(), so flag transfer happens here
    auto run = [&](auto fn) {
        return [&, fn]() {
            if (seed_opt->count() > 0) st.seed = seed_flag;
            apply_config(st);
            rc = fn();
        };
    };

    // cf
    auto* cf = app.add_subcommand("cf", "convergents and cylinder intervals");
    cf->require_subcommand(1);
    std::string word_text;
    auto* cfc = cf->add_subcommand("convergents", "convergent table of [0; w]");
    cfc->add_option("word", word_text, "quotient word")->required();
    cfc->callback(run([&]() { return cmd_cf_convergents(st, word_text); }));
    auto* cfy = cf->add_subcommand("cylinder", "exact cylinder interval I(w)");
    cfy->add_option("word", word_text, "quotient word")->required();
    cfy->callback(run([&]() { return cmd_cf_cylinder(st, word_text); }));
    auto* cfd = cf->add_subcommand("diam", "exact cylinder diameter");
    cfd->add_option("word", word_text, "quotient word")->required();
    cfd->callback(run([&]() { return cmd_cf_diam(st, word_text); }));

    // lagrange
    auto* lg = app.add_subcommand("lagrange", "Markov and Lagrange values");
    lg->require_subcommand(1);
    std::string pre_text, period_text, lp, lq, rp, rq, z_text, stream_dsl;
    long pos_i = 0, enc_depth = -1, trans_m = 1;
    auto* lgv = lg->add_subcommand("value", "Lagrange value of [0; pre, (period)^inf]");
    lgv->add_option("--pre", pre_text, "preperiod (may be empty)");
    lgv->add_option("--period", period_text, "period word")->required();
    lgv->callback(run([&]() { return cmd_lagrange_value(st, pre_text, period_text); }));
    auto* lgm = lg->add_subcommand("markov", "Markov value of a two-sided word");
    lgm->add_option("--left-pre", lp, "left preperiod, read outward from the center");
    lgm->add_option("--left-period", lq, "left period, read outward")->required();
    lgm->add_option("--right-pre", rp, "right preperiod");
    lgm->add_option("--right-period", rq, "right period")->required();
    lgm->callback(run([&]() { return cmd_lagrange_markov(st, lp, lq, rp, rq); }));
    auto* lgi = lg->add_subcommand("identity", "check [2;2,z] + [0;1,1,z] = 3 exactly");
    lgi->add_option("--z", z_text, "positive threshold expression")->required();
    lgi->callback(run([&]() { return cmd_lagrange_identity(st, z_text); }));
    auto* lge = lg->add_subcommand("enclosure", "rigorous enclosure of lambda_i of a stream");
    lge->add_option("--stream", stream_dsl, "stream rule")->required();
    lge->add_option("--i", pos_i, "position index")->required();
    lge->add_option("--depth", enc_depth, "tail truncation depth (default 40)");
    lge->callback(run([&]() { return cmd_lagrange_enclosure(st, stream_dsl, pos_i, enc_depth); }));
    auto* lgt = lg->add_subcommand("translate", "convergent congruences of the translated stream");
    lgt->add_option("--m", trans_m, "block multiple; checks position 2 + e_1 + ... + e_{6m} + 8m")
        ->required();
    lgt->callback(run([&]() { return cmd_lagrange_translate(st, trans_m); }));

    // sigma
    auto* sg = app.add_subcommand("sigma", "the subshift Sigma(t, n) near t = 3");
    sg->require_subcommand(1);
    long sg_n = 1;
    std::string t_text = "3", route = "correspondence";
    bool verify_flag = false;
    auto* sge = sg->add_subcommand("enumerate", "list Sigma(t, n)");
    sge->add_option("n", sg_n, "factor length")->required();
    sge->add_option("--t", t_text, "threshold expression (default 3)")->capture_default_str();
    sge->add_option("--route", route, "correspondence | pruning")->capture_default_str();
    sge->callback(run([&]() { return cmd_sigma_enumerate(st, sg_n, t_text, route); }));
    auto* sgc = sg->add_subcommand("count", "|Sigma(3, n)| with the 9n^3 bound check");
    sgc->add_option("n", sg_n, "factor length")->required();
    sgc->callback(run([&]() { return cmd_sigma_count(st, sg_n); }));
    auto* sgm = sg->add_subcommand("member", "membership of a word in Sigma(t, |w|)");
    sgm->add_option("word", word_text, "quotient word")->required();
    sgm->add_option("--t", t_text, "threshold expression")->capture_default_str();
    sgm->add_flag("--verify", verify_flag, "re-verify the certificate");
    sgm->callback(run([&]() { return cmd_sigma_member(st, word_text, t_text, verify_flag); }));
    auto* sgs = sg->add_subcommand("stability", "three-way scan at 3 and 3 +/- 6^{-3n}");
    sgs->add_option("n", sg_n, "factor length")->required();
    sgs->callback(run([&]() { return cmd_sigma_stability(st, sg_n); }));

    // gauge
    auto* gg = app.add_subcommand("gauge", "dimension functions and measure regimes");
    gg->require_subcommand(1);
    std::string h_dsl, target = "all", r_text;
    long fr_k = 2;
    auto* ggc = gg->add_subcommand("classify", "measure regime of a gauge");
    ggc->add_option("--gauge", h_dsl, "gauge DSL")->required();
    ggc->add_option("--target", target, "k13 | k3set | liouville | all")->capture_default_str();
    ggc->callback(run([&]() { return cmd_gauge_classify(st, h_dsl, target); }));
    auto* ggg = gg->add_subcommand("gamma", "Gamma transform r * inf_{s <= r} h(s)/s");
    ggg->add_option("--gauge", h_dsl, "gauge DSL")->required();
    ggg->add_option("--r", r_text, "radius (rational)")->required();
    ggg->callback(run([&]() { return cmd_gauge_gamma(st, h_dsl, r_text); }));
    auto* ggf = gg->add_subcommand("factorial-ratio",
                                   "log-ratio of the factorial gauge at its kink points");
    ggf->add_option("--k", fr_k, "region index (>= 2)")->required();
    ggf->callback(run([&]() { return cmd_gauge_factorial_ratio(st, fr_k); }));
    auto* ggs = gg->add_subcommand("square", "square a gauge (normalized form)");
    ggs->add_option("--gauge", h_dsl, "gauge DSL")->required();
    ggs->callback(run([&]() { return cmd_gauge_square(st, h_dsl); }));

    // cantor
    auto* ct = app.add_subcommand("cantor", "divergence schedule and covering certificates");
    ct->require_subcommand(1);
    long K = 10, lvl_n = 1;
    std::string d_text, eps_text;
    std::vector<long> cover_ns;
    long oracle_count = 1;
    auto* cts = ct->add_subcommand("schedule", "(f_k, eps_k, delta_k) divergence schedule");
    cts->add_option("--gauge", h_dsl, "gauge DSL")->required();
    cts->add_option("--K", K, "number of levels")->required();
    cts->callback(run([&]() { return cmd_cantor_schedule(st, h_dsl, K); }));
    auto* ctl = ct->add_subcommand("level", "level geometry (words, diameters, disjointness)");
    ctl->add_option("--gauge", h_dsl, "gauge DSL")->required();
    ctl->add_option("--K", K, "number of levels")->required();
    ctl->add_option("--n", lvl_n, "level to inspect")->required();
    ctl->callback(run([&]() { return cmd_cantor_level(st, h_dsl, K, lvl_n); }));
    auto* ctc = ct->add_subcommand("certificate", "divergence certificate N_n h(minDiam_{n+1})");
    ctc->add_option("--gauge", h_dsl, "gauge DSL")->required();
    ctc->add_option("--K", K, "number of levels")->required();
    ctc->add_option("--n", lvl_n, "level")->required();
    ctc->callback(run([&]() { return cmd_cantor_certificate(st, h_dsl, K, lvl_n); }));
    auto* ctk = ct->add_subcommand("cover-k3", "exact-diameter covering sums over Sigma(3, n)");
    ctk->add_option("--gauge", h_dsl, "gauge DSL")->required();
    ctk->add_option("--n", cover_ns, "factor length (repeatable)")->required();
    ctk->callback(run([&]() { return cmd_cantor_cover(st, h_dsl, cover_ns); }));
    auto* ctz = ct->add_subcommand("zero-budget", "dyadic covering budget for H^d = 0 scans");
    ctz->add_option("--d", d_text, "dimension parameter in (0, 1]")->required();
    ctz->add_option("--eps", eps_text, "scale eps_k in (0, 1)")->required();
    ctz->callback(run([&]() { return cmd_cantor_zero_budget(st, d_text, eps_text); }));
    auto* ctm = ct->add_subcommand("mass-oracle", "random nested systems vs the 1/2 lower bound");
    ctm->add_option("--count", oracle_count, "number of systems")->capture_default_str();
    ctm->callback(run([&]() { return cmd_cantor_mass_oracle(st, oracle_count); }));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return real_main(argc, argv);
    } catch (const error& e) {
        const char* kind;
        int code;
        switch (e.kind()) {
        case errkind::invalid_word:
        case errkind::invalid_input: kind = "invalid-input"; code = 2; break;
        case errkind::insufficient_depth: kind = "insufficient-depth"; code = 4; break;
        case errkind::precondition: kind = "precondition"; code = 4; break;
        case errkind::unsupported_threshold: kind = "unsupported-threshold"; code = 4; break;
        case errkind::regime: kind = "regime"; code = 4; break;
        case errkind::range: kind = "range"; code = 4; break;
        case errkind::size: kind = "size"; code = 4; break;
        default: kind = "internal"; code = 1; break;
        }
        std::cerr << "error(" << kind << "): " << e.what() << "\n";
        return code;
    } catch (const std::exception& e) {
        std::cerr << "error(internal): " << e.what() << "\n";
        return 1;
    }
}
