#include "cf3/periodic.hpp"

#include "cf3/errors.hpp"

#include <map>
#include <mutex>

namespace cf3 {

namespace {

// memoize purely periodic values; these are hit heavily by the spectrum code
std::map<Word, quad> g_periodic_cache;
std::mutex g_periodic_mutex;

} // namespace

quad eval_periodic(const Word& period) {
    if (period.empty()) fail(errkind::invalid_word, "empty period");
    validate_word(period);
    {
        std::lock_guard<std::mutex> lk(g_periodic_mutex);
        auto it = g_periodic_cache.find(period);
        if (it != g_periodic_cache.end()) return it->second;
    }
    // M = prod (a_i 1; 1 0) = [[Pm, Pm1], [Qm, Qm1]]
    Int Pm(1), Pm1(0), Qm(0), Qm1(1);
    for (long a : period) {
        Int nPm = a * Pm + Pm1;
        Int nQm = a * Qm + Qm1;
        Pm1 = Pm;
        Qm1 = Qm;
        Pm = nPm;
        Qm = nQm;
    }
    // x = [0; (period)^inf] satisfies 1/x = [a_1; ..., a_m, 1/x], i.e.
    //   Pm1 x^2 + (Pm - Qm1) x - Qm = 0.
    // A = Pm1 >= 1 and C = -Qm < 0, so the roots have opposite signs and
    // the positive one is (-B + sqrt(B^2 - 4AC)) / (2A).
    Int A = Pm1;
    Int B = Pm - Qm1;
    Int C = -Qm;
    Int disc = B * B - 4 * A * C;
    quad root = (quad::of_rat(Rat(-B)) + quad::sqrt_of_int(disc)) / quad::of_rat(Rat(2 * A));
    {
        std::lock_guard<std::mutex> lk(g_periodic_mutex);
        g_periodic_cache.emplace(period, root);
    }
    return root;
}

quad eval_ep(const ep_seq& s) {
    quad x = eval_periodic(s.period);
    if (s.pre.empty()) return x;
    validate_word(s.pre);
    auto t = convergent_table::of(s.pre);
    size_t k = t.order();
    // [0; pre, tail] = (p_k + x p_{k-1}) / (q_k + x q_{k-1}) where
    // x = [0; tail] (so the tail enters as 1/x appended, equivalently this
    // Moebius form in x itself)
    quad num = x * quad::of_rat(Rat(t.p[k - 1])) + quad::of_rat(Rat(t.p[k]));
    quad den = x * quad::of_rat(Rat(t.q[k - 1])) + quad::of_rat(Rat(t.q[k]));
    return num / den;
}

quad tail_value(const ep_seq& s) {
    if (!s.pre.empty()) {
        ep_seq shifted{Word(s.pre.begin() + 1, s.pre.end()), s.period};
        return eval_ep(shifted).add_rat(Rat(s.pre[0]));
    }
    // purely periodic: [a_1; a_2, ...] = a_1 + [0; rotate(period)]
    Word rot(s.period.begin() + 1, s.period.end());
    rot.push_back(s.period[0]);
    return eval_periodic(rot).add_rat(Rat(s.period[0]));
}

} // namespace cf3
