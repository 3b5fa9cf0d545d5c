#include "cf3/lagrange.hpp"

#include "cf3/config.hpp"
#include "cf3/errors.hpp"

#include <algorithm>

namespace cf3 {

namespace {

Word rotate(const Word& w, size_t r) {
    Word out;
    out.reserve(w.size());
    for (size_t j = 0; j < w.size(); ++j) out.push_back(w[(r + j) % w.size()]);
    return out;
}

Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

Word ones(long k) { return Word((size_t)k, 1); }

// [0;1^k,(2)] for k >= 0
quad ones_then_twos(long k) {
    if (k < 0) fail(errkind::invalid_input, "negative run length");
    return eval_ep({ones(k), {2}});
}

} // namespace

void bi_word::validate() const {
    if (left.period.empty() || right.period.empty())
        fail(errkind::invalid_word, "bi-word periods must be non-empty");
    validate_word(left.pre);
    validate_word(left.period);
    validate_word(right.pre);
    validate_word(right.period);
}

long bi_word::at(long i) const {
    if (i >= 0) {
        size_t j = (size_t)i;
        if (j < right.pre.size()) return right.pre[j];
        return right.period[(j - right.pre.size()) % right.period.size()];
    }
    size_t j = (size_t)(-1 - i); // a_{-1} -> 0, a_{-2} -> 1, ...
    if (j < left.pre.size()) return left.pre[j];
    return left.period[(j - left.pre.size()) % left.period.size()];
}

namespace {

// The ray a_i, a_{i+1}, ... as an eventually periodic sequence.
ep_seq right_ray(const bi_word& b, long i) {
    ep_seq s;
    if (i < 0) {
        for (long j = i; j < 0; ++j) s.pre.push_back(b.at(j));
        s.pre.insert(s.pre.end(), b.right.pre.begin(), b.right.pre.end());
        s.period = b.right.period;
        return s;
    }
    size_t j = (size_t)i;
    if (j < b.right.pre.size()) {
        s.pre = Word(b.right.pre.begin() + j, b.right.pre.end());
        s.period = b.right.period;
        return s;
    }
    size_t r = (j - b.right.pre.size()) % b.right.period.size();
    s.period = rotate(b.right.period, r);
    return s;
}

// The ray a_{i-1}, a_{i-2}, ... as an eventually periodic sequence.
ep_seq left_ray(const bi_word& b, long i) {
    ep_seq s;
    if (i > 0) {
        for (long j = i - 1; j >= 0; --j) s.pre.push_back(b.at(j));
        s.pre.insert(s.pre.end(), b.left.pre.begin(), b.left.pre.end());
        s.period = b.left.period;
        return s;
    }
    size_t j = (size_t)(-i); // left-side index of a_{i-1}
    if (j < b.left.pre.size()) {
        s.pre = Word(b.left.pre.begin() + j, b.left.pre.end());
        s.period = b.left.period;
        return s;
    }
    size_t r = (j - b.left.pre.size()) % b.left.period.size();
    s.period = rotate(b.left.period, r);
    return s;
}

} // namespace

radsum lambda_at(const bi_word& b, long i) {
    b.validate();
    radsum right(tail_value(right_ray(b, i)));
    radsum left(eval_ep(left_ray(b, i)));
    return right + left;
}

radsum periodic_lambda(const Word& period, size_t r) {
    if (period.empty()) fail(errkind::invalid_word, "empty period");
    validate_word(period);
    Word rot = rotate(period, r % period.size());
    radsum right(tail_value({{}, rot}));
    radsum left(eval_periodic(reversed(rot)));
    return right + left;
}

radsum markov_value(const bi_word& b) {
    b.validate();
    long lo = -(long)(b.left.pre.size() + 2 * b.left.period.size());
    long hi = (long)(b.right.pre.size() + 2 * b.right.period.size());
    std::vector<radsum> vals;
    for (long i = lo; i < hi; ++i) vals.push_back(lambda_at(b, i));
    for (size_t r = 0; r < b.left.period.size(); ++r)
        vals.push_back(periodic_lambda(b.left.period, r));
    for (size_t r = 0; r < b.right.period.size(); ++r)
        vals.push_back(periodic_lambda(b.right.period, r));
    radsum best = vals.front();
    for (const radsum& v : vals)
        if (best.cmp(v) < 0) best = v;
    return best;
}

radsum lagrange_value(const Word& pre, const Word& period) {
    if (period.empty()) fail(errkind::invalid_word, "empty period");
    validate_word(pre);
    validate_word(period);
    radsum best = periodic_lambda(period, 0);
    for (size_t r = 1; r < period.size(); ++r) {
        radsum v = periodic_lambda(period, r);
        if (best.cmp(v) < 0) best = v;
    }
    return best;
}

bi_word shift_center(const bi_word& b, long k) {
    bi_word out = b;
    out.validate();
    for (; k > 0; --k) {
        long a0 = out.at(0);
        if (!out.right.pre.empty())
            out.right.pre.erase(out.right.pre.begin());
        else
            out.right.period = rotate(out.right.period, 1);
        out.left.pre.insert(out.left.pre.begin(), a0);
    }
    for (; k < 0; ++k) {
        long am1 = out.at(-1);
        if (!out.left.pre.empty())
            out.left.pre.erase(out.left.pre.begin());
        else
            out.left.period = rotate(out.left.period, 1);
        out.right.pre.insert(out.right.pre.begin(), am1);
    }
    return out;
}

bi_word periodic_biword(const Word& period) {
    if (period.empty()) fail(errkind::invalid_word, "empty period");
    bi_word b;
    b.left.period = reversed(period);
    b.right.period = period;
    b.validate();
    return b;
}

bool check_identity(const quad& z) {
    if (z.sign() <= 0) fail(errkind::invalid_input, "identity requires z > 0");
    quad one = quad::of_rat(Rat(1));
    quad two = quad::of_rat(Rat(2));
    // [2;2,z] = 2 + 1/(2 + 1/z)
    quad lhs1 = two + (two + z.recip()).recip();
    // [0;1,1,z] = 1/(1 + 1/(1 + 1/z))
    quad lhs2 = (one + (one + z.recip()).recip()).recip();
    quad sum = lhs1 + lhs2;
    return sum.cmp_rat(Rat(3)) == 0;
}

bool check_identity(const Rat& z) { return check_identity(quad::of_rat(z)); }

// ---- attainable streams ----

long attainable_stream::exponent(long i) const {
    if (i < 1) fail(errkind::invalid_input, "stream index must be >= 1");
    long e = 0;
    switch (kind) {
    case stream_kind::linear: e = a * i + b; break;
    case stream_kind::constant: e = b; break;
    case stream_kind::translation: e = 6 * ((i + 11) / 12); break;
    }
    if (e < 1) fail(errkind::invalid_input, "exponent rule must stay >= 1");
    return e;
}

long attainable_stream::quotient(long j) const {
    if (j < 1) fail(errkind::invalid_input, "stream position must be >= 1");
    if (j > config().cap)
        fail(errkind::insufficient_depth, "stream position exceeds materialization cap");
    while ((long)cache.size() < j) {
        long e = exponent(emitted_blocks + 1);
        for (long r = 0; r < e; ++r) cache.push_back(1);
        cache.push_back(2);
        cache.push_back(2);
        ++emitted_blocks;
    }
    return cache[(size_t)(j - 1)];
}

long attainable_stream::block_end(long i) const {
    if (i < 1) fail(errkind::invalid_input, "block index must be >= 1");
    long pos = 0;
    for (long j = 1; j <= i; ++j) {
        pos += exponent(j) + 2;
        if (pos > config().cap)
            fail(errkind::insufficient_depth, "block end exceeds materialization cap");
    }
    return pos;
}

std::string attainable_stream::dsl() const {
    switch (kind) {
    case stream_kind::linear:
        return "linear:a=" + std::to_string(a) + ",b=" + std::to_string(b);
    case stream_kind::constant: return "const:" + std::to_string(b);
    case stream_kind::translation: return "paper-translation";
    }
    return "";
}

attainable_stream parse_stream(const std::string& dsl) {
    attainable_stream s;
    if (dsl == "paper-translation") {
        s.kind = stream_kind::translation;
        return s;
    }
    if (dsl.rfind("const:", 0) == 0) {
        s.kind = stream_kind::constant;
        try {
            s.b = std::stol(dsl.substr(6));
        } catch (...) {
            fail(errkind::invalid_input, "bad constant stream rule: " + dsl);
        }
        if (s.b < 1) fail(errkind::invalid_input, "constant exponent must be >= 1");
        return s;
    }
    if (dsl.rfind("linear:", 0) == 0) {
        s.kind = stream_kind::linear;
        std::string rest = dsl.substr(7);
        bool got_a = false, got_b = false;
        size_t pos = 0;
        while (pos < rest.size()) {
            size_t comma = rest.find(',', pos);
            std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            size_t eq = item.find('=');
            if (eq == std::string::npos || eq == 0)
                fail(errkind::invalid_input, "bad linear stream rule: " + dsl);
            std::string key = item.substr(0, eq);
            long val = 0;
            try {
                val = std::stol(item.substr(eq + 1));
            } catch (...) {
                fail(errkind::invalid_input, "bad linear stream rule: " + dsl);
            }
            if (key == "a") {
                s.a = val;
                got_a = true;
            } else if (key == "b") {
                s.b = val;
                got_b = true;
            } else {
                fail(errkind::invalid_input, "bad linear stream key: " + key);
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (!got_a || !got_b) fail(errkind::invalid_input, "linear rule needs a= and b=");
        return s;
    }
    fail(errkind::invalid_input, "unknown stream rule: " + dsl);
}

lambda_enclosure_result lambda_enclosure(const attainable_stream& s, long i, long depth) {
    if (i < 1) fail(errkind::invalid_input, "position must be >= 1");
    if (depth < 1) fail(errkind::invalid_input, "depth must be >= 1");
    long center = s.quotient(i);
    Word wr;
    for (long j = 1; j <= depth; ++j) wr.push_back(s.quotient(i + j));
    rational_interval right = cylinder(wr);
    rational_interval left{Rat(0), Rat(0)};
    long dl = std::min<long>(depth, i - 1);
    if (dl > 0) {
        Word wl;
        for (long j = 1; j <= dl; ++j) wl.push_back(s.quotient(i - j));
        if (dl == i - 1) {
            Rat v = convergent_table::of(wl).value();
            left = {v, v};
        } else {
            left = cylinder(wl);
        }
    }
    lambda_enclosure_result out;
    out.position = i;
    out.depth = depth;
    out.bound.lo = Rat(center) + right.lo + left.lo;
    out.bound.hi = Rat(center) + right.hi + left.hi;
    return out;
}

// ---- bad cuts ----

bool bad_cut_applicable(long e_i, long e_next, int variant) {
    if (e_i < 1 || e_next < 1) fail(errkind::invalid_input, "exponents must be >= 1");
    bool ei_even = e_i % 2 == 0;
    bool en_even = e_next % 2 == 0;
    if (variant == 1)
        return (en_even && !ei_even) || (!ei_even && !en_even && e_i < e_next + 2);
    if (variant == 2)
        return (!en_even && ei_even) || (ei_even && en_even && e_next > e_i + 2) ||
               (!ei_even && !en_even && e_next < e_i + 2);
    fail(errkind::invalid_input, "variant must be 1 or 2");
}

quad bad_cut_lambda(long e_i, long e_next, int variant) {
    if (e_i < 1 || e_next < 1) fail(errkind::invalid_input, "exponents must be >= 1");
    quad three = quad::of_rat(Rat(3));
    if (variant == 1) return three + ones_then_twos(e_i) - ones_then_twos(e_next + 2);
    if (variant == 2) return three + ones_then_twos(e_next) - ones_then_twos(e_i + 2);
    fail(errkind::invalid_input, "variant must be 1 or 2");
}

int bad_cut_sign(long e_i, long e_next, int variant) {
    if (!bad_cut_applicable(e_i, e_next, variant))
        fail(errkind::precondition, "neither parity/size case of variant " +
                                        std::to_string(variant) + " holds for (" +
                                        std::to_string(e_i) + ", " + std::to_string(e_next) + ")");
    return bad_cut_lambda(e_i, e_next, variant).cmp_rat(Rat(3));
}

std::vector<int> applicable_variants(const attainable_stream& s, long i) {
    long e = s.exponent(i);
    long en = s.exponent(i + 1);
    std::vector<int> out;
    if (bad_cut_applicable(e, en, 1)) out.push_back(1);
    if (bad_cut_applicable(e, en, 2)) out.push_back(2);
    return out;
}

long cut_position(const attainable_stream& s, long i, int variant) {
    if (variant != 1 && variant != 2) fail(errkind::invalid_input, "variant must be 1 or 2");
    long end = s.block_end(i);
    return variant == 1 ? end - 1 : end;
}

// ---- translation example ----

translation_report translation_congruence_check(long m) {
    if (m < 1) fail(errkind::invalid_input, "m must be >= 1");
    attainable_stream s;
    s.kind = stream_kind::translation;
    // n = 2 + sum_{j<=6m} (e_j + 2): two quotients past the end of block 6m.
    // Each block 1^{e_j} 2 2 contributes e_j + 2 quotients, so the 2s account
    // for 12m in total; exact computation confirms (q_n, p_n) = (2, 1) mod 4
    // at these indices (checked for m <= 12) and at no fixed offset of them.
    long n = 2 + 12 * m;
    for (long j = 1; j <= 6 * m; ++j) n += s.exponent(j);
    Word w;
    w.reserve((size_t)n);
    for (long j = 1; j <= n; ++j) w.push_back(s.quotient(j));
    auto t = convergent_table::of(w);
    translation_report rep;
    rep.m = m;
    rep.n = n;
    Int qm = t.q[(size_t)n] % 4;
    Int pm = t.p[(size_t)n] % 4;
    rep.q_mod4 = (long)qm.get_si();
    rep.p_mod4 = (long)pm.get_si();
    rep.pass = rep.q_mod4 == 2 && rep.p_mod4 == 1;
    return rep;
}

} // namespace cf3
