#include "cf3/word.hpp"

#include "cf3/errors.hpp"

#include <cstdlib>

namespace cf3 {

void validate_word(const Word& w) {
    for (long a : w)
        if (a < 1) fail(errkind::invalid_word, "partial quotient < 1");
}

Word parse_word(const std::string& text) {
    // strict comma-separated fields: every field must be exactly "<n>" or
    // "<n>^<reps>" after trimming spaces, so typos like "1,,2" or "1 2" fail
    // loudly instead of silently dropping an entry
    Word w;
    auto read_long = [](const std::string& s, size_t& i, const char* what) -> long {
        size_t start = i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        size_t digits = i;
        while (i < s.size() && isdigit((unsigned char)s[i])) ++i;
        if (i == digits)
            fail(errkind::invalid_word, std::string("expected ") + what + " in word");
        return std::strtol(s.substr(start, i - start).c_str(), nullptr, 10);
    };
    size_t pos = 0;
    bool trailing = true;
    while (trailing) {
        size_t comma = text.find(',', pos);
        trailing = comma != std::string::npos;
        std::string field = text.substr(pos, trailing ? comma - pos : std::string::npos);
        pos = trailing ? comma + 1 : pos;
        size_t b = field.find_first_not_of(' ');
        if (b == std::string::npos) {
            if (!trailing && w.empty() && pos == 0) break; // wholly empty input
            fail(errkind::invalid_word, "empty entry in word");
        }
        field = field.substr(b, field.find_last_not_of(' ') - b + 1);
        size_t i = 0;
        long a = read_long(field, i, "quotient");
        long reps = 1;
        if (i < field.size() && field[i] == '^') {
            ++i;
            reps = read_long(field, i, "exponent");
            if (reps < 0) fail(errkind::invalid_word, "negative run length");
        }
        if (i != field.size())
            fail(errkind::invalid_word, "unexpected characters in word entry");
        for (long r = 0; r < reps; ++r) w.push_back(a);
    }
    if (w.empty()) fail(errkind::invalid_word, "empty word");
    validate_word(w);
    return w;
}

std::string format_word(const Word& w) {
    // emit run-length macro for runs of length >= 3 to keep long words readable
    std::string s;
    size_t i = 0;
    while (i < w.size()) {
        size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        size_t run = j - i;
        if (!s.empty()) s += ",";
        if (run >= 3)
            s += std::to_string(w[i]) + "^" + std::to_string(run);
        else
            for (size_t k = 0; k < run; ++k) s += (k ? "," : "") + std::to_string(w[i]);
        i = j;
    }
    return s;
}

convergent_table convergent_table::of(const Word& w) {
    validate_word(w);
    convergent_table t;
    size_t n = w.size();
    t.p.resize(n + 1);
    t.q.resize(n + 1);
    t.p[0] = 0;
    t.q[0] = 1;
    if (n >= 1) {
        t.p[1] = 1;
        t.q[1] = w[0];
    }
    for (size_t k = 2; k <= n; ++k) {
        t.p[k] = w[k - 1] * t.p[k - 1] + t.p[k - 2];
        t.q[k] = w[k - 1] * t.q[k - 1] + t.q[k - 2];
    }
    return t;
}

Rat convergent_table::value() const { return make_rat(p.back(), q.back()); }

Int convergent_table::det(size_t k) const {
    if (k < 1 || k >= p.size()) fail(errkind::range, "determinant index out of range");
    return p[k] * q[k - 1] - p[k - 1] * q[k];
}

std::pair<Int, Int> tail_denominators(const Word& w) {
    validate_word(w);
    Int qm1(1), qm2(0); // q_k, q_{k-1} rolling
    for (long a : w) {
        Int t = a * qm1 + qm2;
        qm2 = qm1;
        qm1 = t;
    }
    return {qm1, qm2};
}

rational_interval cylinder(const Word& w) {
    auto t = convergent_table::of(w);
    size_t n = t.order();
    Rat end1 = t.value();
    // [0; a_1..a_{n-1}, a_n + 1] = (p_n + p_{n-1}) / (q_n + q_{n-1})
    Rat end2 = make_rat(t.p[n] + t.p[n - 1], t.q[n] + t.q[n - 1]);
    rational_interval iv;
    if (end1 < end2) {
        iv.lo = end1;
        iv.hi = end2;
    } else {
        iv.lo = end2;
        iv.hi = end1;
    }
    return iv;
}

Rat cylinder_diameter(const Word& w) {
    auto [qn, qn1] = tail_denominators(w);
    return make_rat(Int(1), qn * (qn + qn1));
}

} // namespace cf3
