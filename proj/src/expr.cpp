#include "cf3/expr.hpp"

#include "cf3/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace cf3 {

namespace {

struct parser {
    const std::string& s;
    size_t pos = 0;

    explicit parser(const std::string& text) : s(text) {}

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void bad(const std::string& what) {
        fail(errkind::invalid_input, "threshold expression: " + what + " at offset " +
                                         std::to_string(pos) + " of \"" + s + "\"");
    }

    Int integer() {
        skip();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) bad("expected an integer");
        return Int(s.substr(start, pos - start), 10); // explicit base: no octal
    }

    quad atom() {
        skip();
        if (eat('(')) {
            quad v = expr();
            if (!eat(')')) bad("expected ')'");
            return v;
        }
        if (s.compare(pos, 4, "sqrt") == 0) {
            pos += 4;
            if (!eat('(')) bad("expected '(' after sqrt");
            quad v = expr();
            if (!eat(')')) bad("expected ')'");
            if (!v.is_rational()) bad("sqrt argument must be an integer");
            Rat r = v.rat_value();
            if (r.get_den() != 1 || r < 0) bad("sqrt argument must be a nonnegative integer");
            return quad::sqrt_of_int(r.get_num());
        }
        if (std::isdigit(static_cast<unsigned char>(peek()))) return quad::of_rat(Rat(integer()));
        bad("expected a number, sqrt(...), or '('");
    }

    quad factor() {
        skip();
        if (eat('-')) return -factor();
        quad base = atom();
        if (eat('^')) {
            bool neg = eat('-');
            Int e = integer();
            if (!e.fits_ulong_p()) bad("exponent out of range");
            quad p = base.pow(e.get_ui());
            return neg ? p.recip() : p;
        }
        return base;
    }

    quad term() {
        quad v = factor();
        while (true) {
            if (eat('*'))
                v = v * factor();
            else if (eat('/'))
                v = v / factor();
            else
                return v;
        }
    }

    quad expr() {
        quad v = term();
        while (true) {
            if (eat('+'))
                v = v + term();
            else if (eat('-'))
                v = v - term();
            else
                return v;
        }
    }
};

} // namespace

quad parse_threshold(const std::string& text) {
    parser p(text);
    quad v = p.expr();
    p.skip();
    if (p.pos != text.size())
        fail(errkind::invalid_input,
             "threshold expression: trailing input at offset " + std::to_string(p.pos) +
                 " of \"" + text + "\"");
    return v;
}

Rat parse_rat_lit(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) fail(errkind::invalid_input, "empty rational literal");
    // decimal / scientific form
    if (t.find('.') != std::string::npos || t.find('e') != std::string::npos ||
        t.find('E') != std::string::npos) {
        size_t i = 0;
        bool neg = false;
        if (t[i] == '+' || t[i] == '-') neg = (t[i++] == '-');
        std::string digits;
        long frac = 0, expo = 0;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) digits.push_back(t[i++]);
        if (i < t.size() && t[i] == '.') {
            ++i;
            while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
                digits.push_back(t[i++]);
                ++frac;
            }
        }
        if (i < t.size() && (t[i] == 'e' || t[i] == 'E')) {
            ++i;
            bool eneg = false;
            if (i < t.size() && (t[i] == '+' || t[i] == '-')) eneg = (t[i++] == '-');
            std::string ed;
            while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ed.push_back(t[i++]);
            if (ed.empty() || ed.size() > 6) fail(errkind::invalid_input, "bad exponent in \"" + text + "\"");
            expo = std::stol(ed) * (eneg ? -1 : 1);
        }
        if (i != t.size() || digits.empty())
            fail(errkind::invalid_input, "bad rational literal \"" + text + "\"");
        Rat v{Int(digits, 10)}; // explicit base: no octal surprise on "025"
        long shift = expo - frac;
        if (shift > 0)
            v *= Rat(ipow(Int(10), (unsigned long)shift));
        else if (shift < 0)
            v /= Rat(ipow(Int(10), (unsigned long)(-shift)));
        v.canonicalize();
        return neg ? Rat(-v) : v;
    }
    return parse_rat(t);
}

gauge parse_gauge(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t == "logloginv") return gauge::logloginv();
    if (t == "factorial" || t == "paper:factorial") return gauge::factorial_example();
    if (t.rfind("pow:", 0) == 0) return gauge::power(parse_rat_lit(t.substr(4)));
    if (t.rfind("loginv:", 0) == 0) return gauge::loginv(parse_rat_lit(t.substr(7)));
    if (t.rfind("square:(", 0) == 0 && t.back() == ')')
        return gauge::square_of(parse_gauge(t.substr(8, t.size() - 9)));
    if (t.rfind("table:", 0) == 0) return load_table_csv(text.substr(text.find(':') + 1));
    fail(errkind::invalid_input, "unknown gauge \"" + text + "\" (expected pow:<s>, loginv:<c>, "
                                 "logloginv, factorial, square:(...), or table:<path.csv>)");
}

gauge load_table_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errkind::invalid_input, "cannot open gauge table \"" + path + "\"");
    std::vector<std::pair<Rat, Rat>> rows;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        size_t comma = line.find(',');
        if (comma == std::string::npos)
            fail(errkind::invalid_input,
                 "gauge table " + path + ":" + std::to_string(lineno) + ": expected \"epsilon,value\"");
        rows.emplace_back(parse_rat_lit(line.substr(0, comma)), parse_rat_lit(line.substr(comma + 1)));
    }
    return gauge::table(std::move(rows));
}

} // namespace cf3
