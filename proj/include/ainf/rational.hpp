#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace ainf {

using Rational = mpq_class;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(const std::string& what, std::size_t p) : std::runtime_error(what), pos(p) {}
};

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// accepts "n", "-n", "n/d"; rejects decimals on purpose
inline Rational parse_rational(std::string_view s) {
    std::size_t i = 0;
    auto digits = [&](std::size_t& at) {
        std::size_t b = at;
        while (at < s.size() && s[at] >= '0' && s[at] <= '9') ++at;
        return at > b;
    };
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (!digits(i)) throw ParseError("expected integer in fraction '" + std::string(s) + "'", i);
    if (i < s.size() && s[i] == '/') {
        ++i;
        if (!digits(i)) throw ParseError("expected denominator in fraction '" + std::string(s) + "'", i);
    }
    if (i != s.size()) throw ParseError("trailing characters in fraction '" + std::string(s) + "'", i);
    std::string body(s);
    if (!body.empty() && body[0] == '+') body.erase(0, 1);
    Rational r;
    if (r.set_str(body, 10) != 0) throw ParseError("bad fraction '" + std::string(s) + "'", 0);
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + std::string(s) + "'", 0);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

}  // namespace ainf
