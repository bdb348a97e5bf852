#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace epw {

using Rational = mpq_class;
using Integer = mpz_class;

/** Canonical text form: "p" for integers, "p/q" otherwise, always lowest terms. */
inline std::string to_string(const Rational& r)
{
    return r.get_str();
}

inline std::string to_string(const Integer& z)
{
    return z.get_str();
}

inline Rational parse_rational(const std::string& text)
{
    if (text.empty())
        throw std::invalid_argument("empty rational literal");
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size())
        throw std::invalid_argument("malformed rational literal '" + text + "'");
    bool slash = false;
    for (std::size_t i = start; i < text.size(); ++i) {
        char c = text[i];
        if (c == '/') {
            if (slash || i == start || i + 1 == text.size())
                throw std::invalid_argument("malformed rational literal '" + text + "'");
            slash = true;
        } else if (c < '0' || c > '9') {
            throw std::invalid_argument("malformed rational literal '" + text + "'");
        }
    }
    std::string body = text[0] == '+' ? text.substr(1) : text;
    Rational r;
    if (r.set_str(body, 10) != 0)
        throw std::invalid_argument("malformed rational literal '" + text + "'");
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r)
{
    return r.get_den() == 1;
}

inline int sign(const Rational& r)
{
    return sgn(r);
}

/** Floor of a rational as an integer. */
inline Integer floor_int(const Rational& r)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

/** Representative of r modulo m in [0, m). */
inline Rational mod_rational(const Rational& r, const Rational& m)
{
    Rational q = r / m;
    return r - m * Rational(floor_int(q));
}

} // namespace epw
