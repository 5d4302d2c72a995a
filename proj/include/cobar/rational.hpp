#pragma once

// Exact rational scalars. All arithmetic in the library is over Q; no
// floating point appears anywhere. Values are kept in canonical form
// (gcd(num, den) = 1, den > 0) by the GMP backend.

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace cobar {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parse "p", "-p" or "p/q" into a canonical rational.
inline Rational parse_rational(const std::string& text) {
    if (text.empty())
        throw std::invalid_argument("parse_rational: empty string");
    std::size_t pos = 0;
    if (text[0] == '+' || text[0] == '-')
        pos = 1;
    if (pos == text.size())
        throw std::invalid_argument("parse_rational: bad rational '" + text + "'");
    for (std::size_t i = pos; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch == '/') {
            if (i == pos || i + 1 == text.size())
                throw std::invalid_argument("parse_rational: bad rational '" + text + "'");
            continue;
        }
        if (ch < '0' || ch > '9')
            throw std::invalid_argument("parse_rational: bad rational '" + text + "'");
    }
    Rational value(text);
    if (denominator(value) == 0)
        throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
    // The string constructor stores digits verbatim; normalize to gcd = 1, den > 0.
    mpq_canonicalize(value.backend().data());
    return value;
}

inline std::string rational_to_string(const Rational& value) { return value.str(); }

}  // namespace cobar
