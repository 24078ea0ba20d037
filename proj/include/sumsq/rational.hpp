#ifndef SUMSQ_RATIONAL_HPP
#define SUMSQ_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace sumsq {

// Exact rational arithmetic for probabilities, waste accounting and the LP
// solver. GMP keeps every zero test exact.
using Rational = mpq_class;
using Integer = mpz_class;

// mpq_class(num, den) leaves values uncanonicalized, which breaks GMP
// comparisons; build ratios through this instead.
inline Rational ratio(Integer num, Integer den) {
    Rational q(std::move(num), std::move(den));
    q.canonicalize();
    return q;
}

inline Rational ratio(long num, long den) { return ratio(Integer(num), Integer(den)); }

// Parses "num/den", "num" or a decimal-free integer string. Throws on
// malformed input or zero denominator.
inline Rational parse_rational(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0) {
        throw std::invalid_argument("bad rational: '" + text + "'");
    }
    if (q.get_den() == 0) {
        throw std::invalid_argument("zero denominator: '" + text + "'");
    }
    q.canonicalize();
    return q;
}

// Canonical "num/den" form; integers render without the "/1".
inline std::string format_rational(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace sumsq

#endif
