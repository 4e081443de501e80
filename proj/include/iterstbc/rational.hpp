#ifndef ITERSTBC_RATIONAL_HPP
#define ITERSTBC_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace iterstbc {

// Exact rational scalar. GMP keeps values canonical (lowest terms,
// positive denominator), which is the representation all higher layers
// assume when serializing.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Serialized as "p" or "p/q".
inline std::string rat_to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational literal: " + s);
    r.canonicalize();
    if (r.get_den() == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return r;
}

inline double rat_to_double(const Rational& r) { return r.get_d(); }

}  // namespace iterstbc

#endif
