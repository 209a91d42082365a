#ifndef NOVIKOV_NUMERIC_HPP
#define NOVIKOV_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

namespace novikov {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return den(q) == 1; }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

} // namespace novikov

#endif
