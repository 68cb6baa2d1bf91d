#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace convolab {

/// Exact rational in lowest terms with positive denominator.
using Rational = mpq_class;

/// Accepts "p/q" or an integer string. Throws Error(ParseError) on anything else,
/// including a zero denominator.
Rational parse_rational(std::string_view text);

/// Renders as "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& q);

/// Best rational approximation with denominator <= max_den (continued fractions).
Rational rationalize(double value, long max_den);

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace convolab
