#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace sdclab {

/// Exact rational scalar. GMP keeps every value reduced with a positive
/// denominator, which is the representation contract for the whole library:
/// no floating point anywhere.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "num" or "num/den". Throws on zero denominators or garbage.
Rational rat_from_string(const std::string& text);

/// Always renders as "num/den", e.g. "3/1", "-1/2".
std::string rat_to_string(const Rational& q);

using Vec = std::vector<Rational>;

Vec vec_zero(std::size_t n);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Rational& c, const Vec& a);
bool vec_is_zero(const Vec& a);

}  // namespace sdclab
