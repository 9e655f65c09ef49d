#pragma once

#include <gmpxx.h>

#include <string>

namespace spread {

// Exact rational arithmetic is used everywhere outside the Monte Carlo
// estimation path. mpq_class keeps values canonical (lowest terms,
// positive denominator) after every operation.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Parses "num" or "num/den". Throws std::invalid_argument on garbage.
Rational rat_parse(const std::string& text);

// Canonical text form: "num" when den == 1, else "num/den".
std::string rat_str(const Rational& q);

double rat_double(const Rational& q);

}  // namespace spread
