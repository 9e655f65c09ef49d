#include "spread/rational.hpp"

#include <stdexcept>

namespace spread {

Rational rat_parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  try {
    Rational q(text);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad rational literal: '" + text + "'");
  }
}

std::string rat_str(const Rational& q) { return q.get_str(); }

double rat_double(const Rational& q) { return q.get_d(); }

}  // namespace spread
