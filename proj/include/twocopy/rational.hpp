#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace twocopy {

// Exact arbitrary-precision arithmetic. Every quantity in the toolkit that is
// not a plain machine count is carried as Int or Rat; nothing is ever rounded.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string rat_to_string(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += "/";
    s += denominator(r).str();
  }
  return s;
}

Rat parse_rational(const std::string& text);

}  // namespace twocopy
