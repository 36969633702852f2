#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace seatplan {

// Exact rational arithmetic everywhere. Valuations, positions, utilities and
// thresholds are never represented in floating point.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("rational denominator must be positive");
  return Rational(num, den);
}

// Parses "n" or "n/d". Used by the CLI for thresholds and epsilons.
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(BigInt(text));
  BigInt num(text.substr(0, slash));
  BigInt den(text.substr(slash + 1));
  if (den <= 0) throw std::invalid_argument("rational denominator must be positive");
  return Rational(num, den);
}

inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace seatplan
