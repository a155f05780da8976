#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace boost {

// Boost 1.74's mixed rational/integer operator== recurses forever once C++20
// adds reversed candidates. Exact non-template overloads win resolution.
inline bool operator==(const rational<std::int64_t>& a, int b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) {
  return a.denominator() == 1 && a.numerator() == b;
}

}  // namespace boost

namespace chromatope {

using Rational = boost::rational<std::int64_t>;
using RationalPoint = std::vector<Rational>;

/// Formats as "p/q" with q > 0, always including the denominator.
std::string to_string(const Rational& r);

/// Parses "p/q" or "p". Throws InvalidArgument on malformed input.
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

/// base^exp with overflow detection (throws InvalidArgument).
std::int64_t checked_pow(std::int64_t base, int exp);

/// Rank of a set of rational row vectors, by exact Gaussian elimination.
std::size_t rank(std::vector<RationalPoint> rows);

/// Basis of { x : row . x = 0 for every row }, exact.
std::vector<RationalPoint> nullspace(std::vector<RationalPoint> rows, std::size_t columns);

}  // namespace chromatope
