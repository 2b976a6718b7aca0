#pragma once

#include <algorithm>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace harmonic {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt out = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

inline bool is_integral(const BigRational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

inline std::string to_decimal(const BigInt& x) { return x.str(); }

/// "p" for integers, "p/q" otherwise.
inline std::string to_decimal(const BigRational& q) {
  if (is_integral(q)) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

}  // namespace harmonic
