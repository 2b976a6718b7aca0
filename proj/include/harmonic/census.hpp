#pragma once

// Exact counts of orbits of d-subsets of Z_N, i.e. of inequivalent harmonic
// frames of N vectors in C^d, by stabilizer order.
//
// beta_c: number of subsets whose stabilizer has order exactly c
//         (the cumulative size of all orbits of size (N-1)/c).
// gamma_c: number of such orbits, c * beta_c / (N-1).
//
// For c > 1 a subset fixed by the order-c subgroup H is a union of H-cosets,
// optionally plus 0. Counting unions of q = d/c (or (d-1)/c) cosets and
// discarding those with a strictly larger stabilizer gives the recursion
// implemented in beta_table(). The independent alpha recursion is kept as a
// second route to the same numbers.

#include <cstdint>
#include <map>
#include <string>

#include "harmonic/bigint.hpp"
#include "harmonic/error.hpp"
#include "harmonic/number_theory.hpp"

namespace harmonic {

struct Census {
  PrimeModulus modulus;
  std::int64_t d = 0;
  std::map<std::int64_t, BigRational> beta;  // c > 1 only
  std::map<std::int64_t, BigInt> gamma;      // every admissible c, including 1
  BigInt total;

  std::int64_t orbit_size(std::int64_t c) const { return modulus.units_order() / c; }
};

namespace detail {

inline void check_dimension(const PrimeModulus& modulus, std::int64_t d) {
  if (d < 1 || d > modulus.value()) {
    throw DomainError("d must satisfy 1 <= d <= N (got d=" + std::to_string(d) + ")");
  }
}

/// c | N-1 and (c | d or c | d-1).
inline bool admissible(const PrimeModulus& modulus, std::int64_t d, std::int64_t c) {
  return c >= 1 && modulus.units_order() % c == 0 && (d % c == 0 || (d - 1) % c == 0);
}

/// d or d-1, whichever c divides (for c > 1 exactly one does).
inline std::int64_t blocked_count(std::int64_t d, std::int64_t c) { return d % c == 0 ? d : d - 1; }

/// Number of subsets of the form [n_1 H, ..., n_q H] (plus 0 in the d-1 case).
inline BigRational coset_union_count(const PrimeModulus& modulus, std::int64_t c, std::int64_t q) {
  BigInt numerator = 1;
  BigInt denominator = 1;
  for (std::int64_t j = 0; j < q; ++j) {
    numerator *= modulus.units_order() - j * c;
    denominator *= c;
    denominator *= j + 1;
  }
  return BigRational(numerator, denominator);
}

/// beta_c for every admissible c > 1, computed from the largest c down.
inline std::map<std::int64_t, BigRational> beta_table(const PrimeModulus& modulus, std::int64_t d) {
  std::map<std::int64_t, BigRational> beta;
  const auto divs = divisors(modulus.units_order());
  for (auto it = divs.rbegin(); it != divs.rend(); ++it) {
    const std::int64_t c = *it;
    if (c == 1 || !admissible(modulus, d, c)) continue;
    const std::int64_t target = blocked_count(d, c);
    BigRational value = coset_union_count(modulus, c, target / c);
    // Subsets with a strictly larger stabilizer b (c | b, b | target). Any b
    // not dividing N-1 has no unit of that order and contributes nothing.
    for (const auto& [b, beta_b] : beta) {
      if (b > c && b % c == 0 && target % b == 0) value -= beta_b;
    }
    beta.emplace(c, value);
  }
  return beta;
}

}  // namespace detail

/// Full census for 1 <= d <= N. The degenerate d = 1 and d = N cases fall out
/// of the same recursion (with every c dividing d - 1 = 0 admissible).
inline Census compute_census(const PrimeModulus& modulus, std::int64_t d) {
  detail::check_dimension(modulus, d);
  Census out{modulus, d, detail::beta_table(modulus, d), {}, 0};
  const std::int64_t units = modulus.units_order();

  BigRational gamma_one = BigRational(binomial(modulus.value(), d), units);
  for (const auto& [c, beta_c] : out.beta) {
    const BigRational gamma_c = BigRational(c) * beta_c / units;
    if (!is_integral(gamma_c) || gamma_c < 0) {
      throw ContractViolation("gamma_" + std::to_string(c) + " = " + to_decimal(gamma_c) +
                              " is not a nonnegative integer");
    }
    out.gamma.emplace(c, boost::multiprecision::numerator(gamma_c));
    gamma_one -= gamma_c / c;
  }
  if (!is_integral(gamma_one) || gamma_one < 0) {
    throw ContractViolation("gamma_1 = " + to_decimal(gamma_one) + " is not a nonnegative integer");
  }
  out.gamma.emplace(1, boost::multiprecision::numerator(gamma_one));
  for (const auto& [c, g] : out.gamma) out.total += g;
  return out;
}

/// beta_c for a single admissible c > 1.
inline BigRational beta(const PrimeModulus& modulus, std::int64_t d, std::int64_t c) {
  detail::check_dimension(modulus, d);
  if (c <= 1 || !detail::admissible(modulus, d, c)) {
    throw DomainError("beta requires c > 1, c | N-1 and (c | d or c | d-1)");
  }
  return detail::beta_table(modulus, d).at(c);
}

/// gamma_c: the number of orbits of size (N-1)/c.
inline BigInt gamma(const PrimeModulus& modulus, std::int64_t d, std::int64_t c) {
  detail::check_dimension(modulus, d);
  if (!detail::admissible(modulus, d, c)) {
    throw DomainError("gamma requires c | N-1 and (c | d or c | d-1)");
  }
  return compute_census(modulus, d).gamma.at(c);
}

/// Number of inequivalent harmonic frames of N vectors for C^d.
inline BigInt count_harmonic_frames(const PrimeModulus& modulus, std::int64_t d) {
  detail::check_dimension(modulus, d);
  if (d == 1) return 2;  // the orbits of [0] and [1]
  if (d == modulus.value()) return 1;
  return compute_census(modulus, d).total;
}

/// Second route to gamma_c, written from the alpha recursion:
///   alpha_c = prod_{j=1}^{q-1} (N-1-jc) / (c^(q-1) q!)
///             - c/(N-1) * sum_{c<b<N, c|b, b|qc} (N-1)/b * alpha_b
///   alpha_1 = C(N,d)/(N-1) - sum_{c>1, c|d} alpha_c/c - sum_{c>1, c|d-1} alpha_c/c
/// with alpha_b = 0 whenever b does not divide N-1. Needs d >= 2: at d = 1
/// the empty product (q = 0) no longer counts the single subset [0].
inline std::map<std::int64_t, BigRational> alpha_coefficients(const PrimeModulus& modulus, std::int64_t d) {
  detail::check_dimension(modulus, d);
  if (d < 2) throw DomainError("alpha_coefficients requires d >= 2");
  const std::int64_t n = modulus.value();
  const std::int64_t units = n - 1;
  std::map<std::int64_t, BigRational> alpha;

  auto value_of = [&](std::int64_t b) -> BigRational {
    auto it = alpha.find(b);
    return it == alpha.end() ? BigRational(0) : it->second;
  };

  for (std::int64_t c = units; c >= 2; --c) {
    if (units % c != 0) continue;
    const bool divides_d = d % c == 0;
    const bool divides_d_minus_1 = (d - 1) % c == 0;
    if (!divides_d && !divides_d_minus_1) continue;
    const std::int64_t target = divides_d ? d : d - 1;
    const std::int64_t q = target / c;

    BigRational leading = 1;
    for (std::int64_t j = 1; j <= q - 1; ++j) leading *= units - j * c;
    for (std::int64_t j = 1; j <= q - 1; ++j) leading /= c;
    for (std::int64_t j = 2; j <= q; ++j) leading /= j;

    BigRational correction = 0;
    for (std::int64_t b = c + 1; b < n; ++b) {
      if (b % c == 0 && target % b == 0) correction += BigRational(units, b) * value_of(b);
    }
    alpha[c] = leading - BigRational(c, units) * correction;
  }

  BigRational alpha_one = BigRational(binomial(n, d), units);
  for (std::int64_t c = 2; c < n; ++c) {
    if (d % c == 0) alpha_one -= value_of(c) / c;
    if ((d - 1) % c == 0) alpha_one -= value_of(c) / c;
  }
  alpha[1] = alpha_one;
  return alpha;
}

/// Orbits of Z_N^x on ordered d-tuples of distinct residues.
inline BigInt count_unordered_dft(const PrimeModulus& modulus, std::int64_t d) {
  detail::check_dimension(modulus, d);
  const std::int64_t n = modulus.value();
  if (d == 1 || (d == 2 && n == 2)) return 2;

  BigInt product = n;  // N (N-2) (N-3) ... (N-d+1)
  for (std::int64_t j = 2; j <= d - 1; ++j) product *= n - j;

  BigInt falling = 1;  // N! / (N-d)!
  for (std::int64_t j = 0; j < d; ++j) falling *= n - j;
  if (falling % (n - 1) != 0 || falling / (n - 1) != product) {
    throw ContractViolation("unordered DFT count: product and factorial forms disagree");
  }
  return product;
}

/// count_harmonic_frames / (N^(d-1) / d!).
inline double growth_ratio(const PrimeModulus& modulus, std::int64_t d) {
  if (d <= 1 || d >= modulus.value()) throw DomainError("growth_ratio requires 1 < d < N");
  BigInt factorial = 1;
  BigInt power = 1;
  for (std::int64_t j = 2; j <= d; ++j) factorial *= j;
  for (std::int64_t j = 1; j <= d - 1; ++j) power *= modulus.value();
  const BigRational ratio(count_harmonic_frames(modulus, d) * factorial, power);
  return ratio.convert_to<double>();
}

}  // namespace harmonic
