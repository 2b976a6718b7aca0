#pragma once

// Modular arithmetic over Z_N and its unit group for prime N.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "harmonic/error.hpp"

namespace harmonic {

namespace detail {

inline std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
}

inline std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t n) {
  std::uint64_t result = 1 % n;
  base %= n;
  while (exp != 0) {
    if (exp & 1U) result = mul_mod_u64(result, base, n);
    base = mul_mod_u64(base, base, n);
    exp >>= 1U;
  }
  return result;
}

}  // namespace detail

/// Deterministic primality test for all 64-bit inputs.
///
/// Trial division for small n, then Miller-Rabin with the first twelve prime
/// bases, which is exact below 3.3e24.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kBases) {
    if (n % p == 0) return n == p;
  }
  if (n < 37 * 37) return true;

  std::uint64_t odd = n - 1;
  int twos = 0;
  while ((odd & 1U) == 0) {
    odd >>= 1U;
    ++twos;
  }
  for (std::uint64_t a : kBases) {
    std::uint64_t x = detail::pow_mod_u64(a, odd, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < twos; ++r) {
      x = detail::mul_mod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// All positive divisors of n in increasing order.
inline std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n < 1) throw DomainError("divisors: n must be positive");
  std::vector<std::int64_t> low;
  std::vector<std::int64_t> high;
  for (std::int64_t k = 1; k * k <= n; ++k) {
    if (n % k != 0) continue;
    low.push_back(k);
    if (k != n / k) high.push_back(n / k);
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

/// Distinct prime factors of n (n >= 1), increasing.
inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// A prime N below 2^31 so that every product of two residues fits in 64 bits.
class PrimeModulus {
 public:
  static constexpr std::int64_t kMaxValue = (std::int64_t{1} << 31) - 1;

  explicit PrimeModulus(std::int64_t n) : n_(n) {
    if (n < 2 || n > kMaxValue || !is_prime(static_cast<std::uint64_t>(n))) {
      throw DomainError("N must be prime (got " + std::to_string(n) + ")");
    }
  }

  std::int64_t value() const noexcept { return n_; }
  std::int64_t units_order() const noexcept { return n_ - 1; }

  std::int64_t reduce(std::int64_t x) const noexcept {
    std::int64_t r = x % n_;
    return r < 0 ? r + n_ : r;
  }
  std::int64_t mul(std::int64_t a, std::int64_t b) const noexcept {
    return reduce(a) * reduce(b) % n_;
  }
  std::int64_t pow(std::int64_t base, std::int64_t exp) const noexcept {
    return static_cast<std::int64_t>(detail::pow_mod_u64(
        static_cast<std::uint64_t>(reduce(base)), static_cast<std::uint64_t>(exp),
        static_cast<std::uint64_t>(n_)));
  }
  /// Inverse of a unit (Fermat).
  std::int64_t inverse(std::int64_t unit) const {
    if (reduce(unit) == 0) throw InvalidUnitError("0 has no inverse mod N");
    return pow(unit, n_ - 2);
  }

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  std::int64_t n_;
};

/// Smallest c >= 1 with m^c = 1 (mod N).
inline std::int64_t multiplicative_order(std::int64_t m, const PrimeModulus& modulus) {
  const std::int64_t unit = modulus.reduce(m);
  if (unit == 0) throw InvalidUnitError("multiplicative_order: m = 0 mod N is not a unit");
  std::int64_t order = modulus.units_order();
  for (std::int64_t p : prime_factors(order)) {
    while (order % p == 0 && modulus.pow(unit, order / p) == 1) order /= p;
  }
  return order;
}

/// A generator of the cyclic group Z_N^x.
class PrimitiveRoot {
 public:
  PrimitiveRoot(std::int64_t g, const PrimeModulus& modulus) : g_(modulus.reduce(g)), modulus_(modulus) {
    if (g_ == 0 || multiplicative_order(g_, modulus_) != modulus_.units_order()) {
      throw DomainError(std::to_string(g) + " is not a primitive root mod " +
                        std::to_string(modulus.value()));
    }
  }

  std::int64_t value() const noexcept { return g_; }
  const PrimeModulus& modulus() const noexcept { return modulus_; }

  /// g^((N-1)/c): generator of the unique subgroup of order c.
  std::int64_t subgroup_generator(std::int64_t c) const {
    if (c < 1 || modulus_.units_order() % c != 0) throw DomainError("c must divide N-1");
    return modulus_.pow(g_, modulus_.units_order() / c);
  }

 private:
  std::int64_t g_;
  PrimeModulus modulus_;
};

/// The smallest primitive root mod N.
inline PrimitiveRoot find_primitive_root(const PrimeModulus& modulus) {
  const std::int64_t order = modulus.units_order();
  const auto factors = prime_factors(order);
  for (std::int64_t g = 1; g < modulus.value(); ++g) {
    bool generates = std::all_of(factors.begin(), factors.end(),
                                 [&](std::int64_t p) { return modulus.pow(g, order / p) != 1; });
    if (generates) return PrimitiveRoot(g, modulus);
  }
  throw ContractViolation("no primitive root found for a prime modulus");
}

/// The elements of the unique subgroup of Z_N^x of order c, sorted.
inline std::vector<std::int64_t> subgroup_of_order(std::int64_t c, const PrimeModulus& modulus) {
  const std::int64_t h = find_primitive_root(modulus).subgroup_generator(c);
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(c));
  std::int64_t x = 1;
  for (std::int64_t j = 0; j < c; ++j) {
    out.push_back(x);
    x = modulus.mul(x, h);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace harmonic
