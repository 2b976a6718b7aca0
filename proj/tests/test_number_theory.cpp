#include <gtest/gtest.h>

#include "harmonic/number_theory.hpp"
#include "oracles.hpp"

using namespace harmonic;

TEST(IsPrime, SmallValues) {
  EXPECT_TRUE(is_prime(7));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
  EXPECT_FALSE(is_prime(0));
  EXPECT_TRUE(is_prime(2));
}

TEST(IsPrime, AgreesWithTrialDivision) {
  for (std::int64_t n = 0; n < 20000; ++n) {
    ASSERT_EQ(is_prime(static_cast<std::uint64_t>(n)), oracle::is_prime(n)) << n;
  }
}

TEST(IsPrime, LargeCarmichaelAndPrimes) {
  EXPECT_FALSE(is_prime(561));
  EXPECT_FALSE(is_prime(3215031751ULL));
  EXPECT_TRUE(is_prime(2147483647ULL));
  EXPECT_TRUE(is_prime(18446744073709551557ULL));
}

TEST(Divisors, Examples) {
  EXPECT_EQ(divisors(1), (std::vector<std::int64_t>{1}));
  EXPECT_EQ(divisors(12), (std::vector<std::int64_t>{1, 2, 3, 4, 6, 12}));
  EXPECT_EQ(divisors(7), (std::vector<std::int64_t>{1, 7}));
  EXPECT_EQ(divisors(36), (std::vector<std::int64_t>{1, 2, 3, 4, 6, 9, 12, 18, 36}));
}

TEST(Divisors, AgreesWithTrialDivision) {
  for (std::int64_t n = 1; n < 500; ++n) {
    std::vector<std::int64_t> expected;
    for (std::int64_t k = 1; k <= n; ++k) {
      if (n % k == 0) expected.push_back(k);
    }
    ASSERT_EQ(divisors(n), expected) << n;
  }
}

TEST(PrimeModulus, RejectsComposite) {
  EXPECT_THROW(PrimeModulus(9), DomainError);
  EXPECT_THROW(PrimeModulus(1), DomainError);
  EXPECT_THROW(PrimeModulus(0), DomainError);
  EXPECT_THROW(PrimeModulus(-7), DomainError);
  try {
    PrimeModulus bad(9);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("N must be prime"), std::string::npos);
  }
}

TEST(PrimeModulus, Arithmetic) {
  const PrimeModulus p(7);
  EXPECT_EQ(p.value(), 7);
  EXPECT_EQ(p.units_order(), 6);
  EXPECT_EQ(p.reduce(-1), 6);
  EXPECT_EQ(p.reduce(15), 1);
  EXPECT_EQ(p.mul(3, 5), 1);
  EXPECT_EQ(p.pow(2, 3), 1);
  EXPECT_EQ(p.inverse(3), 5);
  EXPECT_THROW(p.inverse(0), InvalidUnitError);
  for (std::int64_t m = 1; m < 7; ++m) EXPECT_EQ(p.mul(m, p.inverse(m)), 1);
}

TEST(MultiplicativeOrder, Examples) {
  const PrimeModulus p(7);
  EXPECT_EQ(multiplicative_order(1, p), 1);
  EXPECT_EQ(multiplicative_order(2, p), 3);
  EXPECT_EQ(multiplicative_order(6, p), 2);
  EXPECT_THROW(multiplicative_order(0, p), InvalidUnitError);
  EXPECT_THROW(multiplicative_order(14, p), InvalidUnitError);
}

TEST(MultiplicativeOrder, AgreesWithIteration) {
  for (std::int64_t n : oracle::primes_in(2, 200)) {
    const PrimeModulus p(n);
    for (std::int64_t m = 1; m < n; ++m) ASSERT_EQ(multiplicative_order(m, p), oracle::order_mod(m, n));
  }
}

TEST(PrimitiveRoot, SmallestRoot) {
  EXPECT_EQ(find_primitive_root(PrimeModulus(2)).value(), 1);
  EXPECT_EQ(find_primitive_root(PrimeModulus(5)).value(), 2);
  EXPECT_EQ(find_primitive_root(PrimeModulus(7)).value(), 3);
  for (std::int64_t n : oracle::primes_in(3, 400)) {
    std::int64_t expected = 0;
    for (std::int64_t g = 1; g < n && expected == 0; ++g) {
      if (oracle::order_mod(g, n) == n - 1) expected = g;
    }
    ASSERT_EQ(find_primitive_root(PrimeModulus(n)).value(), expected) << n;
  }
}

TEST(PrimitiveRoot, RejectsNonGenerator) {
  const PrimeModulus p(7);
  EXPECT_THROW(PrimitiveRoot(2, p), DomainError);
  EXPECT_NO_THROW(PrimitiveRoot(5, p));
}

TEST(Subgroup, OrderAndMembership) {
  const PrimeModulus p(13);
  for (std::int64_t c : divisors(12)) {
    const auto h = subgroup_of_order(c, p);
    ASSERT_EQ(static_cast<std::int64_t>(h.size()), c);
    for (std::int64_t x : h) EXPECT_EQ(c % oracle::order_mod(x, 13), 0);
    EXPECT_TRUE(std::is_sorted(h.begin(), h.end()));
  }
  EXPECT_EQ(subgroup_of_order(3, PrimeModulus(7)), (std::vector<std::int64_t>{1, 2, 4}));
  EXPECT_THROW(subgroup_of_order(5, p), DomainError);
}
