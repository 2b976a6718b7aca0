#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "harmonic/equivalence.hpp"
#include "oracles.hpp"

using namespace harmonic;

TEST(Equivalent, Examples) {
  const PrimeModulus p5(5);
  auto v = are_equivalent(GeneratorSet(p5, {1, 2}), GeneratorSet(p5, {2, 4}));
  ASSERT_TRUE(v.equivalent);
  EXPECT_EQ(v.witness->m0, 3);
  EXPECT_FALSE(v.certificate.has_value());

  v = are_equivalent(GeneratorSet(p5, {1, 2}), GeneratorSet(p5, {1, 4}));
  EXPECT_FALSE(v.equivalent);
  EXPECT_FALSE(v.witness.has_value());
  EXPECT_EQ(v.certificate, InequivalenceCertificate::orbit_mismatch);
  EXPECT_STREQ(to_string(*v.certificate), "orbit-mismatch");
  EXPECT_TRUE(v.angles_differ);

  const PrimeModulus p7(7);
  v = are_equivalent(GeneratorSet(p7, {1, 2, 4}), GeneratorSet(p7, {3, 5, 6}));
  ASSERT_TRUE(v.equivalent);
  EXPECT_EQ(v.witness->m0, 3);  // 3 * {3,5,6} = {2,1,4}
}

TEST(Equivalent, DifferentShapesAreErrors) {
  const PrimeModulus p5(5);
  const PrimeModulus p7(7);
  EXPECT_THROW(are_equivalent(GeneratorSet(p5, {1, 2}), GeneratorSet(p7, {1, 2})), MismatchError);
  EXPECT_THROW(are_equivalent(GeneratorSet(p5, {1, 2}), GeneratorSet(p5, {1, 2, 3})), MismatchError);
}

TEST(Equivalent, AgreesWithPairwiseSearch) {
  for (std::int64_t n : {5, 7, 11, 13}) {
    const PrimeModulus p(n);
    for (std::int64_t d : {2, 3}) {
      std::vector<GeneratorSet> all;
      std::vector<std::int64_t> c(static_cast<std::size_t>(d));
      std::iota(c.begin(), c.end(), 0);
      do {
        all.emplace_back(p, c);
      } while (detail::next_combination(c, n));
      for (const auto& a : all) {
        const std::set<std::int64_t> sa(a.elems().begin(), a.elems().end());
        for (const auto& b : all) {
          bool expected = false;
          for (std::int64_t m = 1; m < n && !expected; ++m) {
            std::set<std::int64_t> image;
            for (std::int64_t x : b.elems()) image.insert(x * m % n);
            expected = image == sa;
          }
          const auto v = are_equivalent(a, b);
          ASSERT_EQ(v.equivalent, expected) << a.to_string() << " " << b.to_string();
          if (v.equivalent) {
            ASSERT_TRUE(verify_witness(build_frame(a), build_frame(b), *v.witness));
          }
        }
      }
    }
  }
}

TEST(Equivalent, WitnessInverts) {
  const PrimeModulus p(13);
  const GeneratorSet a(p, {0, 2, 5, 6});
  for (std::int64_t m = 1; m < 13; ++m) {
    const GeneratorSet b = act(m, a);
    const auto ab = are_equivalent(a, b);
    const auto ba = are_equivalent(b, a);
    ASSERT_TRUE(ab.equivalent && ba.equivalent);
    EXPECT_EQ(act(p.inverse(ab.witness->m0), a), b);
    EXPECT_EQ(act(ba.witness->m0, a), b);
  }
}

TEST(Equivalent, TransitiveOnSamples) {
  std::mt19937_64 rng(3);
  const PrimeModulus p(11);
  std::uniform_int_distribution<std::int64_t> unit(1, 10);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::int64_t> pool(11);
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    const GeneratorSet a(p, {pool[0], pool[1], pool[2]});
    const GeneratorSet b = act(unit(rng), a);
    const GeneratorSet c = act(unit(rng), b);
    ASSERT_TRUE(are_equivalent(a, b).equivalent && are_equivalent(b, c).equivalent);
    ASSERT_TRUE(are_equivalent(a, c).equivalent);
  }
}

TEST(VerifyWitness, RejectsWrongWitness) {
  const PrimeModulus p5(5);
  const FrameMatrix a(GeneratorSet(p5, {1, 2}));
  const FrameMatrix b(GeneratorSet(p5, {2, 4}));
  EXPECT_TRUE(verify_witness(a, b, {3, {0, 1}}));
  EXPECT_FALSE(verify_witness(a, b, {3, {1, 0}}));
  EXPECT_FALSE(verify_witness(a, b, {2, {0, 1}}));
  EXPECT_FALSE(verify_witness(a, b, {3, {0}}));
}

TEST(AngleMultiset, Examples) {
  const PrimeModulus p5(5);
  const auto angles = angle_multiset(GeneratorSet(p5, {1, 4}));
  const auto c1 = root_power(p5, 1) + root_power(p5, 4);
  const auto c2 = root_power(p5, 2) + root_power(p5, 3);
  std::vector<CyclotomicInt> expected{c1, c2, c2, c1};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(angles, expected);

  const PrimeModulus p7(7);
  for (const auto& z : angle_multiset(GeneratorSet(p7, {0, 1, 2, 3, 4, 5, 6}))) EXPECT_TRUE(z.is_zero());
}

TEST(AngleMultiset, InvariantUnderAction) {
  const PrimeModulus p(13);
  const GeneratorSet s(p, {1, 3, 4, 10});
  for (std::int64_t m = 1; m < 13; ++m) ASSERT_EQ(angle_multiset(act(m, s)), angle_multiset(s));
}

TEST(CrossValidate, Examples) {
  auto r = cross_validate_equivalence(PrimeModulus(7), 3);
  EXPECT_EQ(r.representatives.size(), 7u);
  EXPECT_EQ(r.witness_failures, 0u);
  EXPECT_GT(r.within_orbit_pairs, 0u);

  r = cross_validate_equivalence(PrimeModulus(5), 2);
  EXPECT_EQ(r.representatives.size(), 3u);
  EXPECT_TRUE(r.angle_collisions.empty());

  r = cross_validate_equivalence(PrimeModulus(11), 2);
  EXPECT_EQ(r.representatives.size(), 6u);
  EXPECT_EQ(r.witness_failures, 0u);
}

TEST(CrossValidate, Budget) {
  EXPECT_THROW(cross_validate_equivalence(PrimeModulus(23), 11, {100, 1}), BudgetExceededError);
}
