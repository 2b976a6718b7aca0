#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "harmonic/symmetry.hpp"
#include "oracles.hpp"

using namespace harmonic;

namespace {

std::set<ColumnPerm> perms_of(const SymmetryReport& r) {
  std::set<ColumnPerm> out;
  for (const auto& e : r.subgroup) out.insert(e.column_perm);
  return out;
}

// Every permutation of the columns, kept iff the reconstructed unitary is an exact symmetry.
std::int64_t symmetry_count_over_all_permutations(const GeneratorSet& s) {
  const FrameMatrix f(s);
  ColumnPerm sigma = identity_perm(f.size());
  std::int64_t count = 0;
  do {
    if (is_symmetry(f, reconstruct_unitary(f, sigma), sigma)) ++count;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return count;
}

}  // namespace

TEST(Guaranteed, Examples) {
  const PrimeModulus p5(5);
  auto r = guaranteed_subgroup(GeneratorSet(p5, {1, 2}));
  EXPECT_EQ(r.stab_order, 1);
  EXPECT_EQ(r.subgroup_order, 5);
  EXPECT_EQ(r.diagonal_generator, "diag(w^1,w^2)");
  EXPECT_TRUE(r.conjugation_relation);

  r = guaranteed_subgroup(GeneratorSet(p5, {1, 4}));
  EXPECT_EQ(r.stab_order, 2);
  EXPECT_EQ(r.q_slot_perm, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(r.q_order, 2);
  EXPECT_EQ(r.subgroup_order, 10);
  EXPECT_TRUE(r.conjugation_relation);

  const PrimeModulus p7(7);
  r = guaranteed_subgroup(GeneratorSet(p7, {1, 2, 4}));
  EXPECT_EQ(r.stab_order, 3);
  EXPECT_EQ(r.q_order, 3);
  EXPECT_EQ(r.subgroup_order, 21);
}

TEST(Guaranteed, ElementsAreExactSymmetries) {
  const PrimeModulus p(7);
  for (std::int64_t d = 1; d <= 7; ++d) {
    for (const auto& rec : enumerate_orbits(p, d)) {
      const auto r = guaranteed_subgroup(rec.rep);
      const FrameMatrix f(rec.rep);
      std::set<ColumnPerm> distinct;
      for (const auto& e : r.subgroup) {
        ASSERT_TRUE(is_symmetry(f, e.matrix, e.column_perm));
        ASSERT_EQ(e.matrix * e.matrix.conj_transpose(), ScaledMatrix::identity(p, f.dimension()));
        distinct.insert(e.column_perm);
      }
      ASSERT_EQ(distinct.size(), r.subgroup.size());
      if (!is_degenerate(rec.rep)) {
        EXPECT_EQ(r.subgroup_order, 7 * rec.stab_order) << rec.rep.to_string();
      }
    }
  }
}

TEST(Guaranteed, DegenerateFrameHasTrivialSubgroup) {
  const PrimeModulus p(5);
  const auto r = guaranteed_subgroup(GeneratorSet(p, {0}));
  EXPECT_EQ(r.stab_order, 4);
  EXPECT_EQ(r.subgroup_order, 1);
}

TEST(Guaranteed, ElementKinds) {
  const PrimeModulus p5(5);
  const auto r = guaranteed_subgroup(GeneratorSet(p5, {1, 4}));
  std::set<std::string> kinds;
  for (const auto& e : r.subgroup) kinds.insert(e.kind());
  EXPECT_EQ(kinds, (std::set<std::string>{"diagonal_power", "block_perm_power", "product"}));
}

TEST(ReconstructUnitary, RecoversDiagonal) {
  const PrimeModulus p(7);
  const GeneratorSet s(p, {1, 2, 4});
  const FrameMatrix f(s);
  ColumnPerm shift(7);
  for (std::size_t m = 0; m < 7; ++m) shift[m] = static_cast<std::int64_t>((m + 1) % 7);
  const ScaledMatrix u = reconstruct_unitary(f, shift);
  ScaledMatrix diag(p, 3, 3);
  for (std::size_t a = 0; a < 3; ++a) diag.num(a, a) = root_power(p, s[a]);
  EXPECT_EQ(u, diag);
  EXPECT_TRUE(is_symmetry(f, u, shift));

  ColumnPerm swap = identity_perm(7);
  std::swap(swap[1], swap[2]);
  EXPECT_FALSE(is_symmetry(f, reconstruct_unitary(f, swap), swap));
}

TEST(GramAutomorphisms, Examples) {
  const PrimeModulus p5(5);
  auto autos = gram_automorphisms(gram(build_frame(GeneratorSet(p5, {1, 2}))));
  EXPECT_EQ(autos.size(), 5u);
  for (const auto& sigma : autos) {
    for (std::size_t m = 0; m < 5; ++m) EXPECT_EQ(sigma[m], (sigma[0] + static_cast<std::int64_t>(m)) % 5);
  }

  autos = gram_automorphisms(gram(build_frame(GeneratorSet(p5, {1, 4}))));
  EXPECT_EQ(autos.size(), 10u);
  for (const auto& sigma : autos) {
    const std::int64_t b = sigma[0];
    const std::int64_t sign = (sigma[1] - b + 5) % 5 == 1 ? 1 : -1;
    for (std::int64_t m = 0; m < 5; ++m) EXPECT_EQ(sigma[static_cast<std::size_t>(m)], ((sign * m + b) % 5 + 5) % 5);
  }
}

TEST(GramAutomorphisms, Budget) {
  const PrimeModulus p(37);
  EXPECT_THROW(gram_automorphisms(gram(build_frame(GeneratorSet(p, {1, 2})))), BudgetExceededError);
  const PrimeModulus p11(11);
  SymmetryOptions tight;
  tight.max_listed_elements = 100;
  EXPECT_THROW(gram_automorphisms(gram(build_frame(GeneratorSet(p11, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}))), tight),
               BudgetExceededError);
}

TEST(FullGroup, Examples) {
  const PrimeModulus p5(5);
  auto r = full_symmetry_group(GeneratorSet(p5, {1, 2}));
  EXPECT_EQ(*r.full_group_order, 5);
  EXPECT_TRUE(*r.conjecture_holds);

  r = full_symmetry_group(GeneratorSet(p5, {1, 4}));
  EXPECT_EQ(*r.full_group_order, 10);
  EXPECT_TRUE(*r.conjecture_holds);

  const PrimeModulus p7(7);
  r = full_symmetry_group(GeneratorSet(p7, {0, 1, 6}));
  EXPECT_EQ(r.subgroup_order, 14);
  EXPECT_EQ(*r.full_group_order, 14);
}

TEST(FullGroup, RegularSimplexIsSymmetric) {
  const PrimeModulus p5(5);
  const auto r = full_symmetry_group(GeneratorSet(p5, {1, 2, 3, 4}));
  EXPECT_EQ(r.subgroup_order, 20);
  EXPECT_EQ(*r.full_group_order, 120);
  EXPECT_FALSE(*r.conjecture_holds);
}

TEST(FullGroup, MatchesExhaustivePermutationSearch) {
  for (std::int64_t n : {2, 3, 5, 7}) {
    const PrimeModulus p(n);
    for (std::int64_t d = 1; d <= (n == 7 ? 3 : n); ++d) {
      for (const auto& rec : enumerate_orbits(p, d)) {
        const auto r = full_symmetry_group(rec.rep);
        // The degenerate frame repeats one vector N times, so every sigma
        // maps it to itself with U = 1.
        const std::int64_t expected = is_degenerate(rec.rep) ? 1 : symmetry_count_over_all_permutations(rec.rep);
        ASSERT_EQ(*r.full_group_order, expected) << n << " " << rec.rep.to_string();
      }
    }
  }
}

TEST(FullGroup, GeneratorsCloseToGroupOfReportedOrder) {
  const PrimeModulus p(7);
  for (std::int64_t d = 2; d <= 7; ++d) {
    for (const auto& rec : enumerate_orbits(p, d)) {
      const auto r = full_symmetry_group(rec.rep);
      auto gens = r.full_group_generators;
      for (const auto& e : r.subgroup) gens.push_back(e.column_perm);
      const auto group = generate_group(gens, 7, 10'000);
      ASSERT_TRUE(group.has_value());
      ASSERT_EQ(BigInt(group->size()), *r.full_group_order) << rec.rep.to_string();
      const FrameMatrix f(rec.rep);
      const GramMatrix g = gram(f);
      const auto autos = gram_automorphisms(g);
      const std::set<ColumnPerm> auto_set(autos.begin(), autos.end());
      for (const auto& sigma : *group) {
        ASSERT_TRUE(auto_set.contains(sigma));
        ASSERT_TRUE(is_frame_automorphism(f, g, sigma));
      }
      for (const auto& sigma : perms_of(r)) ASSERT_TRUE(std::binary_search(group->begin(), group->end(), sigma));
    }
  }
}

TEST(FullGroup, TrivialStabilizerGivesCyclicGroup) {
  for (std::int64_t n : {5, 7, 11}) {
    const PrimeModulus p(n);
    for (std::int64_t d = 2; d < n; ++d) {
      for (const auto& rec : enumerate_orbits(p, d)) {
        if (rec.stab_order != 1) continue;
        const auto r = full_symmetry_group(rec.rep);
        ASSERT_EQ(*r.full_group_order, n);
        for (const auto& e : r.subgroup) ASSERT_EQ(e.q_power, 0);
      }
    }
  }
}

TEST(FullGroup, Budget) {
  const PrimeModulus p(37);
  EXPECT_THROW(full_symmetry_group(GeneratorSet(p, {1, 2})), BudgetExceededError);
  SymmetryOptions options;
  options.max_n = 41;
  EXPECT_NO_THROW(full_symmetry_group(GeneratorSet(p, {1, 2}), options));
}

TEST(Scan, Examples) {
  auto scan = conjecture_scan(PrimeModulus(5), 2);
  EXPECT_EQ(scan.rows.size(), 3u);
  EXPECT_TRUE(scan.counterexamples.empty());
  scan = conjecture_scan(PrimeModulus(7), 3);
  EXPECT_EQ(scan.rows.size(), 7u);
  scan = conjecture_scan(PrimeModulus(11), 2);
  EXPECT_EQ(scan.rows.size(), 6u);
  scan = conjecture_scan(PrimeModulus(7), 6);
  ASSERT_EQ(scan.counterexamples.size(), 1u);
  EXPECT_EQ(scan.counterexamples[0].rep, GeneratorSet(PrimeModulus(7), {1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(scan.counterexamples[0].full_group_order, 5040);
}

TEST(Permutations, Algebra) {
  const ColumnPerm a{1, 2, 0};
  const ColumnPerm b{0, 2, 1};
  EXPECT_EQ(compose(a, inverse(a)), identity_perm(3));
  EXPECT_EQ(compose(a, b), (ColumnPerm{1, 0, 2}));
}
