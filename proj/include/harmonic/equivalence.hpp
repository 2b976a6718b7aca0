#pragma once

// Unitary equivalence of prime-order harmonic frames. Two frames are
// equivalent iff their generator sets lie in the same orbit of Z_N^x, and the
// equivalence is then realized by re-indexing the frame (m -> m m0) together
// with a permutation of coordinates.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "harmonic/cyclotomic.hpp"
#include "harmonic/error.hpp"
#include "harmonic/frames.hpp"
#include "harmonic/orbit.hpp"

namespace harmonic {

/// phi_m(k) = psi_{m m0}(coordinate_perm[k]) for all m, k.
struct EquivalenceWitness {
  std::int64_t m0 = 1;
  std::vector<std::size_t> coordinate_perm;
};

enum class InequivalenceCertificate { orbit_mismatch, angle_multiset_mismatch };

inline const char* to_string(InequivalenceCertificate c) noexcept {
  return c == InequivalenceCertificate::orbit_mismatch ? "orbit-mismatch" : "angle-multiset-mismatch";
}

struct EquivalenceVerdict {
  bool equivalent = false;
  std::optional<EquivalenceWitness> witness;
  std::optional<InequivalenceCertificate> certificate;
  /// For inequivalent pairs: whether the angle multisets also separate them.
  bool angles_differ = false;
};

/// Exact check of the witness identity against both frames.
inline bool verify_witness(const FrameMatrix& a, const FrameMatrix& b, const EquivalenceWitness& w) {
  const auto& modulus = a.modulus();
  if (w.coordinate_perm.size() != a.dimension()) return false;
  for (std::size_t m = 0; m < a.size(); ++m) {
    const auto target = static_cast<std::size_t>(modulus.mul(static_cast<std::int64_t>(m), w.m0));
    for (std::size_t k = 0; k < a.dimension(); ++k) {
      if (!(a.entry(k, m) == b.entry(w.coordinate_perm[k], target))) return false;
    }
  }
  return true;
}

/// Multiset { sum_k w^(m n_k) : m = 1..N-1 }, sorted by canonical coefficients.
inline std::vector<CyclotomicInt> angle_multiset(const GeneratorSet& s) {
  const auto& modulus = s.modulus();
  std::vector<CyclotomicInt> out;
  out.reserve(static_cast<std::size_t>(modulus.units_order()));
  for (std::int64_t m = 1; m < modulus.value(); ++m) {
    CyclotomicInt sum(modulus);
    for (std::int64_t x : s.elems()) sum.add_root_power(modulus.mul(m, x));
    out.push_back(std::move(sum));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline EquivalenceVerdict are_equivalent(const GeneratorSet& a, const GeneratorSet& b) {
  if (!(a.modulus() == b.modulus())) throw MismatchError("equivalence: frames have different N");
  if (a.size() != b.size()) throw MismatchError("equivalence: frames have different d");
  const auto& modulus = a.modulus();

  EquivalenceVerdict verdict;
  if (!(canonical_rep(a) == canonical_rep(b))) {
    verdict.certificate = InequivalenceCertificate::orbit_mismatch;
    verdict.angles_differ = angle_multiset(a) != angle_multiset(b);
    return verdict;
  }

  for (std::int64_t m0 = 1; m0 < modulus.value(); ++m0) {
    if (!(act(m0, b) == a)) continue;
    EquivalenceWitness w{m0, std::vector<std::size_t>(a.size())};
    for (std::size_t k = 0; k < a.size(); ++k) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (modulus.mul(m0, b[j]) == a[k]) w.coordinate_perm[k] = j;
      }
    }
    if (!verify_witness(build_frame(a), build_frame(b), w)) {
      throw ContractViolation("equivalence witness failed exact verification for " + a.to_string() + " ~ " +
                              b.to_string());
    }
    verdict.equivalent = true;
    verdict.witness = std::move(w);
    return verdict;
  }
  throw ContractViolation("equal canonical representatives but no multiplier maps b to a");
}

struct EquivalenceCrossCheck {
  std::vector<GeneratorSet> representatives;
  /// Pairs of distinct orbits whose angle multisets coincide.
  std::vector<std::pair<GeneratorSet, GeneratorSet>> angle_collisions;
  std::size_t within_orbit_pairs = 0;
  std::size_t witness_failures = 0;
};

/// Every representative pair is tested with the angle certificate; every pair
/// of members of the same orbit must produce a verified witness.
inline EquivalenceCrossCheck cross_validate_equivalence(const PrimeModulus& modulus, std::int64_t d,
                                                        const EnumerationOptions& options = {}) {
  EquivalenceCrossCheck out;
  const auto records = enumerate_orbits(modulus, d, options);
  std::vector<std::vector<CyclotomicInt>> angles;
  for (const auto& r : records) {
    out.representatives.push_back(r.rep);
    angles.push_back(angle_multiset(r.rep));
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t j = i + 1; j < records.size(); ++j) {
      if (angles[i] == angles[j]) out.angle_collisions.emplace_back(records[i].rep, records[j].rep);
    }
  }
  for (const auto& r : records) {
    std::vector<GeneratorSet> members;
    for (std::int64_t m = 1; m < modulus.value(); ++m) {
      GeneratorSet image = act(m, r.rep);
      if (std::find(members.begin(), members.end(), image) == members.end()) members.push_back(std::move(image));
    }
    for (const auto& x : members) {
      for (const auto& y : members) {
        ++out.within_orbit_pairs;
        try {
          if (!are_equivalent(x, y).equivalent) ++out.witness_failures;
        } catch (const ContractViolation&) {
          ++out.witness_failures;
        }
      }
    }
  }
  return out;
}

}  // namespace harmonic
