#pragma once

// Unordered d-subsets of Z_N under the multiplicative action of Z_N^x:
// m . [n_1, ..., n_d] = [m n_1, ..., m n_d].
//
// Orbits of this action are in bijection with unitary-equivalence classes of
// harmonic frames of N vectors in C^d.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "harmonic/bigint.hpp"
#include "harmonic/error.hpp"
#include "harmonic/number_theory.hpp"

namespace harmonic {

/// A d-element subset of Z_N stored as a strictly increasing sequence.
class GeneratorSet {
 public:
  /// Reduces every value mod N and sorts; duplicates (after reduction) are rejected.
  GeneratorSet(const PrimeModulus& modulus, std::vector<std::int64_t> values) : modulus_(modulus) {
    for (auto& v : values) v = modulus.reduce(v);
    std::sort(values.begin(), values.end());
    if (values.empty()) throw DomainError("generator set must be nonempty");
    if (std::adjacent_find(values.begin(), values.end()) != values.end()) {
      throw DomainError("generators must be distinct mod N");
    }
    elems_ = std::move(values);
  }
  GeneratorSet(const PrimeModulus& modulus, std::initializer_list<std::int64_t> values)
      : GeneratorSet(modulus, std::vector<std::int64_t>(values)) {}

  const PrimeModulus& modulus() const noexcept { return modulus_; }
  std::span<const std::int64_t> elems() const noexcept { return elems_; }
  std::int64_t operator[](std::size_t i) const noexcept { return elems_[i]; }
  std::size_t size() const noexcept { return elems_.size(); }
  bool contains_zero() const noexcept { return elems_.front() == 0; }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (i != 0) out += ",";
      out += std::to_string(elems_[i]);
    }
    return out + "]";
  }

  friend bool operator==(const GeneratorSet& a, const GeneratorSet& b) noexcept {
    return a.modulus_ == b.modulus_ && a.elems_ == b.elems_;
  }
  /// Lexicographic order of the sorted tuples.
  friend bool operator<(const GeneratorSet& a, const GeneratorSet& b) noexcept { return a.elems_ < b.elems_; }

 private:
  PrimeModulus modulus_;
  std::vector<std::int64_t> elems_;
};

namespace detail {

inline std::int64_t checked_unit(std::int64_t m, const PrimeModulus& modulus) {
  const std::int64_t unit = modulus.reduce(m);
  if (unit == 0) throw InvalidUnitError("multiplier must be a unit of Z_N");
  return unit;
}

}  // namespace detail

/// m . s, re-sorted.
inline GeneratorSet act(std::int64_t m, const GeneratorSet& s) {
  const auto& modulus = s.modulus();
  const std::int64_t unit = detail::checked_unit(m, modulus);
  std::vector<std::int64_t> out(s.elems().begin(), s.elems().end());
  for (auto& x : out) x = modulus.mul(x, unit);
  return GeneratorSet(modulus, std::move(out));
}

/// All units m with m . s = s, ascending. Always contains 1.
inline std::vector<std::int64_t> stabilizer(const GeneratorSet& s) {
  std::vector<std::int64_t> out;
  for (std::int64_t m = 1; m < s.modulus().value(); ++m) {
    if (act(m, s) == s) out.push_back(m);
  }
  return out;
}

/// Lexicographically least member of the orbit of s.
inline GeneratorSet canonical_rep(const GeneratorSet& s) {
  GeneratorSet best = s;
  for (std::int64_t m = 2; m < s.modulus().value(); ++m) {
    GeneratorSet image = act(m, s);
    if (image < best) best = std::move(image);
  }
  return best;
}

struct OrbitRecord {
  GeneratorSet rep;
  std::int64_t size = 0;
  std::int64_t stab_order = 0;
  std::vector<std::int64_t> stabilizer;
};

inline OrbitRecord make_orbit_record(const GeneratorSet& rep) {
  auto stab = stabilizer(rep);
  const auto c = static_cast<std::int64_t>(stab.size());
  return OrbitRecord{rep, rep.modulus().units_order() / c, c, std::move(stab)};
}

enum class FormKind { blocks_divide_d, zero_plus_blocks_divide_d_minus_1 };

inline const char* to_string(FormKind kind) noexcept {
  return kind == FormKind::blocks_divide_d ? "blocks_divide_d" : "zero_plus_blocks_divide_d_minus_1";
}

/// s written as (optionally 0 plus) a union of cosets n_k H of the order-c subgroup H.
struct StructuredForm {
  FormKind kind = FormKind::blocks_divide_d;
  std::int64_t c = 1;
  std::vector<std::int64_t> block_leaders;
};

/// Rebuilds the subset from a structured form. Blocks are
/// {n_k g^(j(N-1)/c) : j = 0..c-1} for the given primitive root g.
inline GeneratorSet expand(const StructuredForm& form, const PrimitiveRoot& g) {
  const auto& modulus = g.modulus();
  const std::int64_t h = g.subgroup_generator(form.c);
  std::vector<std::int64_t> out;
  if (form.kind == FormKind::zero_plus_blocks_divide_d_minus_1) out.push_back(0);
  for (std::int64_t leader : form.block_leaders) {
    std::int64_t x = modulus.reduce(leader);
    for (std::int64_t j = 0; j < form.c; ++j) {
      out.push_back(x);
      x = modulus.mul(x, h);
    }
  }
  return GeneratorSet(modulus, std::move(out));
}

namespace detail {

/// Splits the nonzero elements of s into cosets of the order-c subgroup.
/// Each coset must lie entirely inside s.
inline StructuredForm partition_into_cosets(const GeneratorSet& s, std::int64_t c) {
  const auto& modulus = s.modulus();
  if (c < 1 || modulus.units_order() % c != 0) throw DomainError("block size must divide N-1");
  const auto subgroup = subgroup_of_order(c, modulus);
  StructuredForm form;
  form.c = c;
  form.kind = s.contains_zero() ? FormKind::zero_plus_blocks_divide_d_minus_1 : FormKind::blocks_divide_d;

  std::set<std::int64_t> remaining;
  for (std::int64_t x : s.elems()) {
    if (x != 0) remaining.insert(x);
  }
  while (!remaining.empty()) {
    const std::int64_t leader = *remaining.begin();  // least element of its coset
    for (std::int64_t u : subgroup) {
      if (remaining.erase(modulus.mul(leader, u)) != 1) {
        throw ContractViolation("subset " + s.to_string() + " is not a union of cosets of the order-" +
                                std::to_string(c) + " subgroup");
      }
    }
    form.block_leaders.push_back(leader);
  }
  return form;
}

}  // namespace detail

/// Structured form with c = |stabilizer(s)|; block leaders are coset minima, ascending.
inline StructuredForm structured_form(const GeneratorSet& s) {
  const auto c = static_cast<std::int64_t>(stabilizer(s).size());
  const std::int64_t d = static_cast<std::int64_t>(s.size());
  const std::int64_t blocked = s.contains_zero() ? d - 1 : d;
  if (blocked % c != 0) {
    throw ContractViolation("stabilizer order " + std::to_string(c) + " divides neither d nor d-1");
  }
  return detail::partition_into_cosets(s, c);
}

/// Re-expresses a form with blocks of size b as blocks of any size c dividing b.
inline StructuredForm refine(const StructuredForm& form, std::int64_t c, const PrimitiveRoot& g) {
  if (c < 1 || form.c % c != 0) throw DomainError("refine: c must divide the current block size");
  return detail::partition_into_cosets(expand(form, g), c);
}

/// Checks that two primitive roots generate the same block n1 <g^((N-1)/c)>.
inline bool primitive_root_independence_check(const PrimeModulus& modulus, std::int64_t c, std::int64_t n1,
                                              std::int64_t g1, std::int64_t g2) {
  if (modulus.reduce(n1) == 0) throw DomainError("n1 must be nonzero mod N");
  const PrimitiveRoot r1(g1, modulus);
  const PrimitiveRoot r2(g2, modulus);
  auto block = [&](const PrimitiveRoot& g) {
    const std::int64_t h = g.subgroup_generator(c);
    std::set<std::int64_t> out;
    std::int64_t x = modulus.reduce(n1);
    for (std::int64_t j = 0; j < c; ++j) {
      out.insert(x);
      x = modulus.mul(x, h);
    }
    return out;
  };
  return block(r1) == block(r2);
}

struct EnumerationOptions {
  std::uint64_t max_subsets = 10'000'000;
  unsigned threads = 0;  // 0: hardware concurrency
};

namespace detail {

inline std::uint64_t binomial_u64_saturating(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
    if (out > UINT64_MAX / 2) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(out);
}

/// The rank-th d-subset of {0..n-1} in lexicographic order.
inline std::vector<std::int64_t> unrank_combination(std::int64_t n, std::int64_t d, std::uint64_t rank) {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(d));
  std::int64_t x = 0;
  for (std::int64_t i = 0; i < d; ++i) {
    for (;; ++x) {
      const std::uint64_t block =
          binomial_u64_saturating(static_cast<std::uint64_t>(n - x - 1), static_cast<std::uint64_t>(d - i - 1));
      if (rank < block) break;
      rank -= block;
    }
    out.push_back(x++);
  }
  return out;
}

inline bool next_combination(std::vector<std::int64_t>& c, std::int64_t n) {
  const auto d = static_cast<std::int64_t>(c.size());
  std::int64_t i = d - 1;
  while (i >= 0 && c[static_cast<std::size_t>(i)] == n - d + i) --i;
  if (i < 0) return false;
  ++c[static_cast<std::size_t>(i)];
  for (std::int64_t j = i + 1; j < d; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

/// True iff the sorted subset s is lexicographically least in its orbit.
/// `image` is scratch space of size |s|.
inline bool is_orbit_minimum(std::span<const std::int64_t> s, std::int64_t n, std::vector<std::int64_t>& image) {
  const std::size_t d = s.size();
  for (std::int64_t m = 2; m < n; ++m) {
    std::int64_t least = n;
    for (std::size_t i = 0; i < d; ++i) {
      image[i] = s[i] * m % n;
      least = std::min(least, image[i]);
    }
    if (least > s[0]) continue;
    if (least < s[0]) return false;
    std::sort(image.begin(), image.end());
    if (std::lexicographical_compare(image.begin(), image.end(), s.begin(), s.end())) return false;
  }
  return true;
}

}  // namespace detail

/// Brute-force orbit listing: streams every d-subset in lexicographic order and
/// keeps those equal to their own canonical representative.
inline std::vector<OrbitRecord> enumerate_orbits(const PrimeModulus& modulus, std::int64_t d,
                                                 const EnumerationOptions& options = {}) {
  const std::int64_t n = modulus.value();
  if (d < 1 || d > n) throw DomainError("d must satisfy 1 <= d <= N");
  const BigInt total = binomial(n, d);
  if (total > options.max_subsets) {
    throw BudgetExceededError("enumeration budget exceeded: C(N,d) = " + total.str() + " > " +
                                  std::to_string(options.max_subsets),
                              total.str());
  }
  const auto count = total.convert_to<std::uint64_t>();

  unsigned workers = options.threads != 0 ? options.threads : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(1, count / 256)));

  std::vector<std::vector<std::vector<std::int64_t>>> found(workers);
  auto scan = [&](unsigned w) {
    const std::uint64_t begin = count * w / workers;
    const std::uint64_t end = count * (w + 1) / workers;
    if (begin == end) return;
    auto subset = detail::unrank_combination(n, d, begin);
    std::vector<std::int64_t> scratch(subset.size());
    for (std::uint64_t r = begin; r < end; ++r) {
      if (detail::is_orbit_minimum(subset, n, scratch)) found[w].push_back(subset);
      detail::next_combination(subset, n);
    }
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(scan, w);
  }

  std::vector<OrbitRecord> records;
  for (auto& chunk : found) {
    for (auto& rep : chunk) records.push_back(make_orbit_record(GeneratorSet(modulus, std::move(rep))));
  }
  std::sort(records.begin(), records.end(),
            [](const OrbitRecord& a, const OrbitRecord& b) { return a.rep < b.rep; });
  return records;
}

}  // namespace harmonic
