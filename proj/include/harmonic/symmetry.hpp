#pragma once

// Symmetry groups Sym(Phi) = { U unitary : U Phi = Phi as a set } of DFT frames.
//
// Every symmetry permutes the frame vectors, U phi_m = phi_sigma(m), which we
// write U Phi = Phi P_sigma with (Phi P_sigma)[:, m] = Phi[:, sigma(m)]. For a
// frame with distinct vectors sigma determines U = (1/N) Phi P_sigma Phi^*.
//
// Two groups are computed:
//  * the guaranteed subgroup <D, Q>, D = diag(w^n_1, ..., w^n_d) and Q the
//    coordinate permutation realizing multiplication by the order-c unit
//    h = g^((N-1)/c), c = |stabilizer|;
//  * the full group, by backtracking over permutations that preserve the
//    Gram difference labels, each candidate reconstructed and checked exactly.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "harmonic/bigint.hpp"
#include "harmonic/cyclotomic.hpp"
#include "harmonic/error.hpp"
#include "harmonic/frames.hpp"
#include "harmonic/number_theory.hpp"
#include "harmonic/orbit.hpp"

namespace harmonic {

/// A permutation of the column indices Z_N.
using ColumnPerm = std::vector<std::int64_t>;

inline ColumnPerm compose(const ColumnPerm& outer, const ColumnPerm& inner) {
  ColumnPerm out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[static_cast<std::size_t>(inner[i])];
  return out;
}

inline ColumnPerm inverse(const ColumnPerm& p) {
  ColumnPerm out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[static_cast<std::size_t>(p[i])] = static_cast<std::int64_t>(i);
  return out;
}

inline ColumnPerm identity_perm(std::size_t n) {
  ColumnPerm out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::int64_t>(i);
  return out;
}

/// (U x)_a = w^(exponent[a]) x_(source[a]).
struct MonomialUnitary {
  std::vector<std::size_t> source;
  std::vector<std::int64_t> exponent;

  friend auto operator<=>(const MonomialUnitary&, const MonomialUnitary&) = default;
};

inline MonomialUnitary compose(const MonomialUnitary& u, const MonomialUnitary& v, const PrimeModulus& modulus) {
  MonomialUnitary out{std::vector<std::size_t>(u.source.size()), std::vector<std::int64_t>(u.source.size())};
  for (std::size_t a = 0; a < u.source.size(); ++a) {
    out.source[a] = v.source[u.source[a]];
    out.exponent[a] = modulus.reduce(u.exponent[a] + v.exponent[u.source[a]]);
  }
  return out;
}

inline ScaledMatrix to_matrix(const MonomialUnitary& u, const PrimeModulus& modulus) {
  const std::size_t d = u.source.size();
  ScaledMatrix out(modulus, d, d);
  for (std::size_t a = 0; a < d; ++a) out.num(a, u.source[a]) = root_power(modulus, u.exponent[a]);
  return out;
}

struct SymmetryElement {
  std::int64_t diagonal_power = 0;  // k in D^k Q^j
  std::int64_t q_power = 0;         // j in D^k Q^j
  ColumnPerm column_perm;
  ScaledMatrix matrix;

  std::string kind() const {
    if (q_power == 0) return "diagonal_power";
    if (diagonal_power == 0) return "block_perm_power";
    return "product";
  }
};

/// Phi P_sigma as an exact matrix.
inline ScaledMatrix permuted_columns(const FrameMatrix& f, const ColumnPerm& sigma) {
  ScaledMatrix out(f.modulus(), f.dimension(), f.size());
  for (std::size_t k = 0; k < f.dimension(); ++k) {
    for (std::size_t m = 0; m < f.size(); ++m) out.num(k, m) = f.entry(k, static_cast<std::size_t>(sigma[m]));
  }
  return out;
}

/// U Phi = Phi P_sigma and U U^* = I, exactly.
inline bool is_symmetry(const FrameMatrix& f, const ScaledMatrix& u, const ColumnPerm& sigma) {
  if (u * f.to_matrix() != permuted_columns(f, sigma)) return false;
  return u * u.conj_transpose() == ScaledMatrix::identity(f.modulus(), f.dimension());
}

/// The only candidate for sigma: U = (1/N) Phi P_sigma Phi^*.
inline ScaledMatrix reconstruct_unitary(const FrameMatrix& f, const ColumnPerm& sigma) {
  const std::size_t d = f.dimension();
  ScaledMatrix out(f.modulus(), d, d, f.modulus().value());
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      CyclotomicInt sum(f.modulus());
      for (std::size_t m = 0; m < f.size(); ++m) {
        sum.add_root_power(f.exponent(a, static_cast<std::size_t>(sigma[m])) - f.exponent(b, m));
      }
      out.num(a, b) = std::move(sum);
    }
  }
  return out;
}

struct SymmetryOptions {
  std::int64_t max_n = 31;                   // brute-force budget for the full group
  std::uint64_t max_listed_elements = 1'000'000;  // gram_automorphisms listing cap
};

struct SymmetryReport {
  GeneratorSet generators;
  std::int64_t stab_order = 1;               // c
  std::string diagonal_generator{};          // "diag(w^n_1, ..., w^n_d)"
  std::vector<std::size_t> q_slot_perm{};    // Q as (Q x)_a = x_(q_slot_perm[a])
  std::int64_t q_order = 1;
  bool conjugation_relation = false;         // Q D Q^-1 = D^h
  std::int64_t subgroup_order = 0;
  std::vector<SymmetryElement> subgroup{};
  std::optional<BigInt> full_group_order{};
  std::vector<ColumnPerm> full_group_generators{};
  std::optional<bool> conjecture_holds{};
};

/// A frame whose N vectors all coincide: d = 1 with generator 0.
inline bool is_degenerate(const GeneratorSet& s) { return s.size() == 1 && s[0] == 0; }

inline SymmetryReport guaranteed_subgroup(const GeneratorSet& s) {
  const auto& modulus = s.modulus();
  const std::size_t d = s.size();
  const auto n = static_cast<std::size_t>(modulus.value());
  const FrameMatrix f(s);

  SymmetryReport report{s};
  report.stab_order = static_cast<std::int64_t>(stabilizer(s).size());
  const std::int64_t h = find_primitive_root(modulus).subgroup_generator(report.stab_order);

  MonomialUnitary diag{std::vector<std::size_t>(d), std::vector<std::int64_t>(s.elems().begin(), s.elems().end())};
  for (std::size_t a = 0; a < d; ++a) diag.source[a] = a;
  report.diagonal_generator = "diag(";
  for (std::size_t a = 0; a < d; ++a) report.diagonal_generator += (a ? ",w^" : "w^") + std::to_string(s[a]);
  report.diagonal_generator += ")";

  // n_{rho(a)} = h n_a
  MonomialUnitary q{std::vector<std::size_t>(d), std::vector<std::int64_t>(d, 0)};
  for (std::size_t a = 0; a < d; ++a) {
    const std::int64_t target = modulus.mul(h, s[a]);
    const auto it = std::find(s.elems().begin(), s.elems().end(), target);
    if (it == s.elems().end()) throw ContractViolation("h does not stabilize " + s.to_string());
    q.source[a] = static_cast<std::size_t>(it - s.elems().begin());
  }
  report.q_slot_perm = q.source;

  ColumnPerm shift(n);
  ColumnPerm scale(n);
  for (std::size_t m = 0; m < n; ++m) {
    shift[m] = static_cast<std::int64_t>((m + 1) % n);
    scale[m] = modulus.mul(static_cast<std::int64_t>(m), h);
  }

  // D^k Phi = Phi C^k, k = 0..N-1, and Q^k Phi = Phi P0^k, k = 1..c.
  {
    MonomialUnitary power{diag.source, std::vector<std::int64_t>(d, 0)};
    ColumnPerm sigma = identity_perm(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (!is_symmetry(f, to_matrix(power, modulus), sigma)) {
        throw ContractViolation("D^" + std::to_string(k) + " is not a symmetry of " + s.to_string());
      }
      power = compose(power, diag, modulus);
      sigma = compose(sigma, shift);
    }
    power = q;
    sigma = scale;
    report.q_order = 0;
    for (std::int64_t k = 1; k <= report.stab_order; ++k) {
      if (!is_symmetry(f, to_matrix(power, modulus), sigma)) {
        throw ContractViolation("Q^" + std::to_string(k) + " is not a symmetry of " + s.to_string());
      }
      if (report.q_order == 0 && std::is_sorted(power.source.begin(), power.source.end())) report.q_order = k;
      power = compose(power, q, modulus);
      sigma = compose(sigma, scale);
    }
  }

  // Q D Q^-1 = D^h
  {
    MonomialUnitary q_inv{std::vector<std::size_t>(d), std::vector<std::int64_t>(d, 0)};
    for (std::size_t a = 0; a < d; ++a) q_inv.source[q.source[a]] = a;
    MonomialUnitary d_h{diag.source, std::vector<std::int64_t>(d)};
    for (std::size_t a = 0; a < d; ++a) d_h.exponent[a] = modulus.mul(h, s[a]);
    report.conjugation_relation = compose(compose(q, diag, modulus), q_inv, modulus) == d_h;
  }

  // Closure of <D, Q>; elements are kept in the normal form D^k Q^j found first by BFS.
  struct Node {
    MonomialUnitary u;
    ColumnPerm sigma;
    std::int64_t k;
    std::int64_t j;
  };
  const MonomialUnitary identity{diag.source, std::vector<std::int64_t>(d, 0)};
  std::map<MonomialUnitary, std::size_t> seen;
  std::vector<Node> nodes{{identity, identity_perm(n), 0, 0}};
  seen.emplace(identity, 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node cur = nodes[i];
    const Node next[2] = {
        {compose(diag, cur.u, modulus), compose(shift, cur.sigma), cur.k + 1, cur.j},
        {compose(cur.u, q, modulus), compose(cur.sigma, scale), cur.k, cur.j + 1},
    };
    for (const Node& candidate : next) {
      if (seen.contains(candidate.u)) continue;
      seen.emplace(candidate.u, nodes.size());
      nodes.push_back(candidate);
    }
  }
  for (auto& node : nodes) {
    ScaledMatrix m = to_matrix(node.u, modulus);
    if (!is_symmetry(f, m, node.sigma)) {
      throw ContractViolation("element D^" + std::to_string(node.k) + " Q^" + std::to_string(node.j) +
                              " failed exact verification");
    }
    report.subgroup.push_back(SymmetryElement{node.k, node.j, std::move(node.sigma), std::move(m)});
  }
  report.subgroup_order = static_cast<std::int64_t>(report.subgroup.size());
  return report;
}

namespace detail {

/// Label class of each difference k - j, read off row 0 of the Gram matrix.
inline std::vector<int> difference_classes(const GramMatrix& g) {
  std::map<DifferenceLabel, int> ids;
  std::vector<int> out(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    out[k] = ids.emplace(g.label(0, k), static_cast<int>(ids.size())).first->second;
  }
  return out;
}

/// Depth-first search over label-preserving permutations. Points are assigned
/// in the order 0..N-1 starting from `prefix`; `visit` receives each complete
/// permutation and returns false to stop the search.
class LabelBacktracker {
 public:
  explicit LabelBacktracker(const GramMatrix& g)
      : n_(static_cast<std::int64_t>(g.size())), classes_(difference_classes(g)) {}

  /// Returns false if the visitor stopped the search.
  bool search(const std::vector<std::int64_t>& prefix, const std::function<bool(const ColumnPerm&)>& visit) {
    sigma_.assign(static_cast<std::size_t>(n_), -1);
    used_.assign(static_cast<std::size_t>(n_), false);
    for (std::size_t p = 0; p < prefix.size(); ++p) {
      if (!consistent(static_cast<std::int64_t>(p), prefix[p])) return true;
      assign(static_cast<std::int64_t>(p), prefix[p]);
    }
    return extend(static_cast<std::int64_t>(prefix.size()), visit);
  }

 private:
  int cls(std::int64_t diff) const { return classes_[static_cast<std::size_t>(((diff % n_) + n_) % n_)]; }

  bool consistent(std::int64_t point, std::int64_t image) const {
    if (used_[static_cast<std::size_t>(image)]) return false;
    for (std::int64_t q = 0; q < point; ++q) {
      const std::int64_t iq = sigma_[static_cast<std::size_t>(q)];
      if (cls(image - iq) != cls(point - q) || cls(iq - image) != cls(q - point)) return false;
    }
    return true;
  }

  void assign(std::int64_t point, std::int64_t image) {
    sigma_[static_cast<std::size_t>(point)] = image;
    used_[static_cast<std::size_t>(image)] = true;
  }
  void unassign(std::int64_t point) {
    used_[static_cast<std::size_t>(sigma_[static_cast<std::size_t>(point)])] = false;
    sigma_[static_cast<std::size_t>(point)] = -1;
  }

  bool extend(std::int64_t point, const std::function<bool(const ColumnPerm&)>& visit) {
    if (point == n_) return visit(sigma_);
    for (std::int64_t image = 0; image < n_; ++image) {
      if (!consistent(point, image)) continue;
      assign(point, image);
      const bool keep_going = extend(point + 1, visit);
      unassign(point);
      if (!keep_going) return false;
    }
    return true;
  }

  std::int64_t n_;
  std::vector<int> classes_;
  ColumnPerm sigma_;
  std::vector<bool> used_;
};

}  // namespace detail

/// Every permutation sigma with label(sigma(j), sigma(k)) = label(j, k).
inline std::vector<ColumnPerm> gram_automorphisms(const GramMatrix& g, const SymmetryOptions& options = {}) {
  if (static_cast<std::int64_t>(g.size()) > options.max_n) {
    throw BudgetExceededError("symmetry budget exceeded: N > " + std::to_string(options.max_n),
                              std::to_string(g.size()));
  }
  std::vector<ColumnPerm> out;
  bool overflow = false;
  detail::LabelBacktracker(g).search({}, [&](const ColumnPerm& sigma) {
    if (out.size() >= options.max_listed_elements) {
      overflow = true;
      return false;
    }
    out.push_back(sigma);
    return true;
  });
  if (overflow) {
    throw BudgetExceededError("more than " + std::to_string(options.max_listed_elements) + " Gram automorphisms",
                              ">" + std::to_string(options.max_listed_elements));
  }
  return out;
}

/// True iff sigma preserves the Gram labels and its reconstructed unitary is an exact symmetry.
inline bool is_frame_automorphism(const FrameMatrix& f, const GramMatrix& g, const ColumnPerm& sigma) {
  const std::size_t n = g.size();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (g.label(static_cast<std::size_t>(sigma[j]), static_cast<std::size_t>(sigma[k])) != g.label(j, k)) {
        return false;
      }
    }
  }
  return is_symmetry(f, reconstruct_unitary(f, sigma), sigma);
}

/// Order of Sym(Phi) via a point-stabilizer chain: for each base point i the
/// orbit of i under the pointwise stabilizer of 0..i-1 is found by searching
/// for one verified automorphism per candidate image. Also fills the guaranteed
/// subgroup, checks it is contained in the full group, and records whether the
/// two orders agree.
inline SymmetryReport full_symmetry_group(const GeneratorSet& s, const SymmetryOptions& options = {}) {
  const auto& modulus = s.modulus();
  if (modulus.value() > options.max_n) {
    throw BudgetExceededError("symmetry budget exceeded: N > " + std::to_string(options.max_n),
                              std::to_string(modulus.value()));
  }
  SymmetryReport report = guaranteed_subgroup(s);

  if (is_degenerate(s)) {
    // All vectors equal 1 in C^1: only U = 1 fixes them.
    report.full_group_order = BigInt(1);
    report.conjecture_holds = *report.full_group_order == report.subgroup_order;
    return report;
  }

  const FrameMatrix f(s);
  const GramMatrix g = gram(f);
  const auto n = static_cast<std::int64_t>(modulus.value());

  for (const auto& element : report.subgroup) {
    if (!is_frame_automorphism(f, g, element.column_perm)) {
      throw ContractViolation("guaranteed symmetry D^" + std::to_string(element.diagonal_power) + " Q^" +
                              std::to_string(element.q_power) + " is not in the full group");
    }
  }

  detail::LabelBacktracker search(g);
  BigInt order = 1;
  std::vector<std::int64_t> prefix;
  for (std::int64_t base = 0; base < n; ++base) {
    std::int64_t orbit = 1;  // the identity maps base to itself
    for (std::int64_t image = base + 1; image < n; ++image) {
      auto candidate = prefix;
      candidate.push_back(image);
      std::optional<ColumnPerm> found;
      search.search(candidate, [&](const ColumnPerm& sigma) {
        if (!is_symmetry(f, reconstruct_unitary(f, sigma), sigma)) return true;
        found = sigma;
        return false;
      });
      if (found) {
        ++orbit;
        report.full_group_generators.push_back(std::move(*found));
      }
    }
    order *= orbit;
    prefix.push_back(base);
  }
  report.full_group_order = order;
  report.conjecture_holds = order == report.subgroup_order;
  return report;
}

/// Closure of a set of permutations, up to `limit` elements (nullopt if larger).
inline std::optional<std::vector<ColumnPerm>> generate_group(const std::vector<ColumnPerm>& generators,
                                                             std::size_t n, std::size_t limit) {
  std::set<ColumnPerm> seen{identity_perm(n)};
  std::vector<ColumnPerm> elements{identity_perm(n)};
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const auto& gen : generators) {
      ColumnPerm next = compose(gen, elements[i]);
      if (seen.insert(next).second) {
        if (elements.size() >= limit) return std::nullopt;
        elements.push_back(std::move(next));
      }
    }
  }
  std::sort(elements.begin(), elements.end());
  return elements;
}

struct ScanRow {
  GeneratorSet rep;
  std::int64_t stab_order = 1;
  std::int64_t subgroup_order = 0;
  BigInt full_group_order;
  bool conjecture_holds = false;
};

struct ConjectureScan {
  std::vector<ScanRow> rows;
  std::vector<ScanRow> counterexamples;
};

/// Full symmetry group of every orbit representative, tabulated against <D, Q>.
inline ConjectureScan conjecture_scan(const PrimeModulus& modulus, std::int64_t d,
                                      const EnumerationOptions& enumeration = {},
                                      const SymmetryOptions& options = {}) {
  ConjectureScan out;
  for (const auto& record : enumerate_orbits(modulus, d, enumeration)) {
    const SymmetryReport report = full_symmetry_group(record.rep, options);
    ScanRow row{record.rep, report.stab_order, report.subgroup_order, *report.full_group_order,
                *report.conjecture_holds};
    if (!row.conjecture_holds) out.counterexamples.push_back(row);
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace harmonic
