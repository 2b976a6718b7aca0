#pragma once

// DFT frames: the N columns phi_m = (w^(m n_1), ..., w^(m n_d)) / sqrt(d),
// m = 0..N-1, for a generator set [n_1, ..., n_d].
//
// Everything exact is done on the unscaled matrix (entries w^(m n_k)); the
// 1/sqrt(d) factor only appears in floating exports.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "json.hpp"

#include "harmonic/bigint.hpp"
#include "harmonic/cyclotomic.hpp"
#include "harmonic/error.hpp"
#include "harmonic/orbit.hpp"

namespace harmonic {

class FrameMatrix {
 public:
  explicit FrameMatrix(GeneratorSet generators)
      : generators_(std::move(generators)),
        rows_(generators_.size()),
        cols_(static_cast<std::size_t>(generators_.modulus().value())),
        exponents_(rows_ * cols_) {
    const auto& modulus = generators_.modulus();
    for (std::size_t k = 0; k < rows_; ++k) {
      for (std::size_t m = 0; m < cols_; ++m) {
        exponents_[k * cols_ + m] = modulus.mul(static_cast<std::int64_t>(m), generators_[k]);
      }
    }
  }

  const PrimeModulus& modulus() const noexcept { return generators_.modulus(); }
  const GeneratorSet& generators() const noexcept { return generators_; }
  std::size_t dimension() const noexcept { return rows_; }
  std::size_t size() const noexcept { return cols_; }

  /// e such that entry (k, m) = w^e; e = m n_k mod N.
  std::int64_t exponent(std::size_t k, std::size_t m) const noexcept { return exponents_[k * cols_ + m]; }
  CyclotomicInt entry(std::size_t k, std::size_t m) const { return root_power(modulus(), exponent(k, m)); }

  /// The unscaled matrix as a d x N ScaledMatrix (denominator 1).
  ScaledMatrix to_matrix() const {
    ScaledMatrix out(modulus(), rows_, cols_);
    for (std::size_t k = 0; k < rows_; ++k) {
      for (std::size_t m = 0; m < cols_; ++m) out.num(k, m) = entry(k, m);
    }
    return out;
  }

 private:
  GeneratorSet generators_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int64_t> exponents_;
};

inline FrameMatrix build_frame(const GeneratorSet& s) { return FrameMatrix(s); }

struct FuntfReport {
  bool unit_norm = false;
  bool tight = false;
  BigRational frame_bound;  // N/d
};

/// Checks every unscaled column has squared norm d and that rows are
/// orthogonal with squared norm N, all in exact arithmetic.
inline FuntfReport verify_funtf(const FrameMatrix& f) {
  const auto& modulus = f.modulus();
  const auto d = static_cast<std::int64_t>(f.dimension());
  const auto n = static_cast<std::int64_t>(f.size());
  FuntfReport report;

  report.unit_norm = true;
  const CyclotomicInt expected_norm = CyclotomicInt::integer(modulus, d);
  for (std::size_t m = 0; m < f.size() && report.unit_norm; ++m) {
    CyclotomicInt norm(modulus);
    for (std::size_t k = 0; k < f.dimension(); ++k) {
      const CyclotomicInt z = f.entry(k, m);
      norm += z.conj().rotated(f.exponent(k, m));  // z * conj(z)
    }
    report.unit_norm = norm == expected_norm;
  }

  report.tight = true;
  const CyclotomicInt zero(modulus);
  const CyclotomicInt n_int = CyclotomicInt::integer(modulus, n);
  for (std::size_t a = 0; a < f.dimension() && report.tight; ++a) {
    for (std::size_t b = 0; b < f.dimension() && report.tight; ++b) {
      CyclotomicInt inner(modulus);
      for (std::size_t m = 0; m < f.size(); ++m) inner.add_root_power(f.exponent(a, m) - f.exponent(b, m));
      report.tight = inner == (a == b ? n_int : zero);
    }
  }

  report.frame_bound = BigRational(n, d);
  return report;
}

/// Sorted tuple (k - j) . [n]; the diagonal carries d zeros.
using DifferenceLabel = std::vector<std::int64_t>;

class GramMatrix {
 public:
  GramMatrix(std::size_t n, std::vector<ScaledCyclotomic> entries, std::vector<DifferenceLabel> labels)
      : n_(n), entries_(std::move(entries)), labels_(std::move(labels)) {}

  std::size_t size() const noexcept { return n_; }
  /// <phi_k, phi_j> = (1/d) sum_l w^(n_l (k - j)).
  const ScaledCyclotomic& entry(std::size_t j, std::size_t k) const { return entries_[j * n_ + k]; }
  const DifferenceLabel& label(std::size_t j, std::size_t k) const { return labels_[j * n_ + k]; }

 private:
  std::size_t n_;
  std::vector<ScaledCyclotomic> entries_;
  std::vector<DifferenceLabel> labels_;
};

inline DifferenceLabel difference_label(const GeneratorSet& s, std::int64_t diff) {
  const auto& modulus = s.modulus();
  DifferenceLabel out(s.elems().begin(), s.elems().end());
  for (auto& x : out) x = modulus.mul(x, diff);
  std::sort(out.begin(), out.end());
  return out;
}

/// Exact Gram matrix plus difference labels. Verifies on construction that
/// both are circulant and that entries agree exactly iff labels agree.
inline GramMatrix gram(const FrameMatrix& f) {
  const auto& modulus = f.modulus();
  const std::size_t n = f.size();
  const auto d = static_cast<std::int64_t>(f.dimension());
  std::vector<ScaledCyclotomic> entries;
  std::vector<DifferenceLabel> labels;
  entries.reserve(n * n);
  labels.reserve(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      CyclotomicInt inner(modulus);
      for (std::size_t l = 0; l < f.dimension(); ++l) inner.add_root_power(f.exponent(l, k) - f.exponent(l, j));
      entries.emplace_back(std::move(inner), d);
      labels.push_back(difference_label(f.generators(), static_cast<std::int64_t>(k) - static_cast<std::int64_t>(j)));
    }
  }
  GramMatrix g(n, std::move(entries), std::move(labels));

  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t diff = (k + n - j) % n;
      if (!(g.entry(j, k).numerator == g.entry(0, diff).numerator) || g.label(j, k) != g.label(0, diff)) {
        throw ContractViolation("Gram matrix is not circulant");
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const bool same_entry = g.entry(0, a).numerator == g.entry(0, b).numerator;
      const bool same_label = g.label(0, a) == g.label(0, b);
      if (same_entry != same_label) throw ContractViolation("Gram entry equality disagrees with labels");
    }
  }
  return g;
}

enum class ExportFormat { json, csv };

inline ExportFormat parse_export_format(const std::string& name) {
  if (name == "json") return ExportFormat::json;
  if (name == "csv") return ExportFormat::csv;
  throw DomainError("unsupported frame export format: " + name);
}

namespace detail {

/// 12 significant digits, with exact zeros for vanishing trig values.
inline std::string format_12(double x) {
  if (std::fabs(x) < 1e-15) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x + 0.0);
  return buf;
}

inline std::pair<double, double> scaled_root(std::int64_t e, std::int64_t n, std::int64_t d) {
  const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(e) / n;
  const long double scale = 1.0L / std::sqrt(static_cast<long double>(d));
  return {static_cast<double>(std::cos(angle) * scale), static_cast<double>(std::sin(angle) * scale)};
}

}  // namespace detail

/// Serializes the normalized frame. Output is byte-stable.
inline std::string export_frame(const FrameMatrix& f, ExportFormat format) {
  const std::int64_t n = f.modulus().value();
  const auto d = static_cast<std::int64_t>(f.dimension());
  if (format == ExportFormat::csv) {
    std::string out;
    for (std::size_t k = 0; k < f.dimension(); ++k) {
      for (std::size_t m = 0; m < f.size(); ++m) {
        const auto [re, im] = detail::scaled_root(f.exponent(k, m), n, d);
        std::string imag = detail::format_12(im);
        if (imag.front() != '-') imag.insert(imag.begin(), '+');
        if (m != 0) out += ',';
        out += detail::format_12(re) + imag + "i";
      }
      out += '\n';
    }
    return out;
  }

  nlohmann::ordered_json doc;
  doc["N"] = n;
  doc["d"] = d;
  doc["generators"] = std::vector<std::int64_t>(f.generators().elems().begin(), f.generators().elems().end());
  auto exponents = nlohmann::ordered_json::array();
  auto real = nlohmann::ordered_json::array();
  auto imag = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < f.dimension(); ++k) {
    auto erow = nlohmann::ordered_json::array();
    auto rrow = nlohmann::ordered_json::array();
    auto irow = nlohmann::ordered_json::array();
    for (std::size_t m = 0; m < f.size(); ++m) {
      const auto [re, im] = detail::scaled_root(f.exponent(k, m), n, d);
      erow.push_back(f.exponent(k, m));
      rrow.push_back(std::stod(detail::format_12(re)));
      irow.push_back(std::stod(detail::format_12(im)));
    }
    exponents.push_back(std::move(erow));
    real.push_back(std::move(rrow));
    imag.push_back(std::move(irow));
  }
  doc["exponents"] = std::move(exponents);
  doc["real"] = std::move(real);
  doc["imag"] = std::move(imag);
  return doc.dump() + "\n";
}

}  // namespace harmonic
