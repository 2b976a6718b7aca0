#pragma once

// Exact arithmetic in Z[w], w = exp(2 pi i / N), N prime.
//
// An element is stored as N integer coefficients (index k holds the
// coefficient of w^k). Because 1 + w + ... + w^(N-1) = 0 every element has
// many coefficient vectors; the canonical one has coeffs[N-1] == 0. For prime
// N that normal form is unique, so equality is coefficient equality.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "harmonic/error.hpp"
#include "harmonic/number_theory.hpp"

namespace harmonic {

class CyclotomicInt {
 public:
  /// The zero element.
  explicit CyclotomicInt(const PrimeModulus& modulus)
      : modulus_(modulus), coeffs_(static_cast<std::size_t>(modulus.value()), 0) {}

  /// From an arbitrary coefficient vector of length N; canonicalizes.
  CyclotomicInt(const PrimeModulus& modulus, std::vector<std::int64_t> coeffs)
      : modulus_(modulus), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != static_cast<std::size_t>(modulus.value())) {
      throw DomainError("CyclotomicInt: expected N coefficients");
    }
    canonicalize();
  }

  static CyclotomicInt integer(const PrimeModulus& modulus, std::int64_t value) {
    CyclotomicInt out(modulus);
    out.coeffs_[0] = value;
    out.canonicalize();
    return out;
  }

  const PrimeModulus& modulus() const noexcept { return modulus_; }
  std::span<const std::int64_t> coeffs() const noexcept { return coeffs_; }

  bool is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c == 0; });
  }

  /// Adds `count` copies of w^e in place (e reduced mod N).
  CyclotomicInt& add_root_power(std::int64_t e, std::int64_t count = 1) {
    const std::int64_t k = modulus_.reduce(e);
    const std::int64_t last = modulus_.value() - 1;
    if (k == last) {
      // w^(N-1) = -(1 + w + ... + w^(N-2))
      for (std::int64_t i = 0; i < last; ++i) coeffs_[static_cast<std::size_t>(i)] -= count;
    } else {
      coeffs_[static_cast<std::size_t>(k)] += count;
    }
    return *this;
  }

  CyclotomicInt& operator+=(const CyclotomicInt& other) {
    check_same_modulus(other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
  }
  CyclotomicInt& operator-=(const CyclotomicInt& other) {
    check_same_modulus(other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
  }
  CyclotomicInt& operator*=(std::int64_t scalar) {
    for (auto& c : coeffs_) {
      if (__builtin_mul_overflow(c, scalar, &c)) throw DomainError("CyclotomicInt: coefficient overflow");
    }
    return *this;
  }

  friend CyclotomicInt operator+(CyclotomicInt a, const CyclotomicInt& b) { return a += b; }
  friend CyclotomicInt operator-(CyclotomicInt a, const CyclotomicInt& b) { return a -= b; }
  friend CyclotomicInt operator-(CyclotomicInt a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend CyclotomicInt operator*(CyclotomicInt a, std::int64_t s) { return a *= s; }

  friend CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b) {
    a.check_same_modulus(b);
    const std::int64_t n = a.modulus_.value();
    std::vector<std::int64_t> raw(static_cast<std::size_t>(n), 0);
    for (std::int64_t i = 0; i < n; ++i) {
      const std::int64_t ai = a.coeffs_[static_cast<std::size_t>(i)];
      if (ai == 0) continue;
      for (std::int64_t j = 0; j < n; ++j) {
        const std::int64_t bj = b.coeffs_[static_cast<std::size_t>(j)];
        if (bj == 0) continue;
        std::int64_t term = 0;
        auto& slot = raw[static_cast<std::size_t>((i + j) % n)];
        if (__builtin_mul_overflow(ai, bj, &term) || __builtin_add_overflow(slot, term, &slot)) {
          throw DomainError("CyclotomicInt: coefficient overflow");
        }
      }
    }
    return CyclotomicInt(a.modulus_, std::move(raw));
  }

  /// Multiplication by w^e: a cyclic rotation of the coefficients.
  CyclotomicInt rotated(std::int64_t e) const {
    const std::int64_t n = modulus_.value();
    const std::int64_t shift = modulus_.reduce(e);
    std::vector<std::int64_t> raw(coeffs_.size());
    for (std::int64_t i = 0; i < n; ++i) {
      raw[static_cast<std::size_t>((i + shift) % n)] = coeffs_[static_cast<std::size_t>(i)];
    }
    return CyclotomicInt(modulus_, std::move(raw));
  }

  /// Complex conjugate: w^k -> w^(N-k).
  CyclotomicInt conj() const {
    const std::int64_t n = modulus_.value();
    std::vector<std::int64_t> raw(coeffs_.size());
    for (std::int64_t i = 0; i < n; ++i) {
      raw[static_cast<std::size_t>((n - i) % n)] = coeffs_[static_cast<std::size_t>(i)];
    }
    return CyclotomicInt(modulus_, std::move(raw));
  }

  /// True iff the element is the image of an integer, returning it.
  bool as_integer(std::int64_t& value) const noexcept {
    if (!std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](std::int64_t c) { return c == 0; })) {
      return false;
    }
    value = coeffs_[0];
    return true;
  }

  std::complex<double> to_complex() const {
    const long double n = static_cast<long double>(modulus_.value());
    long double re = 0;
    long double im = 0;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k] == 0) continue;
      const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) / n;
      re += static_cast<long double>(coeffs_[k]) * std::cos(angle);
      im += static_cast<long double>(coeffs_[k]) * std::sin(angle);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  /// Gcd of the canonical coefficients (0 for the zero element).
  std::int64_t content() const noexcept {
    std::int64_t g = 0;
    for (std::int64_t c : coeffs_) g = std::gcd(g, c);
    return g;
  }

  friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) noexcept {
    return a.modulus_ == b.modulus_ && a.coeffs_ == b.coeffs_;
  }
  /// Total order on canonical coefficient sequences (for sorting multisets).
  friend bool operator<(const CyclotomicInt& a, const CyclotomicInt& b) noexcept {
    return a.coeffs_ < b.coeffs_;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      const std::int64_t c = coeffs_[k];
      if (c == 0) continue;
      if (!out.empty()) out += c < 0 ? " - " : " + ";
      else if (c < 0) out += "-";
      const std::int64_t mag = c < 0 ? -c : c;
      if (k == 0) {
        out += std::to_string(mag);
      } else {
        if (mag != 1) out += std::to_string(mag) + "*";
        out += k == 1 ? std::string("w") : "w^" + std::to_string(k);
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  void canonicalize() noexcept {
    const std::int64_t top = coeffs_.back();
    if (top == 0) return;
    for (auto& c : coeffs_) c -= top;
  }

  void check_same_modulus(const CyclotomicInt& other) const {
    if (!(modulus_ == other.modulus_)) throw MismatchError("CyclotomicInt: modulus mismatch");
  }

  PrimeModulus modulus_;
  std::vector<std::int64_t> coeffs_;
};

/// w^(e mod N).
inline CyclotomicInt root_power(const PrimeModulus& modulus, std::int64_t e) {
  CyclotomicInt out(modulus);
  out.add_root_power(e);
  return out;
}

/// numerator / denominator with a positive integer denominator.
struct ScaledCyclotomic {
  CyclotomicInt numerator;
  std::int64_t denominator = 1;

  ScaledCyclotomic(CyclotomicInt num, std::int64_t den) : numerator(std::move(num)), denominator(den) {
    if (den <= 0) throw DomainError("ScaledCyclotomic: denominator must be positive");
  }

  std::complex<double> to_complex() const {
    return numerator.to_complex() / static_cast<double>(denominator);
  }

  friend bool operator==(const ScaledCyclotomic& a, const ScaledCyclotomic& b) {
    return a.numerator * b.denominator == b.numerator * a.denominator;
  }
};

/// A rows x cols matrix over (1/den) Z[w] with one shared denominator.
class ScaledMatrix {
 public:
  ScaledMatrix(const PrimeModulus& modulus, std::size_t rows, std::size_t cols, std::int64_t den = 1)
      : modulus_(modulus), rows_(rows), cols_(cols), den_(den), num_(rows * cols, CyclotomicInt(modulus)) {
    if (den <= 0) throw DomainError("ScaledMatrix: denominator must be positive");
  }

  static ScaledMatrix identity(const PrimeModulus& modulus, std::size_t size) {
    ScaledMatrix out(modulus, size, size);
    for (std::size_t i = 0; i < size; ++i) out.num(i, i) = CyclotomicInt::integer(modulus, 1);
    return out;
  }

  const PrimeModulus& modulus() const noexcept { return modulus_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::int64_t denominator() const noexcept { return den_; }

  CyclotomicInt& num(std::size_t r, std::size_t c) { return num_[r * cols_ + c]; }
  const CyclotomicInt& num(std::size_t r, std::size_t c) const { return num_[r * cols_ + c]; }
  ScaledCyclotomic at(std::size_t r, std::size_t c) const { return {num(r, c), den_}; }

  ScaledMatrix conj_transpose() const {
    ScaledMatrix out(modulus_, cols_, rows_, den_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) out.num(c, r) = num(r, c).conj();
    }
    return out;
  }

  friend ScaledMatrix operator*(const ScaledMatrix& a, const ScaledMatrix& b) {
    if (a.cols_ != b.rows_) throw MismatchError("ScaledMatrix: shape mismatch");
    std::int64_t den = 0;
    if (__builtin_mul_overflow(a.den_, b.den_, &den)) throw DomainError("ScaledMatrix: denominator overflow");
    ScaledMatrix out(a.modulus_, a.rows_, b.cols_, den);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const CyclotomicInt& lhs = a.num(r, k);
        if (lhs.is_zero()) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) out.num(r, c) += lhs * b.num(k, c);
      }
    }
    return out;
  }

  /// Exact equality of the represented rational-cyclotomic matrices.
  friend bool operator==(const ScaledMatrix& a, const ScaledMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.num_.size(); ++i) {
      if (!(a.num_[i] * b.den_ == b.num_[i] * a.den_)) return false;
    }
    return true;
  }

 private:
  PrimeModulus modulus_;
  std::size_t rows_;
  std::size_t cols_;
  std::int64_t den_;
  std::vector<CyclotomicInt> num_;
};

}  // namespace harmonic
