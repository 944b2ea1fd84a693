#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace cubics {

// Arithmetic in GF(2^k) for k = 1..8. Elements are polynomial residues packed
// into a byte (bit i = coefficient of x^i). Multiplication and inversion run
// on log/antilog tables built once per field.
//
// Fixed moduli, so that every downstream table and cache file is
// bit-reproducible:
//
//   k=1  x+1 (0x3, prime-field sentinel)
//   k=2  x^2+x+1 (0x7)          k=3  x^3+x+1 (0xb)
//   k=4  0x13   k=5  0x25   k=6  0x43   k=7  0x83   k=8  0x11d
//
// For k >= 2 the modulus is the numerically smallest primitive polynomial of
// degree k, so x generates the multiplicative group.
class FieldSpec {
 public:
  // Shared immutable instance for extension degree k (1 <= k <= 8).
  static const FieldSpec& get(int k);

  int k() const { return k_; }
  int q() const { return q_; }
  uint16_t modulus() const { return modulus_; }

  uint8_t add(uint8_t a, uint8_t b) const { return a ^ b; }

  uint8_t mul(uint8_t a, uint8_t b) const {
    if (a == 0 || b == 0) return 0;
    int s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }

  // Multiplicative inverse; a must be nonzero.
  uint8_t inv(uint8_t a) const;

  uint8_t div(uint8_t a, uint8_t b) const { return mul(a, inv(b)); }

  uint8_t pow(uint8_t a, uint64_t e) const;

  // x^i for 0 <= i < q-1.
  uint8_t generator_pow(int i) const { return exp_[i]; }

 private:
  explicit FieldSpec(int k);

  int k_;
  int q_;
  uint16_t modulus_;
  std::array<uint8_t, 256> log_{};
  std::array<uint8_t, 256> exp_{};
};

// A field element tied to its FieldSpec. Value type; operations on elements
// of different fields are contract violations and throw.
class FieldElement {
 public:
  FieldElement() : bits_(0), spec_(&FieldSpec::get(1)) {}
  FieldElement(uint8_t bits, const FieldSpec& spec) : bits_(bits), spec_(&spec) {}

  uint8_t bits() const { return bits_; }
  const FieldSpec& spec() const { return *spec_; }
  bool is_zero() const { return bits_ == 0; }

  FieldElement operator+(FieldElement o) const;
  FieldElement operator*(FieldElement o) const;
  FieldElement operator/(FieldElement o) const;
  FieldElement inverse() const;

  bool operator==(const FieldElement& o) const {
    return bits_ == o.bits_ && spec_ == o.spec_;
  }

 private:
  uint8_t bits_;
  const FieldSpec* spec_;
};

// Dense n x n matrix over GF(2^k), n in {1,..,4}, one byte per entry,
// row-major. Value type; equality is byte-wise.
class Matrix {
 public:
  Matrix(int n, const FieldSpec& spec);
  static Matrix identity(int n, const FieldSpec& spec);
  static Matrix from_rows(std::initializer_list<std::initializer_list<int>> rows,
                          const FieldSpec& spec);

  int n() const { return n_; }
  const FieldSpec& field() const { return *spec_; }

  uint8_t at(int r, int c) const { return a_[r * n_ + c]; }
  void set(int r, int c, uint8_t v) { a_[r * n_ + c] = v; }
  FieldElement elem(int r, int c) const { return {at(r, c), *spec_}; }

  Matrix operator*(const Matrix& rhs) const;
  bool operator==(const Matrix& rhs) const {
    return n_ == rhs.n_ && spec_ == rhs.spec_ && a_ == rhs.a_;
  }

  Matrix transposed() const;
  uint8_t determinant() const;

  // m^-1, or nullopt when the determinant is zero. NotInvertible is a normal
  // outcome, not a fault.
  std::optional<Matrix> inverse() const;

  // m * v for a column vector v of n entries.
  std::array<uint8_t, 4> apply(std::span<const uint8_t> v) const;

  // Scale so the first nonzero entry in row-major scan equals 1. This is the
  // canonical PGL representative: two matrices give the same PGL element iff
  // their normalized forms are byte-identical.
  void projective_normalize();

  // Row-major entry bytes (n*n of them); unused tail is zero.
  std::span<const uint8_t> data() const { return {a_.data(), size_t(n_ * n_)}; }

  // Two lowercase hex chars per entry, row-major.
  std::string hex() const;

 private:
  int n_;
  const FieldSpec* spec_;
  std::array<uint8_t, 16> a_{};
};

// Rank of a list of row vectors (width entries each) over the field.
int row_rank(std::span<const std::array<uint8_t, 4>> rows, int width,
             const FieldSpec& spec);

// In-place reduced row echelon form; returns the rank. Rows of width entries.
int rref_in_place(std::span<std::array<uint8_t, 4>> rows, int width,
                  const FieldSpec& spec);

}  // namespace cubics
