#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cubics/gf2k.hpp"
#include "test_util.hpp"

using namespace cubics;

namespace {

// Schoolbook carry-less multiply + reduction, independent of the log tables.
uint16_t slow_poly_mul(uint16_t a, uint16_t b) {
  uint16_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    a <<= 1;
    b >>= 1;
  }
  return r;
}

int poly_degree(uint32_t p) {
  int d = -1;
  while (p) {
    ++d;
    p >>= 1;
  }
  return d;
}

uint32_t slow_poly_mod(uint32_t a, uint32_t m) {
  int dm = poly_degree(m);
  while (a && poly_degree(a) >= dm) a ^= m << (poly_degree(a) - dm);
  return a;
}

uint8_t slow_mul(uint8_t a, uint8_t b, const FieldSpec& F) {
  return uint8_t(slow_poly_mod(slow_poly_mul(a, b), F.modulus()));
}

bool slow_irreducible(uint32_t m, int k) {
  for (int d = 1; d <= k / 2; ++d)
    for (uint32_t p = 1u << d; p < (2u << d); ++p)
      if (slow_poly_mod(m, p) == 0) return false;
  return true;
}

// Multiplicative order of x mod m equals 2^k - 1.
bool slow_primitive(uint32_t m, int k) {
  if (!slow_irreducible(m, k)) return false;
  uint32_t acc = slow_poly_mod(2, m);
  int e = 1;
  while (acc != 1) {
    acc = slow_poly_mod(slow_poly_mul(uint16_t(acc), 2), m);
    if (++e > (1 << k)) return false;
  }
  return e == (1 << k) - 1;
}

}  // namespace

TEST_CASE("fixed moduli are the smallest primitive polynomials") {
  for (int k = 2; k <= 8; ++k) {
    uint32_t expected = 0;
    for (uint32_t m = 1u << k; m < (2u << k); ++m) {
      if (slow_primitive(m, k)) {
        expected = m;
        break;
      }
    }
    CHECK(FieldSpec::get(k).modulus() == expected);
  }
  CHECK(FieldSpec::get(1).modulus() == 0x3);
}

TEST_CASE("spec basics") {
  for (int k = 1; k <= 8; ++k) {
    const FieldSpec& F = FieldSpec::get(k);
    CHECK(F.q() == (1 << k));
    CHECK(F.k() == k);
  }
}

TEST_CASE("table multiplication agrees with schoolbook reduction") {
  for (int k = 1; k <= 8; ++k) {
    const FieldSpec& F = FieldSpec::get(k);
    for (int a = 0; a < F.q(); ++a)
      for (int b = 0; b < F.q(); ++b)
        CHECK(F.mul(uint8_t(a), uint8_t(b)) == slow_mul(uint8_t(a), uint8_t(b), F));
  }
}

TEST_CASE("addition examples") {
  const FieldSpec& F2 = FieldSpec::get(1);
  const FieldSpec& F4 = FieldSpec::get(2);
  const FieldSpec& F8 = FieldSpec::get(3);
  CHECK(F2.add(1, 1) == 0);
  CHECK(F4.add(2, 2) == 0);      // alpha + alpha
  CHECK(F8.add(2, 3) == 1);      // x + (x+1)
}

TEST_CASE("multiplication examples") {
  const FieldSpec& F4 = FieldSpec::get(2);
  const FieldSpec& F8 = FieldSpec::get(3);
  CHECK(F4.mul(2, 2) == 3);      // alpha^2 = alpha + 1 mod x^2+x+1
  CHECK(F8.mul(2, 4) == 3);      // x * x^2 = x + 1 mod x^3+x+1
  for (int k = 1; k <= 8; ++k) {
    const FieldSpec& F = FieldSpec::get(k);
    for (int a = 0; a < F.q(); ++a) CHECK(F.mul(uint8_t(a), 1) == a);
  }
}

TEST_CASE("field axioms, exhaustive for every k <= 8") {
  for (int k = 1; k <= 8; ++k) {
    const FieldSpec& F = FieldSpec::get(k);
    int q = F.q();
    for (int a = 0; a < q; ++a) {
      if (a != 0) {
        uint8_t ai = F.inv(uint8_t(a));
        CHECK(F.mul(uint8_t(a), ai) == 1);
      }
      for (int b = 0; b < q; ++b) {
        CHECK(F.mul(uint8_t(a), uint8_t(b)) == F.mul(uint8_t(b), uint8_t(a)));
        for (int c = 0; c < q; ++c) {
          CHECK(F.mul(F.mul(uint8_t(a), uint8_t(b)), uint8_t(c)) ==
                F.mul(uint8_t(a), F.mul(uint8_t(b), uint8_t(c))));
          CHECK(F.mul(uint8_t(a), F.add(uint8_t(b), uint8_t(c))) ==
                F.add(F.mul(uint8_t(a), uint8_t(b)), F.mul(uint8_t(a), uint8_t(c))));
        }
      }
    }
  }
}

TEST_CASE("Frobenius is additive, exhaustive for every k <= 8") {
  for (int k = 1; k <= 8; ++k) {
    const FieldSpec& F = FieldSpec::get(k);
    for (int a = 0; a < F.q(); ++a)
      for (int b = 0; b < F.q(); ++b) {
        uint8_t lhs = F.mul(F.add(uint8_t(a), uint8_t(b)), F.add(uint8_t(a), uint8_t(b)));
        uint8_t rhs = F.add(F.mul(uint8_t(a), uint8_t(a)), F.mul(uint8_t(b), uint8_t(b)));
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("FieldElement operators") {
  const FieldSpec& F4 = FieldSpec::get(2);
  FieldElement alpha(2, F4);
  CHECK((alpha * alpha).bits() == 3);
  CHECK((alpha + alpha).is_zero());
  CHECK((alpha / alpha).bits() == 1);
  CHECK(alpha.inverse().bits() == 3);  // alpha * (alpha+1) = alpha^2+alpha = 1
}

TEST_CASE("matrix identity and involution examples") {
  const FieldSpec& F2 = FieldSpec::get(1);
  Matrix id = Matrix::identity(4, F2);
  CHECK(id.inverse().value() == id);

  Matrix omega = test::omega_matrix();
  CHECK(omega * omega == id);
  CHECK(omega.inverse().value() == omega);

  Matrix zero(4, F2);
  CHECK(!zero.inverse().has_value());
  CHECK(zero.determinant() == 0);
}

TEST_CASE("inverse times original is the identity, random matrices") {
  std::mt19937 rng(0x5eed);
  for (int k : {1, 2, 3}) {
    const FieldSpec& F = FieldSpec::get(k);
    for (int n = 2; n <= 4; ++n) {
      Matrix id = Matrix::identity(n, F);
      for (int trial = 0; trial < 1000; ++trial) {
        Matrix m = test::random_invertible(n, F, rng);
        CHECK(m.inverse().value() * m == id);
      }
    }
  }
}

TEST_CASE("projective normalization") {
  const FieldSpec& F4 = FieldSpec::get(2);
  Matrix m = Matrix::from_rows({{0, 2}, {3, 1}}, F4);
  Matrix expect = Matrix::from_rows({{0, 1}, {2, 3}}, F4);  // scaled by inv(2)=3
  m.projective_normalize();
  CHECK(m == expect);
}

TEST_CASE("rref and rank") {
  const FieldSpec& F2 = FieldSpec::get(1);
  std::vector<std::array<uint8_t, 4>> rows = {
      {1, 1, 0, 0}, {0, 1, 1, 0}, {1, 0, 1, 0}};
  CHECK(row_rank(rows, 4, F2) == 2);
  CHECK(rref_in_place(rows, 4, F2) == 2);
  CHECK(rows[0] == std::array<uint8_t, 4>{1, 0, 1, 0});
  CHECK(rows[1] == std::array<uint8_t, 4>{0, 1, 1, 0});
}
