#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "cubics/gf2k.hpp"
#include "cubics/projspace.hpp"

namespace cubics {

struct Monomial {
  std::array<uint8_t, 4> e;  // exponents of x, y, z, t
};

// The fixed coefficient basis for cubic forms in 4 variables: all exponent
// tuples summing to 3, lexicographically descending on (e_x,e_y,e_z,e_t).
// Index 0 is x^3, index 19 is t^3. Every encoding in the repository (bit
// words, hex strings, cache files) is indexed by this list.
inline constexpr std::array<Monomial, 20> kCubicMonomials = {{
    {{3, 0, 0, 0}},  //  0: x^3
    {{2, 1, 0, 0}},  //  1: x^2 y
    {{2, 0, 1, 0}},  //  2: x^2 z
    {{2, 0, 0, 1}},  //  3: x^2 t
    {{1, 2, 0, 0}},  //  4: x y^2
    {{1, 1, 1, 0}},  //  5: x y z
    {{1, 1, 0, 1}},  //  6: x y t
    {{1, 0, 2, 0}},  //  7: x z^2
    {{1, 0, 1, 1}},  //  8: x z t
    {{1, 0, 0, 2}},  //  9: x t^2
    {{0, 3, 0, 0}},  // 10: y^3
    {{0, 2, 1, 0}},  // 11: y^2 z
    {{0, 2, 0, 1}},  // 12: y^2 t
    {{0, 1, 2, 0}},  // 13: y z^2
    {{0, 1, 1, 1}},  // 14: y z t
    {{0, 1, 0, 2}},  // 15: y t^2
    {{0, 0, 3, 0}},  // 16: z^3
    {{0, 0, 2, 1}},  // 17: z^2 t
    {{0, 0, 1, 2}},  // 18: z t^2
    {{0, 0, 0, 3}},  // 19: t^3
}};

// Same ordering for the 10 quadratic monomials (derivative carrier).
inline constexpr std::array<Monomial, 10> kQuadMonomials = {{
    {{2, 0, 0, 0}},
    {{1, 1, 0, 0}},
    {{1, 0, 1, 0}},
    {{1, 0, 0, 1}},
    {{0, 2, 0, 0}},
    {{0, 1, 1, 0}},
    {{0, 1, 0, 1}},
    {{0, 0, 2, 0}},
    {{0, 0, 1, 1}},
    {{0, 0, 0, 2}},
}};

int cubic_monomial_index(const std::array<uint8_t, 4>& e);
int quad_monomial_index(const std::array<uint8_t, 4>& e);

// Homogeneous cubic form in x,y,z,t; coefficient i belongs to monomial
// kCubicMonomials[i]. Over F_2 the form is canonically a 20-bit word.
struct CubicForm {
  const FieldSpec* spec;
  std::array<uint8_t, 20> c{};

  bool operator==(const CubicForm& o) const { return spec == o.spec && c == o.c; }
  bool operator<(const CubicForm& o) const { return c < o.c; }
  bool is_zero() const { return c == std::array<uint8_t, 20>{}; }
};

struct QuadForm {
  const FieldSpec* spec;
  std::array<uint8_t, 10> c{};

  bool operator==(const QuadForm& o) const { return spec == o.spec && c == o.c; }
};

// F_2 word encoding: bit i == coefficient of kCubicMonomials[i].
uint32_t form_index(const CubicForm& f);             // F_2 forms only
CubicForm form_from_index(uint32_t w);               // over F_2
std::string form_to_hex(uint32_t w);                 // 5 lowercase hex digits
uint32_t form_from_hex(const std::string& s);        // throws on malformed input

// Value of f at the normalized representative of p (same field). Zero/nonzero
// status is projectively invariant.
FieldElement evaluate(const CubicForm& f, const ProjPoint& p);
uint8_t evaluate_at(const CubicForm& f, std::span<const uint8_t> coords);
uint8_t evaluate_quad_at(const QuadForm& f, std::span<const uint8_t> coords);

// The substitution action: act(g, f)(v) = f(g v) on column vectors, expanded
// and reduced in characteristic 2. Composition: act(g, act(h, f)) = act(h*g, f).
// g must be invertible.
CubicForm act(const Matrix& g, const CubicForm& f);

// Formal partial derivative with respect to variable 0..3, characteristic-2
// exponent arithmetic.
QuadForm derivative(const CubicForm& f, int var);

// Reinterpret an F_2 form over a larger binary field (coefficients 0/1 embed
// unchanged).
CubicForm lift(const CubicForm& f, const FieldSpec& target);

// x^2 t + y^2 z + z^2 y + t^2 x, i.e. (x^2,y^2,z^2,t^2)^T Omega (x,y,z,t) for
// the anti-diagonal symplectic matrix Omega.
CubicForm symplectic_cubic_form(const FieldSpec& spec);
// x^3 + y^3 + z^3 + t^3.
CubicForm fermat_form(const FieldSpec& spec);

// a1*xy(x+y) + a2*xz(x+z) + a3*xt(x+t) + a4*yz(y+z) + a5*yt(y+t) + a6*zt(z+t)
// over F_2, with bit i-1 of `a` carrying a_i. All-zero a is rejected. These 63
// forms are exactly the cubics vanishing at every point of P^3(F_2).
CubicForm vanishing_family_form(unsigned a);

// The product of the q+1 linear forms cutting out hyperplanes through a line
// (q = 2: three hyperplanes).
struct PencilCubic {
  ProjLine line;
  CubicForm form;
};
PencilCubic pencil_cubic(const ProjLine& l);

// --- F_2 fast path -------------------------------------------------------

// Monomial values at a point of P^3 over GF(2^k): value[i] = m_i(coords).
// Addition of values is byte XOR, so an F_2 form evaluates at the point as
// the XOR of value[i] over its set bits.
std::array<uint8_t, 20> cubic_monomial_values(std::span<const uint8_t> coords,
                                              const FieldSpec& spec);
std::array<uint8_t, 10> quad_monomial_values(std::span<const uint8_t> coords,
                                             const FieldSpec& spec);

// 10-bit derivative word of a 20-bit form word.
uint16_t derivative_word(uint32_t w, int var);

// 20-bit word of variable * quadratic (both over F_2).
uint32_t var_times_quad(int var, uint16_t quad);

// Support mask of a point of P^3(F_2): bit i set iff monomial i is nonzero at
// the point; an F_2 form w vanishes there iff popcount(w & mask) is even.
uint32_t f2_point_mask(const ProjPoint& p);

// Precomputed coefficient-space action of one matrix of PGL_4(F_2): cols[i]
// is the word of act(g, monomial i). Linear over F_2, so the image of any
// form word is the XOR of the columns at its set bits.
class Gf2FormAction {
 public:
  explicit Gf2FormAction(const Matrix& g);

  uint32_t image(uint32_t w) const {
    uint32_t out = 0;
    while (w) {
      out ^= cols_[std::countr_zero(w)];
      w &= w - 1;
    }
    return out;
  }

  // Dense image table over all 2^20 words (4 MiB), for orbit sweeps.
  std::vector<uint32_t> full_table() const;

 private:
  std::array<uint32_t, 20> cols_{};
};

}  // namespace cubics
