#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cubics/forms.hpp"
#include "cubics/gf2k.hpp"
#include "cubics/projspace.hpp"

namespace cubics {

// Exponent tuple of a monomial in x,y,z,t (exponents may exceed 3 here).
using Expo = std::array<uint8_t, 4>;

int expo_degree(const Expo& e);

// Graded reverse lexicographic order with x > y > z > t, the fixed monomial
// order for every Groebner computation in the repository.
bool grevlex_greater(const Expo& a, const Expo& b);

bool expo_divides(const Expo& d, const Expo& m);
Expo expo_lcm(const Expo& a, const Expo& b);

// Sparse polynomial over GF(2^k): grevlex-descending term list, no zero
// coefficients stored.
class SparsePoly {
 public:
  explicit SparsePoly(const FieldSpec& spec) : spec_(&spec) {}
  static SparsePoly from_cubic(const CubicForm& f);
  static SparsePoly from_quad(const QuadForm& f);
  static SparsePoly constant(uint8_t value, const FieldSpec& spec);
  static SparsePoly monomial(const Expo& e, uint8_t coeff, const FieldSpec& spec);

  const FieldSpec& spec() const { return *spec_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<std::pair<Expo, uint8_t>>& terms() const { return terms_; }
  const Expo& leading_expo() const { return terms_.front().first; }
  uint8_t leading_coeff() const { return terms_.front().second; }
  bool is_one() const;

  SparsePoly operator+(const SparsePoly& o) const;
  // p * c*x^e
  SparsePoly times_term(const Expo& e, uint8_t coeff) const;
  SparsePoly monic() const;

  // Substitute variable `var` := 1 (drop its exponent, merge collisions).
  SparsePoly dehomogenized(int var) const;

  uint8_t evaluate(std::span<const uint8_t> coords) const;

  bool operator==(const SparsePoly& o) const {
    return spec_ == o.spec_ && terms_ == o.terms_;
  }

  // Internal: set a coefficient before normalization.
  void add_term(const Expo& e, uint8_t coeff);

 private:
  const FieldSpec* spec_;
  std::vector<std::pair<Expo, uint8_t>> terms_;
};

struct IdealBasis {
  std::vector<SparsePoly> gens;
};

// Generators {f, f_x, f_y, f_z, f_t} of the Jacobian ideal. f is redundant by
// the characteristic-2 Euler identity but kept for robustness.
IdealBasis jacobian_ideal(const CubicForm& f);

// Full remainder of p on division by the basis (every term reduced).
SparsePoly normal_form(const SparsePoly& p, const std::vector<SparsePoly>& basis);

// Reduced Groebner basis under grevlex, deterministic: normal pair strategy
// (lowest lcm degree first) with both Buchberger elimination criteria, full
// inter-reduction, monic generators sorted by leading monomial.
IdealBasis buchberger(const IdealBasis& b);

struct SmoothnessVerdict {
  enum class Method { groebner, search, both };

  bool smooth = false;
  // Present iff not smooth and the search found a singular point: extension
  // degree k and a point of P^3(GF(2^k)) where f and all partials vanish.
  std::optional<std::pair<int, ProjPoint>> witness;
  Method certificate = Method::both;
};

// Decide smoothness of the surface f = 0 over the algebraic closure.
//
// Groebner route: for each affine chart v = 1 the dehomogenized Jacobian
// ideal must have reduced basis {1}; any chart with solutions (over the
// closure) means a singular point. Search route: scan P^3(GF(2^k)) for
// k = 1..kmax for a common zero of the Jacobian system. With Method::both
// the Groebner certificate decides and the search cross-checks; a witness
// found while Groebner claims smoothness throws.
SmoothnessVerdict is_smooth(const CubicForm& f, int kmax = 4,
                            SmoothnessVerdict::Method method =
                                SmoothnessVerdict::Method::both);

}  // namespace cubics
