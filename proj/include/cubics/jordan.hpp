#pragma once

#include <string>
#include <vector>

#include "cubics/census.hpp"
#include "cubics/grouptool.hpp"

namespace cubics {

// Closed-form order constants for the groups in play.
struct OrderFormulas {
  long q = 0;
  long pgl3 = 0;       // q^3 (q^3-1)(q^2-1)
  long pgl_bound = 0;  // the same value under its role as the general-q constant
  long wps_aut = 0;    // |Aut P(1,1,2)| = q^4 (q-1)^2 (q+1)

  static constexpr long kWeylE6 = 51840;   // 2^7 3^4 5
  static constexpr long kPsu4F2 = 25920;   // 2^6 3^4 5
  static constexpr long kA7 = 2520;
  static constexpr long kMax2 = 1344;      // |2^3 : PGL_3(F_2)|
  static constexpr long kPgl4F2 = 20160;
};

OrderFormulas formula_table(int q);  // q in {2, 4, 8}

struct GcdChecks {
  long gcd_a7_weyl = 0;    // expect 360
  long gcd_max2_weyl = 0;  // expect 192
  bool both_below_720 = false;
  bool pgl4_divides_weyl = true;       // expect false
  bool weyl_factorization_ok = false;  // 51840 = 2^7 3^4 5
};

GcdChecks gcd_checks();

// |Aut(P(1,1,2))| over F_q by direct enumeration: tuples
// ([ab;cd] invertible, e nonzero, f a binary quadratic form) up to the
// weighted scalar identification (M, e, f) ~ (uM, u^2 e, u^2 f).
long wps_aut_enumerate(int q);  // q in {2, 4}

struct JordanIngredient {
  std::string name;
  std::string value;     // decimal string
  std::string expected;  // decimal string, empty when free-form
  bool machine_verified = false;  // false = cited from the literature
  bool pass = false;
};

struct JordanReport {
  int q = 0;
  long constant = 0;
  std::string witness;
  std::vector<JordanIngredient> ingredients;
  bool all_machine_checks_pass = false;
};

struct JordanOptions {
  bool verify_pgl3_f8 = false;
  int threads = 1;
  const CensusReport* census = nullptr;  // required when q = 2
};

// Assemble the constant for one field size. Throws std::invalid_argument when
// the q = 2 census is missing, CensusMismatch/CertificateFailure when an
// ingredient fails.
JordanReport jordan_constant(int q, const JordanOptions& options);

}  // namespace cubics
