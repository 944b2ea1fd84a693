#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "cubics/jordan.hpp"

using namespace cubics;

TEST_CASE("formula table") {
  OrderFormulas f2 = formula_table(2);
  CHECK(f2.pgl3 == 168);
  CHECK(f2.wps_aut == 48);
  OrderFormulas f4 = formula_table(4);
  CHECK(f4.pgl3 == 60480);
  CHECK(f4.wps_aut == 11520);
  OrderFormulas f8 = formula_table(8);
  CHECK(f8.pgl3 == 16482816);
  CHECK(f8.wps_aut == 1806336);
  CHECK_THROWS(formula_table(3));

  // wps_aut(q) = |GL_2(F_q)| * q^3.
  for (int q : {2, 4, 8}) {
    OrderFormulas f = formula_table(q);
    long gl2 = (long(q) * q - 1) * (long(q) * q - q);
    CHECK(f.wps_aut == gl2 * q * q * q);
    CHECK(f.pgl_bound == f.pgl3);
  }
}

TEST_CASE("gcd checks") {
  GcdChecks g = gcd_checks();
  CHECK(g.gcd_a7_weyl == 360);
  CHECK(g.gcd_max2_weyl == 192);
  CHECK(g.both_below_720);
  CHECK(!g.pgl4_divides_weyl);
  CHECK(g.weyl_factorization_ok);
}

TEST_CASE("weighted plane automorphism counts, enumeration vs formula") {
  CHECK(wps_aut_enumerate(2) == 48);
  CHECK(wps_aut_enumerate(2) == formula_table(2).wps_aut);
  CHECK(wps_aut_enumerate(4) == formula_table(4).wps_aut);
  CHECK(2 * 48 < 168);
  for (int q : {2, 4, 8}) {
    OrderFormulas f = formula_table(q);
    CHECK(2 * f.wps_aut < f.pgl3);
  }
  CHECK_THROWS(wps_aut_enumerate(8));
}

TEST_CASE("jordan constant for q = 2") {
  OrbitPartition part = build_partition();
  CensusReport census = census_report(part, orbit_records(part, 4));
  JordanOptions opts;
  opts.census = &census;
  JordanReport report = jordan_constant(2, opts);
  CHECK(report.constant == 720);
  CHECK(report.all_machine_checks_pass);
  CHECK(report.constant > formula_table(2).pgl3);  // 720 > 168

  CHECK_THROWS_AS(jordan_constant(2, JordanOptions{}), std::invalid_argument);
}

TEST_CASE("jordan constant for q = 4") {
  JordanReport report = jordan_constant(4, JordanOptions{});
  CHECK(report.constant == 60480);
  CHECK(report.all_machine_checks_pass);
  CHECK(report.constant == formula_table(4).pgl3);
}

TEST_CASE("jordan constant for q = 8, default run cites the radical fact") {
  JordanReport report = jordan_constant(8, JordanOptions{});
  CHECK(report.constant == 16482816);
  CHECK(report.all_machine_checks_pass);
  CHECK(report.constant == formula_table(8).pgl3);
  bool found_cited = false;
  for (const auto& ing : report.ingredients)
    if (!ing.machine_verified && ing.name.find("PGL_3(F_8)") != std::string::npos)
      found_cited = true;
  CHECK(found_cited);
}

TEST_CASE("jordan constant for q = 8 with the opt-in materialization" *
          doctest::skip(std::getenv("CUBICS_VERIFY_PGL3_F8") == nullptr)) {
  JordanOptions opts;
  opts.verify_pgl3_f8 = true;
  opts.threads = 8;
  JordanReport report = jordan_constant(8, opts);
  CHECK(report.constant == 16482816);
  CHECK(report.all_machine_checks_pass);
  bool simple_checked = false;
  for (const auto& ing : report.ingredients)
    if (ing.machine_verified && ing.name.find("simple") != std::string::npos &&
        ing.pass)
      simple_checked = true;
  CHECK(simple_checked);
}
