// Acceptance gate: every criterion below prints one PASS/FAIL line with its
// measured values. Exit status is 0 iff criteria 1-10 all pass; criterion 11
// is opt-in (--verify-pgl3-f8 or CUBICS_VERIFY_PGL3_F8=1) and never blocks.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <set>
#include <thread>

#include "cubics/census.hpp"
#include "cubics/jordan.hpp"
#include "cubics/recognize.hpp"

using namespace cubics;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Timer {
  Clock::time_point start = Clock::now();
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start).count();
  }
};

void line(int criterion, bool pass, const std::string& text, double seconds) {
  std::printf("criterion %2d: %s  %s  (%.2fs)\n", criterion,
              pass ? "PASS" : "FAIL", text.c_str(), seconds);
  if (!pass) ++failures;
}

const FieldSpec& F2 = FieldSpec::get(1);

}  // namespace

int main(int argc, char** argv) {
  bool verify_f8 = std::getenv("CUBICS_VERIFY_PGL3_F8") != nullptr;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--verify-pgl3-f8") == 0) verify_f8 = true;
  int threads = int(std::max(1u, std::thread::hardware_concurrency()));

  // --- criterion 1: census totals, exact, <= 10 min ------------------------
  Timer t1;
  OrbitPartition partition = build_partition();
  std::vector<OrbitRecord> records = orbit_records(partition, threads);
  uint64_t total = 0;
  bool orbit_stab_ok = true;
  for (const auto& rec : records) {
    total += rec.orbit_size;
    if (uint64_t(rec.aut_order) * rec.orbit_size != 20160) orbit_stab_ok = false;
  }
  double c1s = t1.seconds();
  line(1, total == 1048575 && orbit_stab_ok && c1s <= 600.0,
       "census covers " + std::to_string(total) + " forms in " +
           std::to_string(records.size()) +
           " orbits; aut*orbit = 20160 everywhere",
       c1s);

  // --- criterion 2: unique smooth orbit with stabilizer order 720 ----------
  Timer t2;
  uint32_t max_aut = 0;
  int attained = 0;
  uint32_t winner = 0;
  for (const auto& rec : records) {
    if (!rec.smooth) continue;
    if (rec.aut_order > max_aut) max_aut = rec.aut_order, attained = 1, winner = rec.rep;
    else if (rec.aut_order == max_aut) ++attained;
  }
  uint32_t symplectic_word = form_index(symplectic_cubic_form(F2));
  bool c2 = max_aut == 720 && attained == 1 &&
            partition.find(symplectic_word) == winner;
  line(2, c2,
       "max smooth stabilizer order " + std::to_string(max_aut) + ", attained " +
           std::to_string(attained) + "x, orbit of " + form_to_hex(symplectic_word),
       t2.seconds());

  // --- criterion 3: the 63 / 35 / 28 split ---------------------------------
  Timer t3;
  bool c3 = false;
  std::string c3_text = "fifteen-point analysis failed";
  try {
    FifteenPointSummary s = fifteen_point_analysis(records, partition);
    c3 = s.forms_on_all_15 == 63 && s.pencil_count == 35 && s.smooth_count == 28;
    c3_text = std::to_string(s.forms_on_all_15) + " forms on all 15 points = " +
              std::to_string(s.pencil_count) + " singular pencils + " +
              std::to_string(s.smooth_count) + " smooth, one orbit";
  } catch (const std::exception& e) {
    c3_text = e.what();
  }
  line(3, c3, c3_text, t3.seconds());

  // --- criterion 4: the symplectic filter package, <= 30 s -----------------
  Timer t4;
  bool c4 = false;
  std::string c4_text;
  {
    Matrix omega = Matrix::from_rows(
        {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}}, F2);
    FiniteGroup sp = symplectic_group(omega);
    FiniteGroup stab = stabilizer(pgl4_f2(), symplectic_cubic_form(F2));
    bool sets_equal = sp.order() == stab.order();
    for (size_t i = 0; i < sp.order() && sets_equal; ++i)
      if (!stab.find_matrix(sp.matrix_at(int(i))).has_value()) sets_equal = false;
    auto witness = is_isomorphic(stab, symmetric_group(6));
    ProjLine l1{&F2, {{{0, 0, 1, 0}, {0, 0, 0, 1}}}};
    ProjLine l2{&F2, {{{1, 0, 0, 0}, {0, 1, 0, 0}}}};
    bool lines_on_surface = true;
    for (const auto& l : {l1, l2})
      for (const auto& p : points_on_line(l))
        if (!evaluate(symplectic_cubic_form(F2), p).is_zero())
          lines_on_surface = false;
    double c4s = t4.seconds();
    c4 = sp.order() == 720 && sets_equal && witness.has_value() &&
         witness->verified && lines_on_surface && are_skew(l1, l2) && c4s <= 30.0;
    c4_text = "filter order " + std::to_string(sp.order()) +
              ", set-equal to the stabilizer, S_6 witness verified, the two "
              "coordinate lines lie on the surface and are skew";
  }
  line(4, c4, c4_text, t4.seconds());

  // --- criterion 5: the four certificates, (d) <= 60 s ---------------------
  Timer t5;
  bool c5 = false;
  std::string c5_text;
  {
    FiniteGroup stab = stabilizer(pgl4_f2(), symplectic_cubic_form(F2));
    PointActionCertificates cert = compute_point_action_certificates(stab);
    c5 = cert.all_pass() && cert.seconds[3] <= 60.0;
    c5_text = "(a) 168 not divisible by 5, (b) normal orders {1,360,720} bar "
              "index 5, (c) faithful transitive on 15, (d) " +
              std::to_string(cert.forms_scanned) + " forms scanned, " +
              std::to_string(cert.forms_without_rational_point) +
              " without a rational point";
  }
  line(5, c5, c5_text, t5.seconds());

  // --- criterion 6: weighted-plane counts and strict bound ------------------
  Timer t6;
  bool c6 = wps_aut_enumerate(2) == 48 &&
            wps_aut_enumerate(2) == formula_table(2).wps_aut &&
            wps_aut_enumerate(4) == formula_table(4).wps_aut;
  for (int q : {2, 4, 8}) {
    OrderFormulas f = formula_table(q);
    if (2 * f.wps_aut >= f.pgl3) c6 = false;
  }
  line(6, c6,
       "enumerated 48 (q=2) and " + std::to_string(wps_aut_enumerate(4)) +
           " (q=4) = q^4(q-1)^2(q+1); 2*bound < q^3(q^3-1)(q^2-1) for q=2,4,8",
       t6.seconds());

  // --- criterion 7: gcd and factorization arithmetic ------------------------
  Timer t7;
  GcdChecks g = gcd_checks();
  bool c7 = g.gcd_a7_weyl == 360 && g.gcd_max2_weyl == 192 &&
            !g.pgl4_divides_weyl && g.weyl_factorization_ok;
  line(7, c7,
       "gcd(2520,51840) = " + std::to_string(g.gcd_a7_weyl) +
           ", gcd(1344,51840) = " + std::to_string(g.gcd_max2_weyl) +
           ", 20160 does not divide 51840, 51840 = 2^7 3^4 5",
       t7.seconds());

  // --- criterion 8: the Jordan constant table, <= 5 min ---------------------
  Timer t8;
  bool c8 = false;
  std::string c8_text;
  try {
    CensusReport census = census_report(partition, records);
    JordanOptions jopts;
    jopts.census = &census;
    jopts.threads = threads;
    JordanReport j2 = jordan_constant(2, jopts);
    JordanReport j4 = jordan_constant(4, JordanOptions{});
    JordanReport j8 = jordan_constant(8, JordanOptions{});
    long idx_pgl3_f2 = min_index_normal_abelian(pgl3_group(F2));
    double c8s = t8.seconds();
    c8 = j2.constant == 720 && j4.constant == 60480 && j8.constant == 16482816 &&
         j2.all_machine_checks_pass && j4.all_machine_checks_pass &&
         j8.all_machine_checks_pass && idx_pgl3_f2 == 168 && c8s <= 300.0;
    c8_text = "J = 720 / 60480 / 16482816; normal abelian radical trivial for "
              "the 720 group, PGL_3(F_2) (index 168) and PGL_3(F_4) (index 60480)";
  } catch (const std::exception& e) {
    c8_text = e.what();
  }
  line(8, c8, c8_text, t8.seconds());

  // --- criterion 9: smoothness oracle agreement -----------------------------
  Timer t9;
  int conflicts = 0, decided = 0;
  auto agree = [&](const CubicForm& f) {
    bool groebner =
        is_smooth(f, 4, SmoothnessVerdict::Method::groebner).smooth;
    SmoothnessVerdict search = is_smooth(f, 4, SmoothnessVerdict::Method::search);
    ++decided;
    // A found witness must match a singular Groebner verdict; an inconclusive
    // search (no witness at k <= 4) is only acceptable when Groebner says
    // smooth.
    if (search.witness.has_value() == groebner) ++conflicts;
  };
  for (unsigned a = 1; a < 64; ++a) agree(vanishing_family_form(a));
  std::mt19937 rng(2026);
  std::uniform_int_distribution<uint32_t> dist(1, (1u << 20) - 1);
  for (int i = 0; i < 200; ++i) agree(form_from_index(dist(rng)));
  line(9, conflicts == 0,
       std::to_string(decided) + " forms double-checked, " +
           std::to_string(conflicts) + " Groebner/search conflicts",
       t9.seconds());

  // --- criterion 10: property suites ----------------------------------------
  Timer t10;
  bool axioms_ok = true;
  for (int k = 1; k <= 8 && axioms_ok; ++k) {
    const FieldSpec& F = FieldSpec::get(k);
    int q = F.q();
    for (int a = 0; a < q && axioms_ok; ++a) {
      if (a != 0 && F.mul(uint8_t(a), F.inv(uint8_t(a))) != 1) axioms_ok = false;
      for (int b = 0; b < q && axioms_ok; ++b) {
        if (F.mul(uint8_t(a), uint8_t(b)) != F.mul(uint8_t(b), uint8_t(a)))
          axioms_ok = false;
        uint8_t sq_sum = F.mul(F.add(uint8_t(a), uint8_t(b)), F.add(uint8_t(a), uint8_t(b)));
        if (sq_sum != F.add(F.mul(uint8_t(a), uint8_t(a)), F.mul(uint8_t(b), uint8_t(b))))
          axioms_ok = false;  // Frobenius additivity
        for (int c = 0; c < q; ++c) {
          if (F.mul(F.mul(uint8_t(a), uint8_t(b)), uint8_t(c)) !=
              F.mul(uint8_t(a), F.mul(uint8_t(b), uint8_t(c)))) {
            axioms_ok = false;
            break;
          }
          if (F.mul(uint8_t(a), F.add(uint8_t(b), uint8_t(c))) !=
              F.add(F.mul(uint8_t(a), uint8_t(b)), F.mul(uint8_t(a), uint8_t(c)))) {
            axioms_ok = false;
            break;
          }
        }
      }
    }
  }

  bool euler_ok = true;
  {
    std::array<uint32_t, 20> euler_col{};
    for (int m = 0; m < 20; ++m) {
      uint32_t w = 1u << m;
      uint32_t acc = 0;
      for (int v = 0; v < 4; ++v) acc ^= var_times_quad(v, derivative_word(w, v));
      euler_col[m] = acc;
    }
    for (uint32_t w = 0; w < (1u << 20) && euler_ok; ++w) {
      uint32_t acc = 0, rest = w;
      while (rest) {
        acc ^= euler_col[std::countr_zero(rest)];
        rest &= rest - 1;
      }
      if (acc != w) euler_ok = false;
    }
  }

  bool action_ok = true;
  {
    std::mt19937 arng(0xacc3);
    std::uniform_int_distribution<uint32_t> dist20(1, (1u << 20) - 1);
    auto pts = enumerate_points(3, F2);
    const FiniteGroup& G = pgl4_f2();
    for (int trial = 0; trial < 500 && action_ok; ++trial) {
      Matrix g = G.matrix_at(int(arng() % G.order()));
      Matrix h = G.matrix_at(int(arng() % G.order()));
      CubicForm f = form_from_index(dist20(arng));
      if (!(act(g, act(h, f)) == act(h * g, f))) action_ok = false;
      const ProjPoint& p = pts[arng() % pts.size()];
      if (evaluate(act(g, f), p).is_zero() != evaluate(f, apply(g, p)).is_zero())
        action_ok = false;
    }
  }

  bool invariance_ok = true;
  {
    std::mt19937 srng(0x0dd5);
    std::uniform_int_distribution<uint32_t> dist20(1, (1u << 20) - 1);
    const FiniteGroup& G = pgl4_f2();
    for (int trial = 0; trial < 200 && invariance_ok; ++trial) {
      CubicForm f = form_from_index(dist20(srng));
      Matrix g = G.matrix_at(int(srng() % G.order()));
      if (is_smooth(f).smooth != is_smooth(act(g, f)).smooth) invariance_ok = false;
    }
  }

  line(10, axioms_ok && euler_ok && action_ok && invariance_ok,
       std::string("field axioms exhaustive (q <= 256): ") +
           (axioms_ok ? "ok" : "FAIL") + "; Euler identity over all 2^20 words: " +
           (euler_ok ? "ok" : "FAIL") + "; action compatibility x500: " +
           (action_ok ? "ok" : "FAIL") + "; smoothness orbit-invariance x200: " +
           (invariance_ok ? "ok" : "FAIL"),
       t10.seconds());

  // --- criterion 11: optional PGL_3(F_8) materialization --------------------
  if (verify_f8) {
    Timer t11;
    try {
      Pgl3F8Report rep = verify_pgl3_f8_simple(threads);
      line(11, rep.order == 16482816 && rep.simple,
           "order " + std::to_string(rep.order) + ", " +
               std::to_string(rep.classes) +
               " classes, every class closure is the whole group",
           t11.seconds());
    } catch (const std::exception& e) {
      line(11, false, e.what(), t11.seconds());
    }
    if (failures > 0) {
      std::printf("acceptance: FAIL (%d criteria)\n", failures);
      return 1;
    }
  } else {
    std::printf("criterion 11: SKIPPED (opt-in: --verify-pgl3-f8 or "
                "CUBICS_VERIFY_PGL3_F8=1; expect ~2 min and ~0.7 GiB with 8 "
                "threads)\n");
  }

  std::printf("acceptance: %s\n", failures == 0 ? "PASS" : "FAIL");
  return failures == 0 ? 0 : 1;
}
