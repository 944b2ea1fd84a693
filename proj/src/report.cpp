#include "cubics/report.hpp"

#include <chrono>
#include <cinttypes>
#include <filesystem>

#include <json.hpp>

#include "cubics/recognize.hpp"

namespace cubics {

namespace {

using Clock = std::chrono::steady_clock;

std::string dec(uint64_t v) { return std::to_string(v); }

class SuiteBuilder {
 public:
  explicit SuiteBuilder(Report& report) : report_(report) {}

  // Run one named computation; `fn` returns {pass, value, expected}.
  template <typename Fn>
  void check(const std::string& name, Fn&& fn) {
    Check c;
    c.name = name;
    auto t0 = Clock::now();
    try {
      auto [pass, value, expected] = fn();
      c.pass = pass;
      c.value = value;
      c.expected = expected;
    } catch (const std::exception& e) {
      c.pass = false;
      c.value = std::string("error: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    report_.checks.push_back(std::move(c));
  }

  void equal(const std::string& name, uint64_t value, uint64_t expected) {
    check(name, [&] { return std::tuple(value == expected, dec(value), dec(expected)); });
  }

  void truth(const std::string& name, bool pass, const std::string& value) {
    check(name, [&] { return std::tuple(pass, value, std::string("true")); });
  }

  void push(Check c) { report_.checks.push_back(std::move(c)); }

 private:
  Report& report_;
};

struct SuiteContext {
  const RunOptions& options;
  std::optional<CachedCensus> census;

  const CachedCensus& get_census() {
    if (!census) census = acquire_census(options);
    return *census;
  }
};

const FieldSpec& F2() { return FieldSpec::get(1); }

void suite_thm2_1(SuiteBuilder& b, SuiteContext& ctx) {
  const CachedCensus& census = ctx.get_census();
  uint32_t max_aut = 0;
  int attained = 0;
  uint32_t winner = 0;
  for (const auto& rec : census.records) {
    if (!rec.smooth) continue;
    if (rec.aut_order > max_aut) {
      max_aut = rec.aut_order;
      attained = 1;
      winner = rec.rep;
    } else if (rec.aut_order == max_aut) {
      ++attained;
    }
  }
  b.equal("max stabilizer order over smooth orbits", max_aut, 720);
  b.equal("smooth orbits attaining the maximum", uint64_t(attained), 1);
  uint32_t symplectic_root =
      census.partition.find(form_index(symplectic_cubic_form(F2())));
  b.truth("the attaining orbit contains the x^2t+y^2z+z^2y+t^2x form",
          winner == symplectic_root, form_to_hex(winner));
}

void suite_example2_2(SuiteBuilder& b, SuiteContext&) {
  Matrix omega = Matrix::from_rows(
      {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}}, F2());
  FiniteGroup sp = symplectic_group(omega);
  b.equal("order of {g : g^T Omega g = Omega}", sp.order(), 720);

  CubicForm s = symplectic_cubic_form(F2());
  FiniteGroup stab = stabilizer(pgl4_f2(), s);
  b.equal("order of the stabilizer of the form", stab.order(), 720);

  b.check("symplectic filter equals the stabilizer as a set", [&] {
    bool equal_sets = sp.order() == stab.order();
    for (size_t i = 0; i < sp.order() && equal_sets; ++i)
      if (!stab.find_matrix(sp.matrix_at(int(i))).has_value()) equal_sets = false;
    return std::tuple(equal_sets, std::string(equal_sets ? "equal" : "different"),
                      std::string("equal"));
  });

  b.check("every filtered element fixes the form", [&] {
    bool all_fix = true;
    for (size_t i = 0; i < sp.order() && all_fix; ++i)
      if (!(act(sp.matrix_at(int(i)), s) == s)) all_fix = false;
    return std::tuple(all_fix, std::string(all_fix ? "all 720" : "violation"),
                      std::string("all 720"));
  });

  b.check("the stabilizer is isomorphic to S_6", [&] {
    auto witness = is_isomorphic(stab, symmetric_group(6));
    bool ok = witness.has_value() && witness->verified;
    return std::tuple(ok, std::string(ok ? "verified witness" : "no witness"),
                      std::string("verified witness"));
  });

  ProjLine l1{&F2(), {{{0, 0, 1, 0}, {0, 0, 0, 1}}}};  // x=y=0
  ProjLine l2{&F2(), {{{1, 0, 0, 0}, {0, 1, 0, 0}}}};  // z=t=0
  b.check("the lines x=y=0 and z=t=0 lie on the surface", [&] {
    bool on = true;
    for (const auto& l : {l1, l2})
      for (const auto& p : points_on_line(l))
        if (!evaluate(s, p).is_zero()) on = false;
    return std::tuple(on, std::string(on ? "contained" : "not contained"),
                      std::string("contained"));
  });
  b.truth("the two lines are skew", are_skew(l1, l2), "skew");
}

void suite_prop3_1(SuiteBuilder& b, SuiteContext&) {
  b.equal("direct count of |Aut(P(1,1,2))| over F_2", uint64_t(wps_aut_enumerate(2)), 48);
  b.equal("q=2: count matches q^4(q-1)^2(q+1)", uint64_t(wps_aut_enumerate(2)),
          uint64_t(formula_table(2).wps_aut));
  b.equal("q=4: count matches q^4(q-1)^2(q+1)", uint64_t(wps_aut_enumerate(4)),
          uint64_t(formula_table(4).wps_aut));
  for (int q : {2, 4, 8}) {
    OrderFormulas f = formula_table(q);
    b.truth("q=" + std::to_string(q) + ": 2 q^4(q-1)^2(q+1) < q^3(q^3-1)(q^2-1)",
            2 * f.wps_aut < f.pgl3,
            dec(uint64_t(2 * f.wps_aut)) + " < " + dec(uint64_t(f.pgl3)));
  }
}

void suite_lemmaA1(SuiteBuilder& b, SuiteContext& ctx) {
  const CachedCensus& census = ctx.get_census();
  b.check("fifteen-point split", [&] {
    FifteenPointSummary summary =
        fifteen_point_analysis(census.records, census.partition);
    bool pass = summary.forms_on_all_15 == 63 && summary.pencil_count == 35 &&
                summary.smooth_count == 28;
    return std::tuple(pass,
                      dec(summary.forms_on_all_15) + " = " + dec(uint64_t(summary.pencil_count)) +
                          " + " + dec(uint64_t(summary.smooth_count)),
                      std::string("63 = 35 + 28"));
  });

  uint32_t symplectic_root =
      census.partition.find(form_index(symplectic_cubic_form(F2())));
  for (const auto& rec : census.records) {
    if (rec.rep != symplectic_root) continue;
    b.equal("orbit size of the fifteen-point smooth surface", rec.orbit_size, 28);
    b.equal("its stabilizer order", rec.aut_order, 720);
  }
  b.check("orbit-stabilizer identity on every orbit", [&] {
    for (const auto& rec : census.records)
      if (uint64_t(rec.aut_order) * rec.orbit_size != 20160)
        return std::tuple(false, dec(rec.rep), std::string("aut * orbit = 20160"));
    return std::tuple(true, std::string("141 orbits"), std::string("aut * orbit = 20160"));
  });
}

void suite_lemmaA2(SuiteBuilder& b, SuiteContext&) {
  FiniteGroup stab = stabilizer(pgl4_f2(), symplectic_cubic_form(F2()));
  PointActionCertificates cert = compute_point_action_certificates(stab);

  Check a{"(a) 5 does not divide |GL_3(F_2)| = 168", cert.a_pass,
          dec(uint64_t(cert.gl3_f2_order)), "168", cert.seconds[0]};
  std::string orders;
  for (size_t o : cert.normal_orders) orders += (orders.empty() ? "" : ",") + dec(o);
  Check bb{"(b) normal orders {1,360,720} exclude an index-5 subgroup", cert.b_pass,
           "{" + orders + "}", "{1,360,720}", cert.seconds[1]};
  Check c{"(c) the 15-point action is faithful and transitive", cert.c_pass,
          cert.faithful && cert.transitive ? "faithful, orbit 15" : "violated",
          "faithful, orbit 15", cert.seconds[2]};
  Check d{"(d) every nonzero cubic over F_2 has a rational point", cert.d_pass,
          dec(cert.forms_scanned) + " scanned, " +
              dec(cert.forms_without_rational_point) + " counterexamples",
          "1048575 scanned, 0 counterexamples", cert.seconds[3]};
  b.push(a);
  b.push(bb);
  b.push(c);
  b.push(d);
}

void suite_corA3(SuiteBuilder& b, SuiteContext& ctx) {
  const CachedCensus& census = ctx.get_census();
  b.truth("S_6 action iff the surface passes all 15 points",
          corollary_check(census.records), "equivalence holds");
}

void suite_thm1_2(SuiteBuilder& b, SuiteContext& ctx) {
  GcdChecks g = gcd_checks();
  b.equal("gcd(|A_7|, |W(E6)|)", uint64_t(g.gcd_a7_weyl), 360);
  b.equal("gcd(|2^3:PGL_3(F_2)|, |W(E6)|)", uint64_t(g.gcd_max2_weyl), 192);
  b.truth("|PGL_4(F_2)| does not divide |W(E6)|", !g.pgl4_divides_weyl,
          "20160 does not divide 51840");
  b.truth("|W(E6)| = 51840 = 2^7 3^4 5", g.weyl_factorization_ok, "51840");

  for (int q : {2, 4, 8}) {
    b.check("Jordan constant for q = " + std::to_string(q), [&] {
      JordanOptions opts;
      opts.threads = ctx.options.threads;
      opts.verify_pgl3_f8 = ctx.options.verify_pgl3_f8;
      CensusReport census_report_data;
      if (q == 2) {
        const CachedCensus& census = ctx.get_census();
        census_report_data = census_report(census.partition, census.records);
        opts.census = &census_report_data;
      }
      JordanReport report = jordan_constant(q, opts);
      uint64_t expected = q == 2 ? 720 : uint64_t(formula_table(q).pgl3);
      bool pass = uint64_t(report.constant) == expected && report.all_machine_checks_pass;
      return std::tuple(pass, dec(uint64_t(report.constant)), dec(expected));
    });
  }

  b.check("restated: J = |PGL_3(F_q)| for q in {4,8}, J = 720 > 168 for q = 2", [&] {
    bool pass = formula_table(4).pgl3 == 60480 && formula_table(8).pgl3 == 16482816 &&
                720 > formula_table(2).pgl3;
    return std::tuple(pass, std::string("720 / 60480 / 16482816"),
                      std::string("720 / 60480 / 16482816"));
  });
}

}  // namespace

std::optional<SuiteId> parse_suite(const std::string& s) {
  if (s == "thm1.2") return SuiteId::thm1_2;
  if (s == "thm2.1") return SuiteId::thm2_1;
  if (s == "example2.2") return SuiteId::example2_2;
  if (s == "prop3.1") return SuiteId::prop3_1;
  if (s == "lemmaA1") return SuiteId::lemmaA1;
  if (s == "lemmaA2") return SuiteId::lemmaA2;
  if (s == "corA3") return SuiteId::corA3;
  if (s == "all") return SuiteId::all;
  return std::nullopt;
}

std::string suite_name(SuiteId id) {
  switch (id) {
    case SuiteId::thm1_2: return "thm1.2";
    case SuiteId::thm2_1: return "thm2.1";
    case SuiteId::example2_2: return "example2.2";
    case SuiteId::prop3_1: return "prop3.1";
    case SuiteId::lemmaA1: return "lemmaA1";
    case SuiteId::lemmaA2: return "lemmaA2";
    case SuiteId::corA3: return "corA3";
    case SuiteId::all: return "all";
  }
  return "?";
}

CachedCensus acquire_census(const RunOptions& options) {
  if (!options.cache_path.empty() && std::filesystem::exists(options.cache_path))
    return read_cache(options.cache_path);
  CachedCensus census;
  census.partition = build_partition();
  census.records = orbit_records(census.partition, options.threads);
  if (!options.cache_path.empty())
    write_cache(options.cache_path, census.partition, census.records);
  return census;
}

Report run_suite(SuiteId id, const RunOptions& options) {
  Report report;
  report.suite = suite_name(id);
  SuiteBuilder builder(report);
  SuiteContext ctx{options, std::nullopt};

  auto dispatch = [&](SuiteId which) {
    switch (which) {
      case SuiteId::thm2_1: suite_thm2_1(builder, ctx); break;
      case SuiteId::example2_2: suite_example2_2(builder, ctx); break;
      case SuiteId::prop3_1: suite_prop3_1(builder, ctx); break;
      case SuiteId::lemmaA1: suite_lemmaA1(builder, ctx); break;
      case SuiteId::lemmaA2: suite_lemmaA2(builder, ctx); break;
      case SuiteId::corA3: suite_corA3(builder, ctx); break;
      case SuiteId::thm1_2: suite_thm1_2(builder, ctx); break;
      case SuiteId::all: break;
    }
  };

  if (id == SuiteId::all) {
    for (SuiteId which : {SuiteId::thm2_1, SuiteId::example2_2, SuiteId::prop3_1,
                          SuiteId::lemmaA1, SuiteId::lemmaA2, SuiteId::corA3,
                          SuiteId::thm1_2})
      dispatch(which);
  } else {
    dispatch(id);
  }

  report.overall = true;
  for (const auto& c : report.checks)
    if (!c.pass) report.overall = false;
  return report;
}

namespace {

std::string seconds_string(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

}  // namespace

std::string report_to_json(const Report& report) {
  nlohmann::ordered_json j;
  j["version"] = report.version;
  j["suite"] = report.suite;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["pass"] = c.pass;
    jc["value"] = c.value;
    jc["expected"] = c.expected;
    jc["seconds"] = seconds_string(c.seconds);
    j["checks"].push_back(jc);
  }
  j["overall"] = report.overall;
  return j.dump(2) + "\n";
}

void print_report(const Report& report, std::FILE* out) {
  std::fprintf(out, "suite %s (tool %s)\n", report.suite.c_str(),
               report.version.c_str());
  for (const auto& c : report.checks) {
    std::fprintf(out, "  [%s] %s: %s", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                 c.value.c_str());
    if (!c.expected.empty() && c.expected != "true")
      std::fprintf(out, " (expected %s)", c.expected.c_str());
    std::fprintf(out, "  [%.3fs]\n", c.seconds);
  }
  std::fprintf(out, "overall: %s\n", report.overall ? "PASS" : "FAIL");
}

std::string census_to_json(const CensusReport& report) {
  nlohmann::ordered_json j;
  j["version"] = kToolVersion;
  j["total_forms"] = dec(report.total_forms);
  j["orbit_count"] = dec(report.orbit_count);
  j["smooth_orbit_count"] = dec(report.smooth_orbit_count);
  j["fifteen_point_summary"] = {
      {"forms_on_all_15", dec(report.fifteen.forms_on_all_15)},
      {"pencil_cubics", dec(uint64_t(report.fifteen.pencil_count))},
      {"smooth", dec(uint64_t(report.fifteen.smooth_count))},
  };
  j["max_aut"] = {
      {"order", dec(report.max_smooth_aut_order)},
      {"orbit_rep", form_to_hex(report.max_smooth_aut_rep)},
  };
  j["uniqueness"] = report.max_attained_once && report.symplectic_orbit_attains_max;
  j["corollary_holds"] = report.corollary_holds;
  j["orbits"] = nlohmann::ordered_json::array();
  for (const auto& rec : report.records) {
    j["orbits"].push_back({
        {"rep", form_to_hex(rec.rep)},
        {"orbit_size", dec(rec.orbit_size)},
        {"smooth", rec.smooth},
        {"aut_order", dec(rec.aut_order)},
        {"passes_all_15", rec.passes_all_15},
    });
  }
  return j.dump(2) + "\n";
}

std::string jordan_to_json(const JordanReport& report) {
  nlohmann::ordered_json j;
  j["version"] = kToolVersion;
  j["q"] = dec(uint64_t(report.q));
  j["constant"] = dec(uint64_t(report.constant));
  j["witness"] = report.witness;
  j["ingredients"] = nlohmann::ordered_json::array();
  for (const auto& ing : report.ingredients) {
    j["ingredients"].push_back({
        {"name", ing.name},
        {"pass", ing.pass},
        {"value", ing.value},
        {"expected", ing.expected},
        {"machine_verified", ing.machine_verified},
    });
  }
  j["all_machine_checks_pass"] = report.all_machine_checks_pass;
  return j.dump(2) + "\n";
}

}  // namespace cubics
