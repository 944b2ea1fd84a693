#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <thread>

#include "cubics/recognize.hpp"
#include "cubics/report.hpp"

using namespace cubics;

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string method_name(SmoothnessVerdict::Method m) {
  switch (m) {
    case SmoothnessVerdict::Method::groebner: return "groebner";
    case SmoothnessVerdict::Method::search: return "search";
    case SmoothnessVerdict::Method::both: return "both";
  }
  return "?";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cubics: exhaustive verification of cubic-surface automorphisms over F_2 "
      "and of the Jordan constants of the rank-2 Cremona groups over F_2, F_4, F_8"};
  app.require_subcommand(1);
  app.fallthrough(true);  // global flags may follow the subcommand

  std::string json_path;
  std::string cache_path;
  int threads = int(std::max(1u, std::thread::hardware_concurrency()));
  app.add_option("--json", json_path, "write the JSON report to this path");
  app.add_option("--cache", cache_path,
                 "census cache file: read when present, written after a build");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  auto* classify = app.add_subcommand(
      "classify-cubics", "partition all nonzero cubic forms over F_2 into "
                         "PGL_4(F_2) orbits and report the census");

  CLI::Validator form_validator(
      [](std::string& s) -> std::string {
        if (s.size() != 5) return "form must be 5 hex digits";
        for (char c : s)
          if (!std::isxdigit(static_cast<unsigned char>(c)))
            return "form must be 5 hex digits";
        return {};
      },
      "FORM");

  auto* smooth_cmd =
      app.add_subcommand("smooth", "decide smoothness of one cubic surface");
  std::string form_hex;
  std::string method = "both";
  int kmax = 4;
  smooth_cmd->add_option("--form", form_hex, "form word, 5 hex digits")
      ->required()
      ->check(form_validator);
  smooth_cmd->add_option("--method", method, "groebner|search|both (default both)")
      ->check(CLI::IsMember({"groebner", "search", "both"}));
  smooth_cmd->add_option("--kmax", kmax, "largest extension degree searched")
      ->check(CLI::Range(1, 8));

  auto* aut_cmd = app.add_subcommand(
      "aut", "stabilizer of a form inside PGL_4(F_2)");
  std::string aut_form;
  bool list_elements = false;
  aut_cmd->add_option("--form", aut_form, "form word, 5 hex digits")
      ->required()
      ->check(form_validator);
  aut_cmd->add_flag("--elements", list_elements,
                    "also print the element list as matrix hex strings");

  auto* jordan_cmd =
      app.add_subcommand("jordan", "assemble the Jordan constant for one q");
  int q = 0;
  bool verify_f8 = false;
  std::string census_cache;
  jordan_cmd->add_option("--q", q, "field size: 2, 4 or 8")
      ->required()
      ->check(CLI::IsMember({2, 4, 8}));
  jordan_cmd->add_flag("--verify-pgl3-f8", verify_f8,
                       "materialize PGL_3(F_8) and verify simplicity "
                       "(minutes, ~1 GB)");
  jordan_cmd->add_option("--census-cache", census_cache,
                         "census cache for the q=2 branch");

  auto* verify_cmd = app.add_subcommand("verify", "run a named check suite");
  std::string suite = "all";
  verify_cmd
      ->add_option("--suite", suite,
                   "thm1.2|thm2.1|example2.2|prop3.1|lemmaA1|lemmaA2|corA3|all")
      ->check(CLI::IsMember({"thm1.2", "thm2.1", "example2.2", "prop3.1", "lemmaA1",
                             "lemmaA2", "corA3", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunOptions options;
  options.threads = threads;
  options.verify_pgl3_f8 = verify_f8;
  options.cache_path = cache_path;

  try {
    if (*classify) {
      CachedCensus census = acquire_census(options);
      CensusReport report = census_report(census.partition, census.records);
      std::string json = census_to_json(report);
      std::fputs(json.c_str(), stdout);
      if (!json_path.empty()) write_file(json_path, json);
      return 0;
    }

    if (*smooth_cmd) {
      uint32_t w = form_from_hex(form_hex);
      if (w == 0) throw std::invalid_argument("the zero form is not a surface");
      SmoothnessVerdict::Method m = SmoothnessVerdict::Method::both;
      if (method == "groebner") m = SmoothnessVerdict::Method::groebner;
      if (method == "search") m = SmoothnessVerdict::Method::search;
      SmoothnessVerdict v = is_smooth(form_from_index(w), kmax, m);
      nlohmann::ordered_json j;
      j["version"] = kToolVersion;
      j["form"] = form_to_hex(w);
      j["method"] = method;
      j["kmax"] = std::to_string(kmax);
      j["smooth"] = v.smooth;
      if (v.witness.has_value()) {
        j["witness"] = {{"extension_degree", std::to_string(v.witness->first)},
                        {"point", v.witness->second.str()}};
      } else {
        j["witness"] = nullptr;
      }
      j["certificate"] = method_name(v.certificate);
      std::string json = j.dump(2) + "\n";
      std::fputs(json.c_str(), stdout);
      if (!json_path.empty()) write_file(json_path, json);
      return 0;
    }

    if (*aut_cmd) {
      uint32_t w = form_from_hex(aut_form);
      if (w == 0) throw std::invalid_argument("the zero form is not a surface");
      FiniteGroup stab = stabilizer(pgl4_f2(), form_from_index(w));
      nlohmann::ordered_json j;
      j["version"] = kToolVersion;
      j["form"] = form_to_hex(w);
      j["aut_order"] = std::to_string(stab.order());
      if (list_elements) {
        j["elements"] = nlohmann::ordered_json::array();
        for (size_t i = 0; i < stab.order(); ++i)
          j["elements"].push_back(stab.matrix_at(int(i)).hex());
      }
      std::string json = j.dump(2) + "\n";
      std::fputs(json.c_str(), stdout);
      if (!json_path.empty()) write_file(json_path, json);
      return 0;
    }

    if (*jordan_cmd) {
      JordanOptions jopts;
      jopts.threads = threads;
      jopts.verify_pgl3_f8 = verify_f8;
      CensusReport census_data;
      if (q == 2) {
        RunOptions census_options = options;
        if (!census_cache.empty()) census_options.cache_path = census_cache;
        CachedCensus census = acquire_census(census_options);
        census_data = census_report(census.partition, census.records);
        jopts.census = &census_data;
      }
      JordanReport report = jordan_constant(q, jopts);
      std::string json = jordan_to_json(report);
      std::fputs(json.c_str(), stdout);
      if (!json_path.empty()) write_file(json_path, json);
      return report.all_machine_checks_pass ? 0 : 1;
    }

    if (*verify_cmd) {
      Report report = run_suite(*parse_suite(suite), options);
      print_report(report, stdout);
      if (!json_path.empty()) write_file(json_path, report_to_json(report));
      return report.overall ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
