#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <string>

namespace {

namespace fs = std::filesystem;

std::string cli_path() {
  const char* env = std::getenv("CUBICS_CLI");
  REQUIRE(env != nullptr);
  return env;
}

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " 2>&1";
  std::FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
    result.output.append(buf.data(), n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string strip_seconds(std::string text) {
  text = std::regex_replace(text, std::regex("\"seconds\": \"[0-9.]+\""),
                            "\"seconds\": \"-\"");
  return std::regex_replace(text, std::regex("\\[[0-9.]+s\\]"), "[-]");
}

fs::path temp_dir() {
  fs::path dir = fs::temp_directory_path() / "cubics-cli-test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("usage errors exit with status 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("verify --suite nonsense").exit_code == 2);
  CHECK(run_cli("smooth").exit_code == 2);             // missing --form
  CHECK(run_cli("jordan --q 3").exit_code == 2);
  CHECK(run_cli("smooth --form zzzzz").exit_code == 2);
  CHECK(run_cli("smooth --form 123").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("smooth subcommand") {
  RunResult smooth = run_cli("smooth --form 02a08");
  CHECK(smooth.exit_code == 0);
  CHECK(smooth.output.find("\"smooth\": true") != std::string::npos);
  CHECK(smooth.output.find("\"witness\": null") != std::string::npos);

  RunResult singular = run_cli("smooth --form 00012 --method both --kmax 4");
  CHECK(singular.exit_code == 0);
  CHECK(singular.output.find("\"smooth\": false") != std::string::npos);
  CHECK(singular.output.find("\"extension_degree\": \"1\"") != std::string::npos);

  RunResult search_only = run_cli("smooth --form 02a08 --method search --kmax 2");
  CHECK(search_only.exit_code == 0);
  CHECK(search_only.output.find("\"certificate\": \"search\"") != std::string::npos);
}

TEST_CASE("aut subcommand") {
  RunResult aut = run_cli("aut --form 02a08");
  CHECK(aut.exit_code == 0);
  CHECK(aut.output.find("\"aut_order\": \"720\"") != std::string::npos);

  RunResult with_elements = run_cli("aut --form 00012 --elements");
  CHECK(with_elements.exit_code == 0);
  CHECK(with_elements.output.find("\"aut_order\": \"576\"") != std::string::npos);
  // 16 matrix entries, two hex chars each.
  CHECK(with_elements.output.find("\"10000100001000010000000000000000\"") ==
        std::string::npos);  // elements are 4x4 = 32 hex chars
  size_t count = 0;
  for (size_t pos = 0; (pos = with_elements.output.find("\"0100", pos)) !=
                       std::string::npos;
       ++pos)
    ++count;
  CHECK(count > 0);
}

TEST_CASE("jordan subcommand") {
  RunResult j4 = run_cli("jordan --q 4");
  CHECK(j4.exit_code == 0);
  CHECK(j4.output.find("\"constant\": \"60480\"") != std::string::npos);

  RunResult j8 = run_cli("jordan --q 8");
  CHECK(j8.exit_code == 0);
  CHECK(j8.output.find("\"constant\": \"16482816\"") != std::string::npos);
  CHECK(j8.output.find("cited, not machine-verified") != std::string::npos);
}

TEST_CASE("fast verify suites pass and reports are stable up to timing") {
  fs::path dir = temp_dir();
  fs::path json1 = dir / "prop1.json";
  fs::path json2 = dir / "prop2.json";

  RunResult first = run_cli("verify --suite prop3.1 --json " + json1.string());
  CHECK(first.exit_code == 0);
  CHECK(first.output.find("overall: PASS") != std::string::npos);
  RunResult second = run_cli("verify --suite prop3.1 --json " + json2.string());
  CHECK(second.exit_code == 0);

  std::ifstream in1(json1), in2(json2);
  std::string a((std::istreambuf_iterator<char>(in1)),
                std::istreambuf_iterator<char>());
  std::string b((std::istreambuf_iterator<char>(in2)),
                std::istreambuf_iterator<char>());
  CHECK(strip_seconds(a) == strip_seconds(b));
  CHECK(a.find("\"suite\": \"prop3.1\"") != std::string::npos);

  CHECK(run_cli("verify --suite example2.2").exit_code == 0);
  CHECK(run_cli("verify --suite lemmaA2").exit_code == 0);
}

TEST_CASE("census cache: build, reuse, and reject mutations") {
  fs::path dir = temp_dir();
  fs::path cache = dir / "census.cbc";
  fs::remove(cache);

  RunResult first = run_cli("classify-cubics --cache " + cache.string());
  CHECK(first.exit_code == 0);
  CHECK(fs::exists(cache));
  CHECK(first.output.find("\"orbit_count\": \"141\"") != std::string::npos);
  CHECK(first.output.find("\"order\": \"720\"") != std::string::npos);
  CHECK(first.output.find("\"orbit_rep\": \"02a08\"") != std::string::npos);

  RunResult second = run_cli("classify-cubics --cache " + cache.string());
  CHECK(second.exit_code == 0);
  CHECK(second.output == first.output);  // census JSON carries no timing

  // Flip one byte inside an orbit record's stabilizer order: the reload must
  // fail the orbit-stabilizer identity and exit 1.
  {
    std::fstream f(cache, std::ios::in | std::ios::out | std::ios::binary);
    REQUIRE(f);
    size_t record_base = 4 + 80 + 4 * ((1 << 20) - 1);
    f.seekg(long(record_base + 5 * 14 + 9));
    char byte;
    f.read(&byte, 1);
    byte = char(byte + 1);
    f.seekp(long(record_base + 5 * 14 + 9));
    f.write(&byte, 1);
  }
  RunResult mutated = run_cli("classify-cubics --cache " + cache.string());
  CHECK(mutated.exit_code == 1);
  CHECK(mutated.output.find("error:") != std::string::npos);

  // A truncated cache is rejected by the reader, again exit 1.
  fs::resize_file(cache, fs::file_size(cache) - 7);
  RunResult truncated = run_cli("verify --suite lemmaA1 --cache " + cache.string());
  CHECK(truncated.exit_code == 1);

  fs::remove_all(dir);
}
