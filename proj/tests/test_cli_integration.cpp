/// End-to-end tests driving the command-line binary (path in $TWISTORCLI).
#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifdef __unix__
#include <sys/wait.h>
#endif

namespace {

std::string cli_path() {
  const char* p = std::getenv("TWISTORCLI");
  REQUIRE(p != nullptr);
  return p;
}

struct RunResult {
  int exit_code = -1;
  std::string output;  ///< combined stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const std::string out_file = "cli_test_output.tmp";
  const std::string cmd = "\"" + cli_path() + "\" " + args + " > " + out_file + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
#ifdef __unix__
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#else
  r.exit_code = status;
#endif
  std::ifstream in(out_file);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.output = buf.str();
  std::remove(out_file.c_str());
  return r;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("build-surface succeeds and validates") {
  const RunResult r = run_cli("build-surface --n 4");
  INFO(r.output);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("surface S, n=4") != std::string::npos);
  CHECK(r.output.find("FAIL") == std::string::npos);
  const RunResult j = run_cli("build-surface --n 4 --json");
  CHECK(j.exit_code == 0);
  CHECK(j.output.find("\"K_square\": \"0\"") != std::string::npos);
}

TEST_CASE("build-surface rejects n < 3") {
  const RunResult r = run_cli("build-surface --n 2");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("input error") != std::string::npos);
}

TEST_CASE("missing subcommand is an input error") {
  const RunResult r = run_cli("");
  CHECK(r.exit_code != 0);
}

TEST_CASE("emit-ideal minitwistor") {
  write_file("cli_params3.json", R"({"n": 3, "lambdas": ["1", "2"]})");
  const RunResult r = run_cli("emit-ideal --params cli_params3.json --which minitwistor");
  INFO(r.output);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("scroll(1,2)") != std::string::npos);
  CHECK(r.output.find("nt3:") != std::string::npos);
  CHECK(r.output.find("z4*z5") != std::string::npos);
  // Deterministic byte-for-byte output.
  const RunResult r2 = run_cli("emit-ideal --params cli_params3.json --which minitwistor");
  CHECK(r.output == r2.output);
  const RunResult j = run_cli("emit-ideal --params cli_params3.json --which minitwistor --json");
  CHECK(j.exit_code == 0);
  CHECK(j.output.find("\"tag\": \"nt3\"") != std::string::npos);
  CHECK(j.output.find("\"exponents\"") != std::string::npos);
  std::remove("cli_params3.json");
}

TEST_CASE("emit-ideal branch and fiber need full parameters") {
  write_file("cli_params4.json",
             R"({"n": 4, "lambdas": ["1", "2", "3"],
                 "g_hat": ["1", "-2", "0", "1/2"],
                 "g_linear": ["1", "0", "0", "2", "-1", "3"]})");
  const RunResult b = run_cli("emit-ideal --params cli_params4.json --which branch");
  INFO(b.output);
  CHECK(b.exit_code == 0);
  CHECK(b.output.find("branch1:") != std::string::npos);
  CHECK(b.output.find("eta1^2*eta2^2") != std::string::npos);
  const RunResult f = run_cli("emit-ideal --params cli_params4.json --which fiber");
  CHECK(f.exit_code == 0);
  CHECK(f.output.find("nt18:") != std::string::npos);
  const RunResult x = run_cli("emit-ideal --params cli_params4.json --which model-x");
  CHECK(x.exit_code == 0);
  CHECK(x.output.find("nt14:") != std::string::npos);
  const RunResult bad = run_cli("emit-ideal --params cli_params4.json --which nonsense");
  CHECK(bad.exit_code == 2);
  std::remove("cli_params4.json");
}

TEST_CASE("malformed parameter files are input errors") {
  write_file("cli_bad.json", R"({"n": 3, "lambdas": ["1.5", "2"]})");
  CHECK(run_cli("emit-ideal --params cli_bad.json --which minitwistor").exit_code == 2);
  write_file("cli_bad.json", R"({"n": 3, "lambdas": [1, 2]})");
  CHECK(run_cli("emit-ideal --params cli_bad.json --which minitwistor").exit_code == 2);
  write_file("cli_bad.json", "not json at all");
  CHECK(run_cli("emit-ideal --params cli_bad.json --which minitwistor").exit_code == 2);
  CHECK(run_cli("emit-ideal --params cli_missing.json --which minitwistor").exit_code == 2);
  std::remove("cli_bad.json");
}

TEST_CASE("verify runs the full suite") {
  const RunResult r = run_cli("verify --n 6");
  INFO(r.output);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("FAIL") == std::string::npos);
  CHECK(r.output.find("mt.identity") != std::string::npos);
  CHECK(r.output.find("moduli.dimension") != std::string::npos);
}

TEST_CASE("verify --deep exercises the degree oracle at n=3") {
  const RunResult r = run_cli("verify --n 3 --deep");
  INFO(r.output);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("degree.slice.5") != std::string::npos);
}

TEST_CASE("verify with a params file and n mismatch") {
  write_file("cli_params5.json", R"({"n": 5})");
  CHECK(run_cli("verify --n 5 --params cli_params5.json").exit_code == 0);
  CHECK(run_cli("verify --n 4 --params cli_params5.json").exit_code == 2);
  std::remove("cli_params5.json");
}

TEST_CASE("verify JSON output is deterministic") {
  const RunResult a = run_cli("verify --n 4 --json");
  const RunResult b = run_cli("verify --n 4 --json");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("\"fail\": 0") != std::string::npos);
}

TEST_CASE("find-admissible exit codes") {
  // Zero seeds exhausts the search immediately.
  CHECK(run_cli("find-admissible --n 4 --lambdas 1 2 3 --seeds 0").exit_code == 3);
  // Bad lambdas are input errors.
  CHECK(run_cli("find-admissible --n 4 --lambdas 1 2").exit_code == 2);
  CHECK(run_cli("find-admissible --n 4 --lambdas 1 0.5 2 --seeds 1").exit_code == 2);
  // The known-good n=4 spectrum succeeds within the default seed budget.
  const RunResult r = run_cli("find-admissible --n 4 --lambdas 1 2 3 --seeds 32 --json");
  INFO(r.output);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"g_hat\"") != std::string::npos);
  CHECK(r.output.find("\"genus\": 0") != std::string::npos);
}
