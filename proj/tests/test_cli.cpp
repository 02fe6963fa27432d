#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const char* cli_path() { return SEEDBANK_CLI_PATH; }

int run(const std::string& args) {
  const std::string command = std::string("\"") + cli_path() + "\" " + args;
  const int status = std::system(command.c_str());
  return status < 0 ? -1 : WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("seedbank-clitest-" + std::to_string(::getpid()) + "-" +
                                      name);
}

struct TempFile {
  fs::path path;
  explicit TempFile(const std::string& name) : path(temp_file(name)) {}
  ~TempFile() { std::error_code ec; fs::remove(path, ec); }
};

}  // namespace

TEST_CASE("pinned seed reproduces the summary CSV byte for byte") {
  TempFile a("repro-a.csv"), b("repro-b.csv");
  const std::string common =
      "simulate --n 40 --reps 200 --c1 1 --c2 1 --seed 7 --stop absorption --out ";
  REQUIRE(run(common + a.path.string() + " > /dev/null") == 0);
  REQUIRE(run(common + b.path.string() + " > /dev/null") == 0);
  const std::string bytes = slurp(a.path);
  REQUIRE_FALSE(bytes.empty());
  CHECK(bytes == slurp(b.path));
  CHECK(bytes.rfind("replicate,gamma,theta,sigma,", 0) == 0);
}

TEST_CASE("thread count does not affect the output") {
  TempFile a("threads-a.csv"), b("threads-b.csv");
  const std::string base = "simulate --n 30 --reps 100 --seed 11 --stop first-activation --out ";
  REQUIRE(run("--threads 1 " + base + a.path.string() + " > /dev/null") == 0);
  REQUIRE(run("--threads 2 " + base + b.path.string() + " > /dev/null") == 0);
  CHECK(slurp(a.path) == slurp(b.path));
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("simulate --n 0 > /dev/null 2>&1") == 2);
  CHECK(run("simulate --stop nonsense > /dev/null 2>&1") == 2);
  CHECK(run("nonsense-subcommand > /dev/null 2>&1") == 2);
  CHECK(run("sampling --n 12 > /dev/null 2>&1") == 2);
  CHECK(run("exact --n 2000000 > /dev/null 2>&1") == 2);
  CHECK(run("> /dev/null 2>&1") == 2);  // a subcommand is required
}

TEST_CASE("config file values are applied and overridden by flags") {
  TempFile config("config.ini"), a("config-a.csv"), b("config-b.csv"), c("config-c.csv");
  {
    std::ofstream out(config.path);
    out << "simulate.n=25\nsimulate.reps=50\nsimulate.seed=13\nsimulate.stop=absorption\n"
        << "simulate.out=" << a.path.string() << "\n";
  }
  REQUIRE(run("--config " + config.path.string() + " simulate > /dev/null") == 0);
  REQUIRE(run("simulate --n 25 --reps 50 --seed 13 --stop absorption --out " + b.path.string() +
              " > /dev/null") == 0);
  CHECK(slurp(a.path) == slurp(b.path));
  // a flag overrides the file value
  REQUIRE(run("--config " + config.path.string() + " simulate --seed 14 --out " +
              c.path.string() + " > /dev/null") == 0);
  CHECK(slurp(a.path) != slurp(c.path));
}

TEST_CASE("trajectory export carries the documented header") {
  TempFile t("trajectory.csv");
  REQUIRE(run("simulate --n 10 --reps 1 --seed 3 --stop absorption --trajectory-out " +
              t.path.string() + " > /dev/null") == 0);
  const std::string bytes = slurp(t.path);
  CHECK(bytes.rfind("time,event,plants,seeds\n", 0) == 0);
  CHECK(bytes.find("coalescence") != std::string::npos);
}

TEST_CASE("exact subcommand reports the two-plant solution") {
  TempFile out("exact.json");
  REQUIRE(run("exact --n 2 --c1 1 --c2 1 --format json --out " + out.path.string() +
              " > /dev/null") == 0);
  const std::string bytes = slurp(out.path);
  CHECK(bytes.find("\"E_A\": 4.0") != std::string::npos);
  CHECK(bytes.find("\"E_sigma\": 4.0") != std::string::npos);
}

TEST_CASE("the moment block of the exact report") {
  TempFile report("moments.txt");
  REQUIRE(run("exact --n 10 --c1 2 --c2 1 > " + report.path.string()) == 0);
  const std::string bytes = slurp(report.path);
  CHECK(bytes.find("gamma_limit_mean") != std::string::npos);
  CHECK(bytes.find("0.666666666666666") != std::string::npos);  // 2/3
  CHECK(bytes.find("0.888888888888888") != std::string::npos);  // 8/9
}

TEST_CASE("two-plant simulation report passes its own tolerance gates") {
  TempFile report("n2report.txt");
  REQUIRE(run("simulate --n 2 --reps 30000 --seed 5 --stop absorption > " +
              report.path.string()) == 0);
  const std::string bytes = slurp(report.path);
  CHECK(bytes.find("mean_A") != std::string::npos);
  CHECK(bytes.find("fail") == std::string::npos);
}

TEST_CASE("sampling subcommand exports the two-configuration law") {
  TempFile out("law.csv");
  REQUIRE(run("sampling --n 2 --k 1 --c1 1 --reps 0 --out " + out.path.string() +
              " > /dev/null") == 0);
  const std::string bytes = slurp(out.path);
  // P(merged) = 1/3, P(split plus one recent singleton) = 2/3
  CHECK(bytes.find("0.333333333333333") != std::string::npos);
  CHECK(bytes.find("0.666666666666666") != std::string::npos);
  TempFile expectations("law_expectations.csv");
  CHECK(slurp(expectations.path).rfind("k,j,E_O,E_R\n", 0) == 0);
}

TEST_CASE("verify accepts a group filter") {
  CHECK(run("verify --only balance > /dev/null") == 0);
  CHECK(run("verify --only balance --perturb-activation 1.01 > /dev/null") == 1);
}
