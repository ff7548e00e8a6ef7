#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "ddelta/cli.hpp"

using namespace ddelta;

namespace {

ParseResult parse(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"ddelta"};
  argv.insert(argv.end(), args);
  return parse_flags(static_cast<int>(argv.size()), argv.data());
}

struct Outcome {
  int status = -1;
  std::string out;
  std::string err;
};

Outcome invoke(std::initializer_list<const char*> args) {
  const ParseResult p = parse(args);
  if (!p.config) return {p.status, {}, p.message};
  std::ostringstream out;
  std::ostringstream err;
  const int status = run(*p.config, out, err);
  return {status, out.str(), err.str()};
}

int data_rows(const std::string& csv) {
  int lines = 0;
  for (char c : csv) lines += c == '\n';
  return lines - 2;  // version line and header
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_golden(const std::string& name, const std::string& actual) {
  const std::string path = std::string(DDELTA_GOLDEN_DIR) + "/" + name;
  if (std::getenv("DDELTA_UPDATE_GOLDEN")) {
    std::ofstream(path, std::ios::binary) << actual;
  }
  CAPTURE(path);
  CHECK(read_file(path) == actual);
}

}  // namespace

TEST_CASE("spectrum row counts") {
  const Outcome quarter = invoke({"spectrum", "--a", "0.25"});
  CHECK(quarter.status == 0);
  CHECK(data_rows(quarter.out) == 2);
  CHECK(quarter.out.find("parity,xi,energy_over_e0,residual\neven,") != std::string::npos);

  const Outcome wide = invoke({"spectrum", "--a", "1.5"});
  CHECK(wide.status == 0);
  CHECK(data_rows(wide.out) == 1);

  const Outcome repulsive = invoke({"spectrum", "--a", "-1"});
  CHECK(repulsive.status == 0);
  CHECK(data_rows(repulsive.out) == 0);
}

TEST_CASE("physical parameters") {
  const Outcome phys = invoke({"spectrum", "--hbar", "1", "--mass", "0.5", "--alpha", "4", "--halfsep", "1"});
  CHECK(phys.status == 0);
  CHECK(phys.out == invoke({"spectrum", "--a", "0.25"}).out);
  const Outcome bad = invoke({"spectrum", "--mass", "-1"});
  CHECK(bad.status == 2);
  CHECK(bad.err.find("mass") != std::string::npos);
}

TEST_CASE("parse echo for curves") {
  const ParseResult p = parse({"curves", "--xi-max", "4", "--n", "401", "--a", "1.5", "--a", "0.25"});
  REQUIRE(p.config);
  CHECK(p.config->command == Command::Curves);
  CHECK(p.config->xi_max == 4.0);
  CHECK(p.config->n == 401);
  CHECK(p.config->a_values == std::vector<double>{1.5, 0.25});
  CHECK(p.config->format == Format::Csv);
  CHECK(p.config->output.empty());
}

TEST_CASE("usage errors exit with 2") {
  CHECK(parse({"spectrum", "--a", "0.25", "--alpha", "1"}).status == 2);
  const ParseResult none = parse({});
  CHECK_FALSE(none.config);
  CHECK(none.status == 2);
  CHECK(none.message.find("Usage") != std::string::npos);
  CHECK(parse({"spectrum", "--unknown"}).status == 2);
  CHECK(parse({"bogus"}).status == 2);
  CHECK(parse({"spectrum", "--a", "0.25", "--a", "0.5"}).status == 2);
  CHECK(parse({"spectrum", "--a", "0.25", "--format", "xml"}).status == 2);
  CHECK(parse({"--help"}).status == 0);
}

TEST_CASE("invalid values exit with 2 and name the invariant") {
  const Outcome zero = invoke({"spectrum", "--a", "0"});
  CHECK(zero.status == 2);
  CHECK(zero.err.find("a = 0") != std::string::npos);
  const Outcome missing = invoke({"spectrum"});
  CHECK(missing.status == 2);
  CHECK(missing.err.find("--a") != std::string::npos);
  CHECK(invoke({"curves", "--n", "1"}).status == 2);
  CHECK(invoke({"limit-study", "--a", "0.5", "--theta", "0.1", "--theta", "0.2"}).status == 2);
  CHECK(invoke({"wavefn", "--a", "0.5", "--x-min", "1", "--x-max", "0"}).status == 2);
}

TEST_CASE("limit study exit status") {
  const Outcome half = invoke({"limit-study", "--a", "0.5"});
  CHECK(half.status == 0);
  CHECK(data_rows(half.out) == 10);
  // The delta limit has no odd state at a = 3/2, so only the even track counts.
  CHECK(invoke({"limit-study", "--a", "1.5"}).status == 0);
  CHECK(invoke({"limit-study", "--a", "0.5", "--theta", "0.4"}).status == 1);
}

TEST_CASE("integrals pass their thresholds") {
  const Outcome r = invoke({"integrals", "--cases", "3", "--seed", "9"});
  CHECK(r.status == 0);
  CHECK(data_rows(r.out) == 4 * 2 * 3);
}

TEST_CASE("byte-identical output for identical config and seed") {
  CHECK(invoke({"integrals", "--cases", "2", "--seed", "5"}).out ==
        invoke({"integrals", "--cases", "2", "--seed", "5"}).out);
  CHECK(invoke({"integrals", "--cases", "2", "--seed", "5"}).out !=
        invoke({"integrals", "--cases", "2", "--seed", "6"}).out);
  CHECK(invoke({"wavefn", "--a", "0.3"}).out == invoke({"wavefn", "--a", "0.3"}).out);
}

TEST_CASE("golden files") {
  check_golden("spectrum_a0.25.csv", invoke({"spectrum", "--a", "0.25"}).out);
  check_golden("spectrum_a1.5.json", invoke({"spectrum", "--a", "1.5", "--format", "json"}).out);
  check_golden("curves.csv", invoke({"curves", "--xi-max", "4", "--n", "9", "--a", "1.5", "--a", "0.25"}).out);
  check_golden("wavefn_a0.25.csv", invoke({"wavefn", "--a", "0.25", "--x-min", "-3", "--x-max", "3", "--samples", "7"}).out);
  check_golden("limit_a0.5.csv", invoke({"limit-study", "--a", "0.5"}).out);
}

TEST_CASE("output file") {
  const std::string path = std::string(DDELTA_TEST_TMP) + "/cli_out.csv";
  const std::vector<const char*> argv{"ddelta", "spectrum", "--a", "0.25", "--output", path.c_str()};
  CHECK(cli_main(static_cast<int>(argv.size()), argv.data()) == 0);
  CHECK(read_file(path) == invoke({"spectrum", "--a", "0.25"}).out);
}
