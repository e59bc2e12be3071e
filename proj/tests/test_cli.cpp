#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(MTK1_CLI) + " " + args + " 2>/dev/null";
  Run r{-1, {}};
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string sample(const std::string& name) { return std::string(MTK1_SAMPLES) + "/" + name; }

}  // namespace

TEST_CASE("definable-set commands") {
  CHECK(run("k0 " + sample("crossing_lines.txt")).out == "2X - 1\n");
  CHECK(run("k0 " + sample("plane_minus_line.txt")).out == "X^2 - X\n");
  CHECK(run("dim " + sample("line.txt")).out == "1\n");
  CHECK(run("iso " + sample("line.txt") + " " + sample("projection.txt")).out == "isomorphic\n");
  CHECK(run("iso " + sample("line.txt") + " " + sample("crossing_lines.txt")).out == "not-isomorphic\n");
  auto c = run("count --prime 7 " + sample("crossing_lines.txt"));
  CHECK(c.code == 0);
  CHECK(c.out == "count 13\ngood-prime yes\nk0(7) 13\n");
  auto j = run("--json k0 " + sample("line.txt"));
  CHECK(j.out.find("\"pretty\": \"X\"") != std::string::npos);
}

TEST_CASE("automorphism commands") {
  CHECK(run("aut validate " + sample("pamap_swap.json")).out == "valid\n");
  auto bad = run("aut validate " + sample("pamap_overlap.json"));
  CHECK(bad.code == 1);
  CHECK(bad.out.rfind("invalid", 0) == 0);
  CHECK(run("aut dim " + sample("pamap_double.json")).out == "1\n");
  CHECK(run("aut dim " + sample("pamap_reflection.json")).out == "2\n");
  CHECK(run("aut support " + sample("pamap_overlap.json")).code == 1);
}

TEST_CASE("K_1 commands") {
  CHECK(run("k1 --ring fq:4").out == "Z_2 ⊕ ⊕_{n≥1}(Z_3 ⊕ Z_2)\n");
  CHECK(run("k1 --ring z").out == "⊕_{n≥0}(Z_2)\n");
  CHECK(run("k1 --ring fq:2").code == 1);
  CHECK(run("k1 --ring z --rank 2").code == 1);
  CHECK(run("k1 --ring ed:R:1").code == 1);
  CHECK(run("k1 --ring ed:R:1 --t-closed").code == 0);
  CHECK(run("omega-ab --ring fq:5 --n 1").code == 0);
}

TEST_CASE("usage and domain errors") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("k1").code == 2);
  CHECK(run("k1 --ring banana").code == 2);
  CHECK(run("verify --suite nope").code == 2);
  CHECK(run("k0 /nonexistent/file.txt").code == 1);
  CHECK(run("abelianize --group Q17").code == 1);
}

TEST_CASE("verification suites and determinism") {
  auto a = run("verify --suite semiab --seed 9");
  CHECK(a.code == 0);
  CHECK(a.out == run("--seed 9 verify --suite semiab").out);
  CHECK(a.out == "semiab: 30/30 passed\n");
  CHECK(run("abelianize --group S4").out == run("abelianize --group S4").out);
  CHECK(run("--json abelianize --group D4").out.find("\"invariants\"") != std::string::npos);
}
