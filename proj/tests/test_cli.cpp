#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(QCERT_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(QCERT_GOLDEN_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("golden: analyze C_5 json") {
  RunResult r = run("--format json analyze --graph6 DUW");
  CHECK(r.exit_code == 0);
  CHECK(r.out == golden("analyze_c5.json"));
}

TEST_CASE("golden: certify K_3 as 2-connected json") {
  RunResult r = run("--format json certify --graph6 Bw --property k-connected --k 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out == golden("certify_k3.json"));
}

TEST_CASE("golden: construct join-cliques json") {
  RunResult r = run("--format json construct --family join-cliques --params k=1,a=3,b=3");
  CHECK(r.exit_code == 0);
  CHECK(r.out == golden("construct_join_cliques.json"));
}

TEST_CASE("construct text emits a bare graph6 line that round-trips") {
  RunResult r = run("construct --family join-cliques --params k=1,a=3,b=3");
  CHECK(r.exit_code == 0);
  REQUIRE(!r.out.empty());
  // construct | analyze pipeline parses its own output
  std::string line = r.out.substr(0, r.out.find('\n'));
  RunResult r2 = run("analyze --graph6 '" + line + "'");
  CHECK(r2.exit_code == 0);
}

TEST_CASE("exit codes") {
  CHECK(run("analyze").exit_code == 2);                    // missing input source
  CHECK(run("analyze --graph6 '#'").exit_code == 2);       // parse error
  CHECK(run("certify --graph6 Bw").exit_code == 2);        // k-connected needs --k
  CHECK(run("frobnicate").exit_code == 2);                 // unknown subcommand
  CHECK(run("verify --rule T4.1-q0 --nmax 5").exit_code == 0);
  CHECK(run("--format json verify --rule C4.6-q --nmax 4").exit_code == 0);
  CHECK(run("analyze --construct 'empty:n=4'").exit_code == 2);  // disconnected input
}

TEST_CASE("sweep emits csv") {
  RunResult r = run("sweep --rule C4.6-q --nmax 5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("rule,n,delta,k,", 0) == 0);
}

TEST_CASE("rules catalog lists all 22 rules") {
  RunResult r = run("rules");
  CHECK(r.exit_code == 0);
  int lines = 0;
  for (char c : r.out)
    if (c == '\n') ++lines;
  CHECK(lines >= 22);
  CHECK(r.out.find("T4.8-q2") != std::string::npos);
  RunResult j = run("--format json rules");
  CHECK(j.exit_code == 0);
}
