#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Runs a shell command, capturing stdout (and stderr when the caller
// appends a redirect). The command string is shell-interpreted, which the
// stdin-feeding tests rely on.
RunResult run(const std::string& args) {
  RunResult result;
  std::string cmd = std::string(FPM_BINARY) + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string golden(const std::string& name) { return slurp(std::string(GOLDEN_DIR) + "/" + name); }

std::string model_path(const std::string& name) { return std::string(MODELS_DIR) + "/" + name; }

}  // namespace

TEST_CASE("qkd demos byte-match their golden outputs") {
  CHECK(run("qkd table").output == golden("qkd_table.txt"));
  CHECK(run("qkd security").output == golden("qkd_security.txt"));
  CHECK(run("qkd eve").output == golden("qkd_eve.txt"));
  CHECK(run("qkd tree").output == golden("qkd_tree.txt"));
  CHECK(run("qkd table").exit_code == 0);
}

TEST_CASE("query prints exact value and decimal approximation") {
  std::string m = model_path("qkd.fpm");
  CHECK(run("query " + m + " \"P(AsOne|BmOne)\"").output == "3/4 (0.750000)\n");
  CHECK(run("query " + m + " \"P(BmOne)\"").output == "1/2 (0.500000)\n");
  CHECK(run("query " + m + " \"P(AsOne|AsOne)\"").output == "1 (1.000000)\n");
  CHECK(run("query " + m + " \"P(AsOne && BmOne)\"").output == "3/8 (0.375000)\n");
  RunResult total = run("query " + m + " \"total P(BmOne) by A_TTT A_FTT A_TFT A_FFT A_TTF"
                        " A_FTF A_TFF A_FFF\"");
  CHECK(total.exit_code == 0);
  CHECK(total.output.substr(0, 15) == "1/2 (0.500000)\n");
  CHECK(total.output.find("A_TTT: P = 1/8 (0.125000), joint = 1/8 (0.125000), cond = 1 "
                          "(1.000000)") != std::string::npos);
}

TEST_CASE("query without a string runs the stored queries") {
  RunResult r = run("query " + model_path("qkd_eve.fpm"));
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "P(Sift) = 1/2 (0.500000)\n"
        "P(Err | Sift) = 1/4 (0.250000)\n"
        "P(EveHit | Sift) = 3/4 (0.750000)\n");
}

TEST_CASE("check validates the bundled models") {
  CHECK(run("check " + model_path("qkd.fpm")).exit_code == 0);
  CHECK(run("check " + model_path("qkd_eve.fpm")).exit_code == 0);
  CHECK(run("check " + model_path("qkd.fpm")).output ==
        "ok: 4 variables, 16 outcomes, 8 events, 5 queries\n");
}

TEST_CASE("exit codes distinguish validation from io failures") {
  RunResult bad_sum =
      run("check - 2>&1 <<'EOF'\nvars: A\n\nprior:\n  T -> 1/2\n  F -> 3/8\nEOF\n");
  CHECK(bad_sum.exit_code == 1);
  CHECK(bad_sum.output == "<stdin>:3:1: prior sums to 7/8, expected 1\n");

  CHECK(run("check /no/such/file 2>/dev/null").exit_code == 2);
  CHECK(run("qkd 2>/dev/null").exit_code == 2);
  CHECK(run("qkd nope 2>/dev/null").exit_code == 2);
  CHECK(run("--bogus-flag qkd table 2>/dev/null").exit_code == 2);
  CHECK(run("2>/dev/null").exit_code == 2);

  RunResult bad_query = run("query " + model_path("qkd.fpm") + " \"P(Nope)\" 2>&1");
  CHECK(bad_query.exit_code == 1);
  CHECK(bad_query.output == "query:1:3: unknown identifier 'Nope'\n");
}

TEST_CASE("emit canonicalizes from a file or stdin") {
  std::string m = model_path("qkd.fpm");
  CHECK(run("emit " + m).output == slurp(m));
  CHECK(run("emit - < " + m).output == slurp(m));
  RunResult loose = run("emit - <<'EOF'\nvars: A\nprior:\n  1->1/2\n  0 ->2/4\nEOF\n");
  CHECK(loose.exit_code == 0);
  CHECK(loose.output ==
        "vars: A\n"
        "\n"
        "prior:\n"
        "  F -> 1/2\n"
        "  T -> 1/2\n");
}

TEST_CASE("csv and jsonl formats carry exact rationals") {
  RunResult csv = run("qkd table --format csv");
  CHECK(csv.output.substr(0, 31) == "AsOne,AchX,BchX,BmOne,exact,dec");
  CHECK(csv.output.find("F,F,F,F,1/8,0.125000\n") != std::string::npos);
  CHECK(csv.output.find("T,T,T,T,1/8,0.125000\n") != std::string::npos);

  RunResult jsonl = run("qkd eve --format jsonl");
  CHECK(jsonl.output ==
        "{\"decimal\":\"0.500000\",\"exact\":\"1/2\",\"kind\":\"value\",\"label\":"
        "\"sifted_prob\"}\n"
        "{\"decimal\":\"0.250000\",\"exact\":\"1/4\",\"kind\":\"value\",\"label\":"
        "\"sifted_qber\"}\n"
        "{\"decimal\":\"0.750000\",\"exact\":\"3/4\",\"kind\":\"value\",\"label\":"
        "\"eve_correct_given_sift\"}\n");

  RunResult q = run("query " + model_path("qkd.fpm") + " --format csv \"P(BmOne)\"");
  CHECK(q.output == "value,P(BmOne),1/2,0.500000\n");
}

TEST_CASE("places flag controls the decimal rendering") {
  CHECK(run("query " + model_path("qkd.fpm") + " --places 2 \"P(AsOne|BmOne)\"").output ==
        "3/4 (0.75)\n");
  CHECK(run("query " + model_path("qkd.fpm") + " --places 0 \"P(AsOne|BmOne)\"").output ==
        "3/4 (1)\n");
}
