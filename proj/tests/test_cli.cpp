#include <catch2/catch_amalgamated.hpp>

#include <freefix/freefix.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <sys/wait.h>

using namespace freefix;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

const char* cli_path() { return std::getenv("FREEFIX_CLI"); }

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(cli_path()) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  CliResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

#define NEED_CLI()                              \
  do {                                          \
    if (!cli_path()) SKIP("FREEFIX_CLI not set"); \
  } while (0)

}  // namespace

TEST_CASE("cli fold prints a summary line and the basis") {
  NEED_CLI();
  CliResult r = run_cli("fold --rank 2 --gens aa,b");
  CHECK(r.code == 0);
  CHECK(r.out == "# vertices 2 edges 3 rank 2\nb\naa\n");
}

TEST_CASE("cli fold output feeds back as a generators file") {
  NEED_CLI();
  CliResult first = run_cli("fold --rank 2 --gens aa,b,aabAA");
  REQUIRE(first.code == 0);
  std::string path = "/tmp/freefix_test_gens.txt";
  { std::ofstream(path) << first.out; }
  CliResult second = run_cli("fold --rank 2 --gens-file " + path);
  CHECK(second.code == 0);
  CHECK(second.out == first.out);
  std::remove(path.c_str());
}

TEST_CASE("cli member answers in both formats") {
  NEED_CLI();
  CliResult yes = run_cli("member --rank 2 --gens aa,b --word aab");
  CHECK(yes.code == 0);
  CHECK(yes.out == "yes\n");
  CliResult no = run_cli("member --rank 2 --gens aa,b --word ab");
  CHECK(no.code == 0);
  CHECK(no.out == "no\n");
  CliResult js = run_cli("member --rank 2 --gens aa,b --word aab --format structured");
  CHECK(js.code == 0);
  CHECK(nlohmann::json::parse(js.out)["member"] == true);
}

TEST_CASE("cli basis rewrites the generators") {
  NEED_CLI();
  CliResult r = run_cli("basis --rank 3 --gens a,baccbCCBA");
  CHECK(r.code == 0);
  CHECK(r.out == "a\nbaccbCCB\n");
  CliResult dot = run_cli("basis --rank 3 --gens a --format dot");
  CHECK(dot.code == 1);
}

TEST_CASE("cli intersect folds the meet") {
  NEED_CLI();
  CliResult r = run_cli("intersect --rank 2 --gens a --gens2 aa,b");
  CHECK(r.code == 0);
  CHECK(r.out == "# vertices 2 edges 2 rank 1\naa\n");
}

TEST_CASE("cli fringe lists the overgroups") {
  NEED_CLI();
  CliResult r = run_cli("fringe --rank 2 --gens aa");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "# member 0 vertices 2 rank 1\naa\n"
        "# member 1 vertices 1 rank 1\na\n");
}

TEST_CASE("cli algebraic extensions in structured form") {
  NEED_CLI();
  CliResult r = run_cli("ae --rank 2 --gens aa --format structured");
  CHECK(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  REQUIRE(j["members"].size() == 2);
  CHECK(j["members"][0]["basis"] == nlohmann::json::array({"aa"}));
  CHECK(j["members"][1]["basis"] == nlohmann::json::array({"a"}));
}

TEST_CASE("cli freefactor compares two subgroups") {
  NEED_CLI();
  CliResult yes = run_cli("freefactor --rank 2 --gens a --gens2 a,bb");
  CHECK(yes.code == 0);
  CHECK(yes.out == "yes\n");
  CliResult no = run_cli("freefactor --rank 2 --gens aa --gens2 a");
  CHECK(no.code == 0);
  CHECK(no.out == "no\n");
}

TEST_CASE("cli stab reports the generator count") {
  NEED_CLI();
  CliResult r = run_cli("stab --rank 2 --gens a,b");
  CHECK(r.code == 0);
  CHECK(r.out == "# generators 0\n");
}

TEST_CASE("cli stab stops on the rank budget") {
  NEED_CLI();
  CliResult r = run_cli("stab --rank 4 --gens a");
  CHECK(r.code == 3);
  CHECK(r.out.find("budget exceeded:") != std::string::npos);
}

TEST_CASE("cli fix folds the short fixed words") {
  NEED_CLI();
  CliResult r = run_cli("fix --rank 2 --morphism 'a -> a; b -> ba' --max-len 4");
  CHECK(r.code == 0);
  CHECK(r.out == "# vertices 2 edges 3 rank 2\na\nbaB\n");
}

TEST_CASE("cli stable image signals a non stabilized run") {
  NEED_CLI();
  CliResult r = run_cli("stable-image --rank 1 --morphism 'a -> aa' --max-iter 3");
  CHECK(r.code == 2);
  CHECK(r.out == "# iterations 3 stabilized no\naaaaaaaa\n");
  CliResult id = run_cli("stable-image --rank 2 --morphism 'a -> a; b -> b'");
  CHECK(id.code == 0);
  CHECK(id.out == "# iterations 0 stabilized yes\na\nb\n");
}

TEST_CASE("cli retract prints the morphism or a definite miss") {
  NEED_CLI();
  CliResult hit = run_cli("retract --rank 2 --gens ab");
  CHECK(hit.code == 0);
  CHECK(hit.out == "a -> 1\nb -> ab\n");
  CliResult miss = run_cli("retract --rank 1 --gens aa --retraction-bound 3");
  CHECK(miss.code == 2);
  CHECK(miss.out == "no retraction with images up to length 3\n");
}

TEST_CASE("cli acl membership follows the stabilizer") {
  NEED_CLI();
  CliResult in = run_cli("acl-member --rank 2 --gens a,baB --word baB");
  CHECK(in.code == 0);
  CHECK(in.out == "yes\n");
  CliResult out = run_cli("acl-member --rank 2 --gens a,baB --word b");
  CHECK(out.code == 0);
  CHECK(out.out == "no\n");
}

TEST_CASE("cli verdict exit codes separate certified from evidence") {
  NEED_CLI();
  CliResult yes = run_cli("auto-fixed --rank 2 --gens a");
  CHECK(yes.code == 0);
  CHECK(yes.out.find("rule: inner-centralizer") != std::string::npos);
  CliResult no = run_cli("auto-fixed --rank 2 --gens aa");
  CHECK(no.code == 0);
  CHECK(no.out.find("verdict: CertifiedNo") != std::string::npos);
  CHECK(no.out.find("witness word: a") != std::string::npos);
  CliResult ev = run_cli("endo-fixed --rank 2 --gens a,baB");
  CHECK(ev.code == 2);
  CHECK(ev.out.find("rule: evidence-ecl") != std::string::npos);
  CHECK(ev.out.find("closure upper bound: a b") != std::string::npos);
}

TEST_CASE("cli structured verdicts parse and revalidate") {
  NEED_CLI();
  CliResult r = run_cli("endo-fixed --rank 3 --gens a,baccbCCBA --format structured");
  CHECK(r.code == 0);
  Verdict v = verdict_from_json(nlohmann::json::parse(r.out));
  CHECK(v.soundness == Soundness::CertifiedYes);
  CHECK(v.rule == "retraction");
  CHECK(revalidate(v).empty());
}

TEST_CASE("cli reduce family drops the composite") {
  NEED_CLI();
  CliResult r =
      run_cli("reduce-family --rank 2 --morphism 'a -> a; b -> ba' --morphism 'a -> a; b -> baa'");
  CHECK(r.code == 0);
  CHECK(r.out.substr(0, r.out.find('\n')) == "# kept 1 of 2");
}

TEST_CASE("cli rejects malformed input with exit one") {
  NEED_CLI();
  CliResult word = run_cli("member --rank 2 --gens aa --word 'a?'");
  CHECK(word.code == 1);
  CHECK(word.out.find("error:") != std::string::npos);
  CliResult missing = run_cli("fold --rank 2");
  CHECK(missing.code == 1);
  CliResult rank = run_cli("fold --rank 30 --gens a");
  CHECK(rank.code == 1);
}

TEST_CASE("cli dot output is a digraph") {
  NEED_CLI();
  CliResult r = run_cli("fold --rank 2 --gens ab --format dot");
  CHECK(r.code == 0);
  CHECK(r.out.find("digraph") != std::string::npos);
}
