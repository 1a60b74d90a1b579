#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "rsched/adversary.hpp"
#include "rsched/cli.hpp"
#include "rsched/io.hpp"

using namespace rsched;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "rsched");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("rsched_test_" + name);
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("ratio on the tight instance") {
  const auto f = temp_file("lt.json", dump(to_json(lpt_tight(2, Rat(1, 100)))));
  const Result r = cli({"ratio", f.string(), "--policy", "lpt"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"alg\":\"3/2\",\"opt\":\"101/100\",\"ratio\":\"150/101\"}\n");
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("simulate writes trace JSON and an SVG") {
  const auto f = temp_file("sim.json", dump(to_json(lpt_tight(3, Rat(1, 1000)))));
  const fs::path svg = fs::temp_directory_path() / "rsched_test_out.svg";
  fs::remove(svg);
  const Result r = cli({"simulate", f.string(), "--policy", "restart", "--alpha", "1/200", "--gantt", svg.string()});
  REQUIRE(r.code == 0);
  const Trace tr = parse_trace(r.out);
  CHECK(dump(to_json(tr)) + "\n" == r.out);
  CHECK(makespan(tr) == Rat(1001, 1000));
  std::ifstream in(svg);
  std::stringstream s;
  s << in.rdbuf();
  CHECK(s.str().find("<svg") == 0);
  CHECK(s.str().find("url(#hatch)") != std::string::npos);
}

TEST_CASE("gantt subcommand renders a saved trace") {
  const auto t = temp_file("trace.json", dump(to_json(run(lpt_tight(2, Rat(1, 100)), LptConfig{}))));
  const Result r = cli({"gantt", t.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("<svg") == 0);
  CHECK(r.out.find("url(#hatch)") == std::string::npos);
}

TEST_CASE("opt prints makespan and schedule") {
  const auto f = temp_file("opt.json", dump(to_json(lpt_tight(2, Rat(1, 100)))));
  const Result r = cli({"opt", f.string()});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["makespan"] == "101/100");
  CHECK(j["schedule"].size() == 3);
}

TEST_CASE("verify passes and reports") {
  const auto f = temp_file("verify.json", dump(to_json(leftover_tight(4, Rat(1, 100)))));
  for (const std::string p : {"lpt", "restart", "cand1", "cand2", "cand3"}) {
    const Result r = cli({"verify", f.string(), "--policy", p, "--checkpoints", "breakpoints"});
    CHECK(r.code == 0);
    CHECK(r.err.rfind("PASS", 0) == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["passed"] == true);
    CHECK(j["leftover"]["checkpoints"].size() > 0);
  }
}

TEST_CASE("claim3 and fuzz campaigns") {
  const Result c3 = cli({"claim3", "--trials", "2000", "--seed", "7", "--starts", "20"});
  CHECK(c3.code == 0);
  CHECK(nlohmann::json::parse(c3.out)["violations"] == 0);

  const Result fz = cli({"fuzz", "--policy", "restart", "--trials", "60", "--seed", "3", "--m", "1,2", "--claim2",
                         "--observation1", "--max-ratio", "3/2"});
  CHECK(fz.code == 0);
  const auto j = nlohmann::json::parse(fz.out);
  CHECK(j["instances"] == 60);
  CHECK(j["violations"] == 0);

  // A ratio bound below what LPT reaches shows up as a failed check.
  const Result bad = cli({"fuzz", "--policy", "lpt", "--trials", "200", "--seed", "3", "--max-ratio", "1"});
  CHECK(bad.code == 1);
}

TEST_CASE("counterexample and hardness") {
  const Result c = cli({"counterexample", "c2", "--m", "4"});
  CHECK(c.code == 0);
  const Instance inst = parse_instance(c.out);
  CHECK(inst.jobs.size() == 8);
  CHECK(c.err.find("alg=24 opt=17") != std::string::npos);

  const Result c5 = cli({"counterexample", "c5", "--xi", "1/1000000"});
  CHECK(c5.code == 0);
  CHECK(parse_instance(c5.out).machines == 1);

  const Result h = cli({"hardness", "--policy", "lpt"});
  CHECK(h.code == 0);
  const auto j = nlohmann::json::parse(h.out);
  CHECK(j["branch"] == 1);
  CHECK(j["opt"] == "2");
}

TEST_CASE("usage and input errors") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"ratio"}).code == 2);
  CHECK(cli({"ratio", "x.json", "--bogus"}).code == 2);
  CHECK(cli({"ratio", "/nonexistent/x.json"}).code == 2);
  const auto f = temp_file("bad.json", R"({"machines":0,"jobs":[]})");
  const Result r = cli({"ratio", f.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("machines must be") != std::string::npos);
  CHECK(cli({"ratio", f.string(), "--policy", "restart", "--alpha", "x"}).code == 2);
  CHECK(cli({"counterexample", "c4", "--m", "2"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

#ifdef RSCHED_CLI
TEST_CASE("the installed binary follows the same exit codes") {
  const auto f = temp_file("bin.json", dump(to_json(lpt_tight(2, Rat(1, 100)))));
  const std::string bin = RSCHED_CLI;
  CHECK(std::system((bin + " ratio " + f.string() + " > /dev/null 2>&1").c_str()) == 0);
  CHECK(WEXITSTATUS(std::system((bin + " nope > /dev/null 2>&1").c_str())) == 2);
}
#endif
