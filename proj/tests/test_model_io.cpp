#include "doctest.h"
#include "rsched/adversary.hpp"
#include "rsched/engine.hpp"
#include "rsched/io.hpp"
#include "rsched/offline.hpp"

using namespace rsched;

namespace {

std::string error_of(const std::string& text) {
  try {
    (void)parse_instance(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse minimal instance") {
  const Instance inst = parse_instance(R"({"machines":2,"jobs":[{"id":1,"release":"0","size":"1/2"}]})");
  CHECK(inst.machines == 2);
  REQUIRE(inst.jobs.size() == 1);
  CHECK(inst.jobs[0].size == Rat(1, 2));
}

TEST_CASE("decimal literals convert exactly") {
  const Instance inst = parse_instance(R"({"machines":1,"jobs":[{"id":1,"release":"0.25","size":"3"}]})");
  CHECK(inst.jobs[0].release == Rat(1, 4));
  CHECK(inst.jobs[0].size == Rat(3));
}

TEST_CASE("integer JSON numbers are accepted, floats are not") {
  const Instance inst = parse_instance(R"({"machines":1,"jobs":[{"id":1,"release":0,"size":2}]})");
  CHECK(inst.jobs[0].size == Rat(2));
  CHECK(error_of(R"({"machines":1,"jobs":[{"id":1,"release":0,"size":0.5}]})").find("size") != std::string::npos);
}

TEST_CASE("validation errors") {
  CHECK(error_of(R"({"machines":0,"jobs":[{"id":1,"release":"0","size":"1"}]})") == "machines must be ≥ 1");
  CHECK(error_of(R"({"machines":1,"jobs":[{"id":7,"release":"0","size":"0"}]})") == "job 7: size must be > 0");
  CHECK(error_of(R"({"machines":1,"jobs":[{"id":3,"release":"-1","size":"1"}]})") == "job 3: release must be >= 0");
  CHECK(error_of(R"({"machines":1,"jobs":[{"id":2,"release":"0","size":"1"},{"id":2,"release":"0","size":"1"}]})") ==
        "job 2: duplicate id");
  CHECK(error_of("{not json").rfind("malformed JSON", 0) == 0);
  CHECK(error_of(R"({"machines":1})").find("jobs") != std::string::npos);
  CHECK(error_of(R"({"machines":1,"jobs":[]})") == "instance has no jobs");
}

TEST_CASE("scale_instance") {
  const Instance inst = lpt_tight(2, Rat(1, 100));
  CHECK(scale_instance(inst, Rat(1)).jobs == inst.jobs);
  const Instance back = scale_instance(scale_instance(inst, Rat(3)), Rat(1, 3));
  CHECK(back.jobs == inst.jobs);
  CHECK_THROWS_AS((void)scale_instance(inst, Rat(0)), InputError);
  CHECK_THROWS_AS((void)scale_instance(inst, Rat(-1)), InputError);

  // OPT = 2 instance scaled by 1/2 has OPT 1.
  const Instance two{1, {{1, Rat(0), Rat(1)}, {2, Rat(0), Rat(1)}}};
  CHECK(optimal_schedule(two).makespan == Rat(2));
  CHECK(optimal_schedule(scale_instance(two, Rat(1, 2))).makespan == Rat(1));
}

TEST_CASE("instance JSON round trips") {
  for (const Instance& inst : fuzz_instances(5, 200, 8, {1, 2, 3, 4})) {
    const std::string text = dump(to_json(inst));
    const Instance back = parse_instance(text);
    CHECK(back.machines == inst.machines);
    CHECK(back.jobs == inst.jobs);
    CHECK(dump(to_json(back)) == text);
  }
}

TEST_CASE("trace JSON round trips") {
  for (const Instance& inst : fuzz_instances(6, 100, 7, {1, 2, 3})) {
    const Trace tr = run(inst, RestartParams::defaults_for(inst.machines));
    const std::string text = dump(to_json(tr));
    const Trace back = parse_trace(text);
    CHECK(dump(to_json(back)) == text);
    CHECK(back.segments == tr.segments);
    CHECK(back.events == tr.events);
  }
}

TEST_CASE("trace accessors") {
  const Trace tr = run(lpt_tight(2, Rat(1, 100)), LptConfig{});
  CHECK(tr.completion(3) == Rat(3, 2));
  CHECK(tr.final_start(3) == Rat(1, 2));
  CHECK(makespan(tr) == Rat(3, 2));
  CHECK_THROWS_AS((void)tr.completion(99), InputError);

  const Trace scaled = scale_trace(tr, Rat(2));
  CHECK(makespan(scaled) == Rat(3));
}

TEST_CASE("policy validation and naming") {
  CHECK_THROWS_AS(validate_policy(RestartParams{Rat(0), Rat(1, 5)}), InputError);
  CHECK_THROWS_AS(validate_policy(Candidate1Config{Rat(1)}), InputError);
  CHECK_THROWS_AS(validate_policy(Candidate2Config{Rat(1, 2), Rat(2)}), InputError);
  CHECK_THROWS_AS(validate_policy(Candidate3Config{Rat(0)}), InputError);
  // Restart parameters outside the usual ranges still run.
  CHECK_NOTHROW(validate_policy(RestartParams{Rat(1, 2), Rat(3, 5)}));
  CHECK(policy_name(LptConfig{}) == "lpt");
  CHECK(policy_name(RestartParams::general()) == "restart");
  CHECK(describe(RestartParams::two_machine()) == "restart(alpha=1/5,beta=1/5)");
  CHECK(RestartParams::defaults_for(2) == RestartParams::two_machine());
  CHECK(RestartParams::defaults_for(3) == RestartParams::general());
}
