#include "doctest.h"
#include "rsched/adversary.hpp"
#include "rsched/analysis.hpp"
#include "rsched/engine.hpp"
#include "rsched/io.hpp"

using namespace rsched;

namespace {

std::vector<PolicyConfig> all_policies(int m) {
  return {LptConfig{}, RestartParams::defaults_for(m), Candidate1Config{Rat(1, 2)},
          Candidate2Config{Rat(1, 2), Rat(3, 2)}, Candidate3Config{Rat(1, 10)}};
}

}  // namespace

TEST_CASE("single job") {
  const Trace tr = run(Instance{1, {{1, Rat(0), Rat(1)}}}, LptConfig{});
  REQUIRE(tr.segments.size() == 1);
  CHECK(tr.segments[0] == Segment{1, 0, Rat(0), Rat(1), Outcome::Completed, std::nullopt});
  CHECK(makespan(tr) == Rat(1));
}

TEST_CASE("LPT on the tight instance") {
  const Trace tr = run(lpt_tight(2, Rat(1, 100)), LptConfig{});
  CHECK(tr.final_start(3) == Rat(1, 2));
  CHECK(makespan(tr) == Rat(3, 2));
  CHECK(tr.pending.at(3) == std::vector<Interval>{{Rat(1, 100), Rat(1, 2)}});
}

TEST_CASE("restart on one machine") {
  const Instance inst{1, {{1, Rat(0), Rat(1)}, {2, Rat(1, 1000), Rat(3, 2)}}};
  const Trace tr = run(inst, RestartParams::general());
  REQUIRE(tr.segments.size() == 3);
  CHECK(tr.segments[0] == Segment{1, 0, Rat(0), Rat(1, 1000), Outcome::Replaced, 2});
  CHECK(tr.segments[1] == Segment{2, 0, Rat(1, 1000), Rat(1501, 1000), Outcome::Completed, std::nullopt});
  CHECK(tr.segments[2] == Segment{1, 0, Rat(1501, 1000), Rat(2501, 1000), Outcome::Completed, std::nullopt});
  CHECK(makespan(tr) == Rat(2501, 1000));

  // Replace is logged right before the replacer's start, at the same instant and machine.
  auto it = std::find_if(tr.events.begin(), tr.events.end(), [](const Event& e) { return e.kind == EventKind::Replace; });
  REQUIRE(it != tr.events.end());
  CHECK(it->job == 1);
  CHECK(it->other == std::optional<JobId>{2});
  CHECK((it + 1)->kind == EventKind::Start);
  CHECK((it + 1)->job == 2);
  CHECK((it + 1)->time == Rat(1, 1000));
}

TEST_CASE("extra machines do not change the makespan") {
  const Trace a = run(Instance{2, {{1, Rat(0), Rat(1)}, {2, Rat(0), Rat(2)}}}, LptConfig{});
  const Trace b = run(Instance{6, {{1, Rat(0), Rat(1)}, {2, Rat(0), Rat(2)}}}, LptConfig{});
  CHECK(makespan(a) == makespan(b));
}

TEST_CASE("completions free machines before simultaneous arrivals") {
  // Job 2 arrives exactly when job 1 finishes: no replacement decision, it just starts.
  const Instance inst{1, {{1, Rat(0), Rat(1)}, {2, Rat(1), Rat(5)}}};
  const Trace tr = run(inst, RestartParams{Rat(1, 2), Rat(1, 5)});
  CHECK(tr.segments.size() == 2);
  CHECK(tr.final_start(2) == Rat(1));
}

TEST_CASE("a run replaced at its own start leaves no segment") {
  // Job 1 and job 2 both arrive at 0 on one machine; job 2 replaces job 1 instantly.
  const Instance inst{1, {{1, Rat(0), Rat(1)}, {2, Rat(0), Rat(2)}}};
  const Trace tr = run(inst, RestartParams{Rat(1, 200), Rat(1, 5)});
  for (const Segment& s : tr.segments) CHECK(s.start < s.end);
  CHECK(tr.final_start(2) == Rat(0));
  CHECK(tr.final_start(1) == Rat(2));
  CHECK(std::count_if(tr.events.begin(), tr.events.end(), [](const Event& e) { return e.kind == EventKind::Replace; }) == 1);
}

TEST_CASE("equal sizes break ties by smaller id") {
  const Instance inst{1, {{3, Rat(0), Rat(1)}, {1, Rat(0), Rat(1)}, {2, Rat(0), Rat(1)}}};
  const Trace tr = run(inst, LptConfig{});
  CHECK(tr.segments[0].job == 1);
  CHECK(tr.segments[1].job == 2);
  CHECK(tr.segments[2].job == 3);
}

TEST_CASE("determinism: repeated runs are byte-identical") {
  for (const Instance& inst : fuzz_instances(21, 60, 8, {1, 2, 3, 4}))
    for (const PolicyConfig& p : all_policies(inst.machines))
      CHECK(dump(to_json(run(inst, p))) == dump(to_json(run(inst, p))));
}

TEST_CASE("scale equivariance") {
  std::uint64_t idx = 0;
  for (const Instance& inst : fuzz_instances(22, 60, 7, {1, 2, 3})) {
    const Rat f = fuzz_factor(22, idx++);
    for (const PolicyConfig& p : all_policies(inst.machines))
      CHECK(run(scale_instance(inst, f), p) == scale_trace(run(inst, p), f));
  }
}

TEST_CASE("structural invariants hold for every policy") {
  for (const Instance& inst : fuzz_instances(23, 150, 8, {1, 2, 3, 4})) {
    for (const PolicyConfig& p : all_policies(inst.machines)) {
      const Trace tr = run(inst, p);
      const AuditReport rep = audit_trace(tr, LptConfig{}, Rat(1));
      CHECK_MESSAGE(rep.ok(), describe(p), " ", dump(to_json(inst)), " ",
                    rep.ok() ? "" : rep.violations.front().detail);
      for (std::size_t i = 1; i < tr.events.size(); ++i) CHECK(tr.events[i - 1].time <= tr.events[i].time);
    }
  }
}

TEST_CASE("adversary: a silent adversary changes nothing") {
  Adversary silent{{Rat(1, 2), Rat(3)}, [](const EngineState&) { return std::vector<Job>{}; }};
  for (const Instance& inst : fuzz_instances(24, 50, 6, {1, 2, 3}))
    for (const PolicyConfig& p : all_policies(inst.machines))
      CHECK(run_with_adversary(inst.jobs, inst.machines, p, silent) == run(inst, p));
}

TEST_CASE("adversary: sees the prefix and injects") {
  std::optional<Rat> seen_clock;
  std::size_t seen_running = 0;
  Adversary adv{{Rat(1, 2)}, [&](const EngineState& s) {
                  seen_clock = s.clock;
                  for (const auto& slot : s.machines) seen_running += slot.has_value();
                  return std::vector<Job>{{9, Rat(1, 2), Rat(1)}};
                }};
  const Trace tr = run_with_adversary({{1, Rat(0), Rat(1)}}, 2, LptConfig{}, adv);
  CHECK(seen_clock == std::optional<Rat>{Rat(1, 2)});
  CHECK(seen_running == 1);
  CHECK(tr.instance.jobs.size() == 2);
  CHECK(tr.final_start(9) == Rat(1, 2));
  CHECK(makespan(tr) == Rat(3, 2));
}

TEST_CASE("adversary: bad injections are input errors naming the job") {
  const auto inject = [](Job j) {
    return Adversary{{Rat(1)}, [j](const EngineState&) { return std::vector<Job>{j}; }};
  };
  const std::vector<Job> seed{{1, Rat(0), Rat(2)}};
  try {
    (void)run_with_adversary(seed, 1, LptConfig{}, inject({5, Rat(1, 2), Rat(1)}));
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("job 5") != std::string::npos);
  }
  CHECK_THROWS_AS((void)run_with_adversary(seed, 1, LptConfig{}, inject({1, Rat(1), Rat(1)})), InputError);
  CHECK_THROWS_AS((void)run_with_adversary(seed, 1, LptConfig{}, inject({2, Rat(1), Rat(0)})), InputError);
}

TEST_CASE("hardness adversary takes the expected branch") {
  const Rat q = default_hardness_q();
  const HardnessOutcome lpt = run_hardness(LptConfig{});
  CHECK(lpt.branch == 1);
  CHECK(lpt.opt == Rat(2));
  CHECK(lpt.alg == q);

  const HardnessOutcome eager = run_hardness(RestartParams{Rat(1, 2), Rat(1, 5)});
  CHECK(eager.branch == 2);
  CHECK(eager.opt == q);
  CHECK(eager.alg >= Rat(3));
}

TEST_CASE("invalid inputs are rejected before simulating") {
  CHECK_THROWS_AS((void)run(Instance{0, {{1, Rat(0), Rat(1)}}}, LptConfig{}), InputError);
  CHECK_THROWS_AS((void)run(Instance{1, {}}, LptConfig{}), InputError);
  CHECK_THROWS_AS((void)run(Instance{1, {{1, Rat(0), Rat(1)}}}, RestartParams{Rat(0), Rat(1)}), InputError);
}
