#include "doctest.h"
#include "rsched/adversary.hpp"
#include "rsched/analysis.hpp"
#include "rsched/io.hpp"
#include "rsched/offline.hpp"

using namespace rsched;

TEST_CASE("lpt_tight") {
  const Instance inst = lpt_tight(2, Rat(1, 100));
  CHECK(inst.machines == 2);
  CHECK(inst.jobs.size() == 3);
  CHECK(competitive_ratio(inst, LptConfig{}) == Rat(150, 101));
  const Instance one = lpt_tight(1, Rat(1, 100));
  CHECK(optimal_schedule(one).makespan == Rat(3, 2));
  CHECK(competitive_ratio(one, LptConfig{}) == Rat(1));
  CHECK_THROWS_AS((void)lpt_tight(0, Rat(1, 100)), InputError);
  CHECK_THROWS_AS((void)lpt_tight(2, Rat(1, 2)), InputError);
  CHECK_THROWS_AS((void)lpt_tight(2, Rat(0)), InputError);
}

TEST_CASE("lpt_tight ratio grows as eps shrinks") {
  for (int m = 2; m <= 4; ++m) {
    Rat prev;
    for (const Rat& eps : {Rat(1, 5), Rat(1, 10), Rat(1, 20), Rat(1, 100), Rat(1, 1000)}) {
      const Rat r = competitive_ratio(lpt_tight(m, eps), LptConfig{});
      CHECK(r > prev);
      CHECK(r < Rat(3, 2));
      prev = r;
    }
  }
}

TEST_CASE("leftover_tight") {
  const Instance inst = leftover_tight(4, Rat(1, 100));
  CHECK(inst.jobs.size() == 6);
  CHECK(optimal_schedule(inst).makespan == Rat(1));
  CHECK(optimal_schedule(leftover_tight(2, Rat(1, 100))).makespan == Rat(1));
  CHECK_THROWS_AS((void)leftover_tight(3, Rat(1, 100)), InputError);
}

TEST_CASE("counterexample c1") {
  const Rat xi(1, 1000);
  const Counterexample c = candidate_counterexample("c1", {.m = 3, .xi = xi, .rho = Rat(1, 2)});
  CHECK(makespan(run(c.instance, c.policy)) == Rat(3));
  CHECK(optimal_schedule(c.instance).makespan == Rat(2) + Rat(2) * xi);

  const Counterexample c3rd = candidate_counterexample("c1", {.m = 5, .xi = xi, .rho = Rat(1, 3)});
  CHECK(makespan(run(c3rd.instance, c3rd.policy)) == Rat(3));
  CHECK(optimal_schedule(c3rd.instance).makespan == Rat(2) + Rat(3) * xi);
  CHECK_THROWS_AS((void)candidate_counterexample("c1", {.m = 2, .rho = Rat(1, 2)}), InputError);
}

TEST_CASE("counterexample c2") {
  for (int m = 2; m <= 5; ++m) {
    const Counterexample c = candidate_counterexample("c2", {.m = m});
    CHECK(makespan(run(c.instance, c.policy)) == Rat(6 * m));
    CHECK(optimal_schedule(c.instance).makespan == Rat(4 * m + 1));
  }
}

TEST_CASE("counterexample c3 values reported by the oracle") {
  for (int m = 2; m <= 4; ++m) {
    const Counterexample c = candidate_counterexample("c3", {.m = m});
    const Rat alg = makespan(run(c.instance, c.policy));
    const Rat opt = optimal_schedule(c.instance).makespan;
    MESSAGE("c3 m=", m, ": alg=", alg.str(), " opt=", opt.str());
    // Work bound: every schedule needs at least total size / m.
    Rat work;
    for (const Job& j : c.instance.jobs) work += j.size;
    CHECK(opt >= work / Rat(m));
    CHECK(alg >= opt);
  }
}

TEST_CASE("counterexample c4") {
  const Rat xi(1, 1000);
  const Counterexample c = candidate_counterexample("c4", {.m = 4, .xi = xi});
  const Trace tr = run(c.instance, c.policy);
  CHECK(makespan(tr) == Rat(9, 2) + xi);
  CHECK(audit_trace(tr, c.policy, optimal_schedule(c.instance).makespan).replacements == 0);
  CHECK_THROWS_AS((void)candidate_counterexample("c4", {.m = 3}), InputError);
  CHECK_THROWS_AS((void)candidate_counterexample("c4", {.m = 4, .beta = Rat(1, 2)}), InputError);
}

TEST_CASE("counterexample c5") {
  const Counterexample c = candidate_counterexample("c5", {.m = 1, .xi = Rat(1, 1000000), .jobs = 10});
  const Rat ratio = competitive_ratio(c.instance, c.policy);
  CHECK(ratio > Rat(149, 100));
  CHECK(ratio < Rat(3, 2));
  CHECK_THROWS_AS((void)candidate_counterexample("c5", {.m = 2}), InputError);
  CHECK_THROWS_AS((void)candidate_counterexample("c9", {}), InputError);
}

TEST_CASE("hardness adversary spec") {
  const AdversarySpec spec = hardness_adversary();
  CHECK(spec.machines == 2);
  CHECK(spec.seeds.size() == 3);
  CHECK(spec.seeds[2].release == Rat(3) - spec.q);
  CHECK(spec.adversary.triggers == std::vector<Rat>{Rat(1)});
  const Rat target = min(spec.q / Rat(2), Rat(3) / spec.q);
  for (const PolicyConfig& p :
       {PolicyConfig{LptConfig{}}, PolicyConfig{RestartParams::general()}, PolicyConfig{RestartParams::two_machine()},
        PolicyConfig{Candidate1Config{Rat(3, 5)}}, PolicyConfig{RestartParams{Rat(1, 2), Rat(1, 5)}}}) {
    const HardnessOutcome h = run_hardness(p);
    CHECK(h.ratio >= target - Rat(1, 10000));
    CHECK(h.ratio >= h.target);
  }
}

TEST_CASE("fuzz streams are deterministic and valid") {
  const auto a = fuzz_instances(1, 1000, 8, {1, 2, 3});
  const auto b = fuzz_instances(1, 1000, 8, {1, 2, 3});
  CHECK(a == b);
  for (const Instance& inst : a) {
    CHECK_NOTHROW(inst.validate());
    CHECK(inst.jobs.size() <= 8);
    CHECK(inst.machines >= 1);
    CHECK(inst.machines <= 3);
  }
  CHECK(fuzz_instance(1, 17, 8, {1, 2, 3}) == a[17]);
  CHECK(fuzz_instances(2, 50, 8, {1, 2, 3}) != fuzz_instances(1, 50, 8, {1, 2, 3}));
  CHECK_THROWS_AS((void)fuzz_instance(1, 0, 15, {2}), InputError);
}

TEST_CASE("claim 3 sampler produces admissible triples") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 3000; ++i) {
    const Claim3Triple t = random_claim3_triple(rng, 10);
    CHECK(t.a.size() <= 10);
    const Claim3Result r = check_claim3(t.a, t.b, t.h);
    CHECK(r.status != Claim3Result::Status::PreconditionsUnmet);
    CHECK(r.slack == claim3_slack(t));
  }
}

TEST_CASE("hill climbing never increases slack and keeps preconditions") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const Claim3Triple start = random_claim3_triple(rng, 6);
    const Claim3Triple end = hill_climb_claim3(start, rng, 300);
    CHECK(claim3_slack(end) <= claim3_slack(start));
    CHECK(check_claim3(end.a, end.b, end.h).status == Claim3Result::Status::Holds);
  }
}
