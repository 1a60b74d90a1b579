#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rsched/engine.hpp"
#include "rsched/model.hpp"

namespace rsched {

/// m jobs (0, 1/2) followed by one job (eps, 1). Needs m >= 1, 0 < eps < 1/2.
[[nodiscard]] Instance lpt_tight(int m, const Rat& eps);

/// m jobs (0, 1/2) followed by m/2 jobs (eps, 1 - eps). Needs m even, 0 < eps < 1/2.
[[nodiscard]] Instance leftover_tight(int m, const Rat& eps);

struct CounterexampleParams {
  int m = 4;
  Rat xi{1, 1000};
  std::optional<Rat> rho;
  std::optional<Rat> mu;
  std::optional<Rat> gamma;
  std::optional<Rat> alpha;
  std::optional<Rat> beta;
  int jobs = 10;  // c5 only
};

/// A scripted instance together with the policy it is meant to defeat.
struct Counterexample {
  std::string name;
  Instance instance;
  PolicyConfig policy;
};

/// Names c1..c5. Defaults: c1 rho = 1/2; c2 rho = 1/2, mu = 3/2; c3 gamma = 1/10;
/// c4 restart with alpha = 1/200, beta = 3/5; c5 restart with alpha = 1/2,
/// beta = 1/5 on one machine. Throws InputError on an unknown name or a
/// parameter outside the construction's range.
[[nodiscard]] Counterexample candidate_counterexample(const std::string& name, const CounterexampleParams& params);

/// Rational stand-in for sqrt(6).
[[nodiscard]] Rat default_hardness_q();

struct AdversarySpec {
  std::vector<Job> seeds;
  int machines = 2;
  Adversary adversary;
  Rat q;
};

/// Two machines: jobs 1, 2 of size 1 at time 0 and job 3 of size q - 1 at 3 - q.
/// At time 1, if job 3 has started before 1, job 4 (size q - 1) arrives at 1.
[[nodiscard]] AdversarySpec hardness_adversary(const Rat& q = default_hardness_q());

struct HardnessOutcome {
  int branch = 1;  // 1: job 3 waited; 2: job 4 was injected
  Trace trace;
  Rat alg;
  Rat opt;
  Rat ratio;
  Rat target;  // q/2 in branch 1, 3/q in branch 2
};

[[nodiscard]] HardnessOutcome run_hardness(const PolicyConfig& policy, const Rat& q = default_hardness_q());

/// Deterministic pseudo-random instance number `index` of the stream named by
/// `seed`. Each instance has between 1 and n_max jobs and a machine count from
/// `m_choices`. Shapes rotate between uniform, clustered releases, near-equal
/// sizes, one giant job and geometric staircases whose ratio sits just above or
/// below the restart thresholds.
[[nodiscard]] Instance fuzz_instance(std::uint64_t seed, std::uint64_t index, int n_max,
                                     const std::vector<int>& m_choices);

/// The first `count` instances of the stream.
[[nodiscard]] std::vector<Instance> fuzz_instances(std::uint64_t seed, std::size_t count, int n_max,
                                                   const std::vector<int>& m_choices);

/// Random factor for scaling tests, a small-denominator positive rational.
[[nodiscard]] Rat fuzz_factor(std::uint64_t seed, std::uint64_t index);

struct Claim3Triple {
  std::vector<Rat> a;
  std::vector<Rat> b;
  std::vector<Rat> h;
};

/// Random triple of length 1..k_max meeting both preconditions of check_claim3.
[[nodiscard]] Claim3Triple random_claim3_triple(std::mt19937_64& rng, int k_max);

/// Local search from `start` for a triple with smaller conclusion slack, moving
/// one coordinate by one grid step at a time and keeping the preconditions.
[[nodiscard]] Claim3Triple hill_climb_claim3(Claim3Triple start, std::mt19937_64& rng, int steps);

/// (1/4) sum (a + b) - sum b (1 - h).
[[nodiscard]] Rat claim3_slack(const Claim3Triple& t);

}  // namespace rsched
