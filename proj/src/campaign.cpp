#include "rsched/campaign.hpp"

#include "rsched/adversary.hpp"
#include "rsched/engine.hpp"
#include "rsched/offline.hpp"

namespace rsched {

namespace {

constexpr std::size_t kKeptFailures = 5;

}  // namespace

void CampaignResult::merge(const CampaignResult& o) {
  if (o.instances > 0 && (instances == 0 || o.max_ratio > max_ratio)) {
    max_ratio = o.max_ratio;
    max_ratio_index = o.max_ratio_index;
  }
  instances += o.instances;
  replacements += o.replacements;
  ratio_violations += o.ratio_violations;
  leftover_failures += o.leftover_failures;
  claim2_failures += o.claim2_failures;
  observation1_failures += o.observation1_failures;
  audit_violations += o.audit_violations;
  fact1_ties += o.fact1_ties;
  waste_equal += o.waste_equal;
  waste_general_larger += o.waste_general_larger;
  waste_general_smaller += o.waste_general_smaller;
  if (o.min_leftover_slack && (!min_leftover_slack || *o.min_leftover_slack < *min_leftover_slack))
    min_leftover_slack = o.min_leftover_slack;
  for (const auto& f : o.failures)
    if (failures.size() < kKeptFailures) failures.push_back(f);
}

CampaignResult run_campaign(const CampaignOptions& opt) {
  CampaignResult res;
  for (std::uint64_t idx = opt.first; idx < opt.first + opt.count; ++idx) {
    const Instance inst = fuzz_instance(opt.seed, idx, opt.n_max, opt.machines);
    const PolicyConfig policy = opt.policy.resolve(inst.machines);
    const auto fail = [&](std::string check, std::string detail) {
      if (res.failures.size() < kKeptFailures) res.failures.push_back({idx, std::move(check), std::move(detail), inst});
    };

    const OptSchedule best = optimal_schedule(inst);
    const Trace trace = run(inst, policy);
    const Rat ratio = makespan(trace) / best.makespan;
    if (res.instances == 0 || ratio > res.max_ratio) {
      res.max_ratio = ratio;
      res.max_ratio_index = idx;
    }
    ++res.instances;
    if (opt.max_ratio && ratio > *opt.max_ratio) {
      ++res.ratio_violations;
      fail("ratio", ratio.str());
    }

    if (opt.leftover) {
      const EfficiencyReport r = check_leftover_lemma(trace, best, opt.checkpoints);
      res.leftover_failures += r.failures;
      if (!res.min_leftover_slack || r.min_slack < *res.min_leftover_slack) res.min_leftover_slack = r.min_slack;
      if (!r.passed()) fail("leftover", std::to_string(r.failures) + " checkpoints");
    }
    if (opt.claim2) {
      const EfficiencyReport r = check_claim2(trace, best, opt.checkpoints);
      res.claim2_failures += r.failures;
      if (!r.passed()) fail("claim2", std::to_string(r.failures) + " checkpoints");
    }
    if (opt.observation1) {
      const EfficiencyReport r = check_observation1_all(trace, best, opt.checkpoints);
      res.observation1_failures += r.failures;
      if (!r.passed()) fail("observation1", std::to_string(r.failures) + " checkpoints");
    }
    if (opt.audit) {
      const AuditReport a = audit_trace(trace, policy, best.makespan);
      res.fact1_ties += a.fact1_ties;
      res.audit_violations += a.violations.size();
      if (!a.ok()) fail("audit:" + a.violations.front().rule, a.violations.front().detail);
    }

    for (const Event& e : trace.events) res.replacements += e.kind == EventKind::Replace;

    const Rat horizon = makespan(trace);
    const Rat general = general_waste_before(trace, horizon);
    const Rat replaced = waste_before(trace, horizon);
    if (general == replaced) {
      ++res.waste_equal;
    } else if (general > replaced) {
      ++res.waste_general_larger;
    } else {
      ++res.waste_general_smaller;
      fail("waste", "general waste " + general.str() + " below replaced mass " + replaced.str());
    }
  }
  return res;
}

Claim3Campaign run_claim3_campaign(std::uint64_t seed, std::size_t trials, int k_max, std::size_t starts, int steps) {
  Claim3Campaign res;
  std::mt19937_64 rng(seed);
  const auto record = [&](const Claim3Triple& t, std::optional<Rat>& min_slack) {
    const Claim3Result r = check_claim3(t.a, t.b, t.h);
    if (r.status == Claim3Result::Status::PreconditionsUnmet) {
      ++res.unmet;
      return;
    }
    if (r.status == Claim3Result::Status::Violated) ++res.violations;
    if (!min_slack || r.slack < *min_slack) min_slack = r.slack;
  };
  for (std::size_t i = 0; i < trials; ++i) {
    record(random_claim3_triple(rng, k_max), res.min_slack);
    ++res.trials;
  }
  for (std::size_t i = 0; i < starts; ++i) {
    record(hill_climb_claim3(random_claim3_triple(rng, k_max), rng, steps), res.climb_min_slack);
    ++res.climbs;
  }
  return res;
}

}  // namespace rsched
