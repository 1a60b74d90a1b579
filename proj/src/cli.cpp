#include "rsched/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rsched/adversary.hpp"
#include "rsched/analysis.hpp"
#include "rsched/campaign.hpp"
#include "rsched/engine.hpp"
#include "rsched/gantt.hpp"
#include "rsched/io.hpp"
#include "rsched/offline.hpp"

namespace rsched {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct RatFlags {
  std::string alpha, beta, rho, mu, gamma, xi;
};

std::optional<Rat> maybe_rat(const std::string& s, const std::string& flag) {
  if (s.empty()) return std::nullopt;
  try {
    return Rat::parse(s);
  } catch (const std::exception& e) {
    throw InputError("--" + flag + ": " + e.what());
  }
}

json schedule_json(const OptSchedule& s) {
  json jobs = json::array();
  for (const Segment& seg : s.segments())
    jobs.push_back({{"job", seg.job}, {"machine", seg.machine}, {"start", seg.start.str()}, {"end", seg.end.str()}});
  return {{"makespan", s.makespan.str()}, {"schedule", jobs}};
}

json report_json(const EfficiencyReport& r) {
  json cps = json::array();
  for (const Checkpoint& c : r.checkpoints) {
    cps.push_back({{"t", c.t.str()},
                   {"midpoint", c.midpoint},
                   {"delta", c.delta.str()},
                   {"waste", c.waste.str()},
                   {"idle", c.idle.str()},
                   {"a_value", c.a_value.str()},
                   {"leftover_bound", c.leftover_bound.str()},
                   {"claim2_bound", c.claim2_bound.str()},
                   {"leftover_ok", c.leftover_ok},
                   {"claim2_ok", c.claim2_ok},
                   {"observation1_ok", c.observation1_ok}});
  }
  return {{"check", r.check},     {"normalized", r.normalized}, {"passed", r.passed()},
          {"failures", r.failures}, {"min_slack", r.min_slack.str()}, {"checkpoints", cps}};
}

json audit_json(const AuditReport& a) {
  json v = json::array();
  for (const auto& f : a.violations) v.push_back({{"rule", f.rule}, {"detail", f.detail}});
  return {{"ok", a.ok()}, {"replacements", a.replacements}, {"fact1_ties", a.fact1_ties}, {"violations", v}};
}

json campaign_json(const CampaignResult& r) {
  json fails = json::array();
  for (const auto& f : r.failures)
    fails.push_back({{"index", f.index}, {"check", f.check}, {"detail", f.detail}, {"instance", to_json(f.instance)}});
  json j = {{"instances", r.instances},
            {"violations", r.violations()},
            {"max_ratio", r.max_ratio.str()},
            {"max_ratio_index", r.max_ratio_index},
            {"ratio_violations", r.ratio_violations},
            {"leftover_failures", r.leftover_failures},
            {"claim2_failures", r.claim2_failures},
            {"observation1_failures", r.observation1_failures},
            {"audit_violations", r.audit_violations},
            {"replacements", r.replacements},
            {"fact1_ties", r.fact1_ties},
            {"waste", {{"equal", r.waste_equal}, {"general_larger", r.waste_general_larger},
                       {"general_smaller", r.waste_general_smaller}}},
            {"failures", fails}};
  if (r.min_leftover_slack) j["min_leftover_slack"] = r.min_leftover_slack->str();
  return j;
}

CheckpointMode checkpoint_mode(const std::string& s) {
  if (s == "breakpoints") return CheckpointMode::Breakpoints;
  return CheckpointMode::BreakpointsAndMidpoints;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Online makespan scheduling with restarts: simulator, exact oracle and proof checkers"};
  app.require_subcommand(1);

  std::string policy_name = "lpt";
  RatFlags rf;
  std::string input;
  std::string gantt_path;
  std::string checkpoints = "breakpoints+midpoints";
  int m = 4;
  std::vector<int> m_list{1, 2, 3, 4};
  std::uint64_t seed = 1;
  std::size_t trials = 1000;
  int n_max = 8;
  int k_max = 10;
  std::size_t starts = 1000;
  int steps = 200;
  int jobs = 10;
  std::string max_ratio;
  std::string name;
  bool claim2 = false;
  bool observation1 = false;

  const auto add_policy = [&](CLI::App* sub) {
    sub->add_option("--policy", policy_name, "lpt, restart, cand1, cand2 or cand3")
        ->check(CLI::IsMember({"lpt", "restart", "cand1", "cand2", "cand3"}));
    sub->add_option("--alpha", rf.alpha, "restart: waste threshold");
    sub->add_option("--beta", rf.beta, "restart: growth threshold");
    sub->add_option("--rho", rf.rho, "cand1/cand2: processed fraction bound");
    sub->add_option("--mu", rf.mu, "cand2: size ratio");
    sub->add_option("--gamma", rf.gamma, "cand3: target ratio minus one");
  };
  const auto add_checkpoints = [&](CLI::App* sub) {
    sub->add_option("--checkpoints", checkpoints, "breakpoints or breakpoints+midpoints")
        ->check(CLI::IsMember({"breakpoints", "breakpoints+midpoints"}));
  };

  auto* simulate = app.add_subcommand("simulate", "run a policy and print the trace");
  simulate->add_option("instance", input, "instance JSON file")->required();
  add_policy(simulate);
  simulate->add_option("--gantt", gantt_path, "also write an SVG Gantt chart");

  auto* opt = app.add_subcommand("opt", "exact offline optimum");
  opt->add_option("instance", input, "instance JSON file")->required();

  auto* ratio = app.add_subcommand("ratio", "policy makespan over the optimum");
  ratio->add_option("instance", input, "instance JSON file")->required();
  add_policy(ratio);

  auto* verify = app.add_subcommand("verify", "check the leftover bound, Claim 2, Observation 1 and trace audits");
  verify->add_option("instance", input, "instance JSON file")->required();
  add_policy(verify);
  add_checkpoints(verify);

  auto* claim3 = app.add_subcommand("claim3", "random and hill-climbing search against the sequence inequality");
  claim3->add_option("--trials", trials);
  claim3->add_option("--seed", seed);
  claim3->add_option("--k-max", k_max)->check(CLI::Range(1, 30));
  claim3->add_option("--starts", starts, "hill-climbing starts");
  claim3->add_option("--steps", steps, "moves per climb");

  auto* fuzz = app.add_subcommand("fuzz", "random instances through every check");
  add_policy(fuzz);
  add_checkpoints(fuzz);
  fuzz->add_option("--seed", seed);
  fuzz->add_option("--trials", trials);
  fuzz->add_option("--n-max", n_max)->check(CLI::Range(1, static_cast<int>(kDefaultOracleCap)));
  fuzz->add_option("--m", m_list, "machine counts, comma separated")->delimiter(',')->check(CLI::PositiveNumber);
  fuzz->add_option("--max-ratio", max_ratio, "flag ratios above this value");
  fuzz->add_flag("--claim2", claim2, "also check Claim 2");
  fuzz->add_flag("--observation1", observation1, "also check Observation 1");

  auto* counterexample = app.add_subcommand("counterexample", "print a scripted instance c1..c5");
  counterexample->add_option("name", name)->required()->check(CLI::IsMember({"c1", "c2", "c3", "c4", "c5"}));
  counterexample->add_option("--m", m);
  counterexample->add_option("--xi", rf.xi);
  counterexample->add_option("--rho", rf.rho);
  counterexample->add_option("--mu", rf.mu);
  counterexample->add_option("--gamma", rf.gamma);
  counterexample->add_option("--alpha", rf.alpha);
  counterexample->add_option("--beta", rf.beta);
  counterexample->add_option("--jobs", jobs, "c5: number of jobs");

  auto* hardness = app.add_subcommand("hardness", "run the adaptive two-machine adversary");
  add_policy(hardness);

  auto* gantt = app.add_subcommand("gantt", "render a trace JSON file as SVG");
  gantt->add_option("trace", input, "trace JSON file")->required();
  gantt->add_option("--gantt", gantt_path, "output path (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, err, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return 2;
  }

  try {
    PolicyChoice choice{policy_name,
                        maybe_rat(rf.alpha, "alpha"),
                        maybe_rat(rf.beta, "beta"),
                        maybe_rat(rf.rho, "rho"),
                        maybe_rat(rf.mu, "mu"),
                        maybe_rat(rf.gamma, "gamma")};
    const auto load = [&] { return parse_instance(read_file(input)); };

    if (simulate->parsed()) {
      const Instance inst = load();
      const Trace trace = run(inst, choice.resolve(inst.machines));
      out << dump(to_json(trace)) << '\n';
      if (!gantt_path.empty()) write_gantt_svg(trace, gantt_path);
      err << "makespan " << makespan(trace).str() << ", " << trace.segments.size() << " segments\n";
      return 0;
    }
    if (opt->parsed()) {
      const OptSchedule s = optimal_schedule(load());
      out << dump(schedule_json(s)) << '\n';
      err << "optimum " << s.makespan.str() << '\n';
      return 0;
    }
    if (ratio->parsed()) {
      const Instance inst = load();
      const Rat alg = makespan(run(inst, choice.resolve(inst.machines)));
      const Rat best = optimal_schedule(inst).makespan;
      out << dump({{"alg", alg.str()}, {"opt", best.str()}, {"ratio", (alg / best).str()}}) << '\n';
      err << "ratio " << (alg / best).str() << " (" << (alg / best).to_double() << ")\n";
      return 0;
    }
    if (verify->parsed()) {
      const Instance inst = load();
      const PolicyConfig policy = choice.resolve(inst.machines);
      const Trace trace = run(inst, policy);
      const OptSchedule best = optimal_schedule(inst);
      const CheckpointMode mode = checkpoint_mode(checkpoints);
      const EfficiencyReport leftover = check_leftover_lemma(trace, best, mode);
      const EfficiencyReport obs = check_observation1_all(trace, best, mode);
      const AuditReport audit = audit_trace(trace, policy, best.makespan);
      json j = {{"policy", describe(policy)},
                {"alg", makespan(trace).str()},
                {"opt", best.makespan.str()},
                {"leftover", report_json(leftover)},
                {"observation1", report_json(obs)},
                {"audit", audit_json(audit)}};
      bool ok = leftover.passed() && obs.passed() && audit.ok();
      // Claim 2 concerns greedy runs without the candidate replacement rules.
      if (std::holds_alternative<LptConfig>(policy) || std::holds_alternative<RestartParams>(policy)) {
        const EfficiencyReport c2 = check_claim2(trace, best, mode);
        j["claim2"] = report_json(c2);
        ok = ok && c2.passed();
      }
      j["passed"] = ok;
      out << dump(j) << '\n';
      err << (ok ? "PASS" : "FAIL") << ' ' << describe(policy) << " alg=" << makespan(trace).str()
          << " opt=" << best.makespan.str() << '\n';
      return ok ? 0 : 1;
    }
    if (claim3->parsed()) {
      const Claim3Campaign r = run_claim3_campaign(seed, trials, k_max, starts, steps);
      json j = {{"violations", r.violations}, {"trials", r.trials}, {"unmet", r.unmet}, {"climbs", r.climbs}};
      if (r.min_slack) j["min_slack"] = r.min_slack->str();
      if (r.climb_min_slack) j["climb_min_slack"] = r.climb_min_slack->str();
      out << dump(j) << '\n';
      const bool ok = r.violations == 0 && r.unmet == 0;
      err << (ok ? "PASS" : "FAIL") << " claim3: " << r.trials << " trials, " << r.climbs << " climbs, "
          << r.violations << " violations\n";
      return ok ? 0 : 1;
    }
    if (fuzz->parsed()) {
      CampaignOptions o;
      o.seed = seed;
      o.count = trials;
      o.n_max = n_max;
      o.machines = m_list;
      o.policy = choice;
      o.max_ratio = maybe_rat(max_ratio, "max-ratio");
      o.claim2 = claim2;
      o.observation1 = observation1;
      o.checkpoints = checkpoint_mode(checkpoints);
      const CampaignResult r = run_campaign(o);
      out << dump(campaign_json(r)) << '\n';
      const bool ok = r.violations() == 0;
      err << (ok ? "PASS" : "FAIL") << " fuzz " << policy_name << ": " << r.instances << " instances, max ratio "
          << r.max_ratio.str() << ", " << r.violations() << " violations\n";
      return ok ? 0 : 1;
    }
    if (counterexample->parsed()) {
      CounterexampleParams p;
      p.m = name == "c5" && counterexample->count("--m") == 0 ? 1 : m;
      if (auto xi = maybe_rat(rf.xi, "xi")) p.xi = *xi;
      p.rho = choice.rho;
      p.mu = choice.mu;
      p.gamma = choice.gamma;
      p.alpha = choice.alpha;
      p.beta = choice.beta;
      p.jobs = jobs;
      const Counterexample c = candidate_counterexample(name, p);
      out << dump(to_json(c.instance)) << '\n';
      const Rat alg = makespan(run(c.instance, c.policy));
      const Rat best = optimal_schedule(c.instance).makespan;
      err << name << " vs " << describe(c.policy) << ": alg=" << alg.str() << " opt=" << best.str()
          << " ratio=" << (alg / best).to_double() << '\n';
      return 0;
    }
    if (hardness->parsed()) {
      const HardnessOutcome h = run_hardness(choice.resolve(2));
      const Rat q = default_hardness_q();
      out << dump({{"branch", h.branch},
                   {"alg", h.alg.str()},
                   {"opt", h.opt.str()},
                   {"ratio", h.ratio.str()},
                   {"target", h.target.str()},
                   {"targets", {{"wait", (q / Rat(2)).str()}, {"start_early", (Rat(3) / q).str()}}}})
          << '\n';
      err << "branch " << h.branch << ": ratio " << h.ratio.to_double() << " (target " << h.target.to_double()
          << ")\n";
      return 0;
    }
    if (gantt->parsed()) {
      const Trace trace = parse_trace(read_file(input));
      if (gantt_path.empty()) {
        out << gantt_svg(trace);
      } else {
        write_gantt_svg(trace, gantt_path);
      }
      return 0;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const OracleCapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << app.help();
  return 2;
}

}  // namespace rsched
