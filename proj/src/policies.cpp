#include "rsched/policies.hpp"

#include <algorithm>

#include "rsched/offline.hpp"

namespace rsched {

namespace {

// Total order used for "largest": bigger size first, then smaller id.
bool larger(const Job& a, const Job& b) {
  if (a.size != b.size) return a.size > b.size;
  return a.id < b.id;
}

// Smallest running job among those passing `eligible`.
template <class Pred>
std::optional<JobId> smallest_running_if(const EngineState& state, Pred eligible) {
  std::optional<JobId> best;
  for (int m = 0; m < state.machine_count(); ++m) {
    const auto& slot = state.machines[static_cast<std::size_t>(m)];
    if (!slot) continue;
    const Job& k = state.job(slot->job);
    if (!eligible(k, state.processed_on(m))) continue;
    if (!best) {
      best = k.id;
      continue;
    }
    const Job& b = state.job(*best);
    if (k.size < b.size || (k.size == b.size && k.id < b.id)) best = k.id;
  }
  return best;
}

class LptPolicy final : public Policy {
 public:
  PolicyDecision on_arrival(const EngineState&, const Job&) const override { return NoReplace{}; }
};

class RestartPolicy final : public Policy {
 public:
  explicit RestartPolicy(RestartParams p) : params_(std::move(p)) {}
  PolicyDecision on_arrival(const EngineState& s, const Job& j) const override {
    return restart_decide_arrival(s, j, params_);
  }

 private:
  RestartParams params_;
};

class Candidate1Policy final : public Policy {
 public:
  explicit Candidate1Policy(Rat rho) : rho_(rho) {}
  PolicyDecision on_arrival(const EngineState& s, const Job& j) const override {
    return candidate1_decide_arrival(s, j, rho_);
  }

 private:
  Rat rho_;
};

class Candidate2Policy final : public Policy {
 public:
  Candidate2Policy(Rat rho, Rat mu) : rho_(rho), mu_(mu) {}
  PolicyDecision on_arrival(const EngineState& s, const Job& j) const override {
    return candidate2_decide_arrival(s, j, rho_, mu_);
  }

 private:
  Rat rho_;
  Rat mu_;
};

class Candidate3Policy final : public Policy {
 public:
  explicit Candidate3Policy(Rat gamma) : gamma_(gamma) {}
  PolicyDecision on_arrival(const EngineState& s, const Job& j) const override {
    return candidate3_decide_arrival(s, j, gamma_);
  }

 private:
  Rat gamma_;
};

}  // namespace

PolicyDecision Policy::on_idle(const EngineState& state) const { return lpt_decide_idle(state); }

std::unique_ptr<Policy> make_policy(const PolicyConfig& config) {
  switch (config.index()) {
    case 0:
      return std::make_unique<LptPolicy>();
    case 1:
      return std::make_unique<RestartPolicy>(std::get<RestartParams>(config));
    case 2:
      return std::make_unique<Candidate1Policy>(std::get<Candidate1Config>(config).rho);
    case 3: {
      const auto& c = std::get<Candidate2Config>(config);
      return std::make_unique<Candidate2Policy>(c.rho, c.mu);
    }
    default:
      return std::make_unique<Candidate3Policy>(std::get<Candidate3Config>(config).gamma);
  }
}

PolicyConfig PolicyChoice::resolve(int machines) const {
  PolicyConfig config;
  if (name == "lpt") {
    config = LptConfig{};
  } else if (name == "restart") {
    const RestartParams d = RestartParams::defaults_for(machines);
    config = RestartParams{alpha.value_or(d.alpha), beta.value_or(d.beta)};
  } else if (name == "cand1") {
    config = Candidate1Config{rho.value_or(Rat(1, 2))};
  } else if (name == "cand2") {
    config = Candidate2Config{rho.value_or(Rat(1, 2)), mu.value_or(Rat(3, 2))};
  } else if (name == "cand3") {
    config = Candidate3Config{gamma.value_or(Rat(1, 10))};
  } else {
    throw InputError("unknown policy '" + name + "' (expected lpt, restart, cand1, cand2, cand3)");
  }
  validate_policy(config);
  return config;
}

std::optional<JobId> largest_pending(const EngineState& state) {
  std::optional<JobId> best;
  for (JobId id : state.pending)
    if (!best || larger(state.job(id), state.job(*best))) best = id;
  return best;
}

std::optional<JobId> smallest_running(const EngineState& state) {
  return smallest_running_if(state, [](const Job&, const Rat&) { return true; });
}

PolicyDecision lpt_decide_idle(const EngineState& state) {
  if (auto id = largest_pending(state)) return Schedule{*id};
  return StayIdle{};
}

PolicyDecision restart_decide_arrival(const EngineState& state, const Job& j, const RestartParams& params) {
  if (!state.all_busy()) return NoReplace{};
  if (largest_pending(state) != j.id) return NoReplace{};
  const auto k = smallest_running(state);
  if (!k) return NoReplace{};
  const Job& victim = state.job(*k);
  const Rat processed = state.processed_on(*state.machine_of(*k));
  if (!(processed < params.alpha * j.size)) return NoReplace{};
  if (!(j.size > (Rat(1) + params.beta) * victim.size)) return NoReplace{};
  return Replace{*k};
}

PolicyDecision candidate1_decide_arrival(const EngineState& state, const Job& j, const Rat& rho) {
  if (!state.all_busy()) return NoReplace{};
  const auto k = smallest_running_if(
      state, [&](const Job& k, const Rat& processed) { return k.size < j.size && processed <= rho * k.size; });
  if (!k) return NoReplace{};
  return Replace{*k};
}

PolicyDecision candidate2_decide_arrival(const EngineState& state, const Job& j, const Rat& rho, const Rat& mu) {
  if (!state.all_busy()) return NoReplace{};
  const auto k = smallest_running_if(
      state, [&](const Job& k, const Rat& processed) { return mu * k.size <= j.size && processed <= rho * k.size; });
  if (!k) return NoReplace{};
  return Replace{*k};
}

Rat projected_greedy_makespan(const EngineState& state) {
  Rat makespan = state.clock;
  for (const Segment& s : state.closed_segments)
    if (s.outcome == Outcome::Completed) makespan = max(makespan, s.end);

  std::vector<Rat> free_at;
  for (const auto& slot : state.machines)
    free_at.push_back(slot ? slot->started_at + state.job(slot->job).size : state.clock);

  std::vector<Job> queue;
  for (JobId id : state.pending) queue.push_back(state.job(id));
  std::sort(queue.begin(), queue.end(), larger);
  for (const Job& j : queue) {
    auto it = std::min_element(free_at.begin(), free_at.end());
    *it = *it + j.size;
  }
  for (const Rat& t : free_at) makespan = max(makespan, t);
  return makespan;
}

PolicyDecision candidate3_decide_arrival(const EngineState& state, const Job& j, const Rat& gamma) {
  (void)j;
  // The projection is only meaningful once the whole batch of this instant is in.
  if (!state.all_busy() || state.arriving_now > 0) return NoReplace{};
  Instance released{state.machine_count(), {}};
  for (const auto& [id, job] : state.released) released.jobs.push_back(job);
  const Rat opt = optimal_schedule(released).makespan;
  if (projected_greedy_makespan(state) <= (Rat(1) + gamma) * opt) return NoReplace{};
  if (auto k = smallest_running(state)) return Replace{*k};
  return NoReplace{};
}

}  // namespace rsched
