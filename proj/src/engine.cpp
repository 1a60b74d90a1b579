#include "rsched/engine.hpp"

#include <algorithm>
#include <set>

#include "rsched/policies.hpp"

namespace rsched {

const Job& EngineState::job(JobId id) const {
  auto it = released.find(id);
  if (it == released.end()) throw std::logic_error("job " + std::to_string(id) + " is not released");
  return it->second;
}

bool EngineState::all_busy() const {
  return std::all_of(machines.begin(), machines.end(), [](const auto& m) { return m.has_value(); });
}

Rat EngineState::processed_on(int machine) const {
  const auto& slot = machines.at(static_cast<std::size_t>(machine));
  if (!slot) return Rat(0);
  return clock - slot->started_at;
}

std::optional<int> EngineState::machine_of(JobId id) const {
  for (std::size_t i = 0; i < machines.size(); ++i)
    if (machines[i] && machines[i]->job == id) return static_cast<int>(i);
  return std::nullopt;
}

namespace {

bool by_release_then_id(const Job& a, const Job& b) {
  if (a.release != b.release) return a.release < b.release;
  return a.id < b.id;
}

class Simulator {
 public:
  Simulator(int machines, const std::vector<Job>& seed, const Policy& policy, const Adversary* adversary)
      : policy_(policy), adversary_(adversary) {
    state_.machines.assign(static_cast<std::size_t>(machines), std::nullopt);
    trace_.instance.machines = machines;
    for (const Job& j : seed) admit(j);
    if (adversary_) {
      triggers_ = adversary_->triggers;
      std::sort(triggers_.begin(), triggers_.end());
    }
  }

  Trace run() {
    while (true) {
      std::optional<Rat> next = next_event_time();
      if (next_trigger_ < triggers_.size() && (!next || triggers_[next_trigger_] <= *next)) {
        fire_trigger();
        continue;
      }
      if (!next) break;
      state_.clock = *next;
      complete_due();
      fill();
      arrive_due();
    }
    return finish();
  }

 private:
  void admit(const Job& j) {
    if (!known_.insert(j.id).second) throw InputError("job " + std::to_string(j.id) + ": duplicate id");
    if (!j.size.is_positive()) throw InputError("job " + std::to_string(j.id) + ": size must be > 0");
    if (j.release < state_.clock)
      throw InputError("job " + std::to_string(j.id) + ": release " + j.release.str() + " precedes the clock " +
                       state_.clock.str());
    trace_.instance.jobs.push_back(j);
    trace_.pending[j.id];
    auto pos = std::upper_bound(future_.begin() + static_cast<std::ptrdiff_t>(next_future_), future_.end(), j,
                                by_release_then_id);
    future_.insert(pos, j);
  }

  std::optional<Rat> next_event_time() const {
    std::optional<Rat> best;
    for (const auto& slot : state_.machines) {
      if (!slot) continue;
      const Rat end = slot->started_at + state_.job(slot->job).size;
      if (!best || end < *best) best = end;
    }
    if (next_future_ < future_.size()) {
      const Rat& r = future_[next_future_].release;
      if (!best || r < *best) best = r;
    }
    return best;
  }

  void fire_trigger() {
    const Rat at = triggers_[next_trigger_++];
    if (at > state_.clock) state_.clock = at;
    for (const Job& j : adversary_->observe(state_)) {
      admit(j);
      ++injected_;
    }
  }

  void log(Event e) {
    trace_.events.push_back(std::move(e));
    const auto n = static_cast<std::int64_t>(known_.size());
    const std::int64_t guard = 4 * n * n + 16 * n * injected_;
    if (static_cast<std::int64_t>(trace_.events.size()) > guard)
      throw SimulationDiverged("event count exceeded " + std::to_string(guard) + " at time " + state_.clock.str());
  }

  void close_segment(int machine, Outcome outcome, std::optional<JobId> by) {
    auto& slot = state_.machines[static_cast<std::size_t>(machine)];
    Segment s{slot->job, machine, slot->started_at, state_.clock, outcome, by};
    // A run killed at the instant it began occupies no machine time.
    if (s.start < s.end) {
      state_.closed_segments.push_back(s);
      trace_.segments.push_back(s);
    }
    slot.reset();
  }

  void start(JobId id, int machine) {
    auto it = std::find(state_.pending.begin(), state_.pending.end(), id);
    if (it == state_.pending.end()) throw std::logic_error("policy scheduled job " + std::to_string(id) + " which is not pending");
    if (state_.machines[static_cast<std::size_t>(machine)]) throw std::logic_error("machine is busy");
    state_.pending.erase(it);
    const Rat since = pending_since_.at(id);
    if (since < state_.clock) trace_.pending[id].push_back({since, state_.clock});
    pending_since_.erase(id);
    state_.machines[static_cast<std::size_t>(machine)] = RunningJob{id, state_.clock};
    log({state_.clock, EventKind::Start, id, machine, std::nullopt});
  }

  void make_pending(JobId id) {
    state_.pending.push_back(id);
    pending_since_[id] = state_.clock;
  }

  void complete_due() {
    for (int m = 0; m < state_.machine_count(); ++m) {
      const auto& slot = state_.machines[static_cast<std::size_t>(m)];
      if (!slot || slot->started_at + state_.job(slot->job).size != state_.clock) continue;
      const JobId id = slot->job;
      close_segment(m, Outcome::Completed, std::nullopt);
      state_.completed.push_back(id);
      log({state_.clock, EventKind::Complete, id, m, std::nullopt});
    }
  }

  void fill() {
    for (int m = 0; m < state_.machine_count(); ++m) {
      if (state_.pending.empty()) return;
      if (state_.machines[static_cast<std::size_t>(m)]) continue;
      const PolicyDecision d = policy_.on_idle(state_);
      if (const auto* s = std::get_if<Schedule>(&d)) {
        start(s->job, m);
      } else if (std::holds_alternative<StayIdle>(d)) {
        return;
      } else {
        throw std::logic_error("idle decision must be Schedule or StayIdle");
      }
    }
  }

  void arrive_due() {
    while (next_future_ < future_.size() && future_[next_future_].release == state_.clock) {
      const Job j = future_[next_future_++];
      state_.released.emplace(j.id, j);
      log({state_.clock, EventKind::Arrival, j.id, -1, std::nullopt});
      make_pending(j.id);
      if (!state_.all_busy()) {
        fill();
        continue;
      }
      state_.arriving_now = 0;
      for (std::size_t i = next_future_; i < future_.size() && future_[i].release == state_.clock; ++i)
        ++state_.arriving_now;
      const PolicyDecision d = policy_.on_arrival(state_, j);
      state_.arriving_now = 0;
      if (const auto* r = std::get_if<Replace>(&d)) {
        const auto m = state_.machine_of(r->victim);
        if (!m) throw std::logic_error("policy replaced job " + std::to_string(r->victim) + " which is not running");
        close_segment(*m, Outcome::Replaced, j.id);
        log({state_.clock, EventKind::Replace, r->victim, *m, j.id});
        make_pending(r->victim);
        start(j.id, *m);
      } else if (!std::holds_alternative<NoReplace>(d)) {
        throw std::logic_error("arrival decision must be Replace or NoReplace");
      }
    }
  }

  Trace finish() {
    if (state_.completed.size() != known_.size())
      throw SimulationDiverged("simulation ended with " + std::to_string(known_.size() - state_.completed.size()) +
                               " unfinished jobs");
    std::stable_sort(trace_.segments.begin(), trace_.segments.end(), [](const Segment& a, const Segment& b) {
      if (a.start != b.start) return a.start < b.start;
      return a.machine < b.machine;
    });
    return std::move(trace_);
  }

  const Policy& policy_;
  const Adversary* adversary_;
  EngineState state_;
  Trace trace_;
  std::vector<Job> future_;
  std::size_t next_future_ = 0;
  std::vector<Rat> triggers_;
  std::size_t next_trigger_ = 0;
  std::set<JobId> known_;
  std::map<JobId, Rat> pending_since_;
  std::int64_t injected_ = 0;
};

}  // namespace

Trace run(const Instance& inst, const PolicyConfig& policy) {
  inst.validate();
  validate_policy(policy);
  const auto p = make_policy(policy);
  return Simulator(inst.machines, inst.jobs, *p, nullptr).run();
}

Trace run_with_adversary(const std::vector<Job>& seed_jobs, int machines, const PolicyConfig& policy,
                         const Adversary& adversary) {
  Instance seed{machines, seed_jobs};
  seed.validate(/*allow_empty=*/true);
  validate_policy(policy);
  const auto p = make_policy(policy);
  return Simulator(machines, seed_jobs, *p, &adversary).run();
}

}  // namespace rsched
