#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rsched/model.hpp"

namespace rsched {

struct RunningJob {
  JobId job = 0;
  Rat started_at;
};

/// Read-only snapshot handed to policies and adversaries. Only released jobs
/// are visible; the future arrival queue is private to the engine.
struct EngineState {
  Rat clock;
  std::vector<std::optional<RunningJob>> machines;
  std::vector<JobId> pending;
  std::vector<JobId> completed;
  std::map<JobId, Job> released;
  std::vector<Segment> closed_segments;  // finished (completed or replaced) runs so far
  /// Jobs released at `clock` that have not arrived yet (arrivals at one
  /// instant are handed over one at a time, in id order).
  std::size_t arriving_now = 0;

  [[nodiscard]] int machine_count() const { return static_cast<int>(machines.size()); }
  [[nodiscard]] const Job& job(JobId id) const;
  [[nodiscard]] bool all_busy() const;
  /// clock minus the latest start of whatever runs on `machine`.
  [[nodiscard]] Rat processed_on(int machine) const;
  /// Machine currently running `id`, if any.
  [[nodiscard]] std::optional<int> machine_of(JobId id) const;
};

struct Schedule {
  JobId job = 0;
};
struct StayIdle {};
struct Replace {
  JobId victim = 0;
};
struct NoReplace {};

using PolicyDecision = std::variant<Schedule, StayIdle, Replace, NoReplace>;

/// Adaptive instance extension. At each trigger time the engine hands the
/// adversary the state with every event strictly before that time applied;
/// the returned jobs join the arrival queue and must be released no earlier
/// than the trigger time.
struct Adversary {
  std::vector<Rat> triggers;
  std::function<std::vector<Job>(const EngineState&)> observe;
};

/// Thrown when the event-count guard trips; indicates an engine or policy bug.
class SimulationDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simulates `policy` on `inst`. Events at one instant are processed as:
/// completions (machine order), then idle machines are filled, then arrivals in
/// increasing id, each one either triggering a replacement decision (all
/// machines busy) or followed by another fill.
[[nodiscard]] Trace run(const Instance& inst, const PolicyConfig& policy);

[[nodiscard]] Trace run_with_adversary(const std::vector<Job>& seed_jobs, int machines, const PolicyConfig& policy,
                                       const Adversary& adversary);

}  // namespace rsched
