#pragma once

#include <memory>
#include <optional>
#include <string>

#include "rsched/engine.hpp"

namespace rsched {

/// Online decision rule driven by the engine. Implementations are stateless;
/// every decision is a function of the state handed in.
class Policy {
 public:
  virtual ~Policy() = default;

  /// Called with at least one idle machine. Default: largest pending job.
  [[nodiscard]] virtual PolicyDecision on_idle(const EngineState& state) const;

  /// Called right after `arrived` joined the pending pool, only when every
  /// machine is busy. Must return Replace or NoReplace.
  [[nodiscard]] virtual PolicyDecision on_arrival(const EngineState& state, const Job& arrived) const = 0;
};

[[nodiscard]] std::unique_ptr<Policy> make_policy(const PolicyConfig& config);

/// A policy named on the command line with optional parameter overrides.
/// Unset restart parameters take RestartParams::defaults_for(m); the candidate
/// defaults are rho = 1/2, mu = 3/2, gamma = 1/10.
struct PolicyChoice {
  std::string name = "lpt";
  std::optional<Rat> alpha;
  std::optional<Rat> beta;
  std::optional<Rat> rho;
  std::optional<Rat> mu;
  std::optional<Rat> gamma;

  /// Throws InputError for an unknown name or an inadmissible parameter.
  [[nodiscard]] PolicyConfig resolve(int machines) const;
};

// ---- decision rules, usable on their own ----

/// Schedule(largest pending job, ties to the smaller id), or StayIdle.
[[nodiscard]] PolicyDecision lpt_decide_idle(const EngineState& state);

/// Running job with the smallest size (ties to the smaller id).
[[nodiscard]] std::optional<JobId> smallest_running(const EngineState& state);

/// Largest pending job (ties to the smaller id).
[[nodiscard]] std::optional<JobId> largest_pending(const EngineState& state);

/// Replace the smallest running job k iff j is the largest pending job,
/// k's current run is shorter than alpha * p_j, and p_j > (1 + beta) * p_k.
[[nodiscard]] PolicyDecision restart_decide_arrival(const EngineState& state, const Job& j, const RestartParams& params);

/// Replace the smallest running job k with p_k < p_j whose current run is at
/// most rho * p_k.
[[nodiscard]] PolicyDecision candidate1_decide_arrival(const EngineState& state, const Job& j, const Rat& rho);

/// Replace the smallest running job k with mu * p_k <= p_j whose current run is
/// at most rho * p_k.
[[nodiscard]] PolicyDecision candidate2_decide_arrival(const EngineState& state, const Job& j, const Rat& rho,
                                                       const Rat& mu);

/// Projects the greedy (no-replacement, no-further-arrival) completion of every
/// released job and compares it with the optimum over released jobs; replaces
/// the smallest running job when the projection exceeds (1 + gamma) * OPT.
/// Decides only on the last arrival of an instant.
[[nodiscard]] PolicyDecision candidate3_decide_arrival(const EngineState& state, const Job& j, const Rat& gamma);

/// Makespan of finishing every released job greedily from `state` with no
/// replacements and no further arrivals.
[[nodiscard]] Rat projected_greedy_makespan(const EngineState& state);

}  // namespace rsched
