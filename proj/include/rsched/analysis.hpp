#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rsched/model.hpp"
#include "rsched/offline.hpp"

namespace rsched {

// Quantities measured on a trace, all exact.
//
// Conventions:
//  * "Pending" in the trace sense: released, unfinished and not running.
//  * A machine is idle at x when it runs nothing and no job is pending.
//  * J(t) holds the jobs whose run covers (t - dx, t]: runs ending (completed
//    or replaced) at t are included, runs starting at t are not.
//  * Waste is the machine time of Replaced segments. A segment ending exactly
//    at t is counted in full for "before t".

/// Piecewise-linear cumulative quantities of one trace, precomputed once.
class TraceProfile {
 public:
  explicit TraceProfile(const Trace& trace);

  [[nodiscard]] Rat waste_before(const Rat& t) const { return integrate(replaced_, t); }
  [[nodiscard]] Rat idle_before(const Rat& t) const { return integrate(idle_, t); }
  [[nodiscard]] Rat general_waste_before(const Rat& t) const { return integrate(general_waste_, t); }
  [[nodiscard]] Rat completed_processing_before(const Rat& t) const { return integrate(completed_, t); }
  [[nodiscard]] Rat occupied_before(const Rat& t) const {
    return integrate(completed_, t) + integrate(replaced_, t);
  }

  /// Supremum of idle instants in [0, t], if any instant there is idle.
  [[nodiscard]] std::optional<Rat> last_idle_time(const Rat& t) const;

  /// Sorted distinct times at which any rate above may change.
  [[nodiscard]] const std::vector<Rat>& breakpoints() const { return points_; }

  /// True when no machine ever stays empty while a job is pending.
  [[nodiscard]] bool greedy() const { return greedy_; }

 private:
  // rate[i] applies on (points_[i], points_[i+1]); the last entry on (points_.back(), inf).
  // prefix[i] is the integral over [0, points_[i]].
  struct Series {
    std::vector<std::int64_t> rate;
    std::vector<Rat> prefix;
  };
  [[nodiscard]] Rat integrate(const Series& s, const Rat& t) const;
  void accumulate(Series& s) const;

  std::vector<Rat> points_;
  Series completed_;
  Series replaced_;
  Series idle_;
  Series general_waste_;
  std::vector<bool> any_idle_;
  bool greedy_ = true;
};

/// W_t: Replaced-segment machine time within [0, t].
[[nodiscard]] Rat waste_before(const Trace& trace, const Rat& t);

/// Machine time in [0, t] spent not on a job's final (Completed) run while some
/// job is released and not yet in its final run. Applies to any schedule; for
/// restart traces it dominates waste_before.
[[nodiscard]] Rat general_waste_before(const Trace& trace, const Rat& t);

/// I_t: machine time in [0, t] with the machine empty and no pending job.
[[nodiscard]] Rat idle_before(const Trace& trace, const Rat& t);

/// Measure of [r_j, t] during which the job is pending.
[[nodiscard]] Rat pending_time(const Trace& trace, JobId job, const Rat& t);

/// J(t), sorted by id.
[[nodiscard]] std::vector<JobId> processing_jobs(const Trace& trace, const Rat& t);

/// A_t = sum over J(t') of min(pending time up to t', p_j), t' the last idle
/// instant in [0, t]; zero when there is none.
[[nodiscard]] Rat a_value(const Trace& trace, const Rat& t);

enum class Accounting {
  FinalSchedule,  // only Completed runs count as processing
  OccupiedTime,   // Replaced runs count too
};

/// Processing the optimal schedule does in [0, t] minus processing the trace
/// does in [0, t].
[[nodiscard]] Rat delta(const Trace& trace, const OptSchedule& opt, const Rat& t,
                        Accounting accounting = Accounting::FinalSchedule);

enum class CheckpointMode { Breakpoints, BreakpointsAndMidpoints };

struct Checkpoint {
  Rat t;
  bool midpoint = false;
  Rat delta;
  Rat waste;
  Rat idle;
  Rat a_value;
  Rat leftover_bound;  // t*m/4 + waste
  Rat claim2_bound;    // min(a_value, idle) + waste
  bool leftover_ok = true;
  bool claim2_ok = true;
  bool observation1_ok = true;
};

struct EfficiencyReport {
  std::string check;
  bool normalized = false;  // times rescaled so the optimum is 1
  std::vector<Checkpoint> checkpoints;
  std::size_t failures = 0;
  Rat min_slack;            // smallest bound - delta for the check's bound
  [[nodiscard]] bool passed() const { return failures == 0; }
};

/// Delta_t <= t*m/4 + W_t at every checkpoint on [0, max makespan].
[[nodiscard]] EfficiencyReport check_leftover_lemma(const Trace& trace, const OptSchedule& opt,
                                                    CheckpointMode mode = CheckpointMode::BreakpointsAndMidpoints);

/// Delta_t <= min(A_t, I_t) + W_t on [0, 1] after rescaling so OPT = 1. With
/// midpoints enabled, each open interval between checkpoints is also checked
/// at both ends with the interval's (constant) A value.
[[nodiscard]] EfficiencyReport check_claim2(const Trace& trace, const OptSchedule& opt,
                                            CheckpointMode mode = CheckpointMode::BreakpointsAndMidpoints);

/// Final-schedule processing after t <= m(1 - t) + Delta_t, with OPT rescaled to 1
/// (t is given on the rescaled axis).
[[nodiscard]] bool check_observation1(const Trace& trace, const OptSchedule& opt, const Rat& t);

/// Observation 1 at every checkpoint of [0, 1] on the rescaled axis.
[[nodiscard]] EfficiencyReport check_observation1_all(const Trace& trace, const OptSchedule& opt,
                                                      CheckpointMode mode = CheckpointMode::BreakpointsAndMidpoints);

struct Claim3Result {
  enum class Status { Holds, Violated, PreconditionsUnmet };
  Status status = Status::Holds;
  Rat slack;                          // (1/4) sum(a + b) - sum b(1 - h)
  std::optional<std::size_t> prefix;  // first prefix failing condition (2), 1-based
  std::string reason;
};

/// Checks the preconditions (h non-decreasing in [0, 1]; every prefix has
/// sum a h >= (1/4) sum (a + b)) and then the conclusion
/// sum b (1 - h) <= (1/4) sum (a + b). Throws InputError on a length mismatch
/// or a non-positive a or b.
[[nodiscard]] Claim3Result check_claim3(std::span<const Rat> a, std::span<const Rat> b, std::span<const Rat> h);

/// makespan(run(inst, policy)) / OPT.
[[nodiscard]] Rat competitive_ratio(const Instance& inst, const PolicyConfig& policy);

// ---- trace audits ----

struct AuditFinding {
  std::string rule;
  std::string detail;
};

struct AuditReport {
  std::vector<AuditFinding> violations;
  std::size_t replacements = 0;
  /// Replacements of a job of size exactly OPT/2 on instances with tied sizes.
  std::size_t fact1_ties = 0;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Structural checks valid for every policy (segment tiling, exact completed
/// lengths, machine exclusivity, replace/start coincidence, no idle machine
/// while jobs are pending). For LPT with restart additionally: replaced jobs
/// are below OPT/2, each restart begins at the completion of a job larger than
/// the restarted one and no larger than the restart time, each waste is below
/// alpha times the replacer's size, and each replacer exceeds (1 + beta) times
/// its victim.
[[nodiscard]] AuditReport audit_trace(const Trace& trace, const PolicyConfig& policy, const Rat& opt_makespan);

}  // namespace rsched
