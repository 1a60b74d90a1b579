#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rsched/rat.hpp"

namespace rsched {

using JobId = std::int64_t;

/// Raised for malformed or invalid user input (instances, traces, parameters).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Job {
  JobId id = 0;
  Rat release;
  Rat size;

  friend bool operator==(const Job&, const Job&) = default;
};

struct Instance {
  int machines = 1;
  std::vector<Job> jobs;

  /// Throws InputError naming the offending job. Requires at least one job
  /// unless `allow_empty` is set.
  void validate(bool allow_empty = false) const;

  /// Linear lookup; throws InputError for an unknown id.
  [[nodiscard]] const Job& job(JobId id) const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Multiplies every release and size by `factor` (> 0).
[[nodiscard]] Instance scale_instance(const Instance& inst, const Rat& factor);

enum class Outcome { Completed, Replaced };

/// One contiguous run of a job on a machine.
struct Segment {
  JobId job = 0;
  int machine = 0;
  Rat start;
  Rat end;
  Outcome outcome = Outcome::Completed;
  std::optional<JobId> replaced_by;  // set iff outcome == Replaced

  [[nodiscard]] Rat length() const { return end - start; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

enum class EventKind { Arrival, Start, Replace, Complete };

struct Event {
  Rat time;
  EventKind kind = EventKind::Arrival;
  JobId job = 0;
  int machine = -1;               // -1 for arrivals
  std::optional<JobId> other;     // Replace: the replacer

  friend bool operator==(const Event&, const Event&) = default;
};

struct Interval {
  Rat begin;
  Rat end;
  [[nodiscard]] Rat length() const { return end - begin; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Complete execution record of one simulation.
struct Trace {
  Instance instance;                              // includes adversary-injected jobs
  std::vector<Segment> segments;                  // ordered by (start, machine)
  std::vector<Event> events;                      // in processing order
  std::map<JobId, std::vector<Interval>> pending; // maximal pending intervals, per job

  /// End of the job's Completed segment; throws InputError if it never completes.
  [[nodiscard]] Rat completion(JobId id) const;
  /// Start of the job's Completed segment (its final start time).
  [[nodiscard]] Rat final_start(JobId id) const;

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Multiplies every time coordinate of a trace (and its instance) by `factor`.
[[nodiscard]] Trace scale_trace(const Trace& trace, const Rat& factor);

/// Latest completion time. Throws InputError when some job never completes.
[[nodiscard]] Rat makespan(const Trace& trace);

// ---- policy selection ----

struct LptConfig {
  friend bool operator==(const LptConfig&, const LptConfig&) = default;
};

struct RestartParams {
  Rat alpha;
  Rat beta;

  /// alpha = 1/200, beta = 414213562373/10^12 (a 12-digit stand-in for sqrt(2) - 1).
  static RestartParams general();
  /// alpha = beta = 1/5.
  static RestartParams two_machine();
  /// The general parameters for m != 2, the two-machine ones for m == 2.
  static RestartParams defaults_for(int machines);

  friend bool operator==(const RestartParams&, const RestartParams&) = default;
};

struct Candidate1Config {
  Rat rho;
  friend bool operator==(const Candidate1Config&, const Candidate1Config&) = default;
};

struct Candidate2Config {
  Rat rho;
  Rat mu;
  friend bool operator==(const Candidate2Config&, const Candidate2Config&) = default;
};

struct Candidate3Config {
  Rat gamma;
  friend bool operator==(const Candidate3Config&, const Candidate3Config&) = default;
};

using PolicyConfig = std::variant<LptConfig, RestartParams, Candidate1Config, Candidate2Config, Candidate3Config>;

/// Throws InputError when a parameter is out of its admissible range.
void validate_policy(const PolicyConfig& policy);

/// Short name as used on the command line: lpt, restart, cand1, cand2, cand3.
[[nodiscard]] std::string policy_name(const PolicyConfig& policy);
/// Name plus parameters, e.g. "restart(alpha=1/200,beta=1/5)".
[[nodiscard]] std::string describe(const PolicyConfig& policy);

}  // namespace rsched
