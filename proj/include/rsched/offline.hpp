#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "rsched/model.hpp"

namespace rsched {

class OracleCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultOracleCap = 14;

/// A concrete offline schedule: each machine runs its jobs in the listed order,
/// each job at max(release, previous completion).
struct OptSchedule {
  int machines = 1;
  std::map<JobId, int> assignment;
  std::vector<std::vector<JobId>> order;  // per machine
  std::map<JobId, Rat> start;
  std::map<JobId, Rat> end;
  Rat makespan;

  /// The schedule as Completed segments, ordered by (start, machine).
  [[nodiscard]] std::vector<Segment> segments() const;
};

/// Single-machine makespan of `jobs` processed in earliest-release order,
/// completion = max(release, previous completion) + size.
[[nodiscard]] Rat erd_makespan(std::vector<Job> jobs);

/// max(max_j r_j + p_j, sum_j p_j / m).
[[nodiscard]] Rat lower_bound(const Instance& inst);

/// Exact minimum makespan by branch-and-bound over machine assignments, with
/// each machine sequenced in earliest-release order. Among optimal canonical
/// assignments (jobs in release order, machines opened in index order) the
/// lexicographically smallest is returned. Throws OracleCapExceeded when the
/// instance has more than `cap` jobs.
[[nodiscard]] OptSchedule optimal_schedule(const Instance& inst, std::size_t cap = kDefaultOracleCap);

/// Checks the schedule against the instance: releases respected, every job
/// exactly once, machines disjoint, makespan consistent. Throws InputError.
void validate_schedule(const Instance& inst, const OptSchedule& schedule);

/// Rescales all times of a schedule by `factor`.
[[nodiscard]] OptSchedule scale_schedule(const OptSchedule& schedule, const Rat& factor);

}  // namespace rsched
