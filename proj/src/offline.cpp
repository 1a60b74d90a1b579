#include "rsched/offline.hpp"

#include <algorithm>

namespace rsched {

namespace {

bool erd_less(const Job& a, const Job& b) {
  if (a.release != b.release) return a.release < b.release;
  return a.id < b.id;
}

class BranchAndBound {
 public:
  BranchAndBound(std::vector<Job> jobs, int machines) : jobs_(std::move(jobs)), m_(machines) {
    std::sort(jobs_.begin(), jobs_.end(), erd_less);
    const std::size_t n = jobs_.size();
    suffix_work_.assign(n + 1, Rat(0));
    for (std::size_t i = n; i-- > 0;) suffix_work_[i] = suffix_work_[i + 1] + jobs_[i].size;
    for (const Job& j : jobs_) static_lb_ = max(static_lb_, j.release + j.size);
    static_lb_ = max(static_lb_, suffix_work_[0] / Rat(m_));
    completion_.assign(static_cast<std::size_t>(m_), Rat(0));
    current_.assign(n, 0);
    seed_incumbent();
  }

  OptSchedule solve() {
    dfs(0, 0, Rat(0));
    return build();
  }

 private:
  // Earliest-completion list scheduling in release order.
  void seed_incumbent() {
    std::vector<Rat> c(static_cast<std::size_t>(m_), Rat(0));
    for (std::size_t i = 0; i < jobs_.size(); ++i) {
      std::size_t best_m = 0;
      Rat best_end;
      for (int m = 0; m < m_; ++m) {
        const Rat e = max(c[static_cast<std::size_t>(m)], jobs_[i].release) + jobs_[i].size;
        if (m == 0 || e < best_end) {
          best_end = e;
          best_m = static_cast<std::size_t>(m);
        }
      }
      c[best_m] = best_end;
    }
    best_ = *std::max_element(c.begin(), c.end());
  }

  Rat node_bound(std::size_t next, const Rat& current_max) const {
    Rat lb = max(current_max, static_lb_);
    Rat sum_c;
    Rat min_c = completion_[0];
    for (const Rat& c : completion_) {
      sum_c += c;
      min_c = min(min_c, c);
    }
    lb = max(lb, (sum_c + suffix_work_[next]) / Rat(m_));
    for (std::size_t i = next; i < jobs_.size(); ++i) lb = max(lb, max(min_c, jobs_[i].release) + jobs_[i].size);
    return lb;
  }

  bool prune(const Rat& lb) const { return lb > best_ || (found_ && lb == best_); }

  void dfs(std::size_t next, int used, const Rat& current_max) {
    if (next == jobs_.size()) {
      if (current_max < best_ || (!found_ && current_max == best_)) {
        best_ = current_max;
        best_assign_ = current_;
        found_ = true;
      }
      return;
    }
    if (prune(node_bound(next, current_max))) return;
    const Job& j = jobs_[next];
    const int limit = std::min(used + 1, m_);
    for (int m = 0; m < limit; ++m) {
      Rat& c = completion_[static_cast<std::size_t>(m)];
      const Rat saved = c;
      c = max(c, j.release) + j.size;
      current_[next] = m;
      const Rat mk = max(current_max, c);
      if (!prune(mk)) dfs(next + 1, std::max(used, m + 1), mk);
      c = saved;
    }
  }

  OptSchedule build() const {
    OptSchedule s;
    s.machines = m_;
    s.order.assign(static_cast<std::size_t>(m_), {});
    std::vector<Rat> c(static_cast<std::size_t>(m_), Rat(0));
    for (std::size_t i = 0; i < jobs_.size(); ++i) {
      const int m = best_assign_[i];
      const Job& j = jobs_[i];
      Rat& cm = c[static_cast<std::size_t>(m)];
      const Rat st = max(cm, j.release);
      cm = st + j.size;
      s.assignment[j.id] = m;
      s.order[static_cast<std::size_t>(m)].push_back(j.id);
      s.start[j.id] = st;
      s.end[j.id] = cm;
      s.makespan = max(s.makespan, cm);
    }
    return s;
  }

  std::vector<Job> jobs_;
  int m_;
  std::vector<Rat> suffix_work_;
  Rat static_lb_;
  std::vector<Rat> completion_;
  std::vector<int> current_;
  std::vector<int> best_assign_;
  Rat best_;
  bool found_ = false;
};

}  // namespace

std::vector<Segment> OptSchedule::segments() const {
  std::vector<Segment> out;
  for (const auto& [id, m] : assignment) out.push_back({id, m, start.at(id), end.at(id), Outcome::Completed, std::nullopt});
  std::sort(out.begin(), out.end(), [](const Segment& a, const Segment& b) {
    if (a.start != b.start) return a.start < b.start;
    return a.machine < b.machine;
  });
  return out;
}

Rat erd_makespan(std::vector<Job> jobs) {
  std::sort(jobs.begin(), jobs.end(), erd_less);
  Rat c;
  for (const Job& j : jobs) c = max(c, j.release) + j.size;
  return c;
}

Rat lower_bound(const Instance& inst) {
  Rat rp;
  Rat work;
  for (const Job& j : inst.jobs) {
    rp = max(rp, j.release + j.size);
    work += j.size;
  }
  return max(rp, work / Rat(inst.machines));
}

OptSchedule optimal_schedule(const Instance& inst, std::size_t cap) {
  inst.validate();
  if (inst.jobs.size() > cap)
    throw OracleCapExceeded("oracle cap exceeded: " + std::to_string(inst.jobs.size()) + " jobs, cap " +
                            std::to_string(cap));
  return BranchAndBound(inst.jobs, inst.machines).solve();
}

void validate_schedule(const Instance& inst, const OptSchedule& s) {
  if (s.machines != inst.machines) throw InputError("schedule machine count differs from instance");
  if (s.assignment.size() != inst.jobs.size()) throw InputError("schedule does not cover every job exactly once");
  Rat mk;
  for (const Job& j : inst.jobs) {
    const auto it = s.assignment.find(j.id);
    if (it == s.assignment.end()) throw InputError("job " + std::to_string(j.id) + " missing from schedule");
    if (s.start.at(j.id) < j.release) throw InputError("job " + std::to_string(j.id) + " starts before release");
    if (s.end.at(j.id) - s.start.at(j.id) != j.size) throw InputError("job " + std::to_string(j.id) + " has wrong length");
    mk = max(mk, s.end.at(j.id));
  }
  for (const auto& seq : s.order) {
    for (std::size_t i = 1; i < seq.size(); ++i)
      if (s.start.at(seq[i]) < s.end.at(seq[i - 1])) throw InputError("overlapping jobs on one machine");
  }
  if (mk != s.makespan) throw InputError("schedule makespan inconsistent");
}

OptSchedule scale_schedule(const OptSchedule& schedule, const Rat& factor) {
  OptSchedule out = schedule;
  for (auto& [id, t] : out.start) t *= factor;
  for (auto& [id, t] : out.end) t *= factor;
  out.makespan *= factor;
  return out;
}

}  // namespace rsched
