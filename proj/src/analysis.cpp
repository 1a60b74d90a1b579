#include "rsched/analysis.hpp"

#include <algorithm>
#include <set>

#include "rsched/engine.hpp"

namespace rsched {

namespace {

void sort_unique(std::vector<Rat>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

Rat overlap(const Rat& a, const Rat& b, const Rat& lo, const Rat& hi) {
  const Rat s = max(a, lo);
  const Rat e = min(b, hi);
  return s < e ? e - s : Rat(0);
}

// Busy-machine count of a set of segments as a cumulative function of time.
class Occupancy {
 public:
  explicit Occupancy(const std::vector<Segment>& segs) {
    points_.push_back(Rat(0));
    for (const Segment& s : segs) {
      points_.push_back(s.start);
      points_.push_back(s.end);
    }
    sort_unique(points_);
    std::vector<std::int64_t> delta(points_.size() + 1, 0);
    for (const Segment& s : segs) {
      delta[index(s.start)] += 1;
      delta[index(s.end)] -= 1;
    }
    prefix_.assign(points_.size(), Rat(0));
    rate_.assign(points_.size(), 0);
    std::int64_t r = 0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      r += delta[i];
      rate_[i] = r;
      if (i + 1 < points_.size()) prefix_[i + 1] = prefix_[i] + Rat(r) * (points_[i + 1] - points_[i]);
    }
  }

  [[nodiscard]] Rat before(const Rat& t) const {
    if (!t.is_positive()) return Rat(0);
    const auto idx = static_cast<std::size_t>(std::upper_bound(points_.begin(), points_.end(), t) - points_.begin()) - 1;
    return prefix_[idx] + Rat(rate_[idx]) * (t - points_[idx]);
  }

  [[nodiscard]] const std::vector<Rat>& points() const { return points_; }

 private:
  std::size_t index(const Rat& t) const {
    return static_cast<std::size_t>(std::lower_bound(points_.begin(), points_.end(), t) - points_.begin());
  }

  std::vector<Rat> points_;
  std::vector<Rat> prefix_;
  std::vector<std::int64_t> rate_;
};

struct Region {
  Rat lo;
  Rat mid;
};

}  // namespace

TraceProfile::TraceProfile(const Trace& trace) {
  const Instance& inst = trace.instance;
  const auto m = static_cast<std::int64_t>(inst.machines);

  std::vector<std::pair<Rat, Rat>> final_wait;  // (release, final start)
  points_.push_back(Rat(0));
  for (const Segment& s : trace.segments) {
    points_.push_back(s.start);
    points_.push_back(s.end);
  }
  for (const auto& [id, ivs] : trace.pending) {
    for (const Interval& iv : ivs) {
      points_.push_back(iv.begin);
      points_.push_back(iv.end);
    }
  }
  for (const Job& j : inst.jobs) {
    points_.push_back(j.release);
    final_wait.emplace_back(j.release, trace.final_start(j.id));
  }
  sort_unique(points_);

  const std::size_t n = points_.size();
  for (Series* s : {&completed_, &replaced_, &idle_, &general_waste_}) s->rate.assign(n, 0);
  any_idle_.assign(n, false);

  for (std::size_t i = 0; i < n; ++i) {
    const Rat x = i + 1 < n ? (points_[i] + points_[i + 1]) / Rat(2) : points_[i] + Rat(1);
    std::int64_t completed = 0;
    std::int64_t replaced = 0;
    for (const Segment& s : trace.segments) {
      if (!(s.start < x && x < s.end)) continue;
      (s.outcome == Outcome::Completed ? completed : replaced) += 1;
    }
    bool pending = false;
    for (const auto& [id, ivs] : trace.pending) {
      for (const Interval& iv : ivs) pending = pending || (iv.begin < x && x < iv.end);
    }
    bool waiting_final = false;
    for (const auto& [r, s] : final_wait) waiting_final = waiting_final || (r < x && x < s);

    const std::int64_t empty = std::max<std::int64_t>(0, m - completed - replaced);
    completed_.rate[i] = completed;
    replaced_.rate[i] = replaced;
    idle_.rate[i] = pending ? 0 : empty;
    general_waste_.rate[i] = waiting_final ? m - completed : 0;
    any_idle_[i] = !pending && empty > 0;
    if (pending && empty > 0) greedy_ = false;
  }
  for (Series* s : {&completed_, &replaced_, &idle_, &general_waste_}) accumulate(*s);
}

void TraceProfile::accumulate(Series& s) const {
  s.prefix.assign(points_.size(), Rat(0));
  for (std::size_t i = 0; i + 1 < points_.size(); ++i)
    s.prefix[i + 1] = s.prefix[i] + Rat(s.rate[i]) * (points_[i + 1] - points_[i]);
}

Rat TraceProfile::integrate(const Series& s, const Rat& t) const {
  if (!t.is_positive()) return Rat(0);
  const auto idx = static_cast<std::size_t>(std::upper_bound(points_.begin(), points_.end(), t) - points_.begin()) - 1;
  return s.prefix[idx] + Rat(s.rate[idx]) * (t - points_[idx]);
}

std::optional<Rat> TraceProfile::last_idle_time(const Rat& t) const {
  std::optional<Rat> best;
  for (std::size_t i = 0; i < points_.size() && points_[i] < t; ++i) {
    if (!any_idle_[i]) continue;
    best = i + 1 < points_.size() ? min(points_[i + 1], t) : t;
  }
  return best;
}

// ---- single-quantity entry points ----

Rat waste_before(const Trace& trace, const Rat& t) {
  Rat w;
  for (const Segment& s : trace.segments)
    if (s.outcome == Outcome::Replaced) w += overlap(s.start, s.end, Rat(0), t);
  return w;
}

Rat general_waste_before(const Trace& trace, const Rat& t) { return TraceProfile(trace).general_waste_before(t); }

Rat idle_before(const Trace& trace, const Rat& t) { return TraceProfile(trace).idle_before(t); }

Rat pending_time(const Trace& trace, JobId job, const Rat& t) {
  const Job& j = trace.instance.job(job);
  Rat total;
  auto it = trace.pending.find(job);
  if (it == trace.pending.end()) return total;
  for (const Interval& iv : it->second) total += overlap(iv.begin, iv.end, j.release, t);
  return total;
}

std::vector<JobId> processing_jobs(const Trace& trace, const Rat& t) {
  std::set<JobId> ids;
  for (const Segment& s : trace.segments)
    if (s.start < t && t <= s.end) ids.insert(s.job);
  return {ids.begin(), ids.end()};
}

namespace {

Rat a_value_with(const Trace& trace, const TraceProfile& profile, const Rat& t) {
  const auto tp = profile.last_idle_time(t);
  if (!tp) return Rat(0);
  Rat sum;
  for (JobId id : processing_jobs(trace, *tp)) sum += min(pending_time(trace, id, *tp), trace.instance.job(id).size);
  return sum;
}

void require_same_instance(const Trace& trace, const OptSchedule& opt) {
  try {
    validate_schedule(trace.instance, opt);
  } catch (const InputError& e) {
    throw InputError(std::string("optimal schedule does not match the trace's instance: ") + e.what());
  }
}

Rat processed_before(const TraceProfile& profile, const Rat& t, Accounting accounting) {
  return accounting == Accounting::FinalSchedule ? profile.completed_processing_before(t) : profile.occupied_before(t);
}

struct Evaluator {
  const Trace& trace;
  const OptSchedule& opt;
  TraceProfile profile;
  Occupancy opt_busy;
  Rat total_work;

  Evaluator(const Trace& tr, const OptSchedule& o) : trace(tr), opt(o), profile(tr), opt_busy(o.segments()) {
    for (const Job& j : tr.instance.jobs) total_work += j.size;
  }

  [[nodiscard]] Rat delta(const Rat& t) const {
    return opt_busy.before(t) - processed_before(profile, t, Accounting::FinalSchedule);
  }

  std::vector<Rat> breakpoints(const Rat& horizon) const {
    std::vector<Rat> pts = profile.breakpoints();
    pts.insert(pts.end(), opt_busy.points().begin(), opt_busy.points().end());
    pts.push_back(horizon);
    sort_unique(pts);
    std::erase_if(pts, [&](const Rat& p) { return p > horizon; });
    return pts;
  }

  Checkpoint at(const Rat& t, bool midpoint) const {
    const auto m = trace.instance.machines;
    Checkpoint c;
    c.t = t;
    c.midpoint = midpoint;
    c.delta = delta(t);
    c.waste = profile.waste_before(t);
    c.idle = profile.idle_before(t);
    c.a_value = a_value_with(trace, profile, t);
    c.leftover_bound = t * Rat(m) / Rat(4) + c.waste;
    c.claim2_bound = min(c.a_value, c.idle) + c.waste;
    c.leftover_ok = c.delta <= c.leftover_bound;
    c.claim2_ok = c.delta <= c.claim2_bound;
    const Rat after = total_work - profile.completed_processing_before(t);
    c.observation1_ok = after <= Rat(m) * (Rat(1) - t) + c.delta;
    return c;
  }

  // Claim 2 on the open interval (lo, hi): A is constant there, so the
  // remaining terms are continuous and it suffices to test both ends with it.
  bool claim2_interior(const Rat& lo, const Rat& hi, const Rat& a_mid) const {
    for (const Rat& x : {lo, hi}) {
      if (delta(x) > min(a_mid, profile.idle_before(x)) + profile.waste_before(x)) return false;
    }
    return true;
  }

  std::vector<Checkpoint> sweep(const Rat& horizon, CheckpointMode mode, bool interior_claim2) const {
    const auto pts = breakpoints(horizon);
    std::vector<Checkpoint> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      out.push_back(at(pts[i], false));
      if (mode == CheckpointMode::BreakpointsAndMidpoints && i + 1 < pts.size()) {
        Checkpoint mid = at((pts[i] + pts[i + 1]) / Rat(2), true);
        if (interior_claim2) mid.claim2_ok = mid.claim2_ok && claim2_interior(pts[i], pts[i + 1], mid.a_value);
        out.push_back(mid);
      }
    }
    return out;
  }
};

}  // namespace

Rat a_value(const Trace& trace, const Rat& t) { return a_value_with(trace, TraceProfile(trace), t); }

Rat delta(const Trace& trace, const OptSchedule& opt, const Rat& t, Accounting accounting) {
  require_same_instance(trace, opt);
  const Occupancy opt_busy(opt.segments());
  return opt_busy.before(t) - processed_before(TraceProfile(trace), t, accounting);
}

EfficiencyReport check_leftover_lemma(const Trace& trace, const OptSchedule& opt, CheckpointMode mode) {
  require_same_instance(trace, opt);
  const Evaluator ev(trace, opt);
  EfficiencyReport rep;
  rep.check = "leftover";
  rep.checkpoints = ev.sweep(max(makespan(trace), opt.makespan), mode, false);
  bool first = true;
  for (const Checkpoint& c : rep.checkpoints) {
    if (!c.leftover_ok) ++rep.failures;
    const Rat slack = c.leftover_bound - c.delta;
    if (first || slack < rep.min_slack) rep.min_slack = slack;
    first = false;
  }
  return rep;
}

namespace {

EfficiencyReport normalized_report(const Trace& trace, const OptSchedule& opt, CheckpointMode mode,
                                   const std::string& check) {
  require_same_instance(trace, opt);
  const Rat factor = Rat(1) / opt.makespan;
  const Trace nt = factor == Rat(1) ? trace : scale_trace(trace, factor);
  const OptSchedule no = factor == Rat(1) ? opt : scale_schedule(opt, factor);
  const Evaluator ev(nt, no);
  EfficiencyReport rep;
  rep.check = check;
  rep.normalized = true;
  rep.checkpoints = ev.sweep(Rat(1), mode, check == "claim2");
  bool first = true;
  for (const Checkpoint& c : rep.checkpoints) {
    const bool ok = check == "claim2" ? c.claim2_ok : c.observation1_ok;
    if (!ok) ++rep.failures;
    const Rat slack = check == "claim2" ? c.claim2_bound - c.delta
                                        : Rat(nt.instance.machines) * (Rat(1) - c.t) + c.delta -
                                              (ev.total_work - ev.profile.completed_processing_before(c.t));
    if (first || slack < rep.min_slack) rep.min_slack = slack;
    first = false;
  }
  return rep;
}

}  // namespace

EfficiencyReport check_claim2(const Trace& trace, const OptSchedule& opt, CheckpointMode mode) {
  return normalized_report(trace, opt, mode, "claim2");
}

EfficiencyReport check_observation1_all(const Trace& trace, const OptSchedule& opt, CheckpointMode mode) {
  return normalized_report(trace, opt, mode, "observation1");
}

bool check_observation1(const Trace& trace, const OptSchedule& opt, const Rat& t) {
  require_same_instance(trace, opt);
  const Rat factor = Rat(1) / opt.makespan;
  const Trace nt = scale_trace(trace, factor);
  const OptSchedule no = scale_schedule(opt, factor);
  const Evaluator ev(nt, no);
  return ev.at(t, false).observation1_ok;
}

Claim3Result check_claim3(std::span<const Rat> a, std::span<const Rat> b, std::span<const Rat> h) {
  if (a.size() != b.size() || a.size() != h.size()) throw InputError("claim3: sequences must have equal length");
  if (a.empty()) throw InputError("claim3: sequences must be non-empty");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_positive() || !b[i].is_positive())
      throw InputError("claim3: a and b entries must be positive (index " + std::to_string(i + 1) + ")");
  }
  Claim3Result res;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i].is_negative() || h[i] > Rat(1) || (i > 0 && h[i] < h[i - 1])) {
      res.status = Claim3Result::Status::PreconditionsUnmet;
      res.reason = "h must be non-decreasing within [0, 1]";
      return res;
    }
  }
  Rat ah;
  Rat ab;
  Rat lhs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ah += a[i] * h[i];
    ab += a[i] + b[i];
    lhs += b[i] * (Rat(1) - h[i]);
    if (ah < ab / Rat(4)) {
      res.status = Claim3Result::Status::PreconditionsUnmet;
      res.prefix = i + 1;
      res.reason = "prefix condition fails";
      return res;
    }
  }
  res.slack = ab / Rat(4) - lhs;
  res.status = res.slack.is_negative() ? Claim3Result::Status::Violated : Claim3Result::Status::Holds;
  return res;
}

Rat competitive_ratio(const Instance& inst, const PolicyConfig& policy) {
  const Rat opt = optimal_schedule(inst).makespan;
  return makespan(run(inst, policy)) / opt;
}

// ---- audits ----

namespace {

void structural_audit(const Trace& trace, AuditReport& rep) {
  auto flag = [&](std::string rule, std::string detail) { rep.violations.push_back({std::move(rule), std::move(detail)}); };
  const Instance& inst = trace.instance;

  for (const Job& j : inst.jobs) {
    const std::string who = "job " + std::to_string(j.id);
    int completed = 0;
    Rat covered;
    Rat c_j;
    for (const Segment& s : trace.segments) {
      if (s.job != j.id) continue;
      if (!(s.start < s.end)) flag("segment", who + " has an empty segment");
      if (s.start < j.release) flag("segment", who + " runs before its release");
      covered += s.length();
      if (s.outcome == Outcome::Completed) {
        ++completed;
        c_j = s.end;
        if (s.length() != j.size) flag("completed-length", who + " completed run differs from its size");
      } else {
        if (!(s.length() < j.size)) flag("replaced-length", who + " replaced run is not shorter than its size");
        if (!s.replaced_by) flag("segment", who + " replaced run lacks a replacer");
      }
    }
    if (completed != 1) {
      flag("completion", who + " has " + std::to_string(completed) + " completed runs");
      continue;
    }
    if (auto it = trace.pending.find(j.id); it != trace.pending.end()) {
      for (const Interval& iv : it->second) {
        if (iv.begin < j.release || iv.end > c_j || !(iv.begin < iv.end)) flag("tiling", who + " pending interval out of range");
        covered += iv.length();
      }
    }
    if (covered != c_j - j.release) flag("tiling", who + " segments and pending intervals do not tile [r, c]");
  }

  for (int m = 0; m < inst.machines; ++m) {
    std::vector<const Segment*> on;
    for (const Segment& s : trace.segments)
      if (s.machine == m) on.push_back(&s);
    std::sort(on.begin(), on.end(), [](const Segment* a, const Segment* b) { return a->start < b->start; });
    for (std::size_t i = 1; i < on.size(); ++i)
      if (on[i]->start < on[i - 1]->end) flag("exclusive", "machine " + std::to_string(m) + " runs two jobs at once");
  }

  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const Event& e = trace.events[i];
    if (e.kind != EventKind::Replace) continue;
    ++rep.replacements;
    const bool next_is_start = i + 1 < trace.events.size() && trace.events[i + 1].kind == EventKind::Start &&
                               trace.events[i + 1].time == e.time && trace.events[i + 1].machine == e.machine &&
                               e.other && trace.events[i + 1].job == *e.other;
    if (!next_is_start) flag("replace-start", "replacement of job " + std::to_string(e.job) + " not followed by the replacer's start");
  }

  if (!TraceProfile(trace).greedy()) flag("greedy", "a machine stays empty while a job is pending");
}

void restart_audit(const Trace& trace, const RestartParams& params, const Rat& opt_makespan, AuditReport& rep) {
  auto flag = [&](std::string rule, std::string detail) { rep.violations.push_back({std::move(rule), std::move(detail)}); };
  const Instance& inst = trace.instance;

  std::multiset<Rat> sizes;
  for (const Job& j : inst.jobs) sizes.insert(j.size);
  const auto tied = [&](const Rat& p) { return sizes.count(p) > 1; };

  const Rat half = opt_makespan / Rat(2);
  std::map<JobId, Rat> last_start;
  std::map<JobId, Rat> replaced_at;

  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const Event& e = trace.events[i];
    if (e.kind == EventKind::Start) {
      if (auto it = replaced_at.find(e.job); it != replaced_at.end()) {
        // Restart of a replaced job: find the completion that freed this machine.
        const Job& k = inst.job(e.job);
        bool found = false;
        for (const Event& c : trace.events) {
          if (c.kind != EventKind::Complete || c.time != e.time || c.machine != e.machine) continue;
          const Rat& pj = inst.job(c.job).size;
          const bool larger = pj > k.size || (pj == k.size && tied(k.size));
          found = larger && pj <= e.time;
        }
        if (!found)
          flag("reschedule", "job " + std::to_string(e.job) + " restarts at " + e.time.str() +
                                 " without a larger job completing there");
        replaced_at.erase(it);
      }
      last_start[e.job] = e.time;
      continue;
    }
    if (e.kind != EventKind::Replace) continue;
    const Job& k = inst.job(e.job);
    const Job& j = inst.job(*e.other);
    const std::string pair = "job " + std::to_string(j.id) + " replacing " + std::to_string(k.id);
    if (k.size > half || (k.size == half && !tied(k.size)))
      flag("fact1", "job " + std::to_string(k.id) + " of size " + k.size.str() + " >= OPT/2 was replaced");
    else if (k.size == half)
      ++rep.fact1_ties;
    const Rat wasted = e.time - last_start.at(k.id);
    if (!(wasted < params.alpha * j.size)) flag("waste", pair + " wastes " + wasted.str());
    if (!(j.size > (Rat(1) + params.beta) * k.size)) flag("growth", pair + " grows by less than 1+beta");
    replaced_at[k.id] = e.time;
  }
}

}  // namespace

AuditReport audit_trace(const Trace& trace, const PolicyConfig& policy, const Rat& opt_makespan) {
  AuditReport rep;
  structural_audit(trace, rep);
  if (const auto* p = std::get_if<RestartParams>(&policy)) restart_audit(trace, *p, opt_makespan, rep);
  return rep;
}

}  // namespace rsched
