#include "rsched/model.hpp"

#include <set>

namespace rsched {

void Instance::validate(bool allow_empty) const {
  if (machines < 1) throw InputError("machines must be ≥ 1");
  if (jobs.empty() && !allow_empty) throw InputError("instance has no jobs");
  std::set<JobId> seen;
  for (const Job& j : jobs) {
    const std::string who = "job " + std::to_string(j.id);
    if (j.id < 0) throw InputError(who + ": id must be non-negative");
    if (!j.size.is_positive()) throw InputError(who + ": size must be > 0");
    if (j.release.is_negative()) throw InputError(who + ": release must be >= 0");
    if (!seen.insert(j.id).second) throw InputError(who + ": duplicate id");
  }
}

const Job& Instance::job(JobId id) const {
  for (const Job& j : jobs)
    if (j.id == id) return j;
  throw InputError("unknown job id " + std::to_string(id));
}

Instance scale_instance(const Instance& inst, const Rat& factor) {
  if (!factor.is_positive()) throw InputError("scale factor must be > 0");
  Instance out = inst;
  for (Job& j : out.jobs) {
    j.release *= factor;
    j.size *= factor;
  }
  return out;
}

Rat Trace::completion(JobId id) const {
  for (const Segment& s : segments)
    if (s.job == id && s.outcome == Outcome::Completed) return s.end;
  throw InputError("job " + std::to_string(id) + " never completes in trace");
}

Rat Trace::final_start(JobId id) const {
  for (const Segment& s : segments)
    if (s.job == id && s.outcome == Outcome::Completed) return s.start;
  throw InputError("job " + std::to_string(id) + " never completes in trace");
}

Trace scale_trace(const Trace& trace, const Rat& factor) {
  Trace out;
  out.instance = scale_instance(trace.instance, factor);
  out.segments = trace.segments;
  for (Segment& s : out.segments) {
    s.start *= factor;
    s.end *= factor;
  }
  out.events = trace.events;
  for (Event& e : out.events) e.time *= factor;
  out.pending = trace.pending;
  for (auto& [id, ivs] : out.pending) {
    for (Interval& iv : ivs) {
      iv.begin *= factor;
      iv.end *= factor;
    }
  }
  return out;
}

Rat makespan(const Trace& trace) {
  Rat best;
  for (const Job& j : trace.instance.jobs) best = max(best, trace.completion(j.id));
  return best;
}

RestartParams RestartParams::general() { return {Rat(1, 200), Rat(414213562373, 1000000000000)}; }
RestartParams RestartParams::two_machine() { return {Rat(1, 5), Rat(1, 5)}; }
RestartParams RestartParams::defaults_for(int machines) { return machines == 2 ? two_machine() : general(); }

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

void validate_policy(const PolicyConfig& policy) {
  std::visit(Overloaded{
                 [](const LptConfig&) {},
                 [](const RestartParams& p) {
                   if (!p.alpha.is_positive() || !p.beta.is_positive())
                     throw InputError("restart requires alpha > 0 and beta > 0");
                 },
                 [](const Candidate1Config& c) {
                   if (!c.rho.is_positive() || c.rho >= Rat(1)) throw InputError("cand1 requires 0 < rho < 1");
                 },
                 [](const Candidate2Config& c) {
                   if (!c.rho.is_positive() || c.rho >= Rat(1)) throw InputError("cand2 requires 0 < rho < 1");
                   if (c.mu <= Rat(1) || c.mu >= Rat(2)) throw InputError("cand2 requires 1 < mu < 2");
                 },
                 [](const Candidate3Config& c) {
                   if (!c.gamma.is_positive()) throw InputError("cand3 requires gamma > 0");
                 },
             },
             policy);
}

std::string policy_name(const PolicyConfig& policy) {
  static constexpr const char* kNames[] = {"lpt", "restart", "cand1", "cand2", "cand3"};
  return kNames[policy.index()];
}

std::string describe(const PolicyConfig& policy) {
  return std::visit(Overloaded{
                        [](const LptConfig&) { return std::string("lpt"); },
                        [](const RestartParams& p) {
                          return "restart(alpha=" + p.alpha.str() + ",beta=" + p.beta.str() + ")";
                        },
                        [](const Candidate1Config& c) { return "cand1(rho=" + c.rho.str() + ")"; },
                        [](const Candidate2Config& c) {
                          return "cand2(rho=" + c.rho.str() + ",mu=" + c.mu.str() + ")";
                        },
                        [](const Candidate3Config& c) { return "cand3(gamma=" + c.gamma.str() + ")"; },
                    },
                    policy);
}

}  // namespace rsched
