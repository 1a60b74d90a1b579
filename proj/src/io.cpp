#include "rsched/io.hpp"

#include <array>

namespace rsched {

using nlohmann::json;

namespace {

constexpr std::array kEventNames = {"arrival", "start", "replace", "complete"};

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing field \"" + key + "\"");
  return *it;
}

std::int64_t int_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number_integer()) throw InputError(where + ": field \"" + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

EventKind event_kind(const std::string& name) {
  for (std::size_t i = 0; i < kEventNames.size(); ++i)
    if (name == kEventNames[i]) return static_cast<EventKind>(i);
  throw InputError("unknown event kind \"" + name + "\"");
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Rat rat_from_json(const json& j, const std::string& what) {
  try {
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  } catch (const std::invalid_argument& e) {
    throw InputError(what + ": " + e.what());
  } catch (const std::overflow_error& e) {
    throw InputError(what + ": " + e.what());
  }
  throw InputError(what + ": expected a rational string such as \"3/4\" or \"0.25\"");
}

Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw InputError("instance must be a JSON object");
  Instance inst;
  inst.machines = static_cast<int>(int_field(j, "machines", "instance"));
  if (inst.machines < 1) throw InputError("machines must be ≥ 1");
  const json& jobs = field(j, "jobs", "instance");
  if (!jobs.is_array()) throw InputError("instance: \"jobs\" must be an array");
  for (const json& jj : jobs) {
    if (!jj.is_object()) throw InputError("instance: job entries must be objects");
    Job job;
    job.id = int_field(jj, "id", "job");
    const std::string who = "job " + std::to_string(job.id);
    job.release = rat_from_json(field(jj, "release", who), who + " release");
    job.size = rat_from_json(field(jj, "size", who), who + " size");
    inst.jobs.push_back(job);
  }
  inst.validate();
  return inst;
}

Instance parse_instance(std::string_view text) { return instance_from_json(parse_text(text)); }

json to_json(const Instance& inst) {
  json jobs = json::array();
  for (const Job& j : inst.jobs)
    jobs.push_back({{"id", j.id}, {"release", j.release.str()}, {"size", j.size.str()}});
  return {{"machines", inst.machines}, {"jobs", std::move(jobs)}};
}

json to_json(const Trace& trace) {
  json segs = json::array();
  for (const Segment& s : trace.segments) {
    json js = {{"job", s.job},
               {"machine", s.machine},
               {"start", s.start.str()},
               {"end", s.end.str()},
               {"outcome", s.outcome == Outcome::Completed ? "completed" : "replaced"}};
    if (s.replaced_by) js["replaced_by"] = *s.replaced_by;
    segs.push_back(std::move(js));
  }
  json events = json::array();
  for (const Event& e : trace.events) {
    json je = {{"time", e.time.str()},
               {"kind", kEventNames[static_cast<std::size_t>(e.kind)]},
               {"job", e.job},
               {"machine", e.machine}};
    if (e.other) je["other"] = *e.other;
    events.push_back(std::move(je));
  }
  json pending = json::array();
  for (const auto& [id, ivs] : trace.pending) {
    json list = json::array();
    for (const Interval& iv : ivs) list.push_back({iv.begin.str(), iv.end.str()});
    pending.push_back({{"job", id}, {"intervals", std::move(list)}});
  }
  return {{"instance", to_json(trace.instance)},
          {"segments", std::move(segs)},
          {"events", std::move(events)},
          {"pending", std::move(pending)}};
}

Trace trace_from_json(const json& j) {
  if (!j.is_object()) throw InputError("trace must be a JSON object");
  Trace t;
  t.instance = instance_from_json(field(j, "instance", "trace"));
  for (const json& js : field(j, "segments", "trace")) {
    Segment s;
    s.job = int_field(js, "job", "segment");
    s.machine = static_cast<int>(int_field(js, "machine", "segment"));
    s.start = rat_from_json(field(js, "start", "segment"), "segment start");
    s.end = rat_from_json(field(js, "end", "segment"), "segment end");
    const std::string outcome = field(js, "outcome", "segment").get<std::string>();
    if (outcome == "completed") {
      s.outcome = Outcome::Completed;
    } else if (outcome == "replaced") {
      s.outcome = Outcome::Replaced;
      s.replaced_by = int_field(js, "replaced_by", "segment");
    } else {
      throw InputError("segment: unknown outcome \"" + outcome + "\"");
    }
    t.segments.push_back(s);
  }
  for (const json& je : field(j, "events", "trace")) {
    Event e;
    e.time = rat_from_json(field(je, "time", "event"), "event time");
    e.kind = event_kind(field(je, "kind", "event").get<std::string>());
    e.job = int_field(je, "job", "event");
    e.machine = static_cast<int>(int_field(je, "machine", "event"));
    if (je.contains("other")) e.other = int_field(je, "other", "event");
    t.events.push_back(e);
  }
  for (const json& jp : field(j, "pending", "trace")) {
    const JobId id = int_field(jp, "job", "pending");
    auto& list = t.pending[id];
    for (const json& iv : field(jp, "intervals", "pending")) {
      if (!iv.is_array() || iv.size() != 2) throw InputError("pending interval must be a [begin, end] pair");
      list.push_back({rat_from_json(iv[0], "interval begin"), rat_from_json(iv[1], "interval end")});
    }
  }
  return t;
}

Trace parse_trace(std::string_view text) { return trace_from_json(parse_text(text)); }

std::string dump(const json& j) { return j.dump(); }

}  // namespace rsched
