#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "rsched/model.hpp"

namespace rsched {

// Instance JSON:
//   {"machines": 2, "jobs": [{"id": 1, "release": "0", "size": "1/2"}, ...]}
// Rationals are strings ("a/b" or a decimal literal); integer JSON numbers are
// also accepted. Non-integer JSON numbers are rejected since they are binary
// floating point and would not round-trip exactly.

[[nodiscard]] Instance parse_instance(std::string_view text);
[[nodiscard]] Instance instance_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json to_json(const Instance& inst);

[[nodiscard]] Trace parse_trace(std::string_view text);
[[nodiscard]] Trace trace_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json to_json(const Trace& trace);

/// Compact single-line serialization; bit-stable for equal values.
[[nodiscard]] std::string dump(const nlohmann::json& j);

[[nodiscard]] Rat rat_from_json(const nlohmann::json& j, const std::string& what);

}  // namespace rsched
