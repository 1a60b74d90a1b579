#pragma once

#include <string>

#include "rsched/model.hpp"

namespace rsched {

/// SVG Gantt chart: one lane per machine, completed runs solid, replaced runs
/// hatched. Pending intervals are not drawn.
[[nodiscard]] std::string gantt_svg(const Trace& trace);

/// Writes gantt_svg(trace) to `path`; throws std::runtime_error if the file
/// cannot be written.
void write_gantt_svg(const Trace& trace, const std::string& path);

}  // namespace rsched
