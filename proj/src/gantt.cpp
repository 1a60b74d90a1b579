#include "rsched/gantt.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace rsched {

namespace {

constexpr double kLaneHeight = 28;
constexpr double kLaneGap = 8;
constexpr double kLeft = 48;
constexpr double kWidth = 720;
constexpr double kAxis = 24;

constexpr const char* kCompletedFill = "#3b7dd8";
constexpr const char* kReplacedStroke = "#c0392b";

}  // namespace

std::string gantt_svg(const Trace& trace) {
  const double horizon = std::max(makespan(trace).to_double(), 1e-9);
  const int m = trace.instance.machines;
  const double height = m * (kLaneHeight + kLaneGap) + kAxis;
  const auto x_of = [&](const Rat& t) { return kLeft + kWidth * t.to_double() / horizon; };

  std::ostringstream svg;
  svg << std::fixed << std::setprecision(2);
  svg << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << kLeft + kWidth + 16 << R"(" height=")" << height
      << R"(" font-family="sans-serif" font-size="11">)" << '\n';
  svg << R"svg(<defs><pattern id="hatch" width="6" height="6" patternUnits="userSpaceOnUse" patternTransform="rotate(45)">)svg"
      << R"(<line x1="0" y1="0" x2="0" y2="6" stroke=")" << kReplacedStroke << R"(" stroke-width="3"/></pattern></defs>)"
      << '\n';

  for (int lane = 0; lane < m; ++lane) {
    const double y = lane * (kLaneHeight + kLaneGap);
    svg << "<text x=\"4\" y=\"" << y + kLaneHeight * 0.65 << "\">M" << lane + 1 << "</text>\n";
    svg << "<rect x=\"" << kLeft << "\" y=\"" << y << "\" width=\"" << kWidth << "\" height=\"" << kLaneHeight
        << "\" fill=\"#f4f4f4\"/>\n";
  }

  for (const Segment& s : trace.segments) {
    const double y = s.machine * (kLaneHeight + kLaneGap);
    const double x = x_of(s.start);
    const double w = std::max(x_of(s.end) - x, 0.5);
    const bool done = s.outcome == Outcome::Completed;
    svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << kLaneHeight << "\" fill=\""
        << (done ? kCompletedFill : "url(#hatch)") << "\" stroke=\"" << (done ? "#1d3f6e" : kReplacedStroke)
        << "\"><title>job " << s.job << " [" << s.start.str() << ", " << s.end.str() << "]"
        << (done ? "" : " replaced") << "</title></rect>\n";
    if (w > 18) svg << "<text x=\"" << x + 3 << "\" y=\"" << y + kLaneHeight * 0.65 << "\">" << s.job << "</text>\n";
  }

  const double axis_y = m * (kLaneHeight + kLaneGap) + 14;
  svg << "<text x=\"" << kLeft << "\" y=\"" << axis_y << "\">0</text>\n";
  svg << "<text x=\"" << kLeft + kWidth - 40 << "\" y=\"" << axis_y << "\">" << makespan(trace).str() << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

void write_gantt_svg(const Trace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << gantt_svg(trace);
  if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace rsched
