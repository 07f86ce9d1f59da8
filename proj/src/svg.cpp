#include "microgrid/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "microgrid/csv.hpp"
#include "microgrid/errors.hpp"

namespace microgrid {

namespace {

constexpr int kWidth = 860;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 150;  // legend gutter
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 55;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr int kPaletteSize = 10;

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) { return format_real(v); }

struct Range {
  double lo = 0.0;
  double hi = 1.0;
  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

// Tick step of the form {1,2,5} * 10^k giving 4..8 ticks over the range.
double nice_step(double span) {
  if (!(span > 0.0)) return 1.0;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10.0 * mag;
}

class Axes {
 public:
  Axes(Range x, Range y) : x_(pad(x)), y_(pad(y)) {}

  double sx(double v) const {
    return kMarginLeft + (v - x_.lo) / (x_.hi - x_.lo) * (kWidth - kMarginLeft - kMarginRight);
  }
  double sy(double v) const {
    return kHeight - kMarginBottom -
           (v - y_.lo) / (y_.hi - y_.lo) * (kHeight - kMarginTop - kMarginBottom);
  }
  const Range& x() const { return x_; }
  const Range& y() const { return y_; }

  void draw_frame(std::ostringstream& out, const std::string& x_label,
                  const std::string& y_label) const {
    out << "<rect x='" << kMarginLeft << "' y='" << kMarginTop << "' width='"
        << (kWidth - kMarginLeft - kMarginRight) << "' height='"
        << (kHeight - kMarginTop - kMarginBottom)
        << "' fill='white' stroke='#333' stroke-width='1'/>\n";
    const double xstep = nice_step(x_.hi - x_.lo);
    for (long i = static_cast<long>(std::ceil(x_.lo / xstep - 1e-9));
         i <= static_cast<long>(std::floor(x_.hi / xstep + 1e-9)); ++i) {
      const double t = static_cast<double>(i) * xstep;
      out << "<line x1='" << num(sx(t)) << "' y1='" << (kHeight - kMarginBottom) << "' x2='"
          << num(sx(t)) << "' y2='" << (kHeight - kMarginBottom + 5)
          << "' stroke='#333' stroke-width='1'/>\n";
      out << "<text x='" << num(sx(t)) << "' y='" << (kHeight - kMarginBottom + 20)
          << "' font-size='12' text-anchor='middle'>" << num(t) << "</text>\n";
    }
    const double ystep = nice_step(y_.hi - y_.lo);
    for (long i = static_cast<long>(std::ceil(y_.lo / ystep - 1e-9));
         i <= static_cast<long>(std::floor(y_.hi / ystep + 1e-9)); ++i) {
      const double t = static_cast<double>(i) * ystep;
      out << "<line x1='" << (kMarginLeft - 5) << "' y1='" << num(sy(t)) << "' x2='"
          << kMarginLeft << "' y2='" << num(sy(t)) << "' stroke='#333' stroke-width='1'/>\n";
      out << "<text x='" << (kMarginLeft - 8) << "' y='" << num(sy(t) + 4)
          << "' font-size='12' text-anchor='end'>" << num(t) << "</text>\n";
    }
    if (!x_label.empty())
      out << "<text x='" << (kMarginLeft + (kWidth - kMarginLeft - kMarginRight) / 2) << "' y='"
          << (kHeight - 12) << "' font-size='13' text-anchor='middle'>" << escape_xml(x_label)
          << "</text>\n";
    if (!y_label.empty())
      out << "<text x='16' y='" << (kMarginTop + (kHeight - kMarginTop - kMarginBottom) / 2)
          << "' font-size='13' text-anchor='middle' transform='rotate(-90 16 "
          << (kMarginTop + (kHeight - kMarginTop - kMarginBottom) / 2) << ")'>"
          << escape_xml(y_label) << "</text>\n";
  }

 private:
  static Range pad(Range r) {
    if (r.hi <= r.lo) {
      r.lo -= 0.5;
      r.hi += 0.5;
    }
    const double margin = 0.04 * (r.hi - r.lo);
    r.lo -= margin;
    r.hi += margin;
    return r;
  }

  Range x_;
  Range y_;
};

std::string document_open(const std::string& title) {
  std::ostringstream out;
  out << "<?xml version='1.0' encoding='UTF-8'?>\n"
      << "<svg xmlns='http://www.w3.org/2000/svg' version='1.1' width='" << kWidth
      << "' height='" << kHeight << "' viewBox='0 0 " << kWidth << " " << kHeight << "'>\n"
      << "<rect x='0' y='0' width='" << kWidth << "' height='" << kHeight
      << "' fill='white'/>\n";
  if (!title.empty())
    out << "<text x='" << kWidth / 2
        << "' y='24' font-size='16' text-anchor='middle' font-weight='bold'>"
        << escape_xml(title) << "</text>\n";
  return out.str();
}

}  // namespace

std::string render_line_chart(const std::vector<Series>& series,
                              const LineChartOptions& options) {
  std::size_t total_points = 0;
  for (const Series& s : series) total_points += s.points.size();
  if (series.empty() || total_points == 0)
    throw ArgumentError("render_line_chart: no data points");

  Range xr{series.front().points.front().first, series.front().points.front().first};
  Range yr{series.front().points.front().second, series.front().points.front().second};
  for (const Series& s : series) {
    for (const auto& [x, y] : s.points) {
      xr.include(x);
      yr.include(y);
    }
  }
  if (options.reference_y) yr.include(*options.reference_y);

  Axes axes(xr, yr);
  std::ostringstream out;
  out << document_open(options.title);
  axes.draw_frame(out, options.x_label, options.y_label);

  if (options.reference_y) {
    const double y = axes.sy(*options.reference_y);
    out << "<line x1='" << kMarginLeft << "' y1='" << num(y) << "' x2='"
        << (kWidth - kMarginRight) << "' y2='" << num(y)
        << "' stroke='#d62728' stroke-width='1.5' stroke-dasharray='6,4'/>\n";
    if (!options.reference_label.empty())
      out << "<text x='" << (kMarginLeft + 6) << "' y='" << num(y - 6)
          << "' font-size='12' fill='#d62728'>" << escape_xml(options.reference_label)
          << "</text>\n";
  }

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % kPaletteSize];
    out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
    for (const auto& [x, y] : series[s].points)
      out << num(axes.sx(x)) << "," << num(axes.sy(y)) << " ";
    out << "'/>\n";
  }

  // Legend in the right gutter.
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % kPaletteSize];
    const int y = kMarginTop + 14 + static_cast<int>(s) * 18;
    out << "<line x1='" << (kWidth - kMarginRight + 10) << "' y1='" << y << "' x2='"
        << (kWidth - kMarginRight + 34) << "' y2='" << y << "' stroke='" << color
        << "' stroke-width='2'/>\n";
    out << "<text x='" << (kWidth - kMarginRight + 40) << "' y='" << (y + 4)
        << "' font-size='12'>" << escape_xml(series[s].name) << "</text>\n";
  }

  out << "</svg>\n";
  return out.str();
}

std::string render_bar_chart(const std::vector<std::string>& labels,
                             const std::vector<double>& values, const std::string& title,
                             const std::string& y_label) {
  if (values.empty()) throw ArgumentError("render_bar_chart: no values");
  if (labels.size() != values.size())
    throw ArgumentError("render_bar_chart: labels and values differ in length");

  Range yr{0.0, 0.0};
  for (double v : values) yr.include(v);
  Range xr{0.0, static_cast<double>(values.size())};
  Axes axes(xr, yr);

  std::ostringstream out;
  out << document_open(title);
  axes.draw_frame(out, "", y_label);

  const double slot_width = axes.sx(1.0) - axes.sx(0.0);
  const double bar_width = 0.7 * slot_width;
  const double base_y = axes.sy(0.0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double cx = axes.sx(static_cast<double>(i) + 0.5);
    const double vy = axes.sy(values[i]);
    const double top = std::min(vy, base_y);
    const double height = std::abs(base_y - vy);
    out << "<rect x='" << num(cx - bar_width / 2) << "' y='" << num(top) << "' width='"
        << num(bar_width) << "' height='" << num(height) << "' fill='"
        << kPalette[i % kPaletteSize] << "'/>\n";
    out << "<text x='" << num(cx) << "' y='" << (kHeight - kMarginBottom + 20)
        << "' font-size='12' text-anchor='middle'>" << escape_xml(labels[i]) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_svg(ChartKind kind, const SimulationRecord& record) {
  const Eigen::Index n = record.scenario.graph.n;
  const auto& outcomes = record.outcomes;

  auto per_agent_series = [&](auto getter, const std::string& prefix) {
    std::vector<Series> series(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      series[static_cast<std::size_t>(i)].name = prefix + std::to_string(i);
      for (const SlotOutcome& slot : outcomes)
        series[static_cast<std::size_t>(i)].points.emplace_back(slot.slot, getter(slot, i));
    }
    return series;
  };

  switch (kind) {
    case ChartKind::demands: {
      LineChartOptions opt;
      opt.title = "Demand adaptation";
      opt.x_label = "time slot";
      opt.y_label = "demand";
      return render_line_chart(
          per_agent_series([](const SlotOutcome& s, Eigen::Index i) { return s.demands(i); },
                           "b"),
          opt);
    }
    case ChartKind::prices: {
      LineChartOptions opt;
      opt.title = "Price evolution";
      opt.x_label = "time slot";
      opt.y_label = "price per unit";
      return render_line_chart(
          per_agent_series([](const SlotOutcome& s, Eigen::Index i) { return s.prices(i); },
                           "p"),
          opt);
    }
    case ChartKind::totals: {
      LineChartOptions opt;
      opt.title = "Total demand";
      opt.x_label = "time slot";
      opt.y_label = "total demand";
      opt.reference_y = record.scenario.pricing.capacity;
      opt.reference_label = "capacity";
      Series total{"total", {}};
      for (const SlotOutcome& slot : outcomes)
        total.points.emplace_back(slot.slot, slot.total_true);
      return render_line_chart({total}, opt);
    }
    case ChartKind::cutdown: {
      std::vector<std::string> labels(static_cast<std::size_t>(n));
      std::vector<double> values(static_cast<std::size_t>(n));
      for (Eigen::Index i = 0; i < n; ++i) {
        labels[static_cast<std::size_t>(i)] = "b" + std::to_string(i);
        values[static_cast<std::size_t>(i)] = record.cut_down(i);
      }
      return render_bar_chart(labels, values, "Demand cut down per building", "demand cut");
    }
  }
  throw ArgumentError("render_svg: unhandled chart kind");
}

}  // namespace microgrid
