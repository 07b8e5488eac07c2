#include <algorithm>
#include <cstdio>
#include <functional>

#include "ccmm/harness/io.hpp"

namespace ccmm::harness {
namespace {

struct Series {
  const char* name;
  const char* color;
  std::function<std::optional<Rational>(const CurveRow&)> value;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

std::string curves_to_svg(const std::vector<CurveRow>& rows, const std::string& title) {
  const std::vector<Series> series = {
      {"R_sa", "#1f77b4", [](const CurveRow& r) { return std::optional<Rational>(r.R_sa); }},
      {"R1", "#ff7f0e", [](const CurveRow& r) { return std::optional<Rational>(r.R1); }},
      {"R2", "#2ca02c", [](const CurveRow& r) { return std::optional<Rational>(r.R2); }},
      {"R_row", "#d62728", [](const CurveRow& r) { return std::optional<Rational>(r.R_row); }},
      {"R_col", "#9467bd", [](const CurveRow& r) { return std::optional<Rational>(r.R_col); }},
      {"cutset", "#7f7f7f", [](const CurveRow& r) { return std::optional<Rational>(r.cutset); }},
      {"genie", "#17becf", [](const CurveRow& r) { return r.genie; }},
      {"simulated", "#000000", [](const CurveRow& r) { return r.simulated; }},
  };
  const double width = 720, height = 480, left = 60, right = 150, top = 40, bottom = 50;
  const double plot_w = width - left - right, plot_h = height - top - bottom;

  double max_m = 1, max_r = 0;
  for (const CurveRow& row : rows) {
    max_m = std::max(max_m, to_double(row.M));
    for (const Series& s : series) {
      if (auto v = s.value(row)) max_r = std::max(max_r, to_double(*v));
    }
  }
  if (max_r <= 0) max_r = 1;
  auto x_of = [&](double m) { return left + m / max_m * plot_w; };
  auto y_of = [&](double r) { return top + plot_h - r / max_r * plot_h; };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
                    "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(left) + "\" y=\"24\" font-size=\"14\">" + escape(title) + "</text>\n";
  svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(top + plot_h) + "\" x2=\"" + num(left + plot_w) + "\" y2=\"" +
         num(top + plot_h) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) + "\" y2=\"" + num(top + plot_h) +
         "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double m = max_m * i / 5, r = max_r * i / 5;
    svg += "<text x=\"" + num(x_of(m)) + "\" y=\"" + num(top + plot_h + 16) + "\" text-anchor=\"middle\">" + num(m) +
           "</text>\n";
    svg += "<text x=\"" + num(left - 6) + "\" y=\"" + num(y_of(r) + 4) + "\" text-anchor=\"end\">" + num(r) + "</text>\n";
  }
  svg += "<text x=\"" + num(left + plot_w / 2) + "\" y=\"" + num(height - 10) + "\" text-anchor=\"middle\">M</text>\n";
  svg += "<text x=\"16\" y=\"" + num(top + plot_h / 2) + "\" transform=\"rotate(-90 16 " + num(top + plot_h / 2) +
         ")\" text-anchor=\"middle\">R</text>\n";

  int legend_row = 0;
  for (const Series& s : series) {
    std::string points;
    for (const CurveRow& row : rows) {
      if (auto v = s.value(row)) points += num(x_of(to_double(row.M))) + "," + num(y_of(to_double(*v))) + " ";
    }
    if (points.empty()) continue;
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(s.color) + "\" stroke-width=\"1.5\" points=\"" + points +
           "\"/>\n";
    const double ly = top + 14 + 18 * legend_row++;
    svg += "<line x1=\"" + num(left + plot_w + 12) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(left + plot_w + 36) +
           "\" y2=\"" + num(ly) + "\" stroke=\"" + s.color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(left + plot_w + 42) + "\" y=\"" + num(ly + 4) + "\">" + s.name + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace ccmm::harness
