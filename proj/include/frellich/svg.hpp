#pragma once

// Static SVG line plots: polylines, axes with ticks, a legend. Output is
// self-contained and depends only on the data.

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "frellich/constants.hpp"
#include "frellich/io.hpp"

namespace frellich {

struct plot_series {
  std::string label;
  std::vector<double> x, y;
  bool dashed = false;
  std::string color = "#1f4e9c";
};

struct plot_options {
  std::string title;
  std::string x_label = "x";
  std::string y_label = "y";
  bool log_x = false;
  double x_shift = 0.0;  ///< log axis plots log10(x + x_shift)
  int width = 640;
  int height = 420;
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
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

inline std::string px(double v) { return format_number(std::round(v * 100.0) / 100.0, 8); }

}  // namespace detail

inline void write_svg_plot(std::ostream& os, const std::vector<plot_series>& series, const plot_options& opt) {
  const double left = 70, right = 20, top = 40, bottom = 55;
  const double W = opt.width, H = opt.height;
  const double pw = W - left - right, ph = H - top - bottom;
  auto tx = [&](double x) { return opt.log_x ? std::log10(x + opt.x_shift) : x; };

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, tx(s.x[i]));
      x1 = std::max(x1, tx(s.x[i]));
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  y0 = std::min(y0, 0.0);
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  y1 += 0.05 * (y1 - y0);
  auto sx = [&](double x) { return left + (tx(x) - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };
  using detail::px;

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
     << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opt.title.empty())
    os << "<text x=\"" << px(W / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
       << detail::xml_escape(opt.title) << "</text>\n";

  // axes
  os << "<g stroke=\"black\" stroke-width=\"1\">\n"
     << "<line x1=\"" << px(left) << "\" y1=\"" << px(top + ph) << "\" x2=\"" << px(left + pw) << "\" y2=\""
     << px(top + ph) << "\"/>\n"
     << "<line x1=\"" << px(left) << "\" y1=\"" << px(top) << "\" x2=\"" << px(left) << "\" y2=\"" << px(top + ph)
     << "\"/>\n</g>\n";

  // y ticks
  os << "<g font-size=\"11\">\n";
  for (int k = 0; k <= 5; ++k) {
    const double v = y0 + (y1 - y0) * k / 5.0;
    const double y = sy(v);
    os << "<line x1=\"" << px(left - 4) << "\" y1=\"" << px(y) << "\" x2=\"" << px(left) << "\" y2=\"" << px(y)
       << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << px(left - 7) << "\" y=\"" << px(y + 4) << "\" text-anchor=\"end\">"
       << format_number(v, 3) << "</text>\n";
  }
  // x ticks: decades on a log axis, else 5 even steps
  std::vector<double> ticks;
  if (opt.log_x) {
    for (int e = static_cast<int>(std::ceil(x0 - 1e-12)); e <= static_cast<int>(std::floor(x1 + 1e-12)); ++e)
      ticks.push_back(std::pow(10.0, e) - opt.x_shift);
  } else {
    for (int k = 0; k <= 5; ++k) ticks.push_back(x0 + (x1 - x0) * k / 5.0);
  }
  for (double t : ticks) {
    const double x = sx(t);
    os << "<line x1=\"" << px(x) << "\" y1=\"" << px(top + ph) << "\" x2=\"" << px(x) << "\" y2=\""
       << px(top + ph + 4) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << px(x) << "\" y=\"" << px(top + ph + 17) << "\" text-anchor=\"middle\">"
       << format_number(t, 3) << "</text>\n";
  }
  os << "</g>\n";
  os << "<text x=\"" << px(left + pw / 2) << "\" y=\"" << px(H - 12) << "\" text-anchor=\"middle\">"
     << detail::xml_escape(opt.x_label) << "</text>\n"
     << "<text x=\"16\" y=\"" << px(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << px(top + ph / 2) << ")\">" << detail::xml_escape(opt.y_label) << "</text>\n";

  // curves; non-finite points break the polyline
  for (const auto& s : series) {
    std::string pts;
    auto flush = [&] {
      if (pts.empty()) return;
      os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\""
         << (s.dashed ? " stroke-dasharray=\"7 4\"" : "") << " points=\"" << pts << "\"/>\n";
      pts.clear();
    };
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) {
        flush();
        continue;
      }
      if (!pts.empty()) pts += ' ';
      pts += px(sx(s.x[i])) + ',' + px(sy(s.y[i]));
    }
    flush();
  }

  // legend
  double ly = top + 8;
  for (const auto& s : series) {
    const double lx = left + pw - 130;
    os << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly) << "\" x2=\"" << px(lx + 28) << "\" y2=\"" << px(ly)
       << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"7 4\"" : "")
       << "/>\n<text x=\"" << px(lx + 34) << "\" y=\"" << px(ly + 4) << "\">" << detail::xml_escape(s.label)
       << "</text>\n";
    ly += 18;
  }
  os << "</svg>\n";
}

/// s(β) solid and c(β) dashed against log10(β + 1). Failed rows are gaps.
inline void write_sweep_svg(std::ostream& os, const std::vector<sweep_row>& rows, const std::string& title,
                            const std::string& s_label = "s(beta)", const std::string& c_label = "c(beta)") {
  plot_series s{s_label, {}, {}, false, "#1f4e9c"};
  plot_series c{c_label, {}, {}, true, "#c0392b"};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : rows) {
    s.x.push_back(r.beta);
    c.x.push_back(r.beta);
    s.y.push_back(r.ok() ? r.s : nan);
    c.y.push_back(r.ok() ? r.c : nan);
  }
  plot_options opt;
  opt.title = title;
  opt.x_label = "beta (log scale in beta + 1)";
  opt.y_label = "constant";
  opt.log_x = true;
  opt.x_shift = 1.0;
  write_svg_plot(os, {s, c}, opt);
}

}  // namespace frellich
