#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace loewner {

// Minimal hand-emitted SVG: axes, polylines and a caption block. No plotting
// dependency; figures are for human inspection and acceptance rests on the
// CSVs. Output is deterministic up to the version comment.

struct SvgSeries {
  std::vector<std::pair<double, double>> points;
  std::string color = "steelblue";
  bool dashed = false;
  double stroke_width = 1.0;
};

struct SvgPanel {
  std::string title;
  std::vector<SvgSeries> series;
  bool equal_aspect = false;
};

class SvgFigure {
 public:
  explicit SvgFigure(int columns = 1) : columns_(columns) {}

  SvgPanel& add_panel(const std::string& title) {
    panels_.push_back(SvgPanel{title, {}, false});
    return panels_.back();
  }

  void add_caption_line(const std::string& line) { caption_.push_back(line); }

  std::string render() const {
    const int cols = std::max(1, std::min<int>(columns_, panels_.size()));
    const int rows =
        static_cast<int>((panels_.size() + cols - 1) / (unsigned)cols);
    const int fig_w = cols * kPanelW;
    const int caption_h = 18 * static_cast<int>(caption_.size()) + 8;
    const int fig_h = rows * kPanelH + caption_h;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fig_w
        << "\" height=\"" << fig_h << "\" viewBox=\"0 0 " << fig_w << " "
        << fig_h << "\">\n";
    out << "<!-- loewner svg v1 -->\n";
    out << "<rect width=\"" << fig_w << "\" height=\"" << fig_h
        << "\" fill=\"white\"/>\n";
    for (std::size_t p = 0; p < panels_.size(); ++p) {
      const int px = static_cast<int>(p % (unsigned)cols) * kPanelW;
      const int py = static_cast<int>(p / (unsigned)cols) * kPanelH;
      render_panel(panels_[p], px, py, &out);
    }
    int ty = rows * kPanelH + 16;
    for (const auto& line : caption_) {
      out << "<text x=\"12\" y=\"" << ty
          << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(line)
          << "</text>\n";
      ty += 18;
    }
    out << "</svg>\n";
    return out.str();
  }

 private:
  static constexpr int kPanelW = 420;
  static constexpr int kPanelH = 360;
  static constexpr int kMarginL = 52, kMarginR = 14, kMarginT = 30,
                       kMarginB = 38;

  static std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '&') out += "&amp;";
      else if (c == '<') out += "&lt;";
      else if (c == '>') out += "&gt;";
      else out += c;
    }
    return out;
  }

  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
  }

  void render_panel(const SvgPanel& panel, int ox, int oy,
                    std::ostringstream* out) const {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (const auto& s : panel.series)
      for (const auto& [x, y] : s.points) {
        if (first) {
          xmin = xmax = x;
          ymin = ymax = y;
          first = false;
        } else {
          xmin = std::min(xmin, x);
          xmax = std::max(xmax, x);
          ymin = std::min(ymin, y);
          ymax = std::max(ymax, y);
        }
      }
    if (xmax - xmin < 1e-12) { xmin -= 0.5; xmax += 0.5; }
    if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }
    const double plot_w = kPanelW - kMarginL - kMarginR;
    const double plot_h = kPanelH - kMarginT - kMarginB;
    double sx = plot_w / (xmax - xmin);
    double sy = plot_h / (ymax - ymin);
    if (panel.equal_aspect) {
      const double s = std::min(sx, sy);
      const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
      xmin = cx - 0.5 * plot_w / s;
      xmax = cx + 0.5 * plot_w / s;
      ymin = cy - 0.5 * plot_h / s;
      ymax = cy + 0.5 * plot_h / s;
      sx = sy = s;
    }
    const auto X = [&](double x) { return ox + kMarginL + (x - xmin) * sx; };
    const auto Y = [&](double y) {
      return oy + kPanelH - kMarginB - (y - ymin) * sy;
    };

    // frame and ticks
    *out << "<rect x=\"" << ox + kMarginL << "\" y=\"" << oy + kMarginT
         << "\" width=\"" << plot_w << "\" height=\"" << plot_h
         << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"0.8\"/>\n";
    for (int i = 0; i <= 4; ++i) {
      const double xv = xmin + (xmax - xmin) * i / 4.0;
      const double yv = ymin + (ymax - ymin) * i / 4.0;
      *out << "<line x1=\"" << fmt(X(xv)) << "\" y1=\""
           << oy + kPanelH - kMarginB << "\" x2=\"" << fmt(X(xv)) << "\" y2=\""
           << oy + kPanelH - kMarginB + 4 << "\" stroke=\"#888\"/>\n";
      *out << "<text x=\"" << fmt(X(xv)) << "\" y=\""
           << oy + kPanelH - kMarginB + 16
           << "\" font-family=\"sans-serif\" font-size=\"10\" "
              "text-anchor=\"middle\">"
           << fmt(xv) << "</text>\n";
      *out << "<line x1=\"" << ox + kMarginL - 4 << "\" y1=\"" << fmt(Y(yv))
           << "\" x2=\"" << ox + kMarginL << "\" y2=\"" << fmt(Y(yv))
           << "\" stroke=\"#888\"/>\n";
      *out << "<text x=\"" << ox + kMarginL - 6 << "\" y=\"" << fmt(Y(yv) + 3)
           << "\" font-family=\"sans-serif\" font-size=\"10\" "
              "text-anchor=\"end\">"
           << fmt(yv) << "</text>\n";
    }
    *out << "<text x=\"" << ox + kPanelW / 2 << "\" y=\"" << oy + 18
         << "\" font-family=\"sans-serif\" font-size=\"12\" "
            "text-anchor=\"middle\">"
         << escape(panel.title) << "</text>\n";

    for (const auto& s : panel.series) {
      if (s.points.empty()) continue;
      *out << "<path d=\"";
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        *out << (i ? "L" : "M") << fmt(X(s.points[i].first)) << " "
             << fmt(Y(s.points[i].second));
      }
      *out << "\" fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\""
           << s.stroke_width << "\"";
      if (s.dashed) *out << " stroke-dasharray=\"6 4\"";
      *out << "/>\n";
    }
  }

  int columns_;
  std::vector<SvgPanel> panels_;
  std::vector<std::string> caption_;
};

}  // namespace loewner
