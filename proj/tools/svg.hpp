#pragma once

#include <sstream>
#include <string>
#include <vector>

namespace svgplot {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Minimal SVG canvas in pixel coordinates; deterministic output.
class Canvas {
 public:
  Canvas(double width, double height);

  void rect(double x, double y, double w, double h, const std::string& fill);
  void line(double x1, double y1, double x2, double y2,
            const std::string& stroke, double width = 1.0);
  void polyline(const std::vector<Point>& pts, const std::string& stroke,
                double width = 1.5);
  void text(double x, double y, const std::string& s, double size = 11.0);

  std::string str() const;

 private:
  double width_, height_;
  std::ostringstream body_;
};

/// Data-space to pixel-space mapping for a plot area with margins.
class Frame {
 public:
  Frame(double width, double height, double x0, double x1, double y0, double y1);

  double px(double x) const;
  double py(double y) const;
  double plot_left() const { return margin_; }
  double plot_right() const { return width_ - margin_; }
  double plot_top() const { return margin_; }
  double plot_bottom() const { return height_ - margin_; }

  void draw_axes(Canvas& canvas, const std::string& xlabel,
                 const std::string& ylabel) const;

 private:
  double width_, height_, margin_ = 42.0;
  double x0_, x1_, y0_, y1_;
};

std::string format_tick(double v);

}  // namespace svgplot
