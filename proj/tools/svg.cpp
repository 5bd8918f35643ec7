#include "svg.hpp"

#include <cmath>
#include <cstdio>

namespace svgplot {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

std::string format_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

Canvas::Canvas(double width, double height) : width_(width), height_(height) {}

void Canvas::rect(double x, double y, double w, double h,
                  const std::string& fill) {
  body_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\""
        << num(w) << "\" height=\"" << num(h) << "\" fill=\"" << fill
        << "\"/>\n";
}

void Canvas::line(double x1, double y1, double x2, double y2,
                  const std::string& stroke, double width) {
  body_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\""
        << num(x2) << "\" y2=\"" << num(y2) << "\" stroke=\"" << stroke
        << "\" stroke-width=\"" << num(width) << "\"/>\n";
}

void Canvas::polyline(const std::vector<Point>& pts, const std::string& stroke,
                      double width) {
  body_ << "<polyline fill=\"none\" stroke=\"" << stroke
        << "\" stroke-width=\"" << num(width) << "\" points=\"";
  for (const Point& p : pts) body_ << num(p.x) << ',' << num(p.y) << ' ';
  body_ << "\"/>\n";
}

void Canvas::text(double x, double y, const std::string& s, double size) {
  body_ << "<text x=\"" << num(x) << "\" y=\"" << num(y)
        << "\" font-family=\"sans-serif\" font-size=\"" << num(size) << "\">"
        << s << "</text>\n";
}

std::string Canvas::str() const {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_)
      << "\" height=\"" << num(height_) << "\" viewBox=\"0 0 " << num(width_)
      << ' ' << num(height_) << "\">\n<rect width=\"100%\" height=\"100%\" "
      << "fill=\"white\"/>\n"
      << body_.str() << "</svg>\n";
  return out.str();
}

Frame::Frame(double width, double height, double x0, double x1, double y0,
             double y1)
    : width_(width), height_(height), x0_(x0), x1_(x1), y0_(y0), y1_(y1) {
  if (x1_ == x0_) x1_ = x0_ + 1.0;
  if (y1_ == y0_) y1_ = y0_ + 1.0;
}

double Frame::px(double x) const {
  return plot_left() + (x - x0_) / (x1_ - x0_) * (plot_right() - plot_left());
}

double Frame::py(double y) const {
  return plot_bottom() - (y - y0_) / (y1_ - y0_) * (plot_bottom() - plot_top());
}

void Frame::draw_axes(Canvas& canvas, const std::string& xlabel,
                      const std::string& ylabel) const {
  canvas.line(plot_left(), plot_bottom(), plot_right(), plot_bottom(), "black");
  canvas.line(plot_left(), plot_bottom(), plot_left(), plot_top(), "black");
  for (int i = 0; i <= 4; ++i) {
    const double fx = x0_ + (x1_ - x0_) * i / 4.0;
    const double fy = y0_ + (y1_ - y0_) * i / 4.0;
    canvas.line(px(fx), plot_bottom(), px(fx), plot_bottom() + 4, "black");
    canvas.text(px(fx) - 10, plot_bottom() + 16, format_tick(fx), 9.0);
    canvas.line(plot_left() - 4, py(fy), plot_left(), py(fy), "black");
    canvas.text(4, py(fy) + 3, format_tick(fy), 9.0);
  }
  canvas.text(0.5 * (plot_left() + plot_right()) - 10, height_ - 6, xlabel);
  canvas.text(6, 14, ylabel);
}

}  // namespace svgplot
