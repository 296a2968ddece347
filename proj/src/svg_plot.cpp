#include "daccgd/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace daccgd {
namespace {

constexpr double kFloor = 1e-16;
constexpr int kWidth = 800, kHeight = 600;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string gnum(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

struct Panel {
  double x0, y0, x1, y1;  // plot rectangle, y0 = top
  double xmax;
  int dec_lo, dec_hi;

  double map_x(double x) const { return x0 + (x1 - x0) * (xmax > 0 ? x / xmax : 0.0); }
  double map_y(double fgap) const {
    double lf = std::log10(std::max(fgap, kFloor));
    return y1 - (y1 - y0) * (lf - dec_lo) / std::max(1, dec_hi - dec_lo);
  }
};

void draw_panel(std::string& svg, const Panel& p, const std::vector<LabeledTrace>& traces,
                bool use_comm, const std::string& x_label) {
  svg += "<rect x=\"" + num(p.x0) + "\" y=\"" + num(p.y0) + "\" width=\"" + num(p.x1 - p.x0) +
         "\" height=\"" + num(p.y1 - p.y0) + "\" fill=\"none\" stroke=\"#333333\"/>\n";

  // y ticks: one per decade, thinned to at most 10 labels
  int decades = std::max(1, p.dec_hi - p.dec_lo);
  int stride = (decades + 9) / 10;
  for (int d = p.dec_lo; d <= p.dec_hi; d += stride) {
    double y = p.y1 - (p.y1 - p.y0) * static_cast<double>(d - p.dec_lo) / decades;
    svg += "<line x1=\"" + num(p.x0 - 4) + "\" y1=\"" + num(y) + "\" x2=\"" + num(p.x1) +
           "\" y2=\"" + num(y) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + num(p.x0 - 8) + "\" y=\"" + num(y + 4) +
           "\" text-anchor=\"end\" font-size=\"11\">1e" + std::to_string(d) + "</text>\n";
  }
  // x ticks: quarters of the range
  for (int t = 0; t <= 4; ++t) {
    double xv = p.xmax * t / 4.0;
    double x = p.map_x(xv);
    svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(p.y1) + "\" x2=\"" + num(x) + "\" y2=\"" +
           num(p.y1 + 4) + "\" stroke=\"#333333\"/>\n";
    svg += "<text x=\"" + num(x) + "\" y=\"" + num(p.y1 + 18) +
           "\" text-anchor=\"middle\" font-size=\"11\">" + gnum(xv) + "</text>\n";
  }
  svg += "<text x=\"" + num((p.x0 + p.x1) / 2) + "\" y=\"" + num(p.y1 + 36) +
         "\" text-anchor=\"middle\" font-size=\"12\">" + x_label + "</text>\n";

  for (std::size_t i = 0; i < traces.size(); ++i) {
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += kPalette[i % kPaletteSize];
    svg += "\" stroke-width=\"1.5\" points=\"";
    for (const auto& row : traces[i].trace->rows) {
      double xv = static_cast<double>(use_comm ? row.comm_rounds : row.grad_evals);
      svg += num(p.map_x(xv)) + "," + num(p.map_y(row.f_gap)) + " ";
    }
    svg += "\"/>\n";
  }
}

}  // namespace

std::string render_convergence_svg(const std::vector<LabeledTrace>& traces) {
  if (traces.empty()) throw std::invalid_argument("render_convergence_svg: no traces");
  for (const auto& t : traces)
    if (t.trace == nullptr || t.trace->rows.empty())
      throw std::invalid_argument("render_convergence_svg: empty trace");

  double fmin = 1e300, fmax = 0.0, max_grad = 0.0, max_comm = 0.0;
  for (const auto& t : traces) {
    for (const auto& row : t.trace->rows) {
      double g = std::max(row.f_gap, kFloor);
      fmin = std::min(fmin, g);
      fmax = std::max(fmax, g);
      max_grad = std::max(max_grad, static_cast<double>(row.grad_evals));
      max_comm = std::max(max_comm, static_cast<double>(row.comm_rounds));
    }
  }
  int dec_lo = static_cast<int>(std::floor(std::log10(fmin)));
  int dec_hi = static_cast<int>(std::ceil(std::log10(fmax)));
  if (dec_hi <= dec_lo) dec_hi = dec_lo + 1;

  Panel left{60, 90, 390, 540, max_grad, dec_lo, dec_hi};
  Panel right{460, 90, 790, 540, max_comm, dec_lo, dec_hi};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
         "\" height=\"" + std::to_string(kHeight) + "\" viewBox=\"0 0 " + std::to_string(kWidth) +
         " " + std::to_string(kHeight) + "\">\n";
  svg += "<rect width=\"" + std::to_string(kWidth) + "\" height=\"" + std::to_string(kHeight) +
         "\" fill=\"#ffffff\"/>\n";
  svg += "<g font-family=\"monospace\" fill=\"#222222\">\n";
  svg += "<text x=\"400\" y=\"26\" text-anchor=\"middle\" font-size=\"15\">convergence: f_gap "
         "(log scale)</text>\n";

  // legend row
  double lx = 60;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    svg += "<line x1=\"" + num(lx) + "\" y1=\"48\" x2=\"" + num(lx + 26) + "\" y2=\"48\" stroke=\"";
    svg += kPalette[i % kPaletteSize];
    svg += "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(lx + 32) + "\" y=\"52\" font-size=\"12\">" + traces[i].label +
           "</text>\n";
    lx += 40 + 7.5 * static_cast<double>(traces[i].label.size());
  }

  draw_panel(svg, left, traces, false, "gradient evaluations per node");
  draw_panel(svg, right, traces, true, "communication rounds");
  svg += "</g>\n</svg>\n";
  return svg;
}

void write_convergence_svg(const std::vector<LabeledTrace>& traces, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write svg file: " + path);
  out << render_convergence_svg(traces);
}

}  // namespace daccgd
