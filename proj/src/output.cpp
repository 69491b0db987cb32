#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "errors.hpp"
#include "geometry.hpp"

namespace wetlab {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_pgm(const std::string& path, const DropletField& field) {
  const Grid& g = *field.grid;
  auto out = open_out(path);
  out << "P2\n" << g.nx << " " << g.ny << "\n2\n";
  for (int j = g.ny - 1; j >= 0; --j) {
    for (int i = 0; i < g.nx; ++i) {
      const size_t k = g.idx(i, j);
      // 0 = exterior, 1 = vapor, 2 = liquid
      int v = g.cell_class[k] == CellClass::Exterior ? 0
              : field.occupancy[k]                   ? 2
                                                     : 1;
      out << v << (i + 1 < g.nx ? ' ' : '\n');
    }
  }
}

void write_svg_plot(
    const std::string& path, const std::string& title,
    const std::string& xlabel, const std::vector<double>& x,
    const std::vector<std::pair<std::string, std::vector<double>>>& series) {
  if (x.empty() || series.empty()) throw IoError("empty plot data");
  const int W = 640, H = 420, ml = 70, mr = 20, mt = 40, mb = 50;
  double xmin = x[0], xmax = x[0], ymin = 0, ymax = -1e300;
  bool first = true;
  for (double v : x) {
    xmin = std::min(xmin, v);
    xmax = std::max(xmax, v);
  }
  for (const auto& [name, ys] : series)
    for (double v : ys) {
      if (!std::isfinite(v)) continue;
      if (first) {
        ymin = ymax = v;
        first = false;
      }
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  const double ypad = 0.08 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;
  const auto px = [&](double v) {
    return ml + (v - xmin) / (xmax - xmin) * (W - ml - mr);
  };
  const auto py = [&](double v) {
    return H - mb - (v - ymin) / (ymax - ymin) * (H - mt - mb);
  };

  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">"
      << title << "</text>\n";
  // axes
  out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr
      << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = xmin + (xmax - xmin) * t / 4.0;
    const double yv = ymin + (ymax - ymin) * t / 4.0;
    out << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << format_number(xv) << "</text>\n"
        << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << format_number(yv) << "</text>\n";
  }
  out << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << xlabel << "</text>\n";

  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  int si = 0;
  for (const auto& [name, ys] : series) {
    const char* col = colors[si % 4];
    out << "<polyline fill=\"none\" stroke=\"" << col
        << "\" stroke-width=\"2\" points=\"";
    for (size_t k = 0; k < x.size() && k < ys.size(); ++k) {
      if (!std::isfinite(ys[k])) continue;
      out << px(x[k]) << "," << py(ys[k]) << " ";
    }
    out << "\"/>\n";
    for (size_t k = 0; k < x.size() && k < ys.size(); ++k) {
      if (!std::isfinite(ys[k])) continue;
      out << "<circle cx=\"" << px(x[k]) << "\" cy=\"" << py(ys[k])
          << "\" r=\"3\" fill=\"" << col << "\"/>\n";
    }
    out << "<text x=\"" << W - mr - 8 << "\" y=\"" << mt + 18 + 16 * si
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"12\" fill=\""
        << col << "\">" << name << "</text>\n";
    ++si;
  }
  out << "</svg>\n";
}

}  // namespace wetlab
