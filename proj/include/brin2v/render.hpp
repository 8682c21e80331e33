#pragma once

// SVG rendering of the first N squares of a pattern: one outlined unit square
// per S_i with its nested rectangles and centered numbers.  The y axis is
// flipped so pictures match the upper-half-plane convention.  Output bytes
// are deterministic for a fixed input.

#include <cstdio>
#include <sstream>
#include <string>

#include "brin2v/pattern.hpp"

namespace brin2v {

namespace detail {

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace detail

inline std::string render_pattern(const NumberedPattern& p, std::uint64_t squares) {
  if (squares < 1) throw std::invalid_argument("render_pattern needs at least one square");
  const double side = 160.0;
  const double gap = 24.0;
  const double margin = 16.0;
  double width = margin * 2 + side * static_cast<double>(squares) +
                 gap * static_cast<double>(squares - 1);
  double height = margin * 2 + side + 18.0;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::fmt(width)
      << "\" height=\"" << detail::fmt(height) << "\" viewBox=\"0 0 " << detail::fmt(width)
      << " " << detail::fmt(height) << "\">\n";
  for (std::uint64_t sq = 0; sq < squares; ++sq) {
    double ox = margin + static_cast<double>(sq) * (side + gap);
    double oy = margin;
    svg << "<g>\n";
    for (const auto& t : p.square_tiles(sq)) {
      double x0 = static_cast<double>(t.rect.x.num) / static_cast<double>(1ull << t.rect.x.exp);
      double w = 1.0 / static_cast<double>(1ull << t.rect.x.exp);
      double y1 = static_cast<double>(t.rect.y.num + 1) / static_cast<double>(1ull << t.rect.y.exp);
      double h = 1.0 / static_cast<double>(1ull << t.rect.y.exp);
      double rx = ox + x0 * side;
      double ry = oy + (1.0 - y1) * side;  // flip y
      svg << "<rect x=\"" << detail::fmt(rx) << "\" y=\"" << detail::fmt(ry) << "\" width=\""
          << detail::fmt(w * side) << "\" height=\"" << detail::fmt(h * side)
          << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
      svg << "<text x=\"" << detail::fmt(rx + w * side / 2) << "\" y=\""
          << detail::fmt(ry + h * side / 2) << "\" font-size=\"12\" text-anchor=\"middle\" "
             "dominant-baseline=\"middle\">"
          << t.num << "</text>\n";
    }
    svg << "<text x=\"" << detail::fmt(ox + side / 2) << "\" y=\""
        << detail::fmt(oy + side + 14.0) << "\" font-size=\"11\" text-anchor=\"middle\">S"
        << sq << "</text>\n";
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace brin2v
