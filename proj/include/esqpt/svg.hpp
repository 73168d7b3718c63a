// svg.hpp — deterministic static SVG figures: axes with ticks, optional log
// scales, polylines, and vertical markers. No randomness, no timestamps,
// so identical data gives byte-identical files.
#pragma once

#include <string>
#include <vector>

namespace esqpt::svg {

struct Style {
  std::string stroke = "#1f6fb5";
  double width = 1.0;
  std::string dash;  // e.g. "4,3"; empty for solid
};

class Figure {
 public:
  Figure(std::string title, std::string xlabel, std::string ylabel,
         bool logx = false, bool logy = false);

  void polyline(const std::vector<double>& x, const std::vector<double>& y,
                const Style& style);
  void vline(double x, const Style& style);
  void annotate(const std::string& text);  // corner note (warnings, legends)

  std::string render() const;
  void save(const std::string& path) const;

 private:
  struct Line {
    std::vector<double> x, y;
    Style style;
  };
  std::string title_, xlabel_, ylabel_;
  bool logx_, logy_;
  std::vector<Line> lines_;
  std::vector<double> vlines_;
  std::vector<Style> vline_styles_;
  std::vector<std::string> notes_;
};

}  // namespace esqpt::svg
