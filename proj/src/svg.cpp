#include "esqpt/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace esqpt::svg {

namespace {

constexpr double kW = 760, kH = 520;
constexpr double kL = 78, kR = 24, kT = 40, kB = 58;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<double> lin_ticks(double lo, double hi) {
  if (!(hi > lo)) return {lo};
  const double span = hi - lo;
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  std::vector<double> t;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step)
    t.push_back(v);
  return t;
}

std::vector<double> log_ticks(double lo, double hi) {
  std::vector<double> t;
  for (int e = static_cast<int>(std::floor(lo)); e <= static_cast<int>(std::ceil(hi)); ++e)
    if (e >= lo - 1e-9 && e <= hi + 1e-9) t.push_back(e);
  if (t.empty()) t = {lo, hi};
  return t;
}

}  // namespace

Figure::Figure(std::string title, std::string xlabel, std::string ylabel,
               bool logx, bool logy)
    : title_(std::move(title)),
      xlabel_(std::move(xlabel)),
      ylabel_(std::move(ylabel)),
      logx_(logx),
      logy_(logy) {}

void Figure::polyline(const std::vector<double>& x, const std::vector<double>& y,
                      const Style& style) {
  if (x.size() != y.size())
    throw std::invalid_argument("svg: polyline arity mismatch");
  lines_.push_back({x, y, style});
}

void Figure::vline(double x, const Style& style) {
  vlines_.push_back(x);
  vline_styles_.push_back(style);
}

void Figure::annotate(const std::string& text) { notes_.push_back(text); }

std::string Figure::render() const {
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  auto tx = [&](double v) { return logx_ ? std::log10(v) : v; };
  auto ty = [&](double v) { return logy_ ? std::log10(v) : v; };
  bool any = false;
  for (const auto& l : lines_)
    for (std::size_t i = 0; i < l.x.size(); ++i) {
      const double vx = tx(l.x[i]);
      const double vy = ty(l.y[i]);
      if (!std::isfinite(vx) || !std::isfinite(vy)) continue;
      any = true;
      xlo = std::min(xlo, vx);
      xhi = std::max(xhi, vx);
      ylo = std::min(ylo, vy);
      yhi = std::max(yhi, vy);
    }
  for (double v : vlines_) {
    const double vx = tx(v);
    if (std::isfinite(vx)) {
      xlo = std::min(xlo, vx);
      xhi = std::max(xhi, vx);
    }
  }
  if (!any) {
    xlo = 0;
    xhi = 1;
    ylo = 0;
    yhi = 1;
  }
  if (xhi <= xlo) xhi = xlo + 1;
  if (yhi <= ylo) yhi = ylo + (std::fabs(ylo) > 0 ? std::fabs(ylo) * 1e-3 : 1);
  const double padx = 0.03 * (xhi - xlo), pady = 0.05 * (yhi - ylo);
  xlo -= padx;
  xhi += padx;
  ylo -= pady;
  yhi += pady;

  auto px = [&](double v) { return kL + (tx(v) - xlo) / (xhi - xlo) * (kW - kL - kR); };
  auto py = [&](double v) { return kH - kB - (ty(v) - ylo) / (yhi - ylo) * (kH - kT - kB); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
    << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
  s << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
  s << "<text x=\"" << kW / 2 << "\" y=\"22\" font-size=\"15\" text-anchor=\"middle\">"
    << title_ << "</text>\n";

  // frame
  s << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR
    << "\" height=\"" << kH - kT - kB
    << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";

  const auto xt = logx_ ? log_ticks(xlo, xhi) : lin_ticks(xlo, xhi);
  for (double v : xt) {
    const double X = kL + (v - xlo) / (xhi - xlo) * (kW - kL - kR);
    s << "<line x1=\"" << X << "\" y1=\"" << kH - kB << "\" x2=\"" << X
      << "\" y2=\"" << kH - kB + 5 << "\" stroke=\"#333\"/>\n";
    s << "<text x=\"" << X << "\" y=\"" << kH - kB + 20
      << "\" font-size=\"11\" text-anchor=\"middle\">"
      << (logx_ ? "1e" + fmt(v) : fmt(v)) << "</text>\n";
  }
  const auto yt = logy_ ? log_ticks(ylo, yhi) : lin_ticks(ylo, yhi);
  for (double v : yt) {
    const double Y = kH - kB - (v - ylo) / (yhi - ylo) * (kH - kT - kB);
    s << "<line x1=\"" << kL - 5 << "\" y1=\"" << Y << "\" x2=\"" << kL
      << "\" y2=\"" << Y << "\" stroke=\"#333\"/>\n";
    s << "<text x=\"" << kL - 8 << "\" y=\"" << Y + 4
      << "\" font-size=\"11\" text-anchor=\"end\">"
      << (logy_ ? "1e" + fmt(v) : fmt(v)) << "</text>\n";
  }
  s << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 16
    << "\" font-size=\"13\" text-anchor=\"middle\">" << xlabel_ << "</text>\n";
  s << "<text x=\"18\" y=\"" << (kT + kH - kB) / 2
    << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << (kT + kH - kB) / 2 << ")\">" << ylabel_ << "</text>\n";

  for (std::size_t k = 0; k < vlines_.size(); ++k) {
    const double X = px(vlines_[k]);
    if (!std::isfinite(X)) continue;
    s << "<line x1=\"" << X << "\" y1=\"" << kT << "\" x2=\"" << X << "\" y2=\""
      << kH - kB << "\" stroke=\"" << vline_styles_[k].stroke
      << "\" stroke-width=\"" << vline_styles_[k].width << "\"";
    if (!vline_styles_[k].dash.empty())
      s << " stroke-dasharray=\"" << vline_styles_[k].dash << "\"";
    s << "/>\n";
  }

  for (const auto& l : lines_) {
    s << "<polyline fill=\"none\" stroke=\"" << l.style.stroke
      << "\" stroke-width=\"" << l.style.width << "\"";
    if (!l.style.dash.empty()) s << " stroke-dasharray=\"" << l.style.dash << "\"";
    s << " points=\"";
    bool open = false;
    for (std::size_t i = 0; i < l.x.size(); ++i) {
      const double X = px(l.x[i]);
      const double Y = py(l.y[i]);
      if (!std::isfinite(X) || !std::isfinite(Y)) {
        open = false;
        continue;
      }
      if (open) s << ' ';
      s << fmt(X) << ',' << fmt(Y);
      open = true;
    }
    s << "\"/>\n";
  }

  double note_y = kT + 16;
  for (const auto& n : notes_) {
    s << "<text x=\"" << kL + 10 << "\" y=\"" << note_y
      << "\" font-size=\"12\" fill=\"#b03030\">" << n << "</text>\n";
    note_y += 16;
  }
  if (!any)
    s << "<text x=\"" << kW / 2 << "\" y=\"" << kH / 2
      << "\" font-size=\"14\" fill=\"#b03030\" text-anchor=\"middle\">"
      << "warning: empty dataset</text>\n";
  s << "</svg>\n";
  return s.str();
}

void Figure::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << render();
}

}  // namespace esqpt::svg
