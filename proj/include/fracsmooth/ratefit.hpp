#pragma once

// Log-log slope fitting for rate-exponent checks.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fracsmooth {

struct SlopeFit {
  double slope = 0;
  double intercept = 0;  // of the log-log line
  double r2 = 1;
  double xmin = 0, xmax = 0;
  int npoints = 0;
};

// Least-squares line through (log x, log y). Requires >= 4 positive points.
inline SlopeFit fit_rate(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 4) throw std::invalid_argument("fit_rate: need at least 4 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  SlopeFit out;
  out.npoints = static_cast<int>(points.size());
  out.xmin = points.front().first;
  out.xmax = points.front().first;
  for (const auto& [x, y] : points) {
    if (!(x > 0) || !(y > 0)) throw std::invalid_argument("fit_rate: data must be positive");
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
    out.xmin = std::min(out.xmin, x);
    out.xmax = std::max(out.xmax, x);
  }
  const double m = static_cast<double>(points.size());
  const double vxx = m * sxx - sx * sx;
  const double vxy = m * sxy - sx * sy;
  const double vyy = m * syy - sy * sy;
  if (vxx <= 0) throw std::invalid_argument("fit_rate: abscissae must not coincide");
  out.slope = vxy / vxx;
  out.intercept = (sy - out.slope * sx) / m;
  out.r2 = (vyy > 0) ? std::min(1.0, (vxy * vxy) / (vxx * vyy)) : 1.0;
  return out;
}

}  // namespace fracsmooth
