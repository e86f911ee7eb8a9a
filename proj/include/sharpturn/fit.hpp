#pragma once

// Ordinary least-squares line through (x_i, y_i).

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace sharpturn {

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double max_residual = 0;  // max |y_i - (slope x_i + intercept)|
  double mean_abs_y = 0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line needs two or more paired samples");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, say = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    say += std::fabs(y[i]);
  }
  const double den = n * sxx - sx * sx;
  if (den == 0) throw std::invalid_argument("fit_line: abscissae are all equal");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  f.mean_abs_y = say / n;
  for (std::size_t i = 0; i < x.size(); ++i)
    f.max_residual = std::max(f.max_residual, std::fabs(y[i] - (f.slope * x[i] + f.intercept)));
  return f;
}

}  // namespace sharpturn
