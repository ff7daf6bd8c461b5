#ifndef BTLAB_FITTING_HPP
#define BTLAB_FITTING_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace btlab::fit {

// Least-squares slope of log(value) against log(k). Values at or below the
// exactness floor are treated as exact zeros: if everything sits below the
// floor the quantity is exact and satisfies any decay order; isolated
// sub-floor points are excluded from the fit.
struct SlopeFit {
  double slope = std::numeric_limits<double>::quiet_NaN();
  bool exact = false;
  double floor_used = 0.0;
  int points_used = 0;
};

inline SlopeFit fit_loglog(const std::vector<double>& ks,
                           const std::vector<double>& values,
                           double floor_abs = 1e-10) {
  if (ks.size() != values.size() || ks.size() < 2)
    throw std::invalid_argument("fit_loglog: need matching arrays, size >= 2");
  SlopeFit out;
  out.floor_used = floor_abs;
  std::vector<double> x, y;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (values[i] > floor_abs) {
      x.push_back(std::log(ks[i]));
      y.push_back(std::log(values[i]));
    }
  }
  if (x.size() < 2) {
    out.exact = true;
    out.slope = -std::numeric_limits<double>::infinity();
    return out;
  }
  double xm = 0, ym = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= x.size();
  ym /= x.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - xm) * (y[i] - ym);
    sxx += (x[i] - xm) * (x[i] - xm);
  }
  out.slope = sxy / sxx;
  out.points_used = static_cast<int>(x.size());
  return out;
}

inline bool slope_passes(const SlopeFit& f, double threshold) {
  return f.exact || f.slope <= threshold;
}

// Monotone piecewise-cubic interpolant (Fritsch-Carlson derivative limiter);
// reproduces linear data exactly and preserves monotone brackets for root
// solving on action profiles.
class Pchip {
 public:
  Pchip() = default;
  Pchip(std::vector<double> x, std::vector<double> y);
  double operator()(double xq) const;
  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }

 private:
  std::vector<double> x_, y_, d_;
};

inline Pchip::Pchip(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw std::invalid_argument("Pchip: bad data");
  std::vector<double> h(n - 1), s(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    s[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  d_.assign(n, 0.0);
  d_[0] = s[0];
  d_[n - 1] = s[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (s[i - 1] * s[i] <= 0.0) {
      d_[i] = 0.0;
    } else {
      double w1 = 2.0 * h[i] + h[i - 1];
      double w2 = h[i] + 2.0 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
    }
  }
}

inline double Pchip::operator()(double xq) const {
  const std::size_t n = x_.size();
  std::size_t lo = 0, hi = n - 1;
  if (xq <= x_[0]) {
    hi = 1;
  } else if (xq >= x_[n - 1]) {
    lo = n - 2;
  } else {
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      if (x_[mid] <= xq)
        lo = mid;
      else
        hi = mid;
    }
  }
  double h = x_[lo + 1] - x_[lo];
  double u = (xq - x_[lo]) / h;
  double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
  double h10 = u * (1 - u) * (1 - u);
  double h01 = u * u * (3 - 2 * u);
  double h11 = u * u * (u - 1);
  return h00 * y_[lo] + h10 * h * d_[lo] + h01 * y_[lo + 1] +
         h11 * h * d_[lo + 1];
}

}  // namespace btlab::fit

#endif
