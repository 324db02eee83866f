#include "footprint/regression.hpp"

#include <cmath>

#include <boost/math/distributions/students_t.hpp>

namespace footprint {

RegressionResult ols_bivariate(std::span<const double> x, std::span<const double> y,
                               std::string x_name, std::string y_name) {
  if (x.size() != y.size()) throw DataError("ols: size mismatch");
  const std::size_t n = x.size();
  if (n < 3) throw NumericError("ols: need at least 3 observations");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0) throw NumericError("ols: constant regressor");

  RegressionResult r;
  r.x_name = std::move(x_name);
  r.y_name = std::move(y_name);
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  r.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  double dn = static_cast<double>(n);
  r.adj_r2 = 1.0 - (1.0 - r.r2) * (dn - 1.0) / (dn - 2.0);

  double sse = 0.0;
  r.residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.residuals[i] = y[i] - (r.intercept + r.slope * x[i]);
    sse += r.residuals[i] * r.residuals[i];
  }
  double s = std::sqrt(sse / (dn - 2.0));
  r.std_residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    r.std_residuals[i] = s > 0.0 ? r.residuals[i] / s : 0.0;

  double se_b = s / std::sqrt(sxx);
  if (se_b > 0.0) {
    double t = r.slope / se_b;
    boost::math::students_t dist(dn - 2.0);
    r.slope_p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  } else {
    r.slope_p = r.slope == 0.0 ? 1.0 : 0.0;  // exact fit
  }
  return r;
}

}  // namespace footprint
