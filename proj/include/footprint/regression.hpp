#pragma once

#include <span>
#include <string>
#include <vector>

#include "footprint/common.hpp"

namespace footprint {

struct RegressionResult {
  std::string x_name, y_name;
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double adj_r2 = 0.0;
  double slope_p = 0.0;  // two-sided t-test on the slope
  std::vector<double> residuals;
  std::vector<double> std_residuals;  // e_i / sqrt(SSE/(n-2))
};

// Bivariate OLS y = a + b*x. Requires n >= 3 and non-constant x.
RegressionResult ols_bivariate(std::span<const double> x, std::span<const double> y,
                               std::string x_name = "x", std::string y_name = "y");

}  // namespace footprint
