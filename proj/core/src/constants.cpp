#include "nanbu/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "nanbu/errors.hpp"

namespace nanbu::metrics {

double norm_constant_c(double gamma, double p) {
  if (!(gamma > -1.0 && gamma < 0.0)) {
    throw std::domain_error("norm_constant_c: gamma in (-1,0) violated");
  }
  if (!(p > 3.0 / (3.0 + gamma))) {
    throw std::domain_error("norm_constant_c: p>3/(3+gamma) violated (the integral diverges)");
  }
  const double s = p * gamma / (p - 1.0);
  return std::pow(4.0 * std::numbers::pi / (s + 3.0), (p - 1.0) / p);
}

double p_zero(double gamma, double nu, double q) {
  std::vector<std::string> errors;
  if (!(gamma > -1.0 && gamma < 0.0)) {
    errors.emplace_back("gamma in (-1,0)");
  }
  if (!(nu > 0.0 && nu < 1.0)) {
    errors.emplace_back("nu in (0,1)");
  }
  if (!(gamma + nu > 0.0)) {
    errors.emplace_back("gamma+nu>0");
  }
  if (!(q >= 2.0)) {
    errors.emplace_back("q>=2");
  }
  if (gamma + nu > 0.0 && !(q > gamma * gamma / (gamma + nu))) {
    errors.emplace_back("q>gamma^2/(gamma+nu) (threshold " +
                        std::to_string(gamma * gamma / (gamma + nu)) + ")");
  }
  if (!errors.empty()) {
    throw ConfigError(std::move(errors));
  }
  const double p0 = (q - gamma) / (q * (3.0 - nu) / 3.0 - gamma);
  if (!(p0 > 3.0 / (3.0 + gamma) && p0 < 3.0 / (3.0 - nu))) {
    throw NumericalError("p_zero: value " + std::to_string(p0) +
                         " outside (3/(3+gamma), 3/(3-nu))");
  }
  return p0;
}

}  // namespace nanbu::metrics
