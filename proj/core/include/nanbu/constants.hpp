#pragma once

namespace nanbu::metrics {

/// C_{gamma,p} = (int_{|u|<=1} |u|^s du)^((p-1)/p) = (4 pi / (s+3))^((p-1)/p)
/// with s = p gamma / (p-1). Requires gamma in (-1, 0) and p > 3/(3+gamma);
/// throws std::domain_error otherwise.
double norm_constant_c(double gamma, double p);

/// p0(gamma, nu, q) = (q - gamma) / (q (3 - nu)/3 - gamma), the upper end of
/// the admissible L^p range. Throws ConfigError naming each violated
/// hypothesis (gamma, nu ranges, gamma+nu>0, q>=2, q>gamma^2/(gamma+nu)).
double p_zero(double gamma, double nu, double q);

}  // namespace nanbu::metrics
