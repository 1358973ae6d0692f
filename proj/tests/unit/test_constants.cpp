#include <gtest/gtest.h>

#include "nanbu/constants.hpp"
#include "nanbu/errors.hpp"

using namespace nanbu;
using namespace nanbu::metrics;

namespace {

std::string config_error_text(auto&& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Constants, NormConstantFrozen) {
  EXPECT_NEAR(norm_constant_c(-0.5, 1.5), 2.0309825951265185, 1e-14);
  EXPECT_THROW(norm_constant_c(0.5, 1.5), std::domain_error);
  // p must exceed 3/(3+gamma) = 1.2 for gamma = -0.5.
  EXPECT_THROW(norm_constant_c(-0.5, 1.2), std::domain_error);
}

TEST(Constants, PZeroFrozen) {
  EXPECT_NEAR(p_zero(-0.5, 0.6, 8.0), 1.2318840579710145, 1e-14);
}

TEST(Constants, PZeroInsideAdmissibleInterval) {
  for (double gamma : {-0.9, -0.5, -0.1}) {
    for (double nu : {0.95, 0.6}) {
      if (gamma + nu <= 0) {
        continue;
      }
      for (double q : {8.0, 12.0, 40.0}) {
        if (q <= gamma * gamma / (gamma + nu)) {
          continue;
        }
        const double p0 = p_zero(gamma, nu, q);
        EXPECT_GT(p0, 3.0 / (3.0 + gamma));
        EXPECT_LT(p0, 3.0 / (3.0 - nu));
      }
    }
  }
}

TEST(Constants, PZeroNamesViolations) {
  EXPECT_NE(config_error_text([] { p_zero(-1.2, 0.6, 8); }).find("gamma in (-1,0)"),
            std::string::npos);
  EXPECT_NE(config_error_text([] { p_zero(-0.5, 0.4, 8); }).find("gamma+nu>0"),
            std::string::npos);
  EXPECT_NE(config_error_text([] { p_zero(-0.5, 0.6, 1.5); }).find("q>=2"), std::string::npos);
  EXPECT_NE(config_error_text([] { p_zero(-0.5, 1.5, 8); }).find("nu in (0,1)"),
            std::string::npos);
  // gamma^2/(gamma+nu) = 16.2 here.
  EXPECT_NE(config_error_text([] { p_zero(-0.9, 0.95, 12); }).find("q>gamma^2/(gamma+nu)"),
            std::string::npos);
}
