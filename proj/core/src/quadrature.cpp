#include "nanbu/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nanbu::quad {
namespace {

struct Panel {
  double a, fa, m, fm, b, fb, whole;
};

double simpson(double a, double fa, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const std::function<double(double)>& f, const Panel& p, double eps, int depth,
              const Tolerance& tol) {
  const double lm = 0.5 * (p.a + p.m);
  const double rm = 0.5 * (p.m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(p.a, p.fa, flm, p.m, p.fm);
  const double right = simpson(p.m, p.fm, frm, p.b, p.fb);
  const double delta = left + right - p.whole;
  if (depth >= tol.max_depth || std::abs(delta) <= 15.0 * eps) {
    return left + right + delta / 15.0;
  }
  return refine(f, {p.a, p.fa, lm, flm, p.m, p.fm, left}, 0.5 * eps, depth + 1, tol) +
         refine(f, {p.m, p.fm, rm, frm, p.b, p.fb, right}, 0.5 * eps, depth + 1, tol);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        Tolerance tol) {
  if (!(a <= b)) {
    throw std::domain_error("adaptive_simpson: require a <= b");
  }
  if (a == b) {
    return 0.0;
  }
  // Seed with a coarse composite rule so narrow features are not missed by the
  // first Simpson panel, then use that value to scale the relative tolerance.
  constexpr int kPanels = 16;
  const double h = (b - a) / kPanels;
  double coarse = 0.0;
  Panel panels[kPanels];
  double fl = f(a);
  for (int k = 0; k < kPanels; ++k) {
    const double pa = a + k * h;
    const double pb = (k + 1 == kPanels) ? b : a + (k + 1) * h;
    const double pm = 0.5 * (pa + pb);
    const double fm = f(pm);
    const double fr = f(pb);
    panels[k] = {pa, fl, pm, fm, pb, fr, simpson(pa, fl, fm, pb, fr)};
    coarse += panels[k].whole;
    fl = fr;
  }
  const double eps = std::max(tol.relative * std::abs(coarse), tol.absolute) / kPanels;
  double total = 0.0;
  for (const Panel& p : panels) {
    total += refine(f, p, eps, 0, tol);
  }
  return total;
}

double semi_infinite(const std::function<double(double)>& f, double a, double scale,
                     Tolerance tol) {
  if (!(scale > 0.0)) {
    throw std::domain_error("semi_infinite: scale must be positive");
  }
  auto mapped = [&](double t) {
    if (t >= 1.0) {
      return 0.0;
    }
    const double s = 1.0 - t;
    return f(a + scale * t / s) * scale / (s * s);
  };
  return adaptive_simpson(mapped, 0.0, 1.0, tol);
}

double periodic_trapezoid(const std::function<double(double)>& f, int points) {
  if (points < 1) {
    throw std::domain_error("periodic_trapezoid: need at least one point");
  }
  const double h = 2.0 * std::numbers::pi / points;
  double sum = 0.0;
  for (int k = 0; k < points; ++k) {
    sum += f(k * h);
  }
  return sum * h;
}

}  // namespace nanbu::quad
