#include "weakframe/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

namespace weakframe {

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (b == a) return 0.0;
  const double half = 0.5 * (b - a);
  const double inner_a = std::nextafter(a, b), inner_b = std::nextafter(b, a);
  const double lo = std::min(inner_a, inner_b), hi = std::max(inner_a, inner_b);
  auto g = [&](double v) {
    // Offsets taken from the nearer end, kept strictly inside (a, b).
    const double w = v <= 0.5 ? v : 1.0 - v;
    const double sn = std::sin(0.5 * std::numbers::pi * w);
    const double offset = 2.0 * half * sn * sn;
    double x = v <= 0.5 ? a + offset : b - offset;
    x = std::clamp(x, lo, hi);
    const double jac = half * std::numbers::pi * std::sin(std::numbers::pi * v);
    return jac == 0.0 ? 0.0 : f(x) * jac;
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, 12, tol);
}

CumulativeIntegral::CumulativeIntegral(std::function<double(double)> f, double a, double b, std::size_t cells,
                                       double tol)
    : f_(std::move(f)), a_(a), b_(b), tol_(tol) {
  cells = std::max<std::size_t>(cells, 1);
  grid_.resize(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) grid_[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(cells);
  grid_.back() = b;
  table_.assign(cells + 1, 0.0);
  for (std::size_t i = 0; i < cells; ++i) table_[i + 1] = table_[i] + integrate(f_, grid_[i], grid_[i + 1], tol_);
}

double CumulativeIntegral::operator()(double s) const {
  s = std::clamp(s, a_, b_);
  auto it = std::upper_bound(grid_.begin(), grid_.end(), s);
  std::size_t i = it == grid_.begin() ? 0 : static_cast<std::size_t>(it - grid_.begin()) - 1;
  i = std::min(i, grid_.size() - 2);
  return table_[i] + integrate(f_, grid_[i], s, tol_);
}

double CumulativeIntegral::inverse(double y) const {
  if (y <= 0.0) return a_;
  if (y >= total()) {
    // Last point where F reaches its total (F may be flat at the end).
    std::size_t i = table_.size() - 1;
    while (i > 0 && table_[i - 1] >= total()) --i;
    return grid_[i];
  }
  auto it = std::lower_bound(table_.begin(), table_.end(), y);
  const std::size_t j = static_cast<std::size_t>(it - table_.begin());
  double lo = grid_[j - 1], hi = grid_[j];
  double x = lo + (hi - lo) * (y - table_[j - 1]) / (table_[j] - table_[j - 1]);
  // F(x) is carried along and updated by integrating over each Newton step only.
  double fx_int = table_[j - 1] + integrate(f_, grid_[j - 1], x, tol_);
  for (int k = 0; k < 100; ++k) {
    const double r = fx_int - y;
    if (r == 0.0) return x;
    if (r < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(hi))) break;
    const double fx = f_(x);
    double next = fx > 0.0 && std::isfinite(fx) ? x - r / fx : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x))) return next;
    fx_int += integrate(f_, x, next, tol_);
    x = next;
  }
  return x;
}

}  // namespace weakframe
