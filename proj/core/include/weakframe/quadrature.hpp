#pragma once

#include <functional>
#include <vector>

namespace weakframe {

// Adaptive Gauss–Kronrod on [a, b] after the substitution
// x = a + (b − a)(1 − cos πv)/2, which absorbs inverse-square-root endpoint
// singularities.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-11);

// Tabulated F(s) = ∫_a^s f over a fixed grid, with evaluation and inversion.
class CumulativeIntegral {
 public:
  CumulativeIntegral(std::function<double(double)> f, double a, double b, std::size_t cells = 256, double tol = 1e-11);

  double total() const { return table_.back(); }
  double operator()(double s) const;
  // Smallest s with F(s) = y, for y in [0, total()].
  double inverse(double y) const;

 private:
  std::function<double(double)> f_;
  double a_, b_, tol_;
  std::vector<double> grid_;
  std::vector<double> table_;
};

}  // namespace weakframe
