#pragma once

#include <stdexcept>

namespace oxy {

// Composite Simpson on [lo, hi] with the given number of panels (>= 1).
template <class F>
double simpson(F&& f, double lo, double hi, int panels) {
  if (panels < 1) throw std::invalid_argument("simpson: panels must be >= 1");
  const int n = 2 * panels;
  const double h = (hi - lo) / n;
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < n; i += 2) odd += f(lo + i * h);
  for (int i = 2; i < n; i += 2) even += f(lo + i * h);
  return (h / 3.0) * (f(lo) + 4.0 * odd + 2.0 * even + f(hi));
}

} // namespace oxy
