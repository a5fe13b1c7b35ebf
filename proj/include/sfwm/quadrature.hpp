#pragma once

#include <cstddef>
#include <vector>

namespace sfwm {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes from Newton iteration on P_n; accurate to a few ulp for n <= 64.
GaussLegendreRule gauss_legendre(std::size_t order);

/// Composite rule over [a, b] with equal panels; calls f(z, w) for every node.
template <class F>
void for_each_composite_node(const GaussLegendreRule& rule, double a, double b, std::size_t panels, F&& f) {
  const double h = (b - a) / double(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + (double(p) + 0.5) * h;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      f(mid + 0.5 * h * rule.nodes[i], 0.5 * h * rule.weights[i]);
    }
  }
}

}  // namespace sfwm
