#include "shockstem/numerics.hpp"

#include <map>
#include <mutex>

namespace shockstem {

namespace {

// Nodes of the n-point rule on [-1,1] by Newton iteration on P_n, then
// mapped to [0,1].
Quadrature build_gauss_legendre(int n) {
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes[i] = 0.5 * (1.0 - x);  // map to [0,1]
    q.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    q.weights[i] = 0.5 * w;
    q.weights[n - 1 - i] = 0.5 * w;
  }
  return q;
}

}  // namespace

const Quadrature& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, Quadrature> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
  return it->second;
}

double extrapolate_to_zero(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n == 0 || y.size() != n) throw DomainError("extrapolate_to_zero: need matching samples");
  std::vector<double> t(y.begin(), y.end());
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      const double xi = x[i], xj = x[i + level];
      t[i] = (xi * t[i + 1] - xj * t[i]) / (xi - xj);
    }
  }
  return t[0];
}

double fitted_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw DomainError("fitted_slope: need at least two samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace shockstem
