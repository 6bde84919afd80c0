#include "rqn/harness/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rqn::harness {

std::vector<double> smooth_cma10(const std::vector<double>& series) {
  if (series.empty()) throw std::invalid_argument("smooth_cma10: empty series");
  constexpr size_t kWindow = 10;
  std::vector<double> out(series.size());
  for (size_t k = 0; k < series.size(); ++k) {
    const size_t lo = k + 1 >= kWindow ? k + 1 - kWindow : 0;
    double sum = 0.0;
    for (size_t j = lo; j <= k; ++j) sum += series[j];
    out[k] = sum / static_cast<double>(k + 1 - lo);
  }
  return out;
}

SeedAggregate aggregate_seeds(const std::vector<std::vector<double>>& runs) {
  if (runs.size() < 2) throw std::invalid_argument("aggregate_seeds: need at least two runs");
  const size_t len = runs.front().size();
  for (const auto& r : runs) {
    if (r.size() != len) throw std::invalid_argument("aggregate_seeds: runs differ in length");
  }
  const double n = static_cast<double>(runs.size());
  SeedAggregate a;
  a.mean.resize(len);
  a.half_width.resize(len);
  for (size_t k = 0; k < len; ++k) {
    double sum = 0.0;
    for (const auto& r : runs) sum += r[k];
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& r : runs) ss += (r[k] - mean) * (r[k] - mean);
    a.mean[k] = mean;
    a.half_width[k] = 1.96 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return a;
}

PhiStability phi_stability(const std::vector<PhiSnapshot>& trace, double tail_fraction) {
  if (trace.size() < 20) throw std::invalid_argument("phi_stability: need at least 20 snapshots");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) throw std::invalid_argument("phi_stability: bad tail fraction");
  const size_t agents = trace.front().phi.size();
  for (const auto& s : trace) {
    if (s.phi.size() != agents) throw std::invalid_argument("phi_stability: ragged trace");
  }
  const size_t n = trace.size();
  const size_t tail = std::clamp<size_t>(static_cast<size_t>(std::ceil(tail_fraction * static_cast<double>(n))), 2, n);

  PhiStability out;
  for (size_t i = 0; i < agents; ++i) {
    double lo = trace.front().phi[i], hi = lo;
    for (const auto& s : trace) {
      lo = std::min(lo, s.phi[i]);
      hi = std::max(hi, s.phi[i]);
    }
    const double range = hi - lo;

    double mean = 0.0;
    for (size_t k = n - tail; k < n; ++k) mean += trace[k].phi[i];
    mean /= static_cast<double>(tail);
    double var = 0.0, sxy = 0.0, sxx = 0.0;
    const double xbar = (static_cast<double>(tail) - 1.0) / 2.0;
    for (size_t k = n - tail; k < n; ++k) {
      const double d = trace[k].phi[i] - mean;
      const double x = static_cast<double>(k - (n - tail)) - xbar;
      var += d * d;
      sxy += x * d;
      sxx += x * x;
    }
    const double sd = std::sqrt(var / static_cast<double>(tail));
    out.range.push_back(range);
    out.ratio.push_back(range > 0.0 ? sd / range : 0.0);
    out.slope.push_back(sxy / sxx);
  }
  return out;
}

}  // namespace rqn::harness
