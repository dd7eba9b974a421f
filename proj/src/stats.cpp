#include "cpe/stats.hpp"

#include "cpe/common.hpp"

#include <algorithm>
#include <cmath>

namespace cpe {

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed, index));
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  std::size_t n = x_.size();
  require(n >= 2 && y_.size() == n, "MonotoneCubic: need matching nodes");
  for (std::size_t i = 0; i + 1 < n; ++i)
    require(x_[i + 1] > x_[i], "MonotoneCubic: abscissae must increase");

  std::vector<double> h(n - 1), s(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    s[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  d_.assign(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (s[i - 1] * s[i] <= 0.0) {
      d_[i] = 0.0;
    } else {
      double w1 = 2.0 * h[i] + h[i - 1];
      double w2 = h[i] + 2.0 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
    }
  }
  auto end_slope = [](double h0, double h1, double s0, double s1) {
    double d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
    if (d * s0 <= 0.0) return 0.0;
    if (s0 * s1 <= 0.0 && std::abs(d) > 3.0 * std::abs(s0))
      return 3.0 * s0;
    return d;
  };
  d_[0] = end_slope(h[0], n > 2 ? h[1] : h[0], s[0], n > 2 ? s[1] : s[0]);
  d_[n - 1] = end_slope(h[n - 2], n > 2 ? h[n - 3] : h[n - 2], s[n - 2],
                        n > 2 ? s[n - 3] : s[n - 2]);
}

double MonotoneCubic::eval(double q) const {
  if (q <= x_.front()) return y_.front();
  if (q >= x_.back()) return y_.back();
  std::size_t i =
      static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), q) -
                               x_.begin()) -
      1;
  double h = x_[i + 1] - x_[i];
  double t = (q - x_[i]) / h;
  double t2 = t * t, t3 = t2 * t;
  double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  double h10 = t3 - 2.0 * t2 + t;
  double h01 = -2.0 * t3 + 3.0 * t2;
  double h11 = t3 - t2;
  return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
  require(!samples.empty(), "ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  double n = static_cast<double>(samples.size());
  double D = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double F = cdf(samples[i]);
    D = std::max(D, std::abs(F - static_cast<double>(i) / n));
    D = std::max(D, std::abs(F - static_cast<double>(i + 1) / n));
  }
  return D;
}

double ks_critical(std::size_t n, double coefficient) {
  return coefficient / std::sqrt(static_cast<double>(n));
}

double chi2_quantile(double k, double z) {
  double a = 2.0 / (9.0 * k);
  double c = 1.0 - a + z * std::sqrt(a);
  return k * c * c * c;
}

double l1_histogram_distance(const std::vector<double>& a,
                             const std::vector<double>& b, double bin_width) {
  require(a.size() == b.size(), "l1_histogram_distance: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
  return acc * bin_width / (2.0 * pi);
}

}  // namespace cpe
