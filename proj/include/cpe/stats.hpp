#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace cpe {

// Mixes a base seed with a stream index into an independent 64-bit state;
// used to give every Monte Carlo sample its own generator so results do
// not depend on the thread count.
std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t index);

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index);

// Monotone cubic interpolant (Fritsch-Carlson slopes); exact at the nodes
// and monotone in between, used to invert tabulated CDFs.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);
  double eval(double q) const;

 private:
  std::vector<double> x_, y_, d_;
};

// Two-sided Kolmogorov-Smirnov statistic against a continuous CDF;
// samples are copied and sorted internally.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

// 1% critical value of sqrt(n) D for large n is 1.6276.
double ks_critical(std::size_t n, double coefficient = 1.6276);

// Upper quantile of chi^2 with k degrees of freedom via the
// Wilson-Hilferty cube approximation; z is the standard normal quantile
// (2.3263 for the 1% tail).
double chi2_quantile(double k, double z = 2.3263);

// L1 distance between two histograms of densities taken with respect to
// d theta / (2 pi): sum |a_i - b_i| * width / (2 pi).
double l1_histogram_distance(const std::vector<double>& a,
                             const std::vector<double>& b, double bin_width);

}  // namespace cpe
