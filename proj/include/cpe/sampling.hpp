#pragma once

#include "cpe/ensembles.hpp"
#include "cpe/stats.hpp"

#include <Eigen/Dense>

namespace cpe {

struct SampleBatch {
  int N = 0;
  // One angle vector per sampled matrix, each entry in (-pi, pi].
  std::vector<std::vector<double>> angles;

  std::vector<double> pooled() const;
};

// Distributed by the unitary-invariant measure: complex Gaussian matrix,
// QR, and the R-diagonal phases folded back into Q.
Eigen::MatrixXcd sample_haar_unitary(int N, std::mt19937_64& rng);

// Inverse-CDF sampler for the reflection angle density rank1_angle_density.
class Rank1AngleSampler {
 public:
  Rank1AngleSampler(int N, double gamma, int nodes = 4096);
  double draw(std::mt19937_64& rng) const;

 private:
  MonotoneCubic inv_;
};

// One reflection factor: identity except for eigenvalue -e^{i theta} on a
// Haar-random direction, theta drawn from rank1_angle_density.
Eigen::MatrixXcd sample_rank1(int N, double gamma, std::mt19937_64& rng);

// Eigenvalue angles of n independent draws from the spec. Supports the
// directly samplable kinds: Haar, Rank1Product, PhaseShift, Inverse, and
// Product combinations thereof. Each sample uses its own counter-seeded
// generator, so results are identical for every thread count.
SampleBatch sample_polya_product(const EnsembleSpec& spec, int N,
                                 long n_samples, std::uint64_t seed,
                                 int threads = 0);

struct MetropolisOptions {
  long burn = 10000;
  long thin = 0;       // 0 picks 10 N
  double step = 0.0;   // 0 picks 0.5 / sqrt(N)
};

// Random-walk sampler over angle configurations: one coordinate moves per
// step, cycling through the indices, with a Gaussian proposal wrapped to
// the circle.
SampleBatch metropolis_sample(const std::function<double(const EigenAngles&)>& density,
                              int N, long n_samples, std::uint64_t seed,
                              MetropolisOptions opts = {});

// Histogram of pooled angles as a density with respect to
// d theta / (2 pi) over (-pi, pi]; integrates to N.
std::vector<double> empirical_density(const SampleBatch& batch, int bins);

// Number of worker threads: explicit argument, else CPE_THREADS, else the
// hardware count.
int resolve_threads(int requested);

}  // namespace cpe
