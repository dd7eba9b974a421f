#include "cpe/sampling.hpp"

#include <cstdlib>
#include <thread>

namespace cpe {

std::vector<double> SampleBatch::pooled() const {
  std::vector<double> all;
  all.reserve(angles.size() * static_cast<std::size_t>(N));
  for (const auto& a : angles) all.insert(all.end(), a.begin(), a.end());
  return all;
}

Eigen::MatrixXcd sample_haar_unitary(int N, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd A(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) A(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
  Eigen::MatrixXcd Q = qr.householderQ();
  Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the gauge: fold the R-diagonal phases into Q so the distribution
  // is exactly the invariant one.
  for (int j = 0; j < N; ++j) {
    cplx r = R(j, j);
    Q.col(j) *= r / std::abs(r);
  }
  return Q;
}

Rank1AngleSampler::Rank1AngleSampler(int N, double gamma, int nodes) {
  require(nodes >= 16, "Rank1AngleSampler: too few nodes");
  std::vector<double> th(static_cast<std::size_t>(nodes));
  std::vector<double> cdf(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i)
    th[static_cast<std::size_t>(i)] =
        -pi + 2.0 * pi * i / (nodes - 1);
  double acc = 0.0;
  cdf[0] = 0.0;
  double prev = rank1_angle_density(N, gamma, th[0]);
  for (int i = 1; i < nodes; ++i) {
    double cur = rank1_angle_density(N, gamma, th[static_cast<std::size_t>(i)]);
    double h = th[static_cast<std::size_t>(i)] - th[static_cast<std::size_t>(i - 1)];
    acc += 0.5 * (prev + cur) * h / (2.0 * pi);
    cdf[static_cast<std::size_t>(i)] = acc;
    prev = cur;
  }
  require(std::abs(acc - 1.0) < 1e-6,
          "Rank1AngleSampler: tabulated density fails to normalize");
  for (double& c : cdf) c /= acc;
  // Collapse ties at the flat ends so the abscissae strictly increase.
  std::vector<double> qx, qy;
  for (int i = 0; i < nodes; ++i) {
    if (!qx.empty() && cdf[static_cast<std::size_t>(i)] <= qx.back()) continue;
    qx.push_back(cdf[static_cast<std::size_t>(i)]);
    qy.push_back(th[static_cast<std::size_t>(i)]);
  }
  require(qx.size() >= 2, "Rank1AngleSampler: degenerate CDF");
  if (qx.front() > 0.0) {
    qx.insert(qx.begin(), 0.0);
    qy.insert(qy.begin(), th.front());
  }
  inv_ = MonotoneCubic(std::move(qx), std::move(qy));
}

double Rank1AngleSampler::draw(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return inv_.eval(u(rng));
}

namespace {

Eigen::MatrixXcd reflection_factor(int N, double theta,
                                   std::mt19937_64& rng) {
  // Haar-random unit vector from a complex Gaussian.
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXcd v(N);
  for (int i = 0; i < N; ++i) v(i) = cplx(g(rng), g(rng));
  v.normalize();
  cplx lambda = -std::polar(1.0, theta);
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(N, N);
  U.noalias() += (lambda - 1.0) * v * v.adjoint();
  return U;
}

// Matrix for one draw of a directly samplable spec; multiplications are
// re-orthonormalized every 32 factors to stop drift.
struct MatrixSampler {
  int N;
  int factor_count = 0;

  Eigen::MatrixXcd identity() const {
    return Eigen::MatrixXcd::Identity(N, N);
  }

  void renormalize(Eigen::MatrixXcd& U) const {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(U);
    Eigen::MatrixXcd Q = qr.householderQ();
    Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < N; ++j) {
      cplx r = R(j, j);
      Q.col(j) *= r / std::abs(r);
    }
    U = Q;
  }

  void multiply(Eigen::MatrixXcd& U, const Eigen::MatrixXcd& F) {
    U = U * F;
    if (++factor_count % 32 == 0) renormalize(U);
  }
};

void draw_spec(const EnsembleSpec& spec, int N,
               const std::vector<const Rank1AngleSampler*>& samplers,
               std::size_t& sampler_pos, std::mt19937_64& rng,
               MatrixSampler& ms, Eigen::MatrixXcd& U) {
  switch (spec.kind) {
    case EnsembleKind::Haar:
      require(spec.variant == HaarVariant::Geometric,
              "sample_polya_product: only the invariant-measure flat "
              "ensemble is directly samplable");
      ms.multiply(U, sample_haar_unitary(N, rng));
      return;
    case EnsembleKind::Rank1Product:
      for (std::size_t l = 0; l < spec.gammas.size(); ++l) {
        double theta = samplers[sampler_pos++]->draw(rng);
        ms.multiply(U, reflection_factor(N, theta, rng));
      }
      return;
    case EnsembleKind::PhaseShift:
      draw_spec(spec.inner.at(0), N, samplers, sampler_pos, rng, ms, U);
      U *= spec.z0;
      return;
    case EnsembleKind::Inverse: {
      Eigen::MatrixXcd V = ms.identity();
      draw_spec(spec.inner.at(0), N, samplers, sampler_pos, rng, ms, V);
      ms.multiply(U, V.adjoint());
      return;
    }
    case EnsembleKind::Product:
      for (const EnsembleSpec& f : spec.inner)
        draw_spec(f, N, samplers, sampler_pos, rng, ms, U);
      return;
    default:
      fail("sample_polya_product: no direct sampler for this family; use "
           "metropolis_sample");
  }
}

void collect_samplers(const EnsembleSpec& spec, int N,
                      std::vector<Rank1AngleSampler>& store) {
  if (spec.kind == EnsembleKind::Rank1Product)
    for (double g : spec.gammas) store.emplace_back(N, g);
  for (const EnsembleSpec& f : spec.inner) collect_samplers(f, N, store);
}

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CPE_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

SampleBatch sample_polya_product(const EnsembleSpec& spec, int N,
                                 long n_samples, std::uint64_t seed,
                                 int threads) {
  require(n_samples > 0, "sample_polya_product: need a positive count");
  std::vector<Rank1AngleSampler> samplers;
  collect_samplers(spec, N, samplers);
  std::vector<const Rank1AngleSampler*> sampler_ptrs;
  for (const auto& s : samplers) sampler_ptrs.push_back(&s);

  SampleBatch batch;
  batch.N = N;
  batch.angles.assign(static_cast<std::size_t>(n_samples), {});

  int T = resolve_threads(threads);
  auto worker = [&](long begin, long end) {
    for (long k = begin; k < end; ++k) {
      std::mt19937_64 rng = stream_rng(seed, static_cast<std::uint64_t>(k));
      MatrixSampler ms{N};
      Eigen::MatrixXcd U = ms.identity();
      std::size_t pos = 0;
      draw_spec(spec, N, sampler_ptrs, pos, rng, ms, U);

      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(U, false);
      std::vector<double> th(static_cast<std::size_t>(N));
      for (int j = 0; j < N; ++j) {
        cplx ev = es.eigenvalues()(j);
        require(std::abs(std::abs(ev) - 1.0) <= 1e-8,
                "sample_polya_product: eigenvalue drifted off the circle");
        th[static_cast<std::size_t>(j)] = std::arg(ev);
      }
      batch.angles[static_cast<std::size_t>(k)] = std::move(th);
    }
  };

  if (T <= 1) {
    worker(0, n_samples);
  } else {
    std::vector<std::thread> pool;
    long chunk = (n_samples + T - 1) / T;
    for (int t = 0; t < T; ++t) {
      long b = t * chunk;
      long e = std::min(n_samples, b + chunk);
      if (b >= e) break;
      pool.emplace_back(worker, b, e);
    }
    for (auto& th : pool) th.join();
  }
  return batch;
}

SampleBatch metropolis_sample(
    const std::function<double(const EigenAngles&)>& density, int N,
    long n_samples, std::uint64_t seed, MetropolisOptions opts) {
  require(n_samples > 0, "metropolis_sample: need a positive count");
  long thin = opts.thin > 0 ? opts.thin : 10L * N;
  double step = opts.step > 0.0 ? opts.step : 0.5 / std::sqrt(static_cast<double>(N));

  std::mt19937_64 rng = stream_rng(seed, 0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, step);

  // Find a starting configuration with positive density.
  EigenAngles state;
  double p_cur = 0.0;
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<double> th(static_cast<std::size_t>(N));
    for (double& t : th) t = -pi + 2.0 * pi * unif(rng);
    state = EigenAngles(th);
    p_cur = density(state);
    if (p_cur > 0.0) break;
  }
  require(p_cur > 0.0,
          "metropolis_sample: could not find a positive-density start");

  long total_steps = opts.burn + thin * n_samples;
  SampleBatch batch;
  batch.N = N;
  batch.angles.reserve(static_cast<std::size_t>(n_samples));

  int coord = 0;
  for (long step_i = 0; step_i < total_steps; ++step_i) {
    EigenAngles prop = state;
    prop.theta[static_cast<std::size_t>(coord)] =
        wrap_angle(prop.theta[static_cast<std::size_t>(coord)] + gauss(rng));
    coord = (coord + 1) % N;
    double p_new = density(prop);
    if (p_new > 0.0 && (p_new >= p_cur || unif(rng) * p_cur < p_new)) {
      state = std::move(prop);
      p_cur = p_new;
    }
    if (step_i >= opts.burn && (step_i - opts.burn + 1) % thin == 0)
      batch.angles.push_back(state.theta);
  }
  batch.angles.resize(static_cast<std::size_t>(n_samples));
  return batch;
}

std::vector<double> empirical_density(const SampleBatch& batch, int bins) {
  require(bins >= 1, "empirical_density: need at least one bin");
  require(!batch.angles.empty(), "empirical_density: empty batch");
  std::vector<double> hist(static_cast<std::size_t>(bins), 0.0);
  double width = 2.0 * pi / bins;
  for (const auto& sample : batch.angles)
    for (double th : sample) {
      int b = static_cast<int>(std::floor((th + pi) / width));
      if (b < 0) b = 0;
      if (b >= bins) b = bins - 1;
      hist[static_cast<std::size_t>(b)] += 1.0;
    }
  double scale = 2.0 * pi / (static_cast<double>(batch.angles.size()) * width);
  for (double& h : hist) h *= scale;
  return hist;
}

}  // namespace cpe
