#include "cpe/spherical.hpp"

#include "cpe/gammafn.hpp"

#include <Eigen/Dense>

namespace cpe {

cplx vandermonde(const std::vector<cplx>& v) {
  cplx prod(1.0, 0.0);
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b) prod *= v[b] - v[a];
  return prod;
}

cplx vandermonde_circle(const std::vector<double>& theta) {
  cplx prod(1.0, 0.0);
  for (std::size_t a = 0; a < theta.size(); ++a)
    for (std::size_t b = a + 1; b < theta.size(); ++b) {
      double diff = 0.5 * (theta[b] - theta[a]);
      double mean = 0.5 * (theta[a] + theta[b]);
      prod *= cplx(0.0, 2.0 * std::sin(diff)) * std::polar(1.0, mean);
    }
  return prod;
}

namespace {

double vandermonde_int(const std::vector<long>& s) {
  double prod = 1.0;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      prod *= static_cast<double>(s[b] - s[a]);
  return prod;
}

double log_superfactorial(int N) {
  double acc = 0.0;
  for (int j = 0; j < N; ++j) acc += log_factorial(j);
  return acc;
}

}  // namespace

cplx spherical_function(const EigenAngles& x, const MultiIndex& s) {
  int N = x.size();
  require(s.size() == N, "spherical_function: index size mismatch");
  require(s.distinct(), "spherical_function: repeated index entries");
  require(x.min_gap() >= gap_tol,
          "spherical_function: eigenvalue angles too close to coincident");

  Eigen::MatrixXcd A(N, N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      A(a, b) = std::polar(1.0, x.theta[static_cast<std::size_t>(a)] *
                                    static_cast<double>(s.s[static_cast<std::size_t>(b)]));
  cplx det = A.determinant();
  cplx dz = vandermonde_circle(x.theta);
  double ds = vandermonde_int(s.s);
  return std::exp(log_superfactorial(N)) * det / (dz * ds);
}

bool has_circle_weight(const EnsembleSpec& spec) {
  if (spec.kind == EnsembleKind::FixedTimes) return false;
  for (const EnsembleSpec& f : spec.inner)
    if (!has_circle_weight(f)) return false;
  return true;
}

cplx ensemble_transform(const EnsembleSpec& spec, int N, const MultiIndex& s) {
  require(s.size() == N, "ensemble_transform: index size mismatch");
  require(s.distinct(), "ensemble_transform: repeated index entries");
  switch (spec.kind) {
    case EnsembleKind::FixedTimes: {
      EigenAngles x(spec.fixed_angles);
      require(x.size() == N, "ensemble_transform: fixed spectrum size mismatch");
      cplx phi = spherical_function(x, s);
      return phi * ensemble_transform(spec.inner.at(0), N, s);
    }
    case EnsembleKind::Product: {
      cplx prod(1.0, 0.0);
      for (const EnsembleSpec& f : spec.inner)
        prod *= ensemble_transform(f, N, s);
      return prod;
    }
    default: {
      cplx val(1.0, 0.0);
      for (int j = 0; j < N; ++j) {
        val *= closed_form_transform(spec, N, s.s[static_cast<std::size_t>(j)]);
        val /= closed_form_transform(spec, N, j);
      }
      return val;
    }
  }
}

double inverse_transform_density(const EnsembleSpec& spec, int N,
                                 const EigenAngles& z,
                                 long window_half, double t_reg) {
  require(N >= 1 && N <= 4,
          "inverse_transform_density: tuple enumeration practical only for N <= 4");
  require(z.size() == N, "inverse_transform_density: angle count mismatch");
  require(window_half >= N, "inverse_transform_density: window too small");

  double center = 0.5 * (N - 1);
  long lo = static_cast<long>(std::ceil(center - static_cast<double>(window_half)));
  long hi = static_cast<long>(std::floor(center + static_cast<double>(window_half)));

  // z^{-1} has angles -theta.
  std::vector<double> neg(z.theta);
  for (double& t : neg) t = -t;
  EigenAngles zinv(neg);

  double reg_ref = 0.0;
  for (int j = 0; j < N; ++j) {
    double d = static_cast<double>(j) - center;
    reg_ref += d * d;
  }

  // Kahan-compensated sum over strictly increasing tuples.
  cplx acc(0.0, 0.0), comp(0.0, 0.0);
  auto add = [&](cplx term) {
    cplx y = term - comp;
    cplx u = acc + y;
    comp = (u - acc) - y;
    acc = u;
  };

  MultiIndex s;
  s.s.assign(static_cast<std::size_t>(N), 0);
  std::vector<long> cur(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) cur[static_cast<std::size_t>(j)] = lo + j;

  while (true) {
    s.s = cur;
    double ds = vandermonde_int(s.s);
    double reg_exp = 0.0;
    for (long sj : s.s) {
      double d = static_cast<double>(sj) - center;
      reg_exp += d * d;
    }
    double reg = std::exp(-t_reg * (reg_exp - reg_ref));
    cplx T = ensemble_transform(spec, N, s);
    add(ds * ds * reg * T * spherical_function(zinv, s));

    // Next strictly increasing tuple in [lo, hi].
    int k = N - 1;
    while (k >= 0 && cur[static_cast<std::size_t>(k)] == hi - (N - 1 - k)) --k;
    if (k < 0) break;
    ++cur[static_cast<std::size_t>(k)];
    for (int m = k + 1; m < N; ++m)
      cur[static_cast<std::size_t>(m)] = cur[static_cast<std::size_t>(m - 1)] + 1;
  }

  double lsf = log_superfactorial(N);
  double norm = std::exp(log_factorial(N) + 2.0 * lsf);
  cplx dz = vandermonde_circle(z.theta);
  double pref = std::norm(dz) / norm;
  cplx val = pref * acc;
  require(std::abs(val.imag()) <= 1e-7 * std::max(1.0, std::abs(val)),
          "inverse_transform_density: non-real reconstruction");
  return val.real();
}

}  // namespace cpe
