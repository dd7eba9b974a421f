#include "cpe/density.hpp"

#include "cpe/gammafn.hpp"
#include "cpe/spherical.hpp"

#include <Eigen/Dense>

namespace cpe {

namespace {

// prod_{j=0}^{N-1} Sw(j), real and positive for a valid weight (the
// factors pair up into squared moduli, with a real positive middle
// coefficient for odd N).
double inner_coeff_product(const LaurentWeight& w) {
  cplx prod(1.0, 0.0);
  for (long j = 0; j < w.N; ++j) prod *= w.coeff(j);
  require(std::abs(prod.imag()) <= 1e-9 * std::abs(prod),
          "weight normalization product is not real");
  return prod.real();
}

// Take the real part of a determinant-built density, clamping round-off
// that dips barely below zero. scale is a magnitude reference for the
// cancellation in the determinant.
double clamp_density(cplx value, double scale) {
  double p = value.real();
  require(std::abs(value.imag()) <= 1e-8 * std::max(1.0, scale),
          "density has a non-negligible imaginary part");
  if (p < 0.0) {
    require(p >= -1e-10 * std::max(1.0, scale),
            "density is materially negative");
    p = 0.0;
  }
  return p;
}

}  // namespace

double jpdf_polya(const LaurentWeight& w, const EigenAngles& z) {
  int N = w.N;
  require(z.size() == N, "jpdf_polya: angle count mismatch");

  // D(a, b) = sum_s s^{b-1} u_s z_a^{-s}.
  Eigen::MatrixXcd D(N, N);
  double row_scale = 1.0;
  for (int a = 0; a < N; ++a) {
    cplx zi = std::conj(z.point(a));  // 1/z on the unit circle
    // Powers z^{-s} across the window, built once per row.
    cplx zp = std::pow(z.point(a), cplx(static_cast<double>(-w.s_lo), 0.0));
    std::vector<cplx> pw(w.u.size());
    for (std::size_t k = 0; k < w.u.size(); ++k) {
      pw[k] = zp;
      zp *= zi;
    }
    double rn = 0.0;
    for (int b = 1; b <= N; ++b) {
      cplx acc(0.0, 0.0);
      for (std::size_t k = 0; k < w.u.size(); ++k) {
        double s = static_cast<double>(w.s_lo + static_cast<long>(k));
        double f = b == 1 ? 1.0 : std::pow(s, b - 1);
        acc += f * w.u[k] * pw[k];
      }
      D(a, b - 1) = acc;
      rn += std::abs(acc);
    }
    row_scale *= rn;
  }

  cplx det = D.determinant();
  cplx dz = vandermonde_circle(z.theta);

  double log_norm = log_factorial(N);
  for (int j = 0; j < N; ++j) log_norm += log_factorial(j);
  double norm = std::exp(log_norm) * inner_coeff_product(w);

  double scale = std::abs(dz) * row_scale / std::abs(norm);
  return clamp_density(dz * det / norm, scale);
}

double jpdf_fixed_product(const LaurentWeight& w, const EigenAngles& z,
                          const EigenAngles& x) {
  int N = w.N;
  require(z.size() == N && x.size() == N,
          "jpdf_fixed_product: angle count mismatch");
  require(x.min_gap() >= gap_tol,
          "jpdf_fixed_product: fixed spectrum nearly degenerate");

  Eigen::MatrixXcd W(N, N);
  double row_scale = 1.0;
  for (int a = 0; a < N; ++a) {
    double rn = 0.0;
    for (int b = 0; b < N; ++b) {
      double d = wrap_angle(z.theta[static_cast<std::size_t>(a)] -
                            x.theta[static_cast<std::size_t>(b)]);
      W(a, b) = eval_weight(w, std::polar(1.0, d));
      rn += std::abs(W(a, b));
    }
    row_scale *= rn;
  }

  cplx det = W.determinant();
  cplx dz = vandermonde_circle(z.theta);
  cplx dx = vandermonde_circle(x.theta);
  double norm = std::exp(log_factorial(N)) * inner_coeff_product(w);

  double scale = std::abs(dz / dx) * row_scale / norm;
  return clamp_density(dz * det / (dx * norm), scale);
}

double normalization_CN(int N, double alpha, double gamma) {
  require(alpha > -1.0, "normalization_CN: needs alpha > -1");
  double log_c = 0.0;
  for (int j = 0; j < N; ++j) {
    log_c += log_gamma_complex(cplx(1.0 + alpha + j, 0.0)).real();
    log_c += log_factorial(j + 1);
    log_c -= 2.0 * log_gamma_complex(cplx(1.0 + 0.5 * alpha + j, gamma)).real();
  }
  return std::exp(log_c);
}

double brute_force_Rk(const LaurentWeight& w,
                      const std::vector<double>& angles, int grid) {
  int N = w.N;
  int k = static_cast<int>(angles.size());
  require(N <= 3, "brute_force_Rk: direct quadrature practical only for N <= 3");
  require(1 <= k && k <= N, "brute_force_Rk: need between 1 and N angles");
  if (grid == 0) grid = N == 2 ? 512 : 128;
  require(grid >= 128, "brute_force_Rk: grid too coarse");

  int free_count = N - k;
  std::vector<double> th(static_cast<std::size_t>(N));
  std::copy(angles.begin(), angles.end(), th.begin());

  double sum = 0.0;
  long total = 1;
  for (int m = 0; m < free_count; ++m) total *= grid;
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    for (int m = 0; m < free_count; ++m) {
      long q = rest % grid;
      rest /= grid;
      th[static_cast<std::size_t>(k + m)] =
          -pi + 2.0 * pi * (static_cast<double>(q) + 0.5) / grid;
    }
    sum += jpdf_polya(w, EigenAngles(th));
  }
  double mean = sum / static_cast<double>(total);

  double falling = 1.0;
  for (int m = 0; m < k; ++m) falling *= static_cast<double>(N - m);
  return falling * mean;
}

cplx group_integral_rhs(const LaurentWeight& w, const EigenAngles& x,
                        const EigenAngles& y) {
  int N = w.N;
  require(x.size() == N && y.size() == N,
          "group_integral_rhs: angle count mismatch");
  require(x.min_gap() >= gap_tol && y.min_gap() >= gap_tol,
          "group_integral_rhs: degenerate spectrum");

  Eigen::MatrixXcd W(N, N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      double d = wrap_angle(x.theta[static_cast<std::size_t>(a)] -
                            y.theta[static_cast<std::size_t>(b)]);
      W(a, b) = eval_weight(w, std::polar(1.0, d));
    }

  std::vector<double> xconj(x.theta);
  for (double& t : xconj) t = -t;
  cplx dxc = vandermonde_circle(xconj);
  cplx dy = vandermonde_circle(y.theta);
  return W.determinant() / (inner_coeff_product(w) * dxc * dy);
}

}  // namespace cpe
